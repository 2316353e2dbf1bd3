#pragma once

#include <vector>

#include "srtlab/bank.hpp"
#include "srtlab/exposure.hpp"
#include "srtlab/loan_book.hpp"
#include "srtlab/matching.hpp"

namespace srtlab::fixtures {

// Eleven-bank reference network: a multi-period loan book (two of the loans
// freshly issued in the current period) whose net exposures form the golden
// matrix below. Bank 1 has borrowed twice from bank 2, so their net
// position has size two.
LoanBook referenceLoanBook();
std::vector<std::vector<double>> referenceNetExposure();

// Nine-bank toy economy built around a lending chain. Banks 6<-7<-8 have
// historically funded bank 2, so bank 2's failure wipes out all three; bank
// 4 holds a legacy loan to bank 5. Lenders 0,1,2 quote descending rates
// (lender 2 is cheapest), borrowers 3 and 4 can afford everyone, borrower 5
// nobody. Exactly two matchings are stable, and the cheapest-volume-2
// alternative that avoids the chain cannot arise without a tax.
struct ChainEconomy {
  std::vector<BankState> banks;
  LoanBook priorBook;               // the four legacy loans
  NetExposureMatrix priorExposure;  // their net exposures
  std::vector<double> equity;       // 50 per bank
  double edgeSize = 60.0;           // every loan in this economy
  LiquidityMarket market;           // current period, untaxed, indifferent lenders
  Matching matchingA;               // stable: cheap lender 2 funds risky borrower 4
  Matching matchingB;               // stable: cheap lender 2 funds safe borrower 3
  Matching matchingC;               // efficient at volume 2, unstable untaxed
};
ChainEconomy chainEconomy();

// Loss-weighted sums over the chain economy come out as exact multiples of
// firstFailureProb * equity: 16 for A, 13 for B, 10 for C.
inline constexpr int kChainEslUnitsA = 16;
inline constexpr int kChainEslUnitsB = 13;
inline constexpr int kChainEslUnitsC = 10;

}  // namespace srtlab::fixtures
