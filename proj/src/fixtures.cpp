#include "srtlab/fixtures.hpp"

#include "srtlab/contracts.hpp"

namespace srtlab::fixtures {

LoanBook referenceLoanBook() {
  const int maturity = 30;
  LoanBook book(11, 10);
  // (lender, borrower, origination); all live in period 10, unit size.
  const int older[][3] = {
      {1, 0, 2}, {1, 0, 5}, {2, 0, 3}, {3, 1, 4}, {7, 1, 6}, {4, 2, 4},
      {7, 6, 7}, {8, 5, 8}, {6, 9, 9}, {6, 10, 9}, {10, 7, 8},
  };
  for (const auto& [lender, borrower, origination] : older)
    book.addLoan({lender, borrower, 1.0, origination, maturity});
  // New business of the current period: banks 2 and 3 lend to banks 6 and 5.
  book.addLoan({2, 6, 1.0, 10, maturity});
  book.addLoan({3, 5, 1.0, 10, maturity});
  return book;
}

std::vector<std::vector<double>> referenceNetExposure() {
  return {
      {0, -2, -1, 0, 0, 0, 0, 0, 0, 0, 0},
      {2, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0},
      {1, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0},
      {0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0},
      {0, 0, -1, 0, 0, 0, 0, -1, 0, 1, 1},
      {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, -1},
      {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0},
  };
}

ChainEconomy chainEconomy() {
  ChainEconomy e;
  const int n = 9;
  const int maturity = 30;

  e.banks.resize(n);
  const double lenderRates[3] = {0.05, 0.04, 0.01};
  for (int i = 0; i < n; ++i) {
    BankState& b = e.banks[static_cast<std::size_t>(i)];
    b.id = i;
    b.riskyAsset = 50.0;
    b.externalLiability = 0.0;
    b.hazardRate = 0.01;
    b.depositRate = i < 3 ? lenderRates[i] : 0.02;
    b.reservationRate = 0.09;
  }
  e.banks[5].reservationRate = 0.005;  // borrower 5 finds every quote too expensive

  e.priorBook = LoanBook(n, 10);
  e.priorBook.addLoan({6, 2, e.edgeSize, 3, maturity});
  e.priorBook.addLoan({7, 6, e.edgeSize, 4, maturity});
  e.priorBook.addLoan({8, 7, e.edgeSize, 5, maturity});
  e.priorBook.addLoan({4, 5, e.edgeSize, 6, maturity});
  e.priorExposure = buildNetExposure(e.priorBook);

  e.equity.assign(n, 50.0);

  const std::vector<int> lenders = {0, 1, 2};
  const std::vector<int> borrowers = {3, 4, 5};
  const std::vector<double> baseRates = {lenderRates[0], lenderRates[1], lenderRates[2]};
  // Beliefs held about the three borrowers this period; borrower 4 carries
  // contagion risk through its legacy loan, borrower 5 is the riskiest.
  const std::vector<double> borrowerRisk = {0.001, 0.03, 0.2};
  const std::vector<double> reservations = {e.banks[3].reservationRate,
                                            e.banks[4].reservationRate,
                                            e.banks[5].reservationRate};
  const QuoteSet quotes = buildQuotes(lenders, borrowers, baseRates, borrowerRisk, 1);
  e.market =
      buildPreferences(11, n, quotes, reservations, LenderPreferences::Indifferent, borrowerRisk);

  e.matchingA = Matching(n);
  e.matchingA.match(2, 4);
  e.matchingA.match(1, 3);
  e.matchingB = Matching(n);
  e.matchingB.match(2, 3);
  e.matchingB.match(1, 4);
  e.matchingC = Matching(n);
  e.matchingC.match(0, 3);
  e.matchingC.match(1, 4);
  return e;
}

}  // namespace srtlab::fixtures
