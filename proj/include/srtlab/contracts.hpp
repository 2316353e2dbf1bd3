#pragma once

#include <vector>

#include "srtlab/cascade.hpp"
#include "srtlab/exposure.hpp"

namespace srtlab {

// How a bank forms its belief about a borrower's total failure probability.
//   Full        — exogenous risk plus network contagion risk.
//   CommonPrior — exogenous risk plus a flat prior on contagion.
//   Naive       — contagion risk ignored entirely.
enum class BeliefMode { Full, CommonPrior, Naive };

// Probability that a bank with hazard `hazard` is the first of all banks to
// fail over the next `maturity` periods, given the system-wide aggregate
// hazard. Throws when aggregateHazard is zero: with no jump intensity in the
// system the notion of a first failer is empty and callers must not ask.
double exogenousDefaultProb(double hazard, double aggregateHazard, int maturity);

// Mark-up that makes lending to a borrower with the given default
// probability worth exactly as much as a riskless loan. Diverges as
// defaultProb -> 1; throws outside [0,1).
double riskPremium(double depositRate, double defaultProb, int maturity);

// Expected payoff of lending one unit at depositRate + premium to a
// borrower who defaults (no recovery) with probability defaultProb.
double lenderPayoff(double depositRate, double premium, double defaultProb, int maturity);

// Expected payoff of borrowing one unit at lenderRate + premium + tax,
// discounted at the borrower's own deposit rate. Strictly decreasing in the
// rate paid; zero when the all-in rate equals the own deposit rate.
double borrowerPayoff(double ownDepositRate, double lenderRate, double premium, double tax,
                      int maturity);

// Probability that `bank` is bankrupted by a cascade seeded by some other
// bank's exogenous failure, the network held fixed at the prior period's
// exposures and equities.
double endogenousDefaultProb(int bank, const NetExposureMatrix& priorExposure,
                             const std::vector<double>& priorEquity,
                             const std::vector<double>& exogenousProb);

// All banks at once; runs one cascade per potential first failer instead of
// n per bank.
std::vector<double> endogenousDefaultProbs(const NetExposureMatrix& priorExposure,
                                           const std::vector<double>& priorEquity,
                                           const std::vector<double>& exogenousProb);

double totalDefaultProb(double exogenous, double endogenous, BeliefMode mode,
                        double commonPrior = 0.0);

// Per-period rate table for one market: quoted rate = lender base rate +
// borrower-specific risk premium + transaction tax mark-up (zero untaxed).
struct QuoteSet {
  std::vector<int> lenders;    // bank ids
  std::vector<int> borrowers;  // bank ids
  std::vector<double> baseRate;                  // per lender
  std::vector<std::vector<double>> premium;      // lender x borrower
  std::vector<std::vector<double>> taxMarkup;    // lender x borrower

  double quotedRate(std::size_t lenderIdx, std::size_t borrowerIdx) const {
    return baseRate[lenderIdx] + premium[lenderIdx][borrowerIdx] +
           taxMarkup[lenderIdx][borrowerIdx];
  }
  double untaxedRate(std::size_t lenderIdx, std::size_t borrowerIdx) const {
    return baseRate[lenderIdx] + premium[lenderIdx][borrowerIdx];
  }
};

// Assembles quotes from lender base rates and borrower default
// probabilities; premia per the fair-pricing rule, taxes zero.
QuoteSet buildQuotes(const std::vector<int>& lenders, const std::vector<int>& borrowers,
                     const std::vector<double>& lenderBaseRate,
                     const std::vector<double>& borrowerDefaultProb, int maturity);

// Strict-preference variant: lenders quote their base rate only and manage
// risk by ranking borrowers instead of charging a premium.
QuoteSet buildBaseRateQuotes(const std::vector<int>& lenders, const std::vector<int>& borrowers,
                             const std::vector<double>& lenderBaseRate);

}  // namespace srtlab
