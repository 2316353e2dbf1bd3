#include "srtlab/contracts.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace srtlab {

double exogenousDefaultProb(double hazard, double aggregateHazard, int maturity) {
  if (hazard < 0.0) throw std::invalid_argument("exogenousDefaultProb: negative hazard");
  if (maturity < 1) throw std::invalid_argument("exogenousDefaultProb: maturity < 1");
  if (aggregateHazard <= 0.0)
    throw std::invalid_argument("exogenousDefaultProb: aggregate hazard must be positive");
  if (hazard > aggregateHazard)
    throw std::invalid_argument("exogenousDefaultProb: hazard exceeds aggregate");
  return -std::expm1(-aggregateHazard * maturity) * (hazard / aggregateHazard);
}

double riskPremium(double depositRate, double defaultProb, int maturity) {
  if (depositRate < 0.0) throw std::invalid_argument("riskPremium: negative deposit rate");
  if (maturity < 1) throw std::invalid_argument("riskPremium: maturity < 1");
  if (defaultProb < 0.0 || defaultProb >= 1.0)
    throw std::domain_error("riskPremium: default probability must be in [0,1)");
  if (defaultProb == 0.0) return 0.0;  // exactly, not up to rounding
  return (1.0 + depositRate) / std::pow(1.0 - defaultProb, 1.0 / maturity) - 1.0 - depositRate;
}

double lenderPayoff(double depositRate, double premium, double defaultProb, int maturity) {
  return (1.0 - defaultProb) *
             std::pow((1.0 + depositRate + premium) / (1.0 + depositRate), maturity) -
         1.0;
}

double borrowerPayoff(double ownDepositRate, double lenderRate, double premium, double tax,
                      int maturity) {
  return 1.0 - std::pow((1.0 + lenderRate + premium + tax) / (1.0 + ownDepositRate), maturity);
}

std::vector<double> endogenousDefaultProbs(const NetExposureMatrix& priorExposure,
                                           const std::vector<double>& priorEquity,
                                           const std::vector<double>& exogenousProb) {
  const int n = priorExposure.size();
  if (static_cast<int>(priorEquity.size()) != n ||
      static_cast<int>(exogenousProb.size()) != n)
    throw std::invalid_argument("endogenousDefaultProbs: vector size mismatch");
  std::vector<double> q(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    const double p = exogenousProb[static_cast<std::size_t>(k)];
    if (p == 0.0) continue;
    const CascadeResult r = runCascade(priorExposure, priorEquity, {k});
    for (int j = 0; j < n; ++j)
      if (j != k && r.bankrupt[static_cast<std::size_t>(j)])
        q[static_cast<std::size_t>(j)] += p;
  }
  return q;
}

double endogenousDefaultProb(int bank, const NetExposureMatrix& priorExposure,
                             const std::vector<double>& priorEquity,
                             const std::vector<double>& exogenousProb) {
  const int n = priorExposure.size();
  if (bank < 0 || bank >= n)
    throw std::out_of_range("endogenousDefaultProb: no bank " + std::to_string(bank));
  double q = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == bank) continue;
    const double p = exogenousProb[static_cast<std::size_t>(k)];
    if (p == 0.0) continue;
    const CascadeResult r = runCascade(priorExposure, priorEquity, {k});
    if (r.bankrupt[static_cast<std::size_t>(bank)]) q += p;
  }
  return q;
}

double totalDefaultProb(double exogenous, double endogenous, BeliefMode mode, double commonPrior) {
  if (exogenous < 0.0 || exogenous > 1.0 || endogenous < 0.0 || endogenous > 1.0)
    throw std::invalid_argument("totalDefaultProb: probabilities must be in [0,1]");
  switch (mode) {
    case BeliefMode::Full:
      return exogenous + (1.0 - exogenous) * endogenous;
    case BeliefMode::CommonPrior:
      return exogenous + (1.0 - exogenous) * commonPrior;
    case BeliefMode::Naive:
      return exogenous;
  }
  throw std::logic_error("totalDefaultProb: unknown belief mode");
}

QuoteSet buildQuotes(const std::vector<int>& lenders, const std::vector<int>& borrowers,
                     const std::vector<double>& lenderBaseRate,
                     const std::vector<double>& borrowerDefaultProb, int maturity) {
  if (lenders.size() != lenderBaseRate.size() || borrowers.size() != borrowerDefaultProb.size())
    throw std::invalid_argument("buildQuotes: rate/probability vectors misaligned");
  QuoteSet q;
  q.lenders = lenders;
  q.borrowers = borrowers;
  q.baseRate = lenderBaseRate;
  q.premium.assign(lenders.size(), std::vector<double>(borrowers.size(), 0.0));
  q.taxMarkup.assign(lenders.size(), std::vector<double>(borrowers.size(), 0.0));
  for (std::size_t li = 0; li < lenders.size(); ++li)
    for (std::size_t bi = 0; bi < borrowers.size(); ++bi)
      q.premium[li][bi] = riskPremium(lenderBaseRate[li], borrowerDefaultProb[bi], maturity);
  return q;
}

QuoteSet buildBaseRateQuotes(const std::vector<int>& lenders, const std::vector<int>& borrowers,
                             const std::vector<double>& lenderBaseRate) {
  if (lenders.size() != lenderBaseRate.size())
    throw std::invalid_argument("buildBaseRateQuotes: rate vector misaligned");
  QuoteSet q;
  q.lenders = lenders;
  q.borrowers = borrowers;
  q.baseRate = lenderBaseRate;
  q.premium.assign(lenders.size(), std::vector<double>(borrowers.size(), 0.0));
  q.taxMarkup.assign(lenders.size(), std::vector<double>(borrowers.size(), 0.0));
  return q;
}

}  // namespace srtlab
