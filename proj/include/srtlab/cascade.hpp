#pragma once

#include <ostream>
#include <vector>

#include "srtlab/exposure.hpp"

namespace srtlab {

enum class BankCondition : char { Healthy = 'H', Failing = 'F', Inactive = 'I' };

// One sweep of the propagation: which banks newly failed and the equity
// vector after their creditors absorbed the write-offs.
struct CascadeStep {
  int step = 0;
  std::vector<BankCondition> condition;
  std::vector<double> equity;
};

struct CascadeResult {
  std::vector<bool> bankrupt;       // final state, seeds included
  std::vector<double> finalEquity;  // clamped at zero for failed banks
  int steps = 0;                    // sweeps until the fixed point
  double bankruptEquity = 0.0;      // initial equity wiped out, seeds included
  double seedEquity = 0.0;          // initial equity of the seed set alone
  std::vector<CascadeStep> trace;   // per-sweep snapshot, seeds fail at step 1
};

// Propagates the insolvency of `seeds` through the net exposure network.
// A creditor writes off its full positive net exposure to a failed debtor,
// equity is clamped at zero, and a bank whose equity is consumed by a
// write-off fails in the next sweep. Each bank transmits losses exactly
// once. Terminates in at most n sweeps.
//
// Banks whose equity is exactly zero at the start stay healthy until a
// write-off of any size reaches them.
//
// Throws if `exposure` is not antisymmetric or `seeds` is empty.
CascadeResult runCascade(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                         const std::vector<int>& seeds);

// Equity of the banks bankrupted downstream of `bank`, the seed excluded.
double systemicImpact(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                      int bank);

// One-period-ahead expected systemic loss: first-failure probabilities
// weighting each bank's systemic impact.
double expectedSystemicLoss(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                            const std::vector<double>& firstFailureProb);

// Change in expected systemic loss caused by adding one loan of `amount`
// from lender to borrower on top of `exposure`. Can be negative: a loan
// that nets out an opposite exposure removes contagion channels.
double edgeEslDelta(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                    const std::vector<double>& firstFailureProb, int lender, int borrower,
                    double amount);

// Same for a whole set of new loans at once.
double matchingEslDelta(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                        const std::vector<double>& firstFailureProb,
                        const std::vector<std::pair<int, int>>& loans, double amount);

// Debug export: one JSON object per sweep.
void writeCascadeTrace(const CascadeResult& result, std::ostream& out);

}  // namespace srtlab
