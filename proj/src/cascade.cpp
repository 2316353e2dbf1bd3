#include "srtlab/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "srtlab/csv.hpp"

namespace srtlab {

namespace {
constexpr double kRelativeFailureTol = 1e-9;
}

CascadeResult runCascade(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                         const std::vector<int>& seeds) {
  const int n = exposure.size();
  if (static_cast<int>(equity.size()) != n)
    throw std::invalid_argument("runCascade: equity size does not match exposure matrix");
  if (seeds.empty()) throw std::invalid_argument("runCascade: empty seed set");
  if (!exposure.isAntisymmetric())
    throw std::invalid_argument("runCascade: exposure matrix is not antisymmetric");

  double maxEquity = 0.0;
  for (double e : equity) {
    if (e < 0.0) throw std::invalid_argument("runCascade: negative initial equity");
    maxEquity = std::max(maxEquity, e);
  }
  const double failTol = kRelativeFailureTol * maxEquity;

  CascadeResult res;
  res.bankrupt.assign(static_cast<std::size_t>(n), false);
  res.finalEquity = equity;

  std::vector<BankCondition> cond(static_cast<std::size_t>(n), BankCondition::Healthy);
  std::vector<int> newlyFailing;
  for (int s : seeds) {
    if (s < 0 || s >= n) throw std::out_of_range("runCascade: seed " + std::to_string(s));
    if (cond[static_cast<std::size_t>(s)] == BankCondition::Failing) continue;  // duplicate seed
    cond[static_cast<std::size_t>(s)] = BankCondition::Failing;
    res.finalEquity[static_cast<std::size_t>(s)] = 0.0;
    res.bankrupt[static_cast<std::size_t>(s)] = true;
    res.seedEquity += equity[static_cast<std::size_t>(s)];
    newlyFailing.push_back(s);
  }
  res.steps = 1;
  res.trace.push_back({1, cond, res.finalEquity});

  while (!newlyFailing.empty()) {
    std::vector<int> next;
    std::vector<double> writeOff(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      if (cond[static_cast<std::size_t>(i)] != BankCondition::Healthy) continue;
      for (int j : newlyFailing) {
        const double a = exposure.at(i, j);
        if (a > 0.0) writeOff[static_cast<std::size_t>(i)] += a;
      }
    }
    // Previous wave has transmitted; it goes inactive.
    for (int j : newlyFailing) cond[static_cast<std::size_t>(j)] = BankCondition::Inactive;

    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (cond[ui] != BankCondition::Healthy || writeOff[ui] <= 0.0) continue;
      res.finalEquity[ui] = std::max(0.0, res.finalEquity[ui] - writeOff[ui]);
      if (res.finalEquity[ui] <= failTol) {
        res.finalEquity[ui] = 0.0;
        cond[ui] = BankCondition::Failing;
        res.bankrupt[ui] = true;
        res.bankruptEquity += equity[ui];
        next.push_back(i);
      }
    }
    newlyFailing = std::move(next);
    if (!newlyFailing.empty()) {
      ++res.steps;
      res.trace.push_back({res.steps, cond, res.finalEquity});
    }
  }
  res.bankruptEquity += res.seedEquity;
  return res;
}

double systemicImpact(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                      int bank) {
  const CascadeResult r = runCascade(exposure, equity, {bank});
  return r.bankruptEquity - r.seedEquity;
}

double expectedSystemicLoss(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                            const std::vector<double>& firstFailureProb) {
  const int n = exposure.size();
  if (static_cast<int>(firstFailureProb.size()) != n)
    throw std::invalid_argument("expectedSystemicLoss: probability vector size mismatch");
  double esl = 0.0;
  for (int j = 0; j < n; ++j) {
    const double p = firstFailureProb[static_cast<std::size_t>(j)];
    if (p == 0.0) continue;
    esl += p * systemicImpact(exposure, equity, j);
  }
  return esl;
}

double edgeEslDelta(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                    const std::vector<double>& firstFailureProb, int lender, int borrower,
                    double amount) {
  if (lender == borrower) throw std::invalid_argument("edgeEslDelta: self loan");
  NetExposureMatrix with = exposure;
  with.addLoan(lender, borrower, amount);
  return expectedSystemicLoss(with, equity, firstFailureProb) -
         expectedSystemicLoss(exposure, equity, firstFailureProb);
}

double matchingEslDelta(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                        const std::vector<double>& firstFailureProb,
                        const std::vector<std::pair<int, int>>& loans, double amount) {
  NetExposureMatrix with = exposure;
  for (const auto& [lender, borrower] : loans) {
    if (lender == borrower) throw std::invalid_argument("matchingEslDelta: self loan");
    with.addLoan(lender, borrower, amount);
  }
  return expectedSystemicLoss(with, equity, firstFailureProb) -
         expectedSystemicLoss(exposure, equity, firstFailureProb);
}

void writeCascadeTrace(const CascadeResult& result, std::ostream& out) {
  for (const CascadeStep& step : result.trace) {
    out << "{\"step\":" << step.step << ",\"condition\":\"";
    for (BankCondition c : step.condition) out << static_cast<char>(c);
    out << "\",\"equity\":[";
    for (std::size_t i = 0; i < step.equity.size(); ++i) {
      if (i) out << ',';
      out << csv::formatDouble(step.equity[i]);
    }
    out << "]}\n";
  }
}

}  // namespace srtlab
