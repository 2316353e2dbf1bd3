#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace srtlab::oracle {

std::vector<bool> bruteForceBankruptSet(const NetExposureMatrix& exposure,
                                        const std::vector<double>& equity,
                                        const std::vector<int>& seeds) {
  const int n = exposure.size();
  double maxEquity = 0.0;
  for (double e : equity) maxEquity = std::max(maxEquity, e);
  const double tol = 1e-9 * maxEquity;

  std::vector<bool> bankrupt(static_cast<std::size_t>(n), false);
  for (int s : seeds) bankrupt[static_cast<std::size_t>(s)] = true;

  // Simultaneous sweeps to the least fixed point: a bank fails when the
  // write-offs against the current bankrupt set consume its equity.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<bool> next = bankrupt;
    for (int i = 0; i < n; ++i) {
      if (bankrupt[static_cast<std::size_t>(i)]) continue;
      double loss = 0.0;
      for (int j = 0; j < n; ++j)
        if (bankrupt[static_cast<std::size_t>(j)] && exposure.at(i, j) > 0.0)
          loss += exposure.at(i, j);
      if (loss > 0.0 && equity[static_cast<std::size_t>(i)] - loss <= tol) {
        next[static_cast<std::size_t>(i)] = true;
        changed = true;
      }
    }
    bankrupt = std::move(next);
  }
  return bankrupt;
}

double bruteForceSystemicImpact(const NetExposureMatrix& exposure,
                                const std::vector<double>& equity, int bank) {
  const std::vector<bool> bankrupt = bruteForceBankruptSet(exposure, equity, {bank});
  double lost = 0.0;
  for (int j = 0; j < exposure.size(); ++j)
    if (j != bank && bankrupt[static_cast<std::size_t>(j)]) lost += equity[static_cast<std::size_t>(j)];
  return lost;
}

double bruteForceExpectedLoss(const NetExposureMatrix& exposure, const std::vector<double>& equity,
                              const std::vector<double>& firstFailureProb) {
  double esl = 0.0;
  for (int j = 0; j < exposure.size(); ++j)
    esl += firstFailureProb[static_cast<std::size_t>(j)] *
           bruteForceSystemicImpact(exposure, equity, j);
  return esl;
}

double jacobiSpectralRadius(const NetExposureMatrix& exposure) {
  const int n = exposure.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && exposure.at(i, j) != 0.0) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1.0;

  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] *
                                             a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        if (std::abs(apq) < 1e-15) continue;
        const double app = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)];
        const double aqq = a[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)];
        const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          const double akp = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
          const double akq = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
          a[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = c * akp - s * akq;
          a[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)];
          const double aqk = a[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)];
          a[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] = c * apk - s * aqk;
          a[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)] = s * apk + c * aqk;
        }
      }
    }
  }
  double radius = 0.0;
  for (int i = 0; i < n; ++i)
    radius = std::max(radius, std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]));
  return radius;
}

double tripleCountClustering(const NetExposureMatrix& exposure) {
  const int n = exposure.size();
  if (n == 0) return 0.0;
  auto adj = [&](int i, int j) { return i != j && exposure.at(i, j) != 0.0; };
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    int degree = 0;
    for (int j = 0; j < n; ++j)
      if (adj(i, j)) ++degree;
    if (degree < 2) continue;
    int triangles = 0;
    int triples = 0;
    for (int j = 0; j < n; ++j) {
      if (!adj(i, j)) continue;
      for (int k = j + 1; k < n; ++k) {
        if (!adj(i, k)) continue;
        ++triples;
        if (adj(j, k)) ++triangles;
      }
    }
    sum += static_cast<double>(triangles) / static_cast<double>(triples);
  }
  return sum / n;
}

}  // namespace srtlab::oracle
