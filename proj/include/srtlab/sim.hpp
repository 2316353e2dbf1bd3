#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "srtlab/cascade.hpp"
#include "srtlab/contracts.hpp"
#include "srtlab/exposure.hpp"

namespace srtlab {

enum class Policy { NoTax, Tobin, Srt };

std::string policyLabel(Policy policy);
Policy policyFromLabel(const std::string& label);

struct ScenarioConfig {
  int bankCount = 10;
  int steps = 500;
  int maturity = 30;  // loan, deposit and household-loan maturity, in periods
  double loanSize = 1.0;
  double shockProb = 1.0;  // chance per period that a bank supplies or demands liquidity
  double externalLiability = 0.5;
  double riskyAssetLow = 0.5, riskyAssetHigh = 2.5;
  double depositRateLow = 0.0, depositRateHigh = 0.08;
  double hazardLow = 0.0, hazardHigh = 0.0009;
  double reservationRate = 0.09;
  double tobinRate = 0.03;
  BeliefMode beliefMode = BeliefMode::Naive;
  double commonPrior = 0.0;
  double srtEpsilon = 1e-6;
  double srtZeta = 0.0;  // 0 = auto scaling
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

struct TimeSeriesRecord {
  long period = 0;
  Policy policy = Policy::NoTax;
  double esl = 0.0;
  long cumulativeVolume = 0;
  double avgClustering = 0.0;
  double spectralRadius = 0.0;
};

// Fixed-width binning; bins are addressed by their low edge.
struct Histogram {
  double binWidth = 1.0;
  std::map<long, long> counts;

  void add(double value);
};

// One audit row per borrower per period: the belief inputs behind its
// quotes.
struct BorrowerProbabilityRecord {
  long period = 0;
  int bank = 0;
  double exogenous = 0.0;
  double contagion = 0.0;
  double total = 0.0;
};

struct ScenarioResult {
  Policy policy = Policy::NoTax;
  std::vector<TimeSeriesRecord> series;
  std::map<std::string, Histogram> distributions;
  std::vector<BorrowerProbabilityRecord> probabilityAudit;
  double onePeriodDefaultMass = 0.0;  // divisor for the per-default reading of the loss series
  std::uint64_t optimizerCandidates = 0;
  double optimizerSeconds = 0.0;
};

// Runs one policy over the configured horizon. Per period: liquidity
// shocks, belief formation, preference building, matching under the policy,
// loan-book roll-forward, and the risk/network statistics. The flat tax and
// systemic-risk-tax runs consume the same shock and tie-break substreams as
// the untaxed run, so series with equal seeds are directly comparable.
// The policy that targets a volume matches the untaxed volume of the same
// period. Equal configs produce bitwise-equal results.
ScenarioResult runScenario(const ScenarioConfig& config, Policy policy);

// ---- network statistics ----

struct DegreeCounts {
  std::vector<int> inDegree;   // counter-parties a bank has (net) borrowed from
  std::vector<int> outDegree;  // counter-parties a bank has (net) lent to
};
DegreeCounts degreeDistributions(const NetExposureMatrix& exposure);

// Systemic impact of every bank.
std::vector<double> systemicImpactProfile(const NetExposureMatrix& exposure,
                                          const std::vector<double>& equity);

// Mean local clustering coefficient of the binarized undirected graph
// (edge iff nonzero net exposure); nodes of degree < 2 contribute 0.
double averageClusteringCoefficient(const NetExposureMatrix& exposure);

// Magnitude of the largest eigenvalue of the binarized undirected
// adjacency, by power iteration from the all-ones vector. Throws with the
// iteration count if the estimate has not settled within maxIterations.
double spectralRadius(const NetExposureMatrix& exposure, double tolerance = 1e-8,
                      int maxIterations = 10000);

// t,policy,esl,cum_volume,avg_clustering,spectral_radius
void writeTimeSeriesCsv(const ScenarioResult& result, std::ostream& out);
// metric,bin,count
void writeDistributionsCsv(const ScenarioResult& result, std::ostream& out);
// t,bank,exo_prob,contagion_prob,total_prob
void writeProbabilityAuditCsv(const ScenarioResult& result, std::ostream& out);

}  // namespace srtlab
