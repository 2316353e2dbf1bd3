#include "srtlab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srtlab/csv.hpp"
#include "srtlab/loan_book.hpp"
#include "srtlab/rng.hpp"
#include "srtlab/tax.hpp"

namespace srtlab {

namespace {

// Substream ids of the master seed; every concern draws from its own
// stream so the three policies see identical randomness.
enum : std::uint64_t { kInitStream = 0, kShockStream = 1, kTieBreakStream = 2 };

constexpr double kSiBinWidth = 0.5;
constexpr double kDegreeBinWidth = 1.0;
constexpr double kClusteringBinWidth = 0.05;
constexpr double kRadiusBinWidth = 0.25;

}  // namespace

std::string policyLabel(Policy policy) {
  switch (policy) {
    case Policy::NoTax:
      return "notax";
    case Policy::Tobin:
      return "tobin";
    case Policy::Srt:
      return "srt";
  }
  throw std::logic_error("policyLabel: unknown policy");
}

Policy policyFromLabel(const std::string& label) {
  if (label == "notax") return Policy::NoTax;
  if (label == "tobin") return Policy::Tobin;
  if (label == "srt") return Policy::Srt;
  throw std::invalid_argument("unknown policy '" + label + "'");
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("ScenarioConfig: " + what);
  };
  require(bankCount >= 1, "bank count must be >= 1");
  require(steps >= 1, "steps must be >= 1");
  require(maturity >= 1, "maturity must be >= 1");
  require(loanSize > 0.0, "loan size must be positive");
  require(shockProb >= 0.0 && shockProb <= 1.0, "shock probability must be in [0,1]");
  require(externalLiability >= 0.0, "external liability must be >= 0");
  require(std::isfinite(riskyAssetLow) && std::isfinite(riskyAssetHigh) &&
              riskyAssetLow <= riskyAssetHigh,
          "risky-asset bounds invalid");
  require(riskyAssetLow >= externalLiability,
          "risky-asset draws must cover the external liability (banks start solvent)");
  require(depositRateLow >= 0.0 && depositRateLow <= depositRateHigh, "deposit-rate bounds invalid");
  require(hazardLow >= 0.0 && hazardLow <= hazardHigh, "hazard bounds invalid");
  require(reservationRate >= 0.0, "reservation rate must be >= 0");
  require(tobinRate >= 0.0, "flat tax rate must be >= 0");
  require(commonPrior >= 0.0 && commonPrior <= 1.0, "common prior must be in [0,1]");
  require(srtEpsilon > 0.0, "epsilon must be positive");
  require(srtZeta >= 0.0, "zeta must be >= 0");
}

void Histogram::add(double value) {
  counts[static_cast<long>(std::floor(value / binWidth))] += 1;
}

DegreeCounts degreeDistributions(const NetExposureMatrix& exposure) {
  const int n = exposure.size();
  DegreeCounts d;
  d.inDegree.assign(static_cast<std::size_t>(n), 0);
  d.outDegree.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = exposure.at(i, j);
      if (a > 0.0)
        d.outDegree[static_cast<std::size_t>(i)] += 1;
      else if (a < 0.0)
        d.inDegree[static_cast<std::size_t>(i)] += 1;
    }
  return d;
}

std::vector<double> systemicImpactProfile(const NetExposureMatrix& exposure,
                                          const std::vector<double>& equity) {
  const int n = exposure.size();
  std::vector<double> si(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) si[static_cast<std::size_t>(i)] = systemicImpact(exposure, equity, i);
  return si;
}

double averageClusteringCoefficient(const NetExposureMatrix& exposure) {
  const int n = exposure.size();
  if (n == 0) return 0.0;
  auto linked = [&](int i, int j) { return exposure.at(i, j) != 0.0; };
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<int> neighbors;
    for (int j = 0; j < n; ++j)
      if (j != i && linked(i, j)) neighbors.push_back(j);
    const int d = static_cast<int>(neighbors.size());
    if (d < 2) continue;
    int links = 0;
    for (std::size_t a = 0; a < neighbors.size(); ++a)
      for (std::size_t b = a + 1; b < neighbors.size(); ++b)
        if (linked(neighbors[a], neighbors[b])) ++links;
    sum += 2.0 * links / (static_cast<double>(d) * (d - 1));
  }
  return sum / n;
}

double spectralRadius(const NetExposureMatrix& exposure, double tolerance, int maxIterations) {
  const int n = exposure.size();
  if (n == 0) return 0.0;
  std::vector<double> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  bool anyEdge = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && exposure.at(i, j) != 0.0) {
        adj[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(j)] = 1.0;
        anyEdge = true;
      }
  if (!anyEdge) return 0.0;

  std::vector<double> v(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  // The stop test resolves well below the reporting tolerance; near-equal
  // dominant eigenvalues converge slowly and would otherwise eat the margin.
  const double stopTol = std::min(tolerance, 1e-8) * 1e-4;
  double estimate = 0.0;
  for (int iteration = 1; iteration <= maxIterations; ++iteration) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += adj[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)] *
             v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;  // the start vector was nilpotent-orthogonal; no cycles left
    const double previous = estimate;
    estimate = norm;  // ||A v|| with ||v|| = 1
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / norm;
    if (iteration > 1 && std::abs(estimate - previous) <= stopTol * std::max(1.0, estimate))
      return estimate;
  }
  throw std::runtime_error("spectralRadius: no convergence after " +
                           std::to_string(maxIterations) + " iterations");
}

ScenarioResult runScenario(const ScenarioConfig& config, Policy policy) {
  config.validate();
  const int n = config.bankCount;

  Rng initRng(deriveSeed(config.seed, kInitStream));
  Rng shockRng(deriveSeed(config.seed, kShockStream));
  Rng tieRng(deriveSeed(config.seed, kTieBreakStream));

  std::vector<BankState> banks;
  banks.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    BankState b;
    b.id = i;
    b.riskyAsset = initRng.uniform(config.riskyAssetLow, config.riskyAssetHigh);
    b.externalLiability = config.externalLiability;
    b.depositRate = initRng.uniform(config.depositRateLow, config.depositRateHigh);
    b.hazardRate = initRng.uniform(config.hazardLow, config.hazardHigh);
    b.reservationRate = config.reservationRate;
    banks.push_back(b);
  }

  double aggregateHazard = 0.0;
  for (const BankState& b : banks) aggregateHazard += b.hazardRate;
  std::vector<double> exogenousOverMaturity(static_cast<std::size_t>(n), 0.0);
  std::vector<double> firstFailureProb(static_cast<std::size_t>(n), 0.0);
  if (aggregateHazard > 0.0) {
    for (int i = 0; i < n; ++i) {
      const double hazard = banks[static_cast<std::size_t>(i)].hazardRate;
      exogenousOverMaturity[static_cast<std::size_t>(i)] =
          exogenousDefaultProb(hazard, aggregateHazard, config.maturity);
      firstFailureProb[static_cast<std::size_t>(i)] =
          exogenousDefaultProb(hazard, aggregateHazard, 1);
    }
  }

  ScenarioResult result;
  result.policy = policy;
  result.onePeriodDefaultMass = -std::expm1(-aggregateHazard);
  result.distributions["si"].binWidth = kSiBinWidth;
  result.distributions["in_degree"].binWidth = kDegreeBinWidth;
  result.distributions["out_degree"].binWidth = kDegreeBinWidth;
  result.distributions["clustering"].binWidth = kClusteringBinWidth;
  result.distributions["spectral_radius"].binWidth = kRadiusBinWidth;

  LoanBook book(n, -1);
  const LoanTerms terms{config.loanSize, config.maturity};
  const SrtParams srtParams{config.srtEpsilon, config.srtZeta};
  long cumulativeVolume = 0;

  for (int t = 0; t < config.steps; ++t) {
    const ShockDraw shocks = drawShocks(banks, config.shockProb, shockRng);
    const std::vector<double> equity = equityVector(banks);
    const NetExposureMatrix priorExposure = buildNetExposure(book);  // end of last period
    const NetExposureMatrix strippedExposure = buildNetExposure(book, t);  // maturing loans gone

    // Beliefs about borrower failure over the loan's life, formed on the
    // prior period's network.
    std::vector<double> contagionProb(static_cast<std::size_t>(n), 0.0);
    if (config.beliefMode == BeliefMode::Full && aggregateHazard > 0.0)
      contagionProb = endogenousDefaultProbs(priorExposure, equity, exogenousOverMaturity);
    std::vector<double> borrowerProb, reservations, lenderRates;
    borrowerProb.reserve(shocks.borrowers.size());
    for (int b : shocks.borrowers) {
      const double exo = exogenousOverMaturity[static_cast<std::size_t>(b)];
      const double contagion = contagionProb[static_cast<std::size_t>(b)];
      const double total = totalDefaultProb(exo, contagion, config.beliefMode, config.commonPrior);
      borrowerProb.push_back(total);
      reservations.push_back(banks[static_cast<std::size_t>(b)].reservationRate);
      result.probabilityAudit.push_back({t, b, exo, contagion, total});
    }
    lenderRates.reserve(shocks.lenders.size());
    for (int l : shocks.lenders)
      lenderRates.push_back(banks[static_cast<std::size_t>(l)].depositRate);

    const QuoteSet quotes =
        buildQuotes(shocks.lenders, shocks.borrowers, lenderRates, borrowerProb, config.maturity);
    const LiquidityMarket market = buildPreferences(
        t, n, quotes, reservations, LenderPreferences::Indifferent, borrowerProb);

    Matching matched(n);
    switch (policy) {
      case Policy::NoTax:
        matched = selectEquilibrium(market, tieRng);
        break;
      case Policy::Tobin: {
        const TaxMatrix flat =
            TaxMatrix::tobin(config.tobinRate, market.lenders.size(), market.borrowers.size());
        matched = selectEquilibrium(applyTax(market, flat), tieRng);
        break;
      }
      case Policy::Srt: {
        // The paired untaxed matching fixes the volume target; it consumes
        // the same tie-break draw the untaxed run would.
        const Matching untaxed = selectEquilibrium(market, tieRng);
        const SrtOptimum opt =
            optimizeSystemicRiskTax(market, strippedExposure, equity, firstFailureProb,
                                    untaxed.volume(), config.loanSize, srtParams);
        matched = uniqueEquilibriumUnderTax(market, opt.tax);
        if (!(matched == opt.matching))
          throw std::logic_error("runScenario: tax schedule did not realize its target matching");
        result.optimizerCandidates += opt.candidatesEvaluated;
        result.optimizerSeconds += opt.wallSeconds;
        break;
      }
    }

    advancePeriod(book, banks, shocks.lenders, shocks.borrowers, matched, terms, t);
    const NetExposureMatrix exposure = buildNetExposure(book);
    const double esl = expectedSystemicLoss(exposure, equity, firstFailureProb);
    cumulativeVolume += matched.volume();

    const double clustering = averageClusteringCoefficient(exposure);
    const double radius = spectralRadius(exposure);
    result.series.push_back({t, policy, esl, cumulativeVolume, clustering, radius});

    const DegreeCounts degrees = degreeDistributions(exposure);
    for (int d : degrees.inDegree) result.distributions["in_degree"].add(d);
    for (int d : degrees.outDegree) result.distributions["out_degree"].add(d);
    for (double si : systemicImpactProfile(exposure, equity)) result.distributions["si"].add(si);
    result.distributions["clustering"].add(clustering);
    result.distributions["spectral_radius"].add(radius);
  }
  return result;
}

void writeTimeSeriesCsv(const ScenarioResult& result, std::ostream& out) {
  out << "t,policy,esl,cum_volume,avg_clustering,spectral_radius\n";
  const std::string label = policyLabel(result.policy);
  for (const TimeSeriesRecord& r : result.series)
    out << r.period << ',' << label << ',' << csv::formatDouble(r.esl) << ','
        << r.cumulativeVolume << ',' << csv::formatDouble(r.avgClustering) << ','
        << csv::formatDouble(r.spectralRadius) << '\n';
}

void writeDistributionsCsv(const ScenarioResult& result, std::ostream& out) {
  out << "metric,bin,count\n";
  for (const auto& [metric, histogram] : result.distributions)
    for (const auto& [bin, count] : histogram.counts)
      out << metric << ',' << csv::formatDouble(static_cast<double>(bin) * histogram.binWidth)
          << ',' << count << '\n';
}

void writeProbabilityAuditCsv(const ScenarioResult& result, std::ostream& out) {
  out << "t,bank,exo_prob,contagion_prob,total_prob\n";
  for (const BorrowerProbabilityRecord& r : result.probabilityAudit)
    out << r.period << ',' << r.bank << ',' << csv::formatDouble(r.exogenous) << ','
        << csv::formatDouble(r.contagion) << ',' << csv::formatDouble(r.total) << '\n';
}

}  // namespace srtlab
