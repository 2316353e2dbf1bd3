#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "srtlab/fixtures.hpp"
#include "srtlab/rng.hpp"
#include "srtlab/sim.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace srtlab;

namespace {

ScenarioConfig quickConfig() {
  ScenarioConfig c;
  c.bankCount = 6;
  c.steps = 25;
  c.maturity = 8;
  c.seed = 7;
  return c;
}

}  // namespace

TEST_CASE("degree counts") {
  SUBCASE("zero matrix, zero degrees") {
    const DegreeCounts d = degreeDistributions(NetExposureMatrix(4));
    for (int v : d.inDegree) CHECK(v == 0);
    for (int v : d.outDegree) CHECK(v == 0);
  }
  SUBCASE("reference network: the multi-borrower has two net financiers") {
    const DegreeCounts d =
        degreeDistributions(buildNetExposure(fixtures::referenceLoanBook()));
    CHECK(d.outDegree[0] == 0);
    CHECK(d.inDegree[0] == 2);
  }
  SUBCASE("in and out degrees pair up") {
    Rng rng(107);
    for (int trial = 0; trial < 50; ++trial) {
      const DegreeCounts d =
          degreeDistributions(testgen::randomExposure(rng, rng.uniformInt(2, 8), 3));
      CHECK(std::accumulate(d.inDegree.begin(), d.inDegree.end(), 0) ==
            std::accumulate(d.outDegree.begin(), d.outDegree.end(), 0));
    }
  }
}

TEST_CASE("systemic impact profile") {
  SUBCASE("no exposures, no impact") {
    const auto si = systemicImpactProfile(NetExposureMatrix(3), {1.0, 2.0, 3.0});
    CHECK(si == std::vector<double>{0.0, 0.0, 0.0});
  }
  SUBCASE("the efficient chain configuration keeps both active lenders at zero") {
    const auto e = fixtures::chainEconomy();
    NetExposureMatrix exposure = e.priorExposure;
    exposure.addLoan(0, 3, e.edgeSize);
    exposure.addLoan(1, 4, e.edgeSize);
    const auto si = systemicImpactProfile(exposure, e.equity);
    CHECK(si[0] == 0.0);
    CHECK(si[1] == 0.0);
    CHECK(si[2] == doctest::Approx(150.0));
  }
}

TEST_CASE("clustering coefficient") {
  SUBCASE("triangle") {
    NetExposureMatrix m(3);
    m.addLoan(0, 1, 1.0);
    m.addLoan(1, 2, 1.0);
    m.addLoan(2, 0, 1.0);
    CHECK(averageClusteringCoefficient(m) == doctest::Approx(1.0));
  }
  SUBCASE("star") {
    NetExposureMatrix m(4);
    m.addLoan(0, 1, 1.0);
    m.addLoan(0, 2, 1.0);
    m.addLoan(0, 3, 1.0);
    CHECK(averageClusteringCoefficient(m) == doctest::Approx(0.0));
  }
  SUBCASE("matches triple counting on random graphs") {
    Rng rng(109);
    for (int trial = 0; trial < 200; ++trial) {
      const NetExposureMatrix m = testgen::randomExposure(rng, rng.uniformInt(2, 6), 2);
      CHECK(averageClusteringCoefficient(m) ==
            doctest::Approx(oracle::tripleCountClustering(m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("spectral radius") {
  SUBCASE("empty graph") { CHECK(spectralRadius(NetExposureMatrix(5)) == 0.0); }
  SUBCASE("complete graph on five nodes") {
    NetExposureMatrix m(5);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) m.addLoan(i, j, 1.0);
    CHECK(spectralRadius(m) == doctest::Approx(4.0).epsilon(1e-8));
  }
  SUBCASE("matches the dense eigensolver on random graphs") {
    Rng rng(113);
    for (int trial = 0; trial < 200; ++trial) {
      const NetExposureMatrix m = testgen::randomExposure(rng, rng.uniformInt(2, 6), 2);
      CHECK(spectralRadius(m) == doctest::Approx(oracle::jacobiSpectralRadius(m)).epsilon(1e-8));
    }
  }
}

TEST_CASE("scenario runs") {
  SUBCASE("no liquidity shocks, no market, no loss") {
    ScenarioConfig c = quickConfig();
    c.shockProb = 0.0;
    const ScenarioResult r = runScenario(c, Policy::NoTax);
    for (const TimeSeriesRecord& rec : r.series) {
      CHECK(rec.esl == 0.0);
      CHECK(rec.cumulativeVolume == 0);
    }
  }
  SUBCASE("no hazard, no expected loss, trading as usual") {
    ScenarioConfig c = quickConfig();
    c.hazardLow = c.hazardHigh = 0.0;
    const ScenarioResult r = runScenario(c, Policy::NoTax);
    CHECK(r.onePeriodDefaultMass == 0.0);
    CHECK(r.series.back().cumulativeVolume > 0);
    for (const TimeSeriesRecord& rec : r.series) CHECK(rec.esl == 0.0);
  }
  SUBCASE("equal configs give identical series, different seeds differ") {
    const ScenarioConfig c = quickConfig();
    std::ostringstream a, b;
    writeTimeSeriesCsv(runScenario(c, Policy::NoTax), a);
    writeTimeSeriesCsv(runScenario(c, Policy::NoTax), b);
    CHECK(a.str() == b.str());
    ScenarioConfig other = c;
    other.seed = 8;
    std::ostringstream d;
    writeTimeSeriesCsv(runScenario(other, Policy::NoTax), d);
    CHECK(a.str() != d.str());
  }
  SUBCASE("policy invariants on a paired short run") {
    const ScenarioConfig c = quickConfig();
    const ScenarioResult untaxed = runScenario(c, Policy::NoTax);
    const ScenarioResult flat = runScenario(c, Policy::Tobin);
    const ScenarioResult targeted = runScenario(c, Policy::Srt);
    REQUIRE(untaxed.series.size() == flat.series.size());
    REQUIRE(untaxed.series.size() == targeted.series.size());
    double untaxedLoss = 0.0, targetedLoss = 0.0;
    for (std::size_t t = 0; t < untaxed.series.size(); ++t) {
      CHECK(targeted.series[t].cumulativeVolume == untaxed.series[t].cumulativeVolume);
      CHECK(flat.series[t].cumulativeVolume <= untaxed.series[t].cumulativeVolume);
      if (t > 0) {
        CHECK(untaxed.series[t].cumulativeVolume >= untaxed.series[t - 1].cumulativeVolume);
        CHECK(flat.series[t].cumulativeVolume >= flat.series[t - 1].cumulativeVolume);
      }
      untaxedLoss += untaxed.series[t].esl;
      targetedLoss += targeted.series[t].esl;
    }
    CHECK(targetedLoss <= untaxedLoss);
  }
  SUBCASE("histograms cover every period and bank") {
    const ScenarioConfig c = quickConfig();
    const ScenarioResult r = runScenario(c, Policy::NoTax);
    long siSamples = 0;
    for (const auto& [bin, count] : r.distributions.at("si").counts) siSamples += count;
    CHECK(siSamples == static_cast<long>(c.bankCount) * c.steps);
    long clusteringSamples = 0;
    for (const auto& [bin, count] : r.distributions.at("clustering").counts)
      clusteringSamples += count;
    CHECK(clusteringSamples == c.steps);
  }
  SUBCASE("the targeted tax shifts the systemic-impact mass toward zero") {
    ScenarioConfig c = quickConfig();
    c.steps = 60;
    const auto histogramMean = [](const Histogram& h) {
      double weighted = 0.0;
      long total = 0;
      for (const auto& [bin, count] : h.counts) {
        weighted += static_cast<double>(bin) * h.binWidth * static_cast<double>(count);
        total += count;
      }
      return total ? weighted / static_cast<double>(total) : 0.0;
    };
    const double untaxed = histogramMean(runScenario(c, Policy::NoTax).distributions.at("si"));
    const double targeted = histogramMean(runScenario(c, Policy::Srt).distributions.at("si"));
    CHECK(targeted <= untaxed);
  }
  SUBCASE("the probability audit carries the belief inputs") {
    ScenarioConfig c = quickConfig();
    c.beliefMode = BeliefMode::Naive;
    const ScenarioResult r = runScenario(c, Policy::NoTax);
    CHECK_FALSE(r.probabilityAudit.empty());
    for (const BorrowerProbabilityRecord& rec : r.probabilityAudit) {
      CHECK(rec.period >= 0);
      CHECK(rec.period < c.steps);
      CHECK(rec.contagion == 0.0);  // naive banks ignore contagion entirely
      CHECK(rec.total == rec.exogenous);
    }
    ScenarioConfig full = c;
    full.beliefMode = BeliefMode::Full;
    const ScenarioResult rf = runScenario(full, Policy::NoTax);
    for (const BorrowerProbabilityRecord& rec : rf.probabilityAudit)
      CHECK(rec.total >= rec.exogenous);
  }
}

TEST_CASE("csv writers") {
  ScenarioConfig c = quickConfig();
  c.steps = 3;
  const ScenarioResult r = runScenario(c, Policy::NoTax);
  std::ostringstream series;
  writeTimeSeriesCsv(r, series);
  const std::string seriesText = series.str();
  CHECK(seriesText.rfind("t,policy,esl,cum_volume,avg_clustering,spectral_radius\n", 0) == 0);
  CHECK(std::count(seriesText.begin(), seriesText.end(), '\n') == 4);
  std::ostringstream dist;
  writeDistributionsCsv(r, dist);
  CHECK(dist.str().rfind("metric,bin,count\n", 0) == 0);
}
