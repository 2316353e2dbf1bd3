#include "srtlab/cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "srtlab/cascade.hpp"
#include "srtlab/csv.hpp"
#include "srtlab/fixtures.hpp"
#include "srtlab/scenario_config.hpp"
#include "srtlab/sim.hpp"
#include "srtlab/tax.hpp"

namespace srtlab {

namespace {

std::string isoTimestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<Policy> policiesFor(const std::string& selection) {
  if (selection == "all") return {Policy::NoTax, Policy::Tobin, Policy::Srt};
  return {policyFromLabel(selection)};
}

void writeFileOrThrow(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

struct FixtureOutcome {
  std::string name;
  bool pass = false;
  double milliseconds = 0.0;
  std::string detail;
};

FixtureOutcome runFixture(const std::string& name, const std::function<std::string()>& check) {
  FixtureOutcome outcome;
  outcome.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    outcome.detail = check();  // empty string = pass
    outcome.pass = outcome.detail.empty();
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.detail = e.what();
  }
  outcome.milliseconds =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

std::string checkNetExposureFixture() {
  const LoanBook book = fixtures::referenceLoanBook();
  const NetExposureMatrix got = buildNetExposure(book);
  const auto want = fixtures::referenceNetExposure();
  for (int i = 0; i < got.size(); ++i)
    for (int j = 0; j < got.size(); ++j)
      if (got.at(i, j) != want[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
               csv::formatDouble(got.at(i, j)) + ", expected " +
               csv::formatDouble(want[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return "";
}

double chainEsl(const fixtures::ChainEconomy& e, const Matching& matching, double firstFailure) {
  NetExposureMatrix exposure = e.priorExposure;
  for (int lenderId : e.market.lenders) {
    const int p = matching.partner(lenderId);
    if (p != lenderId) exposure.addLoan(lenderId, p, e.edgeSize);
  }
  const std::vector<double> prob(static_cast<std::size_t>(exposure.size()), firstFailure);
  return expectedSystemicLoss(exposure, e.equity, prob);
}

std::string checkChainEslRatios() {
  const auto e = fixtures::chainEconomy();
  const double p = 0x1.0p-7;  // dyadic, so the products below are exact
  const struct {
    const Matching& matching;
    int units;
  } cases[] = {{e.matchingA, fixtures::kChainEslUnitsA},
               {e.matchingB, fixtures::kChainEslUnitsB},
               {e.matchingC, fixtures::kChainEslUnitsC}};
  for (const auto& c : cases) {
    const double got = chainEsl(e, c.matching, p);
    const double want = p * c.units * 50.0;
    if (got != want)
      return "expected systemic loss " + csv::formatDouble(want) + ", got " +
             csv::formatDouble(got);
  }
  return "";
}

std::string checkEquilibriumPair() {
  const auto e = fixtures::chainEconomy();
  const std::vector<Matching> stable = enumerateEquilibria(e.market);
  if (stable.size() != 2)
    return "expected exactly 2 stable matchings, found " + std::to_string(stable.size());
  const bool hasA = stable[0] == e.matchingA || stable[1] == e.matchingA;
  const bool hasB = stable[0] == e.matchingB || stable[1] == e.matchingB;
  if (!hasA || !hasB) return "stable set differs from the two reference matchings";
  const StabilityReport report = isStable(e.matchingC, e.market);
  if (report.stable) return "the efficient matching must not be stable untaxed";
  return "";
}

std::string checkSrtUniqueness() {
  const auto e = fixtures::chainEconomy();
  const std::vector<double> prob(static_cast<std::size_t>(e.priorExposure.size()), 0x1.0p-7);

  const SrtOptimum opt = optimizeSystemicRiskTax(e.market, e.priorExposure, e.equity, prob,
                                                 /*targetVolume=*/2, e.edgeSize, SrtParams{});
  if (!(opt.matching == e.matchingC)) return "optimizer did not pick the efficient matching";
  if (opt.esl != 0x1.0p-7 * fixtures::kChainEslUnitsC * 50.0)
    return "optimizer value is not the efficient loss";
  const Matching realized = uniqueEquilibriumUnderTax(e.market, opt.tax);
  if (!(realized == e.matchingC)) return "tax schedule did not realize the efficient matching";
  return "";
}

}  // namespace

int cmdRun(const RunOptions& options) {
  ScenarioSpec spec;
  try {
    spec = parseScenarioFile(options.configPath);
    if (options.seed) spec.config.seed = *options.seed;
    if (options.policy) {
      if (*options.policy != "all") policyFromLabel(*options.policy);  // validates
      spec.policy = *options.policy;
    }
    spec.config.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: invalid configuration '" << options.configPath << "': " << e.what()
              << '\n';
    return 1;
  }

  try {
    std::filesystem::create_directories(options.outDir);
    RunManifest manifest;
    manifest.configPath = options.configPath;
    manifest.spec = spec;
    manifest.outputDir = options.outDir;
    manifest.seed = spec.config.seed;
    manifest.timestamp = isoTimestamp();

    nlohmann::json summary;
    summary["outputs"] = nlohmann::json::array();
    for (Policy policy : policiesFor(spec.policy)) {
      const ScenarioResult result = runScenario(spec.config, policy);
      manifest.onePeriodDefaultMass = result.onePeriodDefaultMass;

      const std::string label = policyLabel(policy);
      const std::string seriesPath = options.outDir + "/timeseries_" + label + ".csv";
      const std::string distPath = options.outDir + "/distributions_" + label + ".csv";
      const std::string auditPath = options.outDir + "/audit_" + label + ".csv";
      std::ostringstream series, dist, audit;
      writeTimeSeriesCsv(result, series);
      writeDistributionsCsv(result, dist);
      writeProbabilityAuditCsv(result, audit);
      writeFileOrThrow(seriesPath, series.str());
      writeFileOrThrow(distPath, dist.str());
      writeFileOrThrow(auditPath, audit.str());

      nlohmann::json entry;
      entry["policy"] = label;
      entry["timeseries"] = seriesPath;
      entry["distributions"] = distPath;
      entry["audit"] = auditPath;
      entry["final_cum_volume"] = result.series.empty() ? 0 : result.series.back().cumulativeVolume;
      if (policy == Policy::Srt) {
        entry["optimizer_candidates"] = result.optimizerCandidates;
        entry["optimizer_seconds"] = result.optimizerSeconds;
      }
      summary["outputs"].push_back(entry);
      if (!options.json)
        std::cout << "wrote " << seriesPath << " and " << distPath << '\n';
    }
    writeFileOrThrow(options.outDir + "/manifest.json", renderManifest(manifest));
    if (options.json) {
      summary["manifest"] = options.outDir + "/manifest.json";
      std::cout << summary.dump(2) << '\n';
    } else {
      std::cout << "wrote " << options.outDir << "/manifest.json" << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: run failed: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cmdFixtures(const FixtureOptions& options) {
  const std::vector<FixtureOutcome> outcomes = {
      runFixture("net_exposure", checkNetExposureFixture),
      runFixture("chain_esl_ratios", checkChainEslRatios),
      runFixture("equilibrium_pair", checkEquilibriumPair),
      runFixture("srt_uniqueness", checkSrtUniqueness),
  };
  bool allPass = true;
  nlohmann::json j = nlohmann::json::array();
  for (const FixtureOutcome& o : outcomes) {
    allPass = allPass && o.pass;
    if (options.json) {
      nlohmann::json entry;
      entry["name"] = o.name;
      entry["pass"] = o.pass;
      entry["milliseconds"] = o.milliseconds;
      if (!o.detail.empty()) entry["detail"] = o.detail;
      j.push_back(entry);
    } else {
      std::cout << (o.pass ? "PASS" : "FAIL") << "  " << o.name;
      if (!o.pass) std::cout << "  (" << o.detail << ")";
      std::cout << '\n';
    }
  }
  if (options.json) std::cout << j.dump(2) << '\n';
  return allPass ? 0 : 3;
}

int cmdAnalyze(const AnalyzeOptions& options) {
  NetExposureMatrix exposure;
  std::vector<double> equity;
  try {
    const auto rows = csv::readMatrixFile(options.exposureCsv);
    exposure = NetExposureMatrix::fromDense(rows);
    equity = csv::readColumnFile(options.equityCsv);
    if (static_cast<int>(equity.size()) != exposure.size())
      throw std::invalid_argument("equity file has " + std::to_string(equity.size()) +
                                  " entries for a " + std::to_string(exposure.size()) +
                                  "-bank exposure matrix");
    for (double e : equity)
      if (e < 0.0) throw std::invalid_argument("negative equity entry");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const int n = exposure.size();
  const std::vector<double> prob(static_cast<std::size_t>(n),
                                 n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
  const std::vector<double> si = systemicImpactProfile(exposure, equity);
  const double esl = expectedSystemicLoss(exposure, equity, prob);

  nlohmann::json j;
  if (!options.json) {
    std::cout << "bank,systemic_impact\n";
    for (int i = 0; i < n; ++i)
      std::cout << i << ',' << csv::formatDouble(si[static_cast<std::size_t>(i)]) << '\n';
    std::cout << "expected_systemic_loss," << csv::formatDouble(esl)
              << "  # uniform first-failure probabilities 1/" << n << '\n';
    std::cout << "lender,borrower,esl_delta\n";
  } else {
    j["systemic_impact"] = si;
    j["expected_systemic_loss"] = esl;
    j["esl_delta"] = nlohmann::json::array();
  }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      const double delta = edgeEslDelta(exposure, equity, prob, i, k, options.loanSize);
      if (options.json)
        j["esl_delta"].push_back({{"lender", i}, {"borrower", k}, {"delta", delta}});
      else
        std::cout << i << ',' << k << ',' << csv::formatDouble(delta) << '\n';
    }
  if (options.json) std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace srtlab
