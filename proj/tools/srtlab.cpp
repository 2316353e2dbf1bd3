// Command-line front end. All numerics live in the library; this file only
// parses arguments and dispatches.

#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "srtlab/cli_commands.hpp"
#include "srtlab/scenario_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interbank-network laboratory: loan formation by two-sided matching, "
               "insolvency cascades, and transaction-tax policy experiments"};
  app.set_version_flag("--version", std::string(srtlab::kToolVersion));
  app.require_subcommand(1);

  srtlab::RunOptions runOptions;
  std::uint64_t seedFlag = 0;
  std::string policyFlag;
  CLI::App* run = app.add_subcommand("run", "Run the configured scenario and export CSV series");
  run->add_option("--config", runOptions.configPath, "Scenario file (key = value lines)")
      ->required();
  CLI::Option* seedOpt = run->add_option("--seed", seedFlag, "Override the configured seed");
  CLI::Option* policyOpt =
      run->add_option("--policy", policyFlag, "notax, tobin, srt or all")
          ->check(CLI::IsMember({"notax", "tobin", "srt", "all"}));
  run->add_option("--out", runOptions.outDir, "Output directory (created if missing)");
  run->add_flag("--json", runOptions.json, "Print a machine-readable summary");

  srtlab::FixtureOptions fixtureOptions;
  CLI::App* fixtures =
      app.add_subcommand("fixtures", "Check the built-in reference networks and print PASS/FAIL");
  fixtures->add_flag("--json", fixtureOptions.json, "Machine-readable results");

  srtlab::AnalyzeOptions analyzeOptions;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Systemic-impact and loss analysis of an external exposure matrix");
  analyze->add_option("--exposure", analyzeOptions.exposureCsv, "Dense antisymmetric CSV matrix")
      ->required();
  analyze->add_option("--equity", analyzeOptions.equityCsv, "Equity per bank, one value per line")
      ->required();
  analyze->add_option("--loan-size", analyzeOptions.loanSize,
                      "Loan unit for the per-edge what-if table");
  analyze->add_flag("--json", analyzeOptions.json, "Machine-readable results");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (*seedOpt) runOptions.seed = seedFlag;
    if (*policyOpt) runOptions.policy = policyFlag;
    return srtlab::cmdRun(runOptions);
  }
  if (fixtures->parsed()) return srtlab::cmdFixtures(fixtureOptions);
  if (analyze->parsed()) return srtlab::cmdAnalyze(analyzeOptions);
  return 1;
}
