#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace srtlab {

// Exit codes: 0 success, 1 invalid input/config, 2 runtime failure,
// 3 fixture check failed.

struct RunOptions {
  std::string configPath;
  std::optional<std::uint64_t> seed;   // overrides the config file
  std::optional<std::string> policy;   // notax | tobin | srt | all
  std::string outDir = ".";
  bool json = false;
};
int cmdRun(const RunOptions& options);

struct FixtureOptions {
  bool json = false;
};
int cmdFixtures(const FixtureOptions& options);

struct AnalyzeOptions {
  std::string exposureCsv;
  std::string equityCsv;
  double loanSize = 1.0;  // unit for the per-edge what-if table
  bool json = false;
};
int cmdAnalyze(const AnalyzeOptions& options);

}  // namespace srtlab
