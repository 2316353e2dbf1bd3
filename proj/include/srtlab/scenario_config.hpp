#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "srtlab/sim.hpp"

namespace srtlab {

inline constexpr const char* kToolVersion = "srtlab 0.1.0";

// Environment variables SRTLAB_<KEY> override file values; command-line
// flags override both.
inline constexpr const char* kEnvPrefix = "SRTLAB_";

// A parsed scenario file: the numeric configuration plus which policies to
// run ("notax", "tobin", "srt" or "all").
struct ScenarioSpec {
  ScenarioConfig config;
  std::string policy = "all";

  bool operator==(const ScenarioSpec&) const = default;
};

// Flat key = value format; '#' starts a comment; distributions are written
// uniform(lo,hi) and a bare number means a point mass.
ScenarioSpec parseScenarioText(const std::string& text, bool applyEnvOverrides = false);
ScenarioSpec parseScenarioFile(const std::string& path, bool applyEnvOverrides = true);
std::string renderScenario(const ScenarioSpec& spec);

struct RunManifest {
  std::string configPath;
  ScenarioSpec spec;  // resolved, overrides applied
  std::string outputDir;
  std::string toolVersion = kToolVersion;
  std::uint64_t seed = 0;
  std::string timestamp;  // ISO-8601, informational only
  double onePeriodDefaultMass = 0.0;  // divide the loss series by this for the
                                      // conditional-on-a-default reading

  bool operator==(const RunManifest&) const = default;
};

std::string renderManifest(const RunManifest& manifest);
RunManifest parseManifest(const std::string& json);

}  // namespace srtlab
