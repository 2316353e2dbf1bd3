#include "srtlab/scenario_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "srtlab/csv.hpp"

namespace srtlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parseNumber(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' has non-numeric value '" + value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config: key '" + key + "' has trailing junk in '" + value + "'");
  return v;
}

// uniform(lo,hi) or a bare number (point mass).
std::pair<double, double> parseUniform(const std::string& key, const std::string& value) {
  if (value.rfind("uniform(", 0) == 0 && value.back() == ')') {
    const std::string inner = value.substr(8, value.size() - 9);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("config: key '" + key + "' expects uniform(lo,hi)");
    const double lo = parseNumber(key, trim(inner.substr(0, comma)));
    const double hi = parseNumber(key, trim(inner.substr(comma + 1)));
    return {lo, hi};
  }
  const double v = parseNumber(key, value);
  return {v, v};
}

std::map<std::string, std::string, std::less<>> parseKeyValues(const std::string& text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineNo) +
                                  " is not of the form key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: line " + std::to_string(lineNo) +
                                  " has an empty key or value");
    kv[key] = value;
  }
  return kv;
}

const std::vector<std::string>& knownKeys() {
  static const std::vector<std::string> keys = {
      "banks",        "steps",          "maturity",     "loan_size",    "shock_prob",
      "external_liability", "risky_asset", "deposit_rate", "hazard_rate", "reservation_rate",
      "tobin_rate",   "belief_mode",    "common_prior", "srt_epsilon",  "srt_zeta",
      "seed",         "policy"};
  return keys;
}

ScenarioSpec specFromKeyValues(std::map<std::string, std::string, std::less<>> kv) {
  for (const auto& [key, value] : kv) {
    (void)value;
    if (std::find(knownKeys().begin(), knownKeys().end(), key) == knownKeys().end())
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  ScenarioSpec spec;
  ScenarioConfig& c = spec.config;
  auto number = [&](const char* key, double& out) {
    if (auto it = kv.find(key); it != kv.end()) out = parseNumber(key, it->second);
  };
  auto integer = [&](const char* key, int& out) {
    if (auto it = kv.find(key); it != kv.end())
      out = static_cast<int>(parseNumber(key, it->second));
  };
  auto range = [&](const char* key, double& lo, double& hi) {
    if (auto it = kv.find(key); it != kv.end()) std::tie(lo, hi) = parseUniform(key, it->second);
  };
  integer("banks", c.bankCount);
  integer("steps", c.steps);
  integer("maturity", c.maturity);
  number("loan_size", c.loanSize);
  number("shock_prob", c.shockProb);
  number("external_liability", c.externalLiability);
  range("risky_asset", c.riskyAssetLow, c.riskyAssetHigh);
  range("deposit_rate", c.depositRateLow, c.depositRateHigh);
  range("hazard_rate", c.hazardLow, c.hazardHigh);
  number("reservation_rate", c.reservationRate);
  number("tobin_rate", c.tobinRate);
  number("common_prior", c.commonPrior);
  number("srt_epsilon", c.srtEpsilon);
  number("srt_zeta", c.srtZeta);
  if (auto it = kv.find("seed"); it != kv.end())
    c.seed = static_cast<std::uint64_t>(std::stoull(it->second));
  if (auto it = kv.find("belief_mode"); it != kv.end()) {
    if (it->second == "naive")
      c.beliefMode = BeliefMode::Naive;
    else if (it->second == "full")
      c.beliefMode = BeliefMode::Full;
    else if (it->second == "common_prior")
      c.beliefMode = BeliefMode::CommonPrior;
    else
      throw std::invalid_argument("config: belief_mode must be naive, full or common_prior");
  }
  if (auto it = kv.find("policy"); it != kv.end()) {
    if (it->second != "all") policyFromLabel(it->second);  // validates
    spec.policy = it->second;
  }
  c.validate();
  return spec;
}

void overrideFromEnvironment(std::map<std::string, std::string, std::less<>>& kv) {
  for (const std::string& key : knownKeys()) {
    std::string envName = kEnvPrefix;
    for (char ch : key) envName.push_back(static_cast<char>(std::toupper(ch)));
    if (const char* value = std::getenv(envName.c_str())) kv[key] = value;
  }
}

std::string beliefModeName(BeliefMode mode) {
  switch (mode) {
    case BeliefMode::Naive:
      return "naive";
    case BeliefMode::Full:
      return "full";
    case BeliefMode::CommonPrior:
      return "common_prior";
  }
  throw std::logic_error("unknown belief mode");
}

std::string renderRange(double lo, double hi) {
  if (lo == hi) return csv::formatDouble(lo);
  return "uniform(" + csv::formatDouble(lo) + "," + csv::formatDouble(hi) + ")";
}

}  // namespace

ScenarioSpec parseScenarioText(const std::string& text, bool applyEnvOverrides) {
  auto kv = parseKeyValues(text);
  if (applyEnvOverrides) overrideFromEnvironment(kv);
  return specFromKeyValues(std::move(kv));
}

ScenarioSpec parseScenarioFile(const std::string& path, bool applyEnvOverrides) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parseScenarioText(buf.str(), applyEnvOverrides);
}

std::string renderScenario(const ScenarioSpec& spec) {
  const ScenarioConfig& c = spec.config;
  std::ostringstream out;
  out << "banks = " << c.bankCount << '\n'
      << "steps = " << c.steps << '\n'
      << "maturity = " << c.maturity << '\n'
      << "loan_size = " << csv::formatDouble(c.loanSize) << '\n'
      << "shock_prob = " << csv::formatDouble(c.shockProb) << '\n'
      << "external_liability = " << csv::formatDouble(c.externalLiability) << '\n'
      << "risky_asset = " << renderRange(c.riskyAssetLow, c.riskyAssetHigh) << '\n'
      << "deposit_rate = " << renderRange(c.depositRateLow, c.depositRateHigh) << '\n'
      << "hazard_rate = " << renderRange(c.hazardLow, c.hazardHigh) << '\n'
      << "reservation_rate = " << csv::formatDouble(c.reservationRate) << '\n'
      << "tobin_rate = " << csv::formatDouble(c.tobinRate) << '\n'
      << "belief_mode = " << beliefModeName(c.beliefMode) << '\n'
      << "common_prior = " << csv::formatDouble(c.commonPrior) << '\n'
      << "srt_epsilon = " << csv::formatDouble(c.srtEpsilon) << '\n'
      << "srt_zeta = " << csv::formatDouble(c.srtZeta) << '\n'
      << "seed = " << c.seed << '\n'
      << "policy = " << spec.policy << '\n';
  return out.str();
}

std::string renderManifest(const RunManifest& manifest) {
  nlohmann::json j;
  j["config_path"] = manifest.configPath;
  j["config"] = renderScenario(manifest.spec);
  j["output_dir"] = manifest.outputDir;
  j["tool_version"] = manifest.toolVersion;
  j["seed"] = manifest.seed;
  j["timestamp"] = manifest.timestamp;
  j["one_period_default_mass"] = manifest.onePeriodDefaultMass;
  return j.dump(2) + "\n";
}

RunManifest parseManifest(const std::string& json) {
  const nlohmann::json j = nlohmann::json::parse(json);
  RunManifest m;
  m.configPath = j.at("config_path").get<std::string>();
  m.spec = parseScenarioText(j.at("config").get<std::string>());
  m.outputDir = j.at("output_dir").get<std::string>();
  m.toolVersion = j.at("tool_version").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.onePeriodDefaultMass = j.at("one_period_default_mass").get<double>();
  return m;
}

}  // namespace srtlab
