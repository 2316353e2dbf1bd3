#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace srtlab::csv {

// 17 significant digits round-trips any double exactly; goldens rely on it.
inline std::string formatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> parseMatrix(const std::string& text);
std::vector<std::vector<double>> readMatrixFile(const std::string& path);
std::vector<double> readColumnFile(const std::string& path);

}  // namespace srtlab::csv
