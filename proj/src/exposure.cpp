#include "srtlab/exposure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "srtlab/csv.hpp"

namespace srtlab {

NetExposureMatrix NetExposureMatrix::fromDense(const std::vector<std::vector<double>>& rows,
                                               long asOf, double tolerance) {
  const int n = static_cast<int>(rows.size());
  NetExposureMatrix m(n, asOf);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw std::invalid_argument("NetExposureMatrix::fromDense: ragged input");
    for (int j = 0; j < n; ++j)
      m.a_[m.idx(i, j)] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const auto [bi, bj] = m.firstAsymmetry(tolerance);
  if (bi >= 0)
    throw std::invalid_argument("NetExposureMatrix::fromDense: entries (" + std::to_string(bi) +
                                "," + std::to_string(bj) + ") violate antisymmetry");
  return m;
}

bool NetExposureMatrix::isAntisymmetric(double tolerance) const {
  return firstAsymmetry(tolerance).first < 0;
}

double NetExposureMatrix::maxAbs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

std::pair<int, int> NetExposureMatrix::firstAsymmetry(double tolerance) const {
  const double scale = std::max(1.0, maxAbs());
  for (int i = 0; i < n_; ++i) {
    if (std::abs(at(i, i)) > tolerance * scale) return {i, i};
    for (int j = i + 1; j < n_; ++j)
      if (std::abs(at(i, j) + at(j, i)) > tolerance * scale) return {i, j};
  }
  return {-1, -1};
}

void NetExposureMatrix::writeCsv(std::ostream& out) const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (j) out << ',';
      out << csv::formatDouble(at(i, j));
    }
    out << '\n';
  }
}

}  // namespace srtlab
