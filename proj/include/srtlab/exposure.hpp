#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

namespace srtlab {

// Antisymmetric matrix of netted bilateral loan positions. Entry (i,j) is
// what i has lent to j minus what j has lent to i; the diagonal is zero and
// (j,i) always mirrors (i,j) with opposite sign.
class NetExposureMatrix {
 public:
  NetExposureMatrix() = default;
  explicit NetExposureMatrix(int n, long asOf = 0)
      : n_(n), asOf_(asOf), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

  // Builds from a dense row-major matrix; throws if not antisymmetric.
  static NetExposureMatrix fromDense(const std::vector<std::vector<double>>& rows, long asOf = 0,
                                     double tolerance = 1e-9);

  int size() const { return n_; }
  long asOf() const { return asOf_; }
  void setAsOf(long t) { asOf_ = t; }

  double at(int i, int j) const { return a_[idx(i, j)]; }

  // Registers a (net) loan of `amount` from lender to borrower, keeping the
  // antisymmetry invariant by construction.
  void addLoan(int lender, int borrower, double amount) {
    a_[idx(lender, borrower)] += amount;
    a_[idx(borrower, lender)] -= amount;
  }

  bool isAntisymmetric(double tolerance = 1e-9) const;

  // Largest |entry|, used to scale tolerances.
  double maxAbs() const;

  // Indices of the first (i,j) violating antisymmetry, or (-1,-1).
  std::pair<int, int> firstAsymmetry(double tolerance = 1e-9) const;

  void writeCsv(std::ostream& out) const;

  bool operator==(const NetExposureMatrix& other) const {
    return n_ == other.n_ && a_ == other.a_;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  long asOf_ = 0;
  std::vector<double> a_;
};

}  // namespace srtlab
