#include "srtlab/bank.hpp"

#include <stdexcept>
#include <string>

namespace srtlab {

std::vector<double> equityVector(const std::vector<BankState>& banks) {
  std::vector<double> e;
  e.reserve(banks.size());
  for (const auto& b : banks) e.push_back(b.equity());
  return e;
}

double applyExogenousShock(std::vector<BankState>& banks, int failedBank) {
  if (failedBank < 0 || failedBank >= static_cast<int>(banks.size()))
    throw std::out_of_range("applyExogenousShock: no bank " + std::to_string(failedBank));
  BankState& b = banks[static_cast<std::size_t>(failedBank)];
  if (b.bankrupt)
    throw std::invalid_argument("applyExogenousShock: bank " + std::to_string(failedBank) +
                                " is already bankrupt");
  b.riskyAsset = 0.0;
  b.bankrupt = true;
  return b.equity();
}

}  // namespace srtlab
