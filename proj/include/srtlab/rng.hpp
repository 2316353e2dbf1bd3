#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace srtlab {

// Deterministic random source. All sampling is implemented on top of the
// raw 64-bit stream so that output bytes do not depend on the standard
// library's distribution internals (std::uniform_real_distribution et al.
// are implementation-defined and would break golden-file tests).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t nextU64() {
    // xorshift64* — small, fast, and fully specified here.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dULL;
  }

  // Uniform in [0,1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform: hi < lo");
    return lo + (hi - lo) * uniform01();
  }

  // Inclusive integer range, rejection-sampled to avoid modulo bias.
  std::uint64_t uniformIndex(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::uniformIndex: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = nextU64();
    while (x >= limit) x = nextU64();
    return x % bound;
  }

  int uniformInt(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniformInt: hi < lo");
    return lo + static_cast<int>(uniformIndex(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  double exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("Rng::exponential: rate <= 0");
    // -log(1-u) with u in [0,1) keeps the argument strictly positive.
    return -std::log1p(-uniform01()) / rate;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    // Fisher-Yates; std::shuffle's draw pattern is implementation-defined.
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniformIndex(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Stable substream derivation: one master seed fans out into independent
// per-concern streams (shocks, tie-breaks, ...) so that paired scenario
// runs consume identical randomness per concern.
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace srtlab
