#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "readeval/error.hpp"

namespace readeval {

// Deterministic draws layered over mt19937_64. The distribution logic is
// hand-rolled because std::uniform_*_distribution output is
// implementation-defined; a given seed must produce the same stream on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n > 0. Modulo rejection keeps draws unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// Piecewise-constant distribution over integer confidence scores in
// [0, 100]: pick a bin by weight, then an integer uniformly inside it.
struct PiecewiseConstant {
  struct Bin {
    double lo = 0;
    double hi = 0;
    double weight = 0;
  };
  std::vector<Bin> bins;

  // Bins must lie inside [0, 100] with lo <= hi and weights summing to 1.
  void validate() const {
    if (bins.empty()) throw DataError("confidence distribution has no bins");
    double sum = 0;
    for (const Bin& b : bins) {
      if (b.weight < 0) throw DataError("confidence bin weight is negative");
      if (b.lo > b.hi || b.lo < 0 || b.hi > 100)
        throw DataError("confidence bin bounds must satisfy 0 <= lo <= hi <= 100");
      sum += b.weight;
    }
    if (sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9)
      throw DataError("confidence bin weights must sum to 1");
  }

  double sample(Rng& rng) const {
    double u = rng.uniform();
    for (const Bin& b : bins) {
      if (u < b.weight || &b == &bins.back())
        return static_cast<double>(rng.uniform_int(static_cast<std::int64_t>(b.lo),
                                                   static_cast<std::int64_t>(b.hi)));
      u -= b.weight;
    }
    return static_cast<double>(bins.back().hi);  // unreachable
  }

  double support_min() const {
    double m = 100;
    for (const Bin& b : bins)
      if (b.weight > 0 && b.lo < m) m = b.lo;
    return m;
  }

  double support_max() const {
    double m = 0;
    for (const Bin& b : bins)
      if (b.weight > 0 && b.hi > m) m = b.hi;
    return m;
  }
};

}  // namespace readeval
