#pragma once

// Counter-based random numbers.
//
// Every draw is a pure function of (master_seed, stream_id, domain, counter), so
// samples are reproducible regardless of evaluation order or thread count.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "corrtest/graph.hpp"

namespace corrtest {

/// Identifies one independent random stream: a trial of an experiment.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

namespace detail {
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class CounterRng {
 public:
  constexpr CounterRng() : CounterRng(SeedSpec{}) {}

  constexpr explicit CounterRng(SeedSpec seed, std::uint64_t domain = 0) {
    const std::uint64_t s = detail::mix64(seed.master_seed ^ 0x5851F42D4C957F2DULL);
    const std::uint64_t t = detail::mix64(s ^ detail::mix64(seed.stream_id + 0x14057B7EF767814FULL));
    key_a_ = detail::mix64(t ^ detail::mix64(domain ^ 0xD1B54A32D192ED03ULL));
    key_b_ = detail::mix64(key_a_ ^ 0xABC98388FB8FAC03ULL);
  }

  /// Independent stream for a sub-purpose (edges, permutation, restarts, ...).
  constexpr CounterRng substream(std::uint64_t domain) const {
    CounterRng r;
    r.key_a_ = detail::mix64(key_a_ ^ detail::mix64(domain + 0x8CB92BA72F3D8DD7ULL));
    r.key_b_ = detail::mix64(r.key_a_ ^ key_b_);
    return r;
  }

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return detail::mix64(key_a_ + detail::mix64(counter ^ key_b_));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Two uniforms on [0, 1) with 32 bits each from a single draw.
  void uniform_pair(std::uint64_t counter, double& first, double& second) const {
    const std::uint64_t b = bits(counter);
    first = static_cast<double>(b >> 32) * 0x1.0p-32;
    second = static_cast<double>(b & 0xFFFFFFFFULL) * 0x1.0p-32;
  }

  /// Standard normal via Box-Muller, consuming counters 2c and 2c+1.
  double normal(std::uint64_t counter) const {
    const double u1 = 1.0 - uniform(2 * counter);  // (0, 1]
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, bound) by multiply-shift.
  std::uint64_t bounded(std::uint64_t counter, std::uint64_t bound) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(counter)) * bound) >> 64);
  }

 private:
  std::uint64_t key_a_ = 0;
  std::uint64_t key_b_ = 0;
};

/// Sequential view of a counter stream; models UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(CounterRng base) : base_(base) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return base_.bits(counter_++); }

  double uniform() { return base_.uniform(counter_++); }
  double normal() { return base_.normal(counter_++); }
  std::uint64_t bounded(std::uint64_t bound) { return base_.bounded(counter_++, bound); }

 private:
  CounterRng base_;
  std::uint64_t counter_ = 0;
};

/// Uniform permutation of [n] by Fisher-Yates.
inline Permutation random_permutation(int n, StreamRng& rng) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(m[static_cast<std::size_t>(i)], m[j]);
  }
  return Permutation(std::move(m));
}

inline Permutation random_permutation(int n, const CounterRng& rng) {
  StreamRng s(rng);
  return random_permutation(n, s);
}

}  // namespace corrtest
