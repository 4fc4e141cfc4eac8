#pragma once

// Samplers for the null model Q (independent graphs) and the planted model P
// (edge pairs correlated through a hidden uniform permutation π), Gaussian and
// Erdős–Rényi versions.
//
// Every random quantity is drawn from a CounterRng keyed by the trial seed and
// the pair index, so results do not depend on traversal order.

#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "corrtest/errors.hpp"
#include "corrtest/graph.hpp"
#include "corrtest/rng.hpp"

namespace corrtest {

struct GaussianParams {
  int n = 0;
  double rho = 0.0;

  void validate() const {
    if (n < 0) throw DomainError("n must be non-negative");
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
  }
};

/// Parent graph G(n, p), each child keeps every parent edge with probability s.
/// s = 0 is accepted as the degenerate independent case.
struct ErParams {
  int n = 0;
  double p = 0.5;
  double s = 0.5;

  void validate() const {
    if (n < 0) throw DomainError("n must be non-negative");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0, 1]");
  }
  double edge_prob() const { return p * s; }
};

template <class G>
struct GraphPair {
  G a;
  G b;
};

template <class G>
struct PlantedSample {
  G a;
  G b;
  Permutation pi;
};

/// Correlation between A_ij and B_{π(i)π(j)} under the planted ER model.
inline double rho_er(double p, double s) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("rho_er: p must lie in (0, 1)");
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("rho_er: s must lie in [0, 1]");
  if (p * s >= 1.0) throw DomainError("rho_er: ps must be < 1");
  return s * (1.0 - p) / (1.0 - p * s);
}

namespace detail {
// Substream tags; fixed so that samples stay reproducible across versions.
inline constexpr std::uint64_t kStreamA = 0xA;
inline constexpr std::uint64_t kStreamB = 0xB;
inline constexpr std::uint64_t kStreamPi = 0x51;
inline constexpr std::uint64_t kStreamPairs = 0x9A;
inline constexpr std::uint64_t kStreamParent = 0x9B;

inline Permutation planted_permutation(int n, SeedSpec seed) {
  return random_permutation(n, CounterRng(seed).substream(kStreamPi));
}

/// Index map idx(i,j) -> idx(π(i), π(j)).
inline std::vector<std::size_t> relabel_index(const Permutation& pi) {
  const int n = pi.size();
  std::vector<std::size_t> out;
  out.reserve(pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(pair_index(pi(i), pi(j), n));
  return out;
}

inline std::vector<std::uint64_t> empty_words(int n) {
  return std::vector<std::uint64_t>((pair_count(n) + 63) / 64, 0);
}

inline void set_bit(std::vector<std::uint64_t>& w, std::size_t idx) {
  w[idx >> 6] |= std::uint64_t{1} << (idx & 63);
}
}  // namespace detail

inline GraphPair<WeightedGraph> sample_null_gaussian(const GaussianParams& params, SeedSpec seed) {
  params.validate();
  const CounterRng root(seed);
  const CounterRng ra = root.substream(detail::kStreamA);
  const CounterRng rb = root.substream(detail::kStreamB);
  return {WeightedGraph::from_function(params.n, [&](std::size_t idx) { return ra.normal(idx); }),
          WeightedGraph::from_function(params.n, [&](std::size_t idx) { return rb.normal(idx); })};
}

/// B_{π(i)π(j)} = ρ A_ij + sqrt(1 − ρ²) Z_ij.
inline PlantedSample<WeightedGraph> sample_planted_gaussian(const GaussianParams& params,
                                                            SeedSpec seed) {
  params.validate();
  const int n = params.n;
  const CounterRng root(seed);
  const CounterRng ra = root.substream(detail::kStreamA);
  const CounterRng rz = root.substream(detail::kStreamB);
  Permutation pi = detail::planted_permutation(n, seed);
  const auto target = detail::relabel_index(pi);
  const double c = std::sqrt(1.0 - params.rho * params.rho);
  std::vector<double> a(pair_count(n));
  std::vector<double> b(pair_count(n));
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    a[idx] = ra.normal(idx);
    b[target[idx]] = params.rho * a[idx] + c * rz.normal(idx);
  }
  return {WeightedGraph(n, std::move(a)), WeightedGraph(n, std::move(b)), std::move(pi)};
}

inline GraphPair<BinaryGraph> sample_null_er(const ErParams& params, SeedSpec seed) {
  params.validate();
  const int n = params.n;
  const double q = params.edge_prob();
  const CounterRng r = CounterRng(seed).substream(detail::kStreamPairs);
  auto wa = detail::empty_words(n);
  auto wb = detail::empty_words(n);
  const std::size_t m = pair_count(n);
  for (std::size_t idx = 0; idx < m; ++idx) {
    double u = 0.0;
    double v = 0.0;
    r.uniform_pair(idx, u, v);
    if (u < q) detail::set_bit(wa, idx);
    if (v < q) detail::set_bit(wb, idx);
  }
  return {BinaryGraph::from_words(n, std::move(wa)), BinaryGraph::from_words(n, std::move(wb))};
}

/// Conditional form: A_ij ~ Bern(ps); B_{π(i)π(j)} ~ Bern(s) if A_ij = 1,
/// otherwise Bern(ps(1 − s)/(1 − ps)).
inline PlantedSample<BinaryGraph> sample_planted_er(const ErParams& params, SeedSpec seed) {
  params.validate();
  const int n = params.n;
  const double q = params.edge_prob();
  const double given_one = params.s;
  const double given_zero = q >= 1.0 ? 0.0 : q * (1.0 - params.s) / (1.0 - q);
  const CounterRng r = CounterRng(seed).substream(detail::kStreamPairs);
  Permutation pi = detail::planted_permutation(n, seed);
  const auto target = detail::relabel_index(pi);
  auto wa = detail::empty_words(n);
  auto wb = detail::empty_words(n);
  for (std::size_t idx = 0; idx < target.size(); ++idx) {
    double u = 0.0;
    double v = 0.0;
    r.uniform_pair(idx, u, v);
    const bool a = u < q;
    if (a) detail::set_bit(wa, idx);
    if (v < (a ? given_one : given_zero)) detail::set_bit(wb, target[idx]);
  }
  return {BinaryGraph::from_words(n, std::move(wa)), BinaryGraph::from_words(n, std::move(wb)),
          std::move(pi)};
}

/// Parent-subsampling form: G ~ G(n, p); A and B' keep each parent edge
/// independently with probability s; B = B' relabeled by π⁻¹.
inline PlantedSample<BinaryGraph> sample_planted_er_parent(const ErParams& params, SeedSpec seed) {
  params.validate();
  const int n = params.n;
  const CounterRng root(seed);
  const CounterRng rg = root.substream(detail::kStreamParent);
  const CounterRng rk = root.substream(detail::kStreamPairs);
  Permutation pi = detail::planted_permutation(n, seed);
  const auto target = detail::relabel_index(pi);
  auto wa = detail::empty_words(n);
  auto wb = detail::empty_words(n);
  for (std::size_t idx = 0; idx < target.size(); ++idx) {
    if (rg.uniform(idx) >= params.p) continue;
    double u = 0.0;
    double v = 0.0;
    rk.uniform_pair(idx, u, v);
    if (u < params.s) detail::set_bit(wa, idx);
    if (v < params.s) detail::set_bit(wb, target[idx]);
  }
  return {BinaryGraph::from_words(n, std::move(wa)), BinaryGraph::from_words(n, std::move(wb)),
          std::move(pi)};
}

}  // namespace corrtest
