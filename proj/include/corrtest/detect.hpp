#pragma once

// Likelihood kernels, the QAP statistic T_π = Σ_{i<j} A_ij B_{π(i)π(j)} (exact
// and by local search), the exact likelihood ratio for tiny n, detection
// thresholds, and the edge-count test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "corrtest/errors.hpp"
#include "corrtest/graph.hpp"
#include "corrtest/rng.hpp"
#include "corrtest/sampler.hpp"

namespace corrtest {

enum class Decision { Null, Planted };

/// Which side of the threshold declares "planted".
enum class Direction { AtLeast, Below };

struct TestOutcome {
  double statistic = 0.0;
  double threshold = 0.0;
  Direction direction = Direction::AtLeast;
  Decision decision = Decision::Null;
  std::optional<Permutation> argmax;

  static TestOutcome decide(double statistic, double threshold, Direction dir = Direction::AtLeast) {
    TestOutcome t;
    t.statistic = statistic;
    t.threshold = threshold;
    t.direction = dir;
    const bool planted = dir == Direction::AtLeast ? statistic >= threshold : statistic < threshold;
    t.decision = planted ? Decision::Planted : Decision::Null;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Kernels L(a, b) = P(a, b) / Q(a, b) for one edge pair

inline double log_kernel_gaussian(double a, double b, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("kernel_gaussian: rho must lie in [0, 1)");
  const double r2 = rho * rho;
  return -0.5 * std::log1p(-r2) + (-r2 * (a * a + b * b) + 2.0 * rho * a * b) / (2.0 * (1.0 - r2));
}

/// Mehler kernel.
inline double kernel_gaussian(double a, double b, double rho) { return std::exp(log_kernel_gaussian(a, b, rho)); }

inline double kernel_er(bool a, bool b, double p, double s) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("kernel_er: p must lie in (0, 1)");
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("kernel_er: s must lie in [0, 1]");
  const double q = p * s;
  if (a && b) return 1.0 / p;
  if (a != b) return (1.0 - s) / (1.0 - q);
  return (1.0 - 2.0 * q + p * s * s) / ((1.0 - q) * (1.0 - q));
}

inline double log_kernel_er(bool a, bool b, double p, double s) { return std::log(kernel_er(a, b, p, s)); }

/// Model tag used to evaluate the likelihood ratio on graphs of the matching type.
struct GaussianModel {
  double rho = 0.0;
  double log_kernel(double a, double b) const { return log_kernel_gaussian(a, b, rho); }
};

struct ErModel {
  double p = 0.5;
  double s = 0.5;
  double log_kernel(double a, double b) const { return log_kernel_er(a > 0.5, b > 0.5, p, s); }
};

// ---------------------------------------------------------------------------
// Dense adjacency used by the inner loops

namespace detail {
struct Dense {
  int n = 0;
  std::vector<double> w;  // row-major n × n, symmetric, zero diagonal
  double operator()(int i, int j) const { return w[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

template <ObservationGraph G>
Dense dense(const G& g) {
  Dense d{g.size(), std::vector<double>(static_cast<std::size_t>(g.size()) * static_cast<std::size_t>(g.size()), 0.0)};
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j) {
      const double x = g.weight(i, j);
      d.w[static_cast<std::size_t>(i) * static_cast<std::size_t>(d.n) + static_cast<std::size_t>(j)] = x;
      d.w[static_cast<std::size_t>(j) * static_cast<std::size_t>(d.n) + static_cast<std::size_t>(i)] = x;
    }
  return d;
}

inline double statistic(const Dense& a, const Dense& b, const std::vector<int>& pi) {
  double t = 0.0;
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j) t += a(i, j) * b(pi[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(j)]);
  return t;
}

inline double log_sum_exp(const std::vector<double>& x) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : x) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - mx);
  return mx + std::log(acc);
}
}  // namespace detail

template <ObservationGraph G>
double statistic_given_pi(const G& a, const G& b, const Permutation& pi) {
  detail::require_same_size(a.size(), b.size(), "statistic_given_pi");
  detail::require_same_size(a.size(), pi.size(), "statistic_given_pi");
  double t = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) t += a.weight(i, j) * b.weight(pi(i), pi(j));
  return t;
}

/// Σ_{i<j} log L(A_ij, B_{π(i)π(j)}).
template <ObservationGraph G, class Model>
double log_likelihood_given_pi(const G& a, const G& b, const Permutation& pi, const Model& model) {
  detail::require_same_size(a.size(), b.size(), "log_likelihood_given_pi");
  double t = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) t += model.log_kernel(a.weight(i, j), b.weight(pi(i), pi(j)));
  return t;
}

// ---------------------------------------------------------------------------
// QAP maximization

struct QapResult {
  double value = 0.0;
  Permutation pi;
};

inline constexpr int kQapExactLimit = 10;

/// max_π T_π by depth-first search over S_n in lexicographic order; among
/// maximizers the lexicographically smallest π is returned.
template <ObservationGraph G>
QapResult qap_exact(const G& a, const G& b, int limit = kQapExactLimit) {
  detail::require_same_size(a.size(), b.size(), "qap_exact");
  const int n = a.size();
  if (n > limit)
    throw LimitError("qap_exact: n=" + std::to_string(n) + " exceeds limit " + std::to_string(limit) +
                     "; use qap_local_search");
  const detail::Dense da = detail::dense(a);
  const detail::Dense db = detail::dense(b);
  std::vector<int> pi(static_cast<std::size_t>(n), 0);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> best_pi(static_cast<std::size_t>(n));
  std::iota(best_pi.begin(), best_pi.end(), 0);
  double best = -std::numeric_limits<double>::infinity();

  auto dfs = [&](auto&& self, int i, double partial) -> void {
    if (i == n) {
      if (partial > best) {
        best = partial;
        best_pi = pi;
      }
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      double gain = 0.0;
      for (int j = 0; j < i; ++j) gain += da(j, i) * db(pi[static_cast<std::size_t>(j)], x);
      used[static_cast<std::size_t>(x)] = 1;
      pi[static_cast<std::size_t>(i)] = x;
      self(self, i + 1, partial + gain);
      used[static_cast<std::size_t>(x)] = 0;
    }
  };
  dfs(dfs, 0, 0.0);
  if (n == 0) best = 0.0;
  return {best, Permutation(best_pi)};
}

namespace detail {
/// Change of T_π when the images of u and v are exchanged.
inline double swap_delta(const Dense& a, const Dense& b, const std::vector<int>& pi, int u, int v) {
  const int pu = pi[static_cast<std::size_t>(u)];
  const int pv = pi[static_cast<std::size_t>(v)];
  double d = 0.0;
  for (int w = 0; w < a.n; ++w) {
    if (w == u || w == v) continue;
    const int pw = pi[static_cast<std::size_t>(w)];
    d += (a(u, w) - a(v, w)) * (b(pv, pw) - b(pu, pw));
  }
  return d;
}

/// First-improvement 2-swap hill climbing; returns the final T_π.
inline double hill_climb(const Dense& a, const Dense& b, std::vector<int>& pi) {
  double value = statistic(a, b, pi);
  const double eps = 1e-12 * (1.0 + std::abs(value));
  bool improved = true;
  while (improved) {
    improved = false;
    for (int u = 0; u < a.n; ++u)
      for (int v = u + 1; v < a.n; ++v) {
        const double d = swap_delta(a, b, pi, u, v);
        if (d > eps) {
          std::swap(pi[static_cast<std::size_t>(u)], pi[static_cast<std::size_t>(v)]);
          value += d;
          improved = true;
        }
      }
  }
  return statistic(a, b, pi);
}

/// Joint colour refinement of two graphs: nodes get colours from iterated
/// (colour, sorted multiset of weighted neighbour colours) signatures, computed
/// on both graphs with a shared palette so colours are comparable.
inline std::pair<std::vector<int>, std::vector<int>> refine_colours(const Dense& a, const Dense& b) {
  const int n = a.n;
  std::vector<int> ca(static_cast<std::size_t>(n), 0);
  std::vector<int> cb(static_cast<std::size_t>(n), 0);
  int classes = 1;
  for (int round = 0; round < n; ++round) {
    using Sig = std::pair<int, std::vector<std::pair<int, double>>>;
    auto signature = [&](const Dense& g, const std::vector<int>& col, int x) {
      Sig s{col[static_cast<std::size_t>(x)], {}};
      for (int y = 0; y < n; ++y)
        if (y != x && g(x, y) != 0.0) s.second.push_back({col[static_cast<std::size_t>(y)], g(x, y)});
      std::sort(s.second.begin(), s.second.end());
      return s;
    };
    std::vector<Sig> sa;
    std::vector<Sig> sb;
    for (int x = 0; x < n; ++x) {
      sa.push_back(signature(a, ca, x));
      sb.push_back(signature(b, cb, x));
    }
    std::vector<Sig> palette(sa);
    palette.insert(palette.end(), sb.begin(), sb.end());
    std::sort(palette.begin(), palette.end());
    palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
    auto colour_of = [&](const Sig& s) {
      return static_cast<int>(std::lower_bound(palette.begin(), palette.end(), s) - palette.begin());
    };
    for (int x = 0; x < n; ++x) {
      ca[static_cast<std::size_t>(x)] = colour_of(sa[static_cast<std::size_t>(x)]);
      cb[static_cast<std::size_t>(x)] = colour_of(sb[static_cast<std::size_t>(x)]);
    }
    const int next = static_cast<int>(palette.size());
    if (next == classes) break;
    classes = next;
  }
  return {ca, cb};
}

/// Start permutation pairing nodes of A and B with equal refined colours.
inline std::vector<int> colour_aligned_start(const Dense& a, const Dense& b) {
  const auto [ca, cb] = refine_colours(a, b);
  std::vector<int> oa(static_cast<std::size_t>(a.n));
  std::vector<int> ob(static_cast<std::size_t>(a.n));
  std::iota(oa.begin(), oa.end(), 0);
  std::iota(ob.begin(), ob.end(), 0);
  std::stable_sort(oa.begin(), oa.end(), [&](int x, int y) { return ca[static_cast<std::size_t>(x)] < ca[static_cast<std::size_t>(y)]; });
  std::stable_sort(ob.begin(), ob.end(), [&](int x, int y) { return cb[static_cast<std::size_t>(x)] < cb[static_cast<std::size_t>(y)]; });
  std::vector<int> pi(static_cast<std::size_t>(a.n));
  for (std::size_t r = 0; r < oa.size(); ++r) pi[static_cast<std::size_t>(oa[r])] = ob[r];
  return pi;
}
}  // namespace detail

struct LocalSearchOptions {
  int restarts = 20;           // random restarts after the identity start
  bool colour_start = true;    // also climb from the colour-refinement alignment
};

/// 2-swap hill climbing from the identity, an optional colour-aligned start, and
/// `restarts` uniformly random starts. Deterministic given the seed.
template <ObservationGraph G>
QapResult qap_local_search(const G& a, const G& b, SeedSpec seed, LocalSearchOptions opt = {}) {
  detail::require_same_size(a.size(), b.size(), "qap_local_search");
  const int n = a.size();
  const detail::Dense da = detail::dense(a);
  const detail::Dense db = detail::dense(b);
  std::vector<int> best_pi(static_cast<std::size_t>(n));
  std::iota(best_pi.begin(), best_pi.end(), 0);
  double best = detail::statistic(da, db, best_pi);

  auto consider = [&](std::vector<int> pi) {
    const double v = detail::hill_climb(da, db, pi);
    if (v > best) {
      best = v;
      best_pi = std::move(pi);
    }
  };
  consider(best_pi);
  if (opt.colour_start && n > 1) consider(detail::colour_aligned_start(da, db));
  const CounterRng root = CounterRng(seed).substream(0x15);
  for (int r = 0; r < opt.restarts; ++r)
    consider(random_permutation(n, root.substream(static_cast<std::uint64_t>(r))).mapping());
  return {best, Permutation(best_pi)};
}

// ---------------------------------------------------------------------------
// Exact likelihood ratio

inline constexpr int kLikelihoodRatioLimit = 7;

/// log P(A,B)/Q(A,B) = log (1/n!) Σ_π ∏_{i<j} L(A_ij, B_{π(i)π(j)}).
template <ObservationGraph G, class Model>
double log_likelihood_ratio_exact(const G& a, const G& b, const Model& model, int limit = kLikelihoodRatioLimit) {
  detail::require_same_size(a.size(), b.size(), "likelihood_ratio_exact");
  const int n = a.size();
  if (n > limit) throw LimitError("likelihood_ratio_exact: n=" + std::to_string(n) + " exceeds limit");
  const auto pairs = all_pairs(n);
  std::vector<double> la(pairs.size());
  for (std::size_t t = 0; t < pairs.size(); ++t) la[t] = a.weight(pairs[t].u, pairs[t].v);
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<double> terms;
  do {
    double s = 0.0;
    for (std::size_t t = 0; t < pairs.size(); ++t)
      s += model.log_kernel(la[t], b.weight(pi[static_cast<std::size_t>(pairs[t].u)], pi[static_cast<std::size_t>(pairs[t].v)]));
    terms.push_back(s);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return detail::log_sum_exp(terms) - std::lgamma(static_cast<double>(n) + 1.0);
}

template <ObservationGraph G, class Model>
double likelihood_ratio_exact(const G& a, const G& b, const Model& model, int limit = kLikelihoodRatioLimit) {
  return std::exp(log_likelihood_ratio_exact(a, b, model, limit));
}

// ---------------------------------------------------------------------------
// Thresholds

/// ρ·C(n,2) − n^exponent.
inline double threshold_gaussian(int n, double rho, double exponent = 1.1) {
  return rho * static_cast<double>(pair_count(n)) - std::pow(static_cast<double>(n), exponent);
}

/// mps²(1 − (mps²)^(−0.4)) with m = C(n,2); requires mps² > 1.
inline double threshold_er(int n, double p, double s) {
  const double mean = static_cast<double>(pair_count(n)) * p * s * s;
  if (!(mean > 1.0)) throw DomainError("threshold_er: requires C(n,2)ps^2 > 1");
  return mean * (1.0 - std::pow(mean, -0.4));
}

/// Variances of e(A) − e(B) under Q and under P.
inline std::pair<double, double> edge_difference_variances(int n, double p, double s) {
  const double m = static_cast<double>(pair_count(n));
  return {2.0 * m * p * s * (1.0 - p * s), 2.0 * m * p * s * (1.0 - s)};
}

/// |x| at which the centred normal densities of variances v0 (Q) and v1 (P) cross.
inline double edge_count_threshold(int n, double p, double s) {
  const auto [v0, v1] = edge_difference_variances(n, p, s);
  if (std::abs(v0 - v1) <= 1e-12) return 0.6744897501960817 * std::sqrt(v0);  // median of |N(0, v0)|
  if (v1 <= 0.0) return 0.5;  // s = 1: X − Y is identically 0 under P
  return std::sqrt(v0 * v1 * std::log(v0 / v1) / (v0 - v1));
}

/// Declares "planted" when |e(A) − e(B)| falls below the crossing threshold.
inline TestOutcome edge_count_test(const BinaryGraph& a, const BinaryGraph& b, const ErParams& params) {
  detail::require_same_size(a.size(), b.size(), "edge_count_test");
  params.validate();
  const double x = std::abs(static_cast<double>(a.edge_count()) - static_cast<double>(b.edge_count()));
  return TestOutcome::decide(x, edge_count_threshold(a.size(), params.p, params.s), Direction::Below);
}

template <ObservationGraph G>
TestOutcome qap_exact_test(const G& a, const G& b, double threshold) {
  auto r = qap_exact(a, b);
  auto t = TestOutcome::decide(r.value, threshold);
  t.argmax = std::move(r.pi);
  return t;
}

template <ObservationGraph G>
TestOutcome qap_local_search_test(const G& a, const G& b, double threshold, SeedSpec seed,
                                  LocalSearchOptions opt = {}) {
  auto r = qap_local_search(a, b, seed, opt);
  auto t = TestOutcome::decide(r.value, threshold);
  t.argmax = std::move(r.pi);
  return t;
}

}  // namespace corrtest
