#pragma once

// Second-moment calculus: per-orbit moments E_Q[X_O], exact second moments
// over S_n, the orbit-pseudoforest generating function with its product bounds,
// Lambert W and the ζ threshold, and Poisson approximations of cycle counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "corrtest/detect.hpp"
#include "corrtest/errors.hpp"
#include "corrtest/graph.hpp"
#include "corrtest/orbits.hpp"
#include "corrtest/rng.hpp"
#include "corrtest/sampler.hpp"
#include "corrtest/union_find.hpp"

namespace corrtest {

// ---------------------------------------------------------------------------
// Per-orbit moments

inline double orbit_moment_gaussian(int k, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("orbit_moment_gaussian: rho must lie in [0, 1)");
  if (k < 1) throw DomainError("orbit_moment_gaussian: k must be >= 1");
  return 1.0 / (1.0 - std::pow(rho, 2.0 * k));
}

inline double orbit_moment_er(int k, double p, double s) {
  if (k < 1) throw DomainError("orbit_moment_er: k must be >= 1");
  return 1.0 + std::pow(rho_er(p, s), 2.0 * k);
}

inline constexpr int kOrbitOracleLimit = 6;

namespace detail {
/// Σ over binary (a_1..a_k, b_1..b_k) of Q-weight × ∏ L(a_ℓ, b_ℓ) L(a_ℓ, b_{ℓ+1}),
/// optionally skipping the all-ones configuration.
inline double orbit_config_sum(int k, double p, double s, bool skip_all_ones) {
  if (k < 1 || k > kOrbitOracleLimit) throw LimitError("orbit moment oracle: k must lie in [1, 6]");
  const double q = p * s;
  const std::array<std::array<double, 2>, 2> l = {{{kernel_er(false, false, p, s), kernel_er(false, true, p, s)},
                                                   {kernel_er(true, false, p, s), kernel_er(true, true, p, s)}}};
  const std::uint32_t full = (1U << (2 * k)) - 1;
  double total = 0.0;
  for (std::uint32_t cfg = 0; cfg <= full; ++cfg) {
    if (skip_all_ones && cfg == full) continue;
    double w = 1.0;
    for (int t = 0; t < k; ++t) {
      const int a = static_cast<int>((cfg >> t) & 1U);
      const int b = static_cast<int>((cfg >> (k + t)) & 1U);
      const int b_next = static_cast<int>((cfg >> (k + (t + 1) % k)) & 1U);
      w *= (a ? q : 1.0 - q) * (b ? q : 1.0 - q) * l[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
           l[static_cast<std::size_t>(a)][static_cast<std::size_t>(b_next)];
    }
    total += w;
  }
  return total;
}
}  // namespace detail

/// E_Q[X_O] for an orbit of length k by exhaustive summation over its 2^{2k} configurations.
inline double orbit_moment_er_oracle(int k, double p, double s) { return detail::orbit_config_sum(k, p, s, false); }

/// Row-stochastic 2×2 matrix whose eigenvalues are 1 and ρ_ER.
inline std::array<std::array<double, 2>, 2> er_transition_matrix(double p, double s) {
  const double q = p * s;
  return {{{(1.0 - q * (2.0 - s)) / (1.0 - q), q * (1.0 - s) / (1.0 - q)}, {1.0 - s, s}}};
}

/// Eigenvalues of a real 2×2 matrix with real spectrum, larger first.
inline std::array<double, 2> eigenvalues_2x2(const std::array<std::array<double, 2>, 2>& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

/// E_Q[X_O | O not complete] = (1 + ρ^{2k} − s^{2k}) / (1 − (ps)^{2k}).
inline double incomplete_orbit_moment_er(int k, double p, double s) {
  if (p * s >= 1.0) throw DomainError("incomplete_orbit_moment_er: ps must be < 1");
  const double r = rho_er(p, s);
  return (1.0 + std::pow(r, 2.0 * k) - std::pow(s, 2.0 * k)) / (1.0 - std::pow(p * s, 2.0 * k));
}

inline double incomplete_orbit_moment_er_oracle(int k, double p, double s) {
  return detail::orbit_config_sum(k, p, s, true) / (1.0 - std::pow(p * s, 2.0 * k));
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo E_Q[X_O] for a Gaussian orbit of length k.
inline MonteCarloEstimate orbit_moment_gaussian_monte_carlo(int k, double rho, std::size_t samples, SeedSpec seed) {
  const CounterRng r = CounterRng(seed).substream(0x0B);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t c = 0;
  std::vector<double> a(static_cast<std::size_t>(k));
  std::vector<double> b(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < samples; ++i) {
    for (int t = 0; t < k; ++t) {
      a[static_cast<std::size_t>(t)] = r.normal(c++);
      b[static_cast<std::size_t>(t)] = r.normal(c++);
    }
    double lx = 0.0;
    for (int t = 0; t < k; ++t)
      lx += log_kernel_gaussian(a[static_cast<std::size_t>(t)], b[static_cast<std::size_t>(t)], rho) +
            log_kernel_gaussian(a[static_cast<std::size_t>(t)], b[static_cast<std::size_t>((t + 1) % k)], rho);
    const double x = std::exp(lx);
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n), samples};
}

// ---------------------------------------------------------------------------
// Second moments over S_n

/// Orbit moment f(k) of a model, as used in E_Q[(P/Q)²] = E_σ ∏_k f(k)^{N_k(σ)}.
struct MomentModel {
  std::string tag;
  std::function<double(int)> orbit_moment;

  static MomentModel gaussian(double rho) {
    return {"gaussian", [rho](int k) { return orbit_moment_gaussian(k, rho); }};
  }
  static MomentModel er(double p, double s) {
    rho_er(p, s);  // validates
    return {"er", [p, s](int k) { return orbit_moment_er(k, p, s); }};
  }
};

struct CycleTypeContribution {
  std::vector<int> cycle_counts;  // n_1..n_n
  long long permutations = 0;     // number of σ with this cycle type
  double product = 0.0;           // ∏_k f(k)^{N_k}
  double contribution = 0.0;      // permutations × product / n!
};

struct SecondMomentReport {
  std::string model;
  int n = 0;
  std::optional<double> exact;
  std::vector<CycleTypeContribution> table;
  std::optional<MonteCarloEstimate> monte_carlo;
};

inline constexpr int kSecondMomentLimit = 8;

inline double log_orbit_product(const EdgeOrbitCensus& census, const MomentModel& model) {
  double lp = 0.0;
  for (std::size_t k = 1; k < census.count.size(); ++k)
    if (census.count[k] > 0) lp += static_cast<double>(census.count[k]) * std::log(model.orbit_moment(static_cast<int>(k)));
  return lp;
}

/// (1/n!) Σ_{σ∈S_n} ∏_k f(k)^{N_k(σ)}, with a per-cycle-type breakdown.
inline SecondMomentReport second_moment_exact(int n, const MomentModel& model, int limit = kSecondMomentLimit) {
  if (n > limit) throw LimitError("second_moment_exact: n=" + std::to_string(n) + " exceeds limit");
  if (n < 0) throw DomainError("second_moment_exact: n must be non-negative");
  std::map<std::vector<int>, CycleTypeContribution> by_type;
  std::vector<double> log_terms;
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  do {
    const OrbitStructure s{Permutation(m)};
    const double lp = log_orbit_product(s.census(), model);
    log_terms.push_back(lp);
    std::vector<int> counts(s.nodes().type.count.begin() + (n > 0 ? 1 : 0), s.nodes().type.count.end());
    auto& row = by_type[counts];
    if (row.permutations == 0) {
      row.cycle_counts = counts;
      row.product = std::exp(lp);
    }
    ++row.permutations;
  } while (std::next_permutation(m.begin(), m.end()));
  const double log_nfact = std::lgamma(static_cast<double>(n) + 1.0);
  SecondMomentReport rep;
  rep.model = model.tag;
  rep.n = n;
  rep.exact = std::exp(detail::log_sum_exp(log_terms) - log_nfact);
  for (auto& [key, row] : by_type) {
    row.contribution = std::exp(std::log(static_cast<double>(row.permutations)) + std::log(row.product) - log_nfact);
    rep.table.push_back(row);
  }
  return rep;
}

/// Monte-Carlo estimate of E_σ ∏_k f(k)^{N_k(σ)} from uniformly random σ.
inline SecondMomentReport second_moment_monte_carlo(int n, const MomentModel& model, std::size_t samples, SeedSpec seed) {
  const CounterRng root = CounterRng(seed).substream(0x5E);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const OrbitStructure s(random_permutation(n, root.substream(i)));
    const double x = std::exp(log_orbit_product(s.census(), model));
    sum += x;
    sum_sq += x * x;
  }
  const double cnt = static_cast<double>(samples);
  const double mean = sum / cnt;
  SecondMomentReport rep;
  rep.model = model.tag;
  rep.n = n;
  rep.monte_carlo = MonteCarloEstimate{mean, std::sqrt(std::max(0.0, sum_sq / cnt - mean * mean) / cnt), samples};
  return rep;
}

inline constexpr int kBruteForceMomentLimit = 4;

namespace detail {
/// Calls fn(A, B, Q(A, B)) for every pair of graphs on [n] under the ER null model.
template <class Fn>
void for_each_er_graph_pair(int n, double q, Fn&& fn) {
  const std::size_t m = pair_count(n);
  const std::uint64_t total = std::uint64_t{1} << m;
  std::vector<BinaryGraph> graphs;
  std::vector<double> weight;
  for (std::uint64_t x = 0; x < total; ++x) {
    graphs.push_back(BinaryGraph::from_words(n, {x}));
    const int e = std::popcount(x);
    weight.push_back(std::pow(q, e) * std::pow(1.0 - q, static_cast<double>(m) - e));
  }
  if (m == 0) {
    graphs.assign(1, BinaryGraph(n));
    weight.assign(1, 1.0);
  }
  for (std::size_t a = 0; a < graphs.size(); ++a)
    for (std::size_t b = 0; b < graphs.size(); ++b) fn(graphs[a], graphs[b], weight[a] * weight[b]);
}
}  // namespace detail

/// Σ over all graph pairs of Q(A,B)·LR(A,B)², with LR from the exact permutation average.
inline double second_moment_bruteforce_er(const ErParams& params, int limit = kBruteForceMomentLimit) {
  params.validate();
  if (params.n > limit) throw LimitError("second_moment_bruteforce_er: n exceeds limit");
  const ErModel model{params.p, params.s};
  double total = 0.0;
  detail::for_each_er_graph_pair(params.n, params.edge_prob(), [&](const BinaryGraph& a, const BinaryGraph& b, double q) {
    const double lr = likelihood_ratio_exact(a, b, model);
    total += q * lr * lr;
  });
  return total;
}

// ---------------------------------------------------------------------------
// Generating function of orbit pseudoforests

inline constexpr int kGfOrbitLimit = 24;

/// Calls visit(orbit ids, edge count) for every subset of O_k whose union is a
/// pseudoforest (or forest), including the empty subset. Subsets whose union
/// already violates the constraint are never extended.
template <class Visit>
void for_each_orbit_pseudoforest(const OrbitStructure& s, int k, bool forest, Visit&& visit, int limit = kGfOrbitLimit) {
  const auto ids = s.short_orbit_ids(k);
  if (static_cast<int>(ids.size()) > limit)
    throw LimitError("orbit generating function: " + std::to_string(ids.size()) + " orbits exceed limit " +
                     std::to_string(limit));
  RollbackUnionFind uf(s.size());
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, std::size_t pos, int edges) -> void {
    if (pos == ids.size()) {
      visit(static_cast<const std::vector<int>&>(chosen), edges);
      return;
    }
    self(self, pos + 1, edges);
    const auto mark = uf.checkpoint();
    const EdgeOrbit& o = s.orbits()[static_cast<std::size_t>(ids[pos])];
    bool ok = true;
    for (const Edge& e : o.edges) {
      if (forest && uf.connected(e.u, e.v) && uf.component_vertices(e.u) > 0) {
        ok = false;
        break;
      }
      if (uf.add_edge(e.u, e.v) > 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      chosen.push_back(ids[pos]);
      self(self, pos + 1, edges + static_cast<int>(o.size()));
      chosen.pop_back();
    }
    uf.rollback(mark);
  };
  dfs(dfs, 0, 0);
}

/// Number of orbit pseudoforests (forests) in H_k by edge count.
inline std::vector<long long> gf_histogram(const OrbitStructure& s, int k, bool forest = false, int limit = kGfOrbitLimit) {
  std::vector<long long> hist(pair_count(s.size()) + 1, 0);
  for_each_orbit_pseudoforest(s, k, forest, [&](const std::vector<int>&, int e) { ++hist[static_cast<std::size_t>(e)]; }, limit);
  return hist;
}

inline double evaluate_gf(const std::vector<long long>& hist, double s) {
  double v = 0.0;
  for (std::size_t e = 0; e < hist.size(); ++e)
    if (hist[e]) v += static_cast<double>(hist[e]) * std::pow(s, 2.0 * static_cast<double>(e));
  return v;
}

/// Σ_{H ∈ H_k} s^{2e(H)} by pruned enumeration over orbit subsets.
inline double gf_orbit_pseudoforests_bruteforce(const Permutation& sigma, int k, double s, bool forest = false,
                                                int limit = kGfOrbitLimit) {
  return evaluate_gf(gf_histogram(OrbitStructure(sigma), k, forest, limit), s);
}

/// Same sum by plain enumeration of all 2^|O_k| subsets (oracle for the pruned search).
inline double gf_orbit_pseudoforests_unpruned(const Permutation& sigma, int k, double s, bool forest = false) {
  const OrbitStructure st(sigma);
  const auto ids = st.short_orbit_ids(k);
  if (ids.size() > 20) throw LimitError("unpruned orbit enumeration limited to 20 orbits");
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1U << ids.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t t = 0; t < ids.size(); ++t)
      if (mask >> t & 1U) {
        const auto& o = st.orbits()[static_cast<std::size_t>(ids[t])].edges;
        edges.insert(edges.end(), o.begin(), o.end());
      }
    const BinaryGraph h(st.size(), edges);
    if (forest ? is_forest(h) : is_pseudoforest(h)) total += std::pow(s, 2.0 * static_cast<double>(edges.size()));
  }
  return total;
}

/// ∏_{m≤k} (1 + s^m n_m 1{m even} + 2 s^{2m} Σ_{ℓ≤m} ℓ n_ℓ + s^{4m} m n_{2m} 1{2m≤k})^{n_m}.
inline double gf_bound_jk(const CycleType& type, int k, double s) {
  double log_total = 0.0;
  for (int m = 1; m <= k; ++m) {
    const int nm = type[m];
    if (nm == 0) continue;
    double shorter = 0.0;
    for (int l = 1; l <= m; ++l) shorter += static_cast<double>(l) * type[l];
    double factor = 1.0 + 2.0 * std::pow(s, 2.0 * m) * shorter;
    if (m % 2 == 0) factor += std::pow(s, m) * nm;
    if (2 * m <= k) factor += std::pow(s, 4.0 * m) * m * type[2 * m];
    log_total += nm * std::log(factor);
  }
  return std::exp(log_total);
}

/// ∏_{m≤k} (1 + s^m 1{m even} + s^{2m} Σ_{ℓ≤m} ℓ n_ℓ)^{n_m}.
inline double gf_bound_forest(const CycleType& type, int k, double s) {
  double log_total = 0.0;
  for (int m = 1; m <= k; ++m) {
    const int nm = type[m];
    if (nm == 0) continue;
    double shorter = 0.0;
    for (int l = 1; l <= m; ++l) shorter += static_cast<double>(l) * type[l];
    double factor = 1.0 + std::pow(s, 2.0 * m) * shorter;
    if (m % 2 == 0) factor += std::pow(s, m);
    log_total += nm * std::log(factor);
  }
  return std::exp(log_total);
}

// ---------------------------------------------------------------------------
// Lambert W and ζ

/// Principal branch W_0 on [−1/e, ∞) by Halley iteration.
inline double lambert_w(double x) {
  const double branch = -std::exp(-1.0);
  if (std::isnan(x) || x < branch - 1e-15) throw DomainError("lambert_w: x must be >= -1/e");
  if (x <= branch) return -1.0;
  if (x == 0.0) return 0.0;
  double w;
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < std::exp(1.0)) {
    w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

struct ZetaValue {
  double value = 0.0;       // ζ(k)
  double w_argument = 0.0;  // argument passed to W
  double w = 0.0;           // W(argument)
};

/// ζ(k) = C(k,2) p s² exp{1 + W(2 log(2en/k) / (e (k−1) p s²) − 1/e)}.
inline ZetaValue zeta_threshold(int k, int n, double p, double s) {
  if (k < 2 || k > n) throw DomainError("zeta_threshold: requires 2 <= k <= n");
  if (!(p > 0.0 && p <= 1.0) || !(s > 0.0 && s <= 1.0)) throw DomainError("zeta_threshold: invalid p or s");
  const double e = std::exp(1.0);
  const double q = p * s * s;
  ZetaValue z;
  z.w_argument = 2.0 * std::log(2.0 * e * n / k) / (e * (k - 1) * q) - 1.0 / e;
  z.w = lambert_w(z.w_argument);
  z.value = static_cast<double>(pair_count(k)) * q * std::exp(1.0 + z.w);
  return z;
}

// ---------------------------------------------------------------------------
// Cycle counts of a uniform permutation

/// E[∏ C(n_ℓ, a_ℓ)] = 1/∏ ℓ^{a_ℓ} a_ℓ! for a = (a_1, ..., a_k), valid when Σ ℓ a_ℓ ≤ n.
inline double poisson_cycle_moment(const std::vector<int>& a) {
  double log_denom = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] < 0) throw DomainError("poisson_cycle_moment: negative entry");
    log_denom += a[t] * std::log(static_cast<double>(t + 1)) + std::lgamma(a[t] + 1.0);
  }
  return std::exp(-log_denom);
}

inline double binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// Exact (1/n!) Σ_{σ∈S_n} ∏ C(n_ℓ(σ), a_ℓ).
inline double cycle_moment_exact(int n, const std::vector<int>& a) {
  if (n > 10) throw LimitError("cycle_moment_exact: n exceeds limit");
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  double total = 0.0;
  long long count = 0;
  do {
    const CycleType t = node_cycles(Permutation(m)).type;
    double v = 1.0;
    for (std::size_t l = 0; l < a.size(); ++l) v *= binomial(t[static_cast<int>(l + 1)], a[l]);
    total += v;
    ++count;
  } while (std::next_permutation(m.begin(), m.end()));
  return total / static_cast<double>(count);
}

/// Product-Poisson pmf of independent Z_ℓ ~ Poi(1/ℓ), ℓ = 1..k.
inline double poisson_product_pmf(const std::vector<int>& z) {
  double lp = 0.0;
  for (std::size_t t = 0; t < z.size(); ++t) {
    const double lambda = 1.0 / static_cast<double>(t + 1);
    lp += -lambda + z[t] * std::log(lambda) - std::lgamma(z[t] + 1.0);
  }
  return std::exp(lp);
}

/// F(x) = √(2πm) 2^{m−1}/(m−1)! + 1/m! + 3 (x/e)^{−x}, m = ⌈x⌉.
inline double cycle_tv_bound(double x) {
  const double m = std::ceil(x);
  const double e = std::exp(1.0);
  const double first = std::exp(0.5 * std::log(2.0 * std::acos(-1.0) * m) + (m - 1.0) * std::log(2.0) - std::lgamma(m));
  return first + std::exp(-std::lgamma(m + 1.0)) + 3.0 * std::exp(-x * std::log(x / e));
}

struct CycleTvReport {
  double tv = 0.0;     // TV(empirical law of (n_1..n_k), ⊗ Poi(1/ℓ))
  double bound = 0.0;  // F(n/k)
  std::size_t trials = 0;
};

namespace detail {
inline double tv_against_poisson(const std::map<std::vector<int>, double>& law) {
  double diff = 0.0;
  double covered = 0.0;
  for (const auto& [z, prob] : law) {
    const double pmf = poisson_product_pmf(z);
    diff += std::abs(prob - pmf);
    covered += pmf;
  }
  return 0.5 * (diff + std::max(0.0, 1.0 - covered));
}
}  // namespace detail

/// Total variation between the empirical law of (n_1..n_k) over `trials` uniform
/// permutations and the product-Poisson law. Points never observed contribute
/// their Poisson mass, so no truncation is involved.
inline CycleTvReport cycle_type_tv_check(int n, int k, std::size_t trials, SeedSpec seed) {
  if (trials == 0) throw DomainError("cycle_type_tv_check: trials must be positive");
  if (k < 1 || k >= n) throw DomainError("cycle_type_tv_check: requires 1 <= k < n");
  const CounterRng root = CounterRng(seed).substream(0xC7);
  std::map<std::vector<int>, double> law;
  for (std::size_t i = 0; i < trials; ++i) {
    const CycleType t = node_cycles(random_permutation(n, root.substream(i))).type;
    std::vector<int> z(static_cast<std::size_t>(k));
    for (int l = 1; l <= k; ++l) z[static_cast<std::size_t>(l - 1)] = t[l];
    law[z] += 1.0 / static_cast<double>(trials);
  }
  return {detail::tv_against_poisson(law), cycle_tv_bound(static_cast<double>(n) / k), trials};
}

/// Exact TV between the law of (n_1..n_k) over S_n and the product-Poisson law.
inline double cycle_type_tv_exact(int n, int k) {
  if (n > 10) throw LimitError("cycle_type_tv_exact: n exceeds limit");
  std::map<std::vector<int>, double> law;
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  const double w = std::exp(-std::lgamma(n + 1.0));
  do {
    const CycleType t = node_cycles(Permutation(m)).type;
    std::vector<int> z(static_cast<std::size_t>(k));
    for (int l = 1; l <= k; ++l) z[static_cast<std::size_t>(l - 1)] = t[l];
    law[z] += w;
  } while (std::next_permutation(m.begin(), m.end()));
  return detail::tv_against_poisson(law);
}

}  // namespace corrtest
