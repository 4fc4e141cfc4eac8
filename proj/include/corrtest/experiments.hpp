#pragma once

// Monte-Carlo detection-error sweeps, exact total variation for tiny ER
// instances, threshold boundary curves and the maximizer p*.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corrtest/detect.hpp"
#include "corrtest/errors.hpp"
#include "corrtest/graph.hpp"
#include "corrtest/parallel.hpp"
#include "corrtest/rng.hpp"
#include "corrtest/sampler.hpp"

namespace corrtest {

// ---------------------------------------------------------------------------
// Error estimates

struct ErrorEstimate {
  double type1 = 0.0;
  double type2 = 0.0;
  double sum = 0.0;
  double ci1 = 0.0;  // 95% normal half-widths
  double ci2 = 0.0;
  double ci = 0.0;   // half-width for the sum
  std::size_t trials = 0;

  static ErrorEstimate from_counts(std::size_t false_planted, std::size_t false_null, std::size_t trials) {
    if (trials == 0) throw DomainError("ErrorEstimate: trials must be positive");
    ErrorEstimate e;
    e.trials = trials;
    const double t = static_cast<double>(trials);
    e.type1 = static_cast<double>(false_planted) / t;
    e.type2 = static_cast<double>(false_null) / t;
    e.sum = e.type1 + e.type2;
    const double v1 = e.type1 * (1.0 - e.type1) / t;
    const double v2 = e.type2 * (1.0 - e.type2) / t;
    e.ci1 = 1.96 * std::sqrt(v1);
    e.ci2 = 1.96 * std::sqrt(v2);
    e.ci = 1.96 * std::sqrt(v1 + v2);
    return e;
  }
};

// ---------------------------------------------------------------------------
// Sufficient-statistic sampler for the edge-count test

struct EdgeCounts {
  long long a = 0;
  long long b = 0;
};

/// (e(A), e(B)) drawn exactly from its law under Q or P without building the graphs:
/// under P the pair counts (N11, N10, N01) are multinomial with cell masses ps², ps(1−s), ps(1−s).
inline EdgeCounts sample_edge_counts(const ErParams& params, SeedSpec seed, bool planted) {
  params.validate();
  StreamRng rng(CounterRng(seed).substream(0xEC));
  const auto m = static_cast<long long>(pair_count(params.n));
  const double q = params.p * params.s;
  auto binom = [&](long long trials, double prob) -> long long {
    if (trials <= 0 || prob <= 0.0) return 0;
    if (prob >= 1.0) return trials;
    return std::binomial_distribution<long long>(trials, prob)(rng);
  };
  if (!planted) return {binom(m, q), binom(m, q)};
  const double p11 = params.p * params.s * params.s;
  const double p10 = q - p11;
  const long long n11 = binom(m, p11);
  const long long n10 = binom(m - n11, p10 / (1.0 - p11));
  const long long n01 = binom(m - n11 - n10, p10 / (1.0 - p11 - p10));
  return {n11 + n10, n11 + n01};
}

// ---------------------------------------------------------------------------
// Sweep configuration

enum class SweepModel { Gaussian, Er };
enum class SweepTest { Edge, QapExact, QapLocal, Lr };

inline std::string test_name(SweepTest t) {
  switch (t) {
    case SweepTest::Edge: return "edge";
    case SweepTest::QapExact: return "qap_exact";
    case SweepTest::QapLocal: return "qap_local";
    case SweepTest::Lr: return "lr";
  }
  return "?";
}

inline SweepTest parse_test(const std::string& s) {
  if (s == "edge") return SweepTest::Edge;
  if (s == "qap_exact") return SweepTest::QapExact;
  if (s == "qap_local") return SweepTest::QapLocal;
  if (s == "lr") return SweepTest::Lr;
  throw ParseError("unknown test: " + s);
}

struct SweepConfig {
  SweepModel model = SweepModel::Gaussian;
  std::vector<int> n;
  std::vector<double> rho;  // Gaussian grid
  std::vector<double> p;    // ER grid
  std::vector<double> s;
  std::vector<SweepTest> tests{SweepTest::QapExact};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string output;  // empty: caller decides
  bool oracle_threshold = false;
  double threshold_exponent = 1.1;
  int restarts = 20;
  bool edge_counts_sampler = true;  // edge-only sweeps skip graph construction

  void validate() const {
    if (trials < 1) throw DomainError("sweep: trials must be >= 1");
    if (tests.empty()) throw DomainError("sweep: no tests selected");
    if (n.empty()) throw DomainError("sweep: empty n grid");
    if (model == SweepModel::Gaussian && rho.empty()) throw DomainError("sweep: empty rho grid");
    if (model == SweepModel::Er && (p.empty() || s.empty())) throw DomainError("sweep: empty p or s grid");
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  T v{};
  in >> v;
  if (in.fail() || !in.eof()) throw ParseError("bad value for " + key + ": " + text);
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("bad boolean for " + key + ": " + v);
}
}  // namespace detail

/// Flat `key = value` format; lists are comma separated, '#' starts a comment.
inline SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig c;
  bool have_tests = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    auto numbers = [&]<class T>(std::vector<T>& dst) {
      dst.clear();
      for (const auto& item : detail::split_list(val)) dst.push_back(detail::parse_number<T>(key, item));
    };
    if (key == "model") {
      if (val == "gaussian") c.model = SweepModel::Gaussian;
      else if (val == "er") c.model = SweepModel::Er;
      else throw ParseError("unknown model: " + val);
    } else if (key == "n") {
      numbers(c.n);
    } else if (key == "rho") {
      numbers(c.rho);
    } else if (key == "p") {
      numbers(c.p);
    } else if (key == "s") {
      numbers(c.s);
    } else if (key == "tests" || key == "test") {
      c.tests.clear();
      for (const auto& item : detail::split_list(val)) c.tests.push_back(parse_test(item));
      have_tests = true;
    } else if (key == "trials") {
      c.trials = detail::parse_number<std::size_t>(key, val);
    } else if (key == "seed") {
      c.seed = detail::parse_number<std::uint64_t>(key, val);
    } else if (key == "output") {
      c.output = val;
    } else if (key == "oracle_threshold") {
      c.oracle_threshold = detail::parse_bool(key, val);
    } else if (key == "threshold_exponent") {
      c.threshold_exponent = detail::parse_number<double>(key, val);
    } else if (key == "restarts") {
      c.restarts = detail::parse_number<int>(key, val);
    } else if (key == "edge_sampler") {
      if (val == "counts") c.edge_counts_sampler = true;
      else if (val == "graphs") c.edge_counts_sampler = false;
      else throw ParseError("edge_sampler must be counts or graphs");
    } else {
      throw ParseError("unknown key: " + key);
    }
  }
  (void)have_tests;
  c.validate();
  return c;
}

inline SweepConfig parse_sweep_config(const std::string& text) {
  std::istringstream in(text);
  return parse_sweep_config(in);
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepCell {
  int n = 0;
  double rho = 0.0;
  double p = 0.0;
  double s = 0.0;
};

struct SweepRow {
  SweepCell cell;
  std::string test;
  ErrorEstimate estimate;
  bool failed = false;
  std::string failure;
};

struct SweepResult {
  SweepModel model = SweepModel::Gaussian;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;

  std::string csv() const;
};

inline std::vector<SweepCell> sweep_cells(const SweepConfig& c) {
  std::vector<SweepCell> cells;
  for (int n : c.n) {
    if (c.model == SweepModel::Gaussian) {
      for (double r : c.rho) cells.push_back({n, r, 0.0, 0.0});
    } else {
      for (double p : c.p)
        for (double s : c.s) cells.push_back({n, (p * s < 1.0) ? rho_er(p, s) : 1.0, p, s});
    }
  }
  return cells;
}

/// Per-trial stream: (master seed, cell, role, trial). Roles 0/1 are null/planted
/// scoring trials; 2/3 are the held-out trials used to fit oracle thresholds.
inline SeedSpec trial_seed(std::uint64_t master, std::size_t cell, int role, std::size_t trial) {
  return {master, (static_cast<std::uint64_t>(cell) << 40) ^ (static_cast<std::uint64_t>(role) << 36) ^
                      static_cast<std::uint64_t>(trial)};
}

namespace detail {
struct CellThreshold {
  double value = 0.0;
  Direction direction = Direction::AtLeast;
  bool ok = true;
  std::string failure;
};

inline CellThreshold fixed_threshold(const SweepConfig& c, const SweepCell& cell, SweepTest t) {
  CellThreshold th;
  try {
    switch (t) {
      case SweepTest::Edge:
        if (c.model != SweepModel::Er) throw DomainError("edge test needs the ER model");
        th.value = edge_count_threshold(cell.n, cell.p, cell.s);
        th.direction = Direction::Below;
        break;
      case SweepTest::QapExact:
      case SweepTest::QapLocal:
        th.value = c.model == SweepModel::Gaussian ? threshold_gaussian(cell.n, cell.rho, c.threshold_exponent)
                                                   : threshold_er(cell.n, cell.p, cell.s);
        break;
      case SweepTest::Lr:
        th.value = 0.0;  // log LR >= 0, i.e. LR >= 1
        break;
    }
  } catch (const std::exception& e) {
    th.ok = false;
    th.failure = e.what();
  }
  return th;
}

template <ObservationGraph G, class Model>
double trial_statistic(SweepTest t, const G& a, const G& b, const Model& model, SeedSpec seed, int restarts) {
  switch (t) {
    case SweepTest::Edge:
      if constexpr (std::is_same_v<G, BinaryGraph>) {
        return std::abs(static_cast<double>(a.edge_count()) - static_cast<double>(b.edge_count()));
      } else {
        throw DomainError("edge test needs binary graphs");
      }
    case SweepTest::QapExact: return qap_exact(a, b).value;
    case SweepTest::QapLocal: {
      LocalSearchOptions opt;
      opt.restarts = restarts;
      return qap_local_search(a, b, seed, opt).value;
    }
    case SweepTest::Lr: return log_likelihood_ratio_exact(a, b, model);
  }
  return 0.0;
}

inline bool declares_planted(double stat, double thr, Direction d) {
  return d == Direction::AtLeast ? stat >= thr : stat < thr;
}

/// Threshold minimizing the empirical error sum on held-out statistics.
inline double fit_threshold(std::vector<double> null_stats, std::vector<double> planted_stats, Direction d) {
  std::vector<double> cands = null_stats;
  cands.insert(cands.end(), planted_stats.begin(), planted_stats.end());
  cands.push_back(std::numeric_limits<double>::infinity());
  cands.push_back(-std::numeric_limits<double>::infinity());
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  double best = cands.front();
  std::size_t best_err = std::numeric_limits<std::size_t>::max();
  for (double tau : cands) {
    std::size_t err = 0;
    for (double x : null_stats) err += declares_planted(x, tau, d) ? 1 : 0;
    for (double x : planted_stats) err += declares_planted(x, tau, d) ? 0 : 1;
    if (err < best_err) {
      best_err = err;
      best = tau;
    }
  }
  return best;
}

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}
}  // namespace detail

inline std::string SweepResult::csv() const {
  std::string out = "model,n,rho,p,s,test,trials,type1,type2,err_sum,ci,seed\n";
  for (const auto& r : rows) {
    out += model == SweepModel::Gaussian ? "gaussian" : "er";
    out += "," + std::to_string(r.cell.n) + "," + detail::fmt("%.6g", r.cell.rho) + ",";
    if (model == SweepModel::Er) out += detail::fmt("%.6g", r.cell.p) + "," + detail::fmt("%.6g", r.cell.s);
    else out += ",";
    out += "," + r.test + "," + std::to_string(r.estimate.trials) + ",";
    if (r.failed) {
      out += "nan,nan,nan,nan";
    } else {
      out += detail::fmt("%.6f", r.estimate.type1) + "," + detail::fmt("%.6f", r.estimate.type2) + "," +
             detail::fmt("%.6f", r.estimate.sum) + "," + detail::fmt("%.6f", r.estimate.ci);
    }
    out += "," + std::to_string(seed) + "\n";
  }
  return out;
}

/// Runs every (cell, trial) under Q and P; rows come out in grid order, one per
/// (cell, test), plus a "<test>/oracle" row per test in oracle-threshold mode.
inline SweepResult run_sweep(const SweepConfig& c, int workers = default_workers()) {
  c.validate();
  const auto cells = sweep_cells(c);
  const std::size_t nt = c.tests.size();
  const int roles = c.oracle_threshold ? 4 : 2;
  const std::size_t per_cell = static_cast<std::size_t>(roles) * c.trials;
  const bool counts_only = c.model == SweepModel::Er && c.edge_counts_sampler &&
                           std::all_of(c.tests.begin(), c.tests.end(), [](SweepTest t) { return t == SweepTest::Edge; });

  std::vector<std::vector<detail::CellThreshold>> thresholds(cells.size());
  for (std::size_t ci = 0; ci < cells.size(); ++ci)
    for (SweepTest t : c.tests) thresholds[ci].push_back(detail::fixed_threshold(c, cells[ci], t));

  // stats[item * nt + test]; failures recorded per item.
  const std::size_t items = cells.size() * per_cell;
  std::vector<double> stats(items * nt, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> item_error(items);

  parallel_for(
      items,
      [&](std::size_t item) {
        const std::size_t ci = item / per_cell;
        const int role = static_cast<int>((item % per_cell) / c.trials);
        const std::size_t trial = item % c.trials;
        const bool planted = role % 2 == 1;
        const SweepCell& cell = cells[ci];
        const SeedSpec seed = trial_seed(c.seed, ci, role, trial);
        try {
          if (c.model == SweepModel::Gaussian) {
            const GaussianParams gp{cell.n, cell.rho};
            const GaussianModel model{cell.rho};
            WeightedGraph a, b;
            if (planted) {
              auto smp = sample_planted_gaussian(gp, seed);
              a = std::move(smp.a);
              b = std::move(smp.b);
            } else {
              auto smp = sample_null_gaussian(gp, seed);
              a = std::move(smp.a);
              b = std::move(smp.b);
            }
            for (std::size_t t = 0; t < nt; ++t)
              if (thresholds[ci][t].ok)
                stats[item * nt + t] = detail::trial_statistic(c.tests[t], a, b, model, seed, c.restarts);
          } else {
            const ErParams ep{cell.n, cell.p, cell.s};
            if (counts_only) {
              const EdgeCounts e = sample_edge_counts(ep, seed, planted);
              for (std::size_t t = 0; t < nt; ++t) stats[item * nt + t] = std::abs(static_cast<double>(e.a - e.b));
              return;
            }
            const ErModel model{cell.p, cell.s};
            BinaryGraph a, b;
            if (planted) {
              auto smp = sample_planted_er(ep, seed);
              a = std::move(smp.a);
              b = std::move(smp.b);
            } else {
              auto smp = sample_null_er(ep, seed);
              a = std::move(smp.a);
              b = std::move(smp.b);
            }
            for (std::size_t t = 0; t < nt; ++t)
              if (thresholds[ci][t].ok)
                stats[item * nt + t] = detail::trial_statistic(c.tests[t], a, b, model, seed, c.restarts);
          }
        } catch (const std::exception& e) {
          item_error[item] = e.what();
        }
      },
      workers);

  SweepResult res;
  res.model = c.model;
  res.seed = c.seed;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    std::string cell_failure;
    for (std::size_t r = 0; r < per_cell && cell_failure.empty(); ++r)
      if (!item_error[ci * per_cell + r].empty()) cell_failure = item_error[ci * per_cell + r];
    for (std::size_t t = 0; t < nt; ++t) {
      const auto& th = thresholds[ci][t];
      auto collect = [&](int role) {
        std::vector<double> v(c.trials);
        for (std::size_t i = 0; i < c.trials; ++i)
          v[i] = stats[(ci * per_cell + static_cast<std::size_t>(role) * c.trials + i) * nt + t];
        return v;
      };
      auto score = [&](double tau) {
        std::size_t fp = 0, fn = 0;
        for (double x : collect(0)) fp += detail::declares_planted(x, tau, th.direction) ? 1 : 0;
        for (double x : collect(1)) fn += detail::declares_planted(x, tau, th.direction) ? 0 : 1;
        return ErrorEstimate::from_counts(fp, fn, c.trials);
      };
      SweepRow row;
      row.cell = cells[ci];
      row.test = test_name(c.tests[t]);
      row.estimate.trials = c.trials;
      const std::string failure = !th.ok ? th.failure : cell_failure;
      if (!failure.empty()) {
        row.failed = true;
        row.failure = failure;
      } else {
        row.estimate = score(th.value);
      }
      res.rows.push_back(row);
      if (c.oracle_threshold) {
        SweepRow orow = row;
        orow.test += "/oracle";
        if (cell_failure.empty()) {
          // Statistics are only computed for tests whose fixed threshold is defined.
          if (!th.ok) {
            orow.failed = true;
            orow.failure = th.failure;
          } else {
            orow.failed = false;
            orow.failure.clear();
            orow.estimate = score(detail::fit_threshold(collect(2), collect(3), th.direction));
          }
        }
        res.rows.push_back(orow);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Exact computations for tiny ER instances

inline constexpr int kExactTvLimit = 4;

namespace detail {
/// All graphs on n vertices indexed by their edge mask.
inline std::vector<BinaryGraph> all_graphs(int n) {
  const std::size_t m = pair_count(n);
  std::vector<BinaryGraph> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask)
    out.push_back(BinaryGraph::from_words(n, {mask}));
  return out;
}

/// P(A, B) = (1/n!) Σ_π ∏_{i<j} P(A_ij, B_{π(i)π(j)}) from the joint pair law.
inline double planted_probability_direct(const BinaryGraph& a, const BinaryGraph& b, double p, double s) {
  const int n = a.size();
  const double j11 = p * s * s, j10 = p * s * (1.0 - s), j00 = 1.0 - 2.0 * p * s + p * s * s;
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  double total = 0.0;
  long long count = 0;
  do {
    double prod = 1.0;
    for (int i = 0; i < n && prod != 0.0; ++i)
      for (int j = i + 1; j < n; ++j) {
        const bool x = a.has_edge(i, j);
        const bool y = b.has_edge(pi[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(j)]);
        prod *= x && y ? j11 : (x || y ? j10 : j00);
      }
    total += prod;
    ++count;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return total / static_cast<double>(count);
}

inline double null_probability(const BinaryGraph& a, const BinaryGraph& b, double q) {
  const auto m = static_cast<double>(pair_count(a.size()));
  const auto ea = static_cast<double>(a.edge_count());
  const auto eb = static_cast<double>(b.edge_count());
  return std::pow(q, ea + eb) * std::pow(1.0 - q, 2.0 * m - ea - eb);
}

struct WeightedStat {
  double stat;
  double p;
  double q;
};

/// Smallest type-I + type-II error over all thresholds of a statistic.
inline double min_error_over_thresholds(std::vector<WeightedStat> v, Direction d) {
  std::sort(v.begin(), v.end(), [](const WeightedStat& x, const WeightedStat& y) { return x.stat < y.stat; });
  double total_p = 0.0, total_q = 0.0;
  for (const auto& w : v) {
    total_p += w.p;
    total_q += w.q;
  }
  // below_p/below_q: mass with stat < τ, for τ running over distinct values then +∞.
  double below_p = 0.0, below_q = 0.0;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&] {
    const double err = d == Direction::AtLeast ? (total_q - below_q) + below_p : below_q + (total_p - below_p);
    best = std::min(best, err);
  };
  for (std::size_t i = 0; i < v.size();) {
    consider();
    const double x = v[i].stat;
    while (i < v.size() && v[i].stat == x) {
      below_p += v[i].p;
      below_q += v[i].q;
      ++i;
    }
  }
  consider();
  return best;
}
}  // namespace detail

/// TV(P, Q) = ½ Σ Q(A,B) |L(A,B) − 1| over all graph pairs, with L the exact likelihood ratio.
inline double exact_tv_er(const ErParams& params) {
  params.validate();
  if (params.n > kExactTvLimit) throw LimitError("exact_tv_er: n exceeds limit");
  const auto graphs = detail::all_graphs(params.n);
  const ErModel model{params.p, params.s};
  const double q = params.p * params.s;
  double tv = 0.0;
  for (const auto& a : graphs)
    for (const auto& b : graphs) {
      const double qv = detail::null_probability(a, b, q);
      if (qv == 0.0) continue;
      tv += qv * std::abs(likelihood_ratio_exact(a, b, model) - 1.0);
    }
  return 0.5 * tv;
}

/// Exact error sums of the tests on a tiny ER instance, all from one enumeration.
struct ExactComparison {
  double tv = 0.0;
  double lr_error = 0.0;         // LR ≥ 1 rule, P summed directly over permutations
  double bayes_error = 0.0;      // Σ min(P, Q)
  double qap_min_error = 0.0;    // best threshold on the QAP statistic
  double edge_min_error = 0.0;   // best threshold on |e(A) − e(B)|
  double edge_fixed_error = 0.0; // at the edge-count test's own threshold
};

inline ExactComparison exact_compare_er(const ErParams& params) {
  params.validate();
  if (params.n > kExactTvLimit) throw LimitError("exact_compare_er: n exceeds limit");
  const auto graphs = detail::all_graphs(params.n);
  const ErModel model{params.p, params.s};
  const double q = params.p * params.s;
  ExactComparison out;
  std::vector<detail::WeightedStat> qap, edge;
  for (const auto& a : graphs)
    for (const auto& b : graphs) {
      const double qv = detail::null_probability(a, b, q);
      const double pv = detail::planted_probability_direct(a, b, params.p, params.s);
      if (qv == 0.0 && pv == 0.0) continue;
      const double lr = qv > 0.0 ? likelihood_ratio_exact(a, b, model) : std::numeric_limits<double>::infinity();
      if (qv > 0.0) out.tv += 0.5 * qv * std::abs(lr - 1.0);
      out.lr_error += lr >= 1.0 ? qv : pv;
      out.bayes_error += std::min(pv, qv);
      qap.push_back({qap_exact(a, b).value, pv, qv});
      const double diff = std::abs(static_cast<double>(a.edge_count()) - static_cast<double>(b.edge_count()));
      edge.push_back({diff, pv, qv});
      out.edge_fixed_error += edge_count_test(a, b, params).decision == Decision::Planted ? qv : pv;
    }
  out.qap_min_error = detail::min_error_over_thresholds(std::move(qap), Direction::AtLeast);
  out.edge_min_error = detail::min_error_over_thresholds(std::move(edge), Direction::Below);
  return out;
}

// ---------------------------------------------------------------------------
// Threshold curves

/// p(log(1/p) − 1 + p), the ER information factor.
inline double er_information(double p) { return p * (std::log(1.0 / p) - 1.0 + p); }

struct CurveRow {
  int n = 0;
  double p = 0.0;       // ER only
  double upper = 0.0;   // ρ² (Gaussian) or s² (ER) above which strong detection is possible
  double lower = 0.0;   // below which it is impossible (ε = 0)
  double sparse = 0.0;  // ER sparse weak-detection boundary 1/(np) (constants dropped)
};

/// Gaussian: 4 log n/(n−1) and 4 log n/n. ER: 2 log n/((n−1) p I(p)), 2 log n/(n p I(p)), 1/(np).
inline std::vector<CurveRow> threshold_curves(SweepModel model, const std::vector<int>& ns,
                                              const std::vector<double>& ps = {}) {
  std::vector<CurveRow> out;
  for (int n : ns) {
    if (n < 2) throw DomainError("threshold_curves: n must be >= 2");
    const double ln = std::log(static_cast<double>(n));
    if (model == SweepModel::Gaussian) {
      out.push_back({n, 0.0, 4.0 * ln / (n - 1.0), 4.0 * ln / n, 0.0});
      continue;
    }
    for (double p : ps) {
      if (!(p > 0.0 && p <= 1.0)) throw DomainError("threshold_curves: p must lie in (0, 1]");
      const double info = er_information(p);
      const double inf = std::numeric_limits<double>::infinity();
      out.push_back({n, p, info > 0.0 ? 2.0 * ln / ((n - 1.0) * info) : inf, info > 0.0 ? 2.0 * ln / (n * info) : inf,
                     1.0 / (n * p)});
    }
  }
  return out;
}

inline std::string curves_csv(SweepModel model, const std::vector<CurveRow>& rows) {
  std::string out = "model,n,p,upper,lower,sparse\n";
  for (const auto& r : rows) {
    out += model == SweepModel::Gaussian ? "gaussian" : "er";
    out += "," + std::to_string(r.n) + ",";
    if (model == SweepModel::Er) out += detail::fmt("%.6g", r.p);
    out += "," + detail::fmt("%.10g", r.upper) + "," + detail::fmt("%.10g", r.lower) + ",";
    if (model == SweepModel::Er) out += detail::fmt("%.10g", r.sparse);
    out += "\n";
  }
  return out;
}

/// Roughly log-spaced integers in [lo, hi], both ends included.
inline std::vector<int> log_spaced(int lo, int hi, int points) {
  if (lo < 2 || hi < lo || points < 1) throw DomainError("log_spaced: requires 2 <= lo <= hi and points >= 1");
  std::vector<int> out;
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const int v = static_cast<int>(std::lround(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))));
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

struct PStar {
  double by_maximization = 0.0;  // golden-section argmax of p(log(1/p) − 1 + p)
  double by_root = 0.0;          // bisection root of log(1/p) = 2(1 − p)
  double residual = 0.0;         // |log(1/p) − 2(1 − p)| at by_maximization
};

inline PStar p_star() {
  PStar r;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1e-6, hi = 1.0 - 1e-6;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = er_information(x1), f2 = er_information(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = er_information(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = er_information(x1);
    }
  }
  r.by_maximization = 0.5 * (lo + hi);
  auto g = [](double p) { return std::log(1.0 / p) - 2.0 * (1.0 - p); };
  double a = 0.01, b = 0.9;  // g(a) > 0 > g(b); the other root is p = 1
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double mid = 0.5 * (a + b);
    (g(mid) > 0.0 ? a : b) = mid;
  }
  r.by_root = 0.5 * (a + b);
  r.residual = std::abs(g(r.by_maximization));
  return r;
}

}  // namespace corrtest
