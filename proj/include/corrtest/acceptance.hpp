#pragma once

// The twelve acceptance checks. Each prints one PASS/FAIL line with its measured
// values; runtimes go to a separate stream so the report itself is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corrtest/detect.hpp"
#include "corrtest/enumerate.hpp"
#include "corrtest/experiments.hpp"
#include "corrtest/moments.hpp"
#include "corrtest/orbits.hpp"
#include "corrtest/parallel.hpp"
#include "corrtest/rng.hpp"

namespace corrtest::acceptance {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  int workers = default_workers();
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0: no runtime bound
};

namespace detail {
inline std::string num(double v, int digits = 6) {
  std::ostringstream o;
  o.imbue(std::locale::classic());
  o.precision(digits);
  o << v;
  return o.str();
}
}  // namespace detail

// 1. Σ k N_k = C(n,2) and the N_1, N_2 formulas, for every σ ∈ S_n, n = 2..7.
inline Result census_check(const Options&) {
  Result r{1, "orbit census", true, "", 0.0, 30.0};
  long long perms = 0, bad_total = 0, bad_small = 0;
  for (int n = 2; n <= 7; ++n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    do {
      const OrbitStructure s{Permutation(m)};
      ++perms;
      if (s.census().weighted_total() != static_cast<long long>(pair_count(n))) ++bad_total;
      const auto [n1, n2] = census_predict_small(s.nodes().type);
      if (s.census()[1] != n1 || s.census()[2] != n2) ++bad_small;
    } while (std::next_permutation(m.begin(), m.end()));
  }
  r.pass = bad_total == 0 && bad_small == 0;
  r.measured = std::to_string(perms) + " permutations, " + std::to_string(bad_total) + " total mismatches, " +
               std::to_string(bad_small) + " N1/N2 mismatches";
  return r;
}

// 2. The edge orbits of (12)(34)(5678).
inline Result table_check(const Options&) {
  Result r{2, "orbit table of (12)(34)(5678)", false, "", 0.0, 0.0};
  struct Expected {
    std::string kind;
    std::vector<std::pair<int, int>> edges;  // 1-based
  };
  const std::vector<Expected> expected = {
      {"S", {{1, 2}}},
      {"S", {{3, 4}}},
      {"M", {{1, 3}, {2, 4}}},
      {"M", {{1, 4}, {2, 3}}},
      {"B", {{1, 5}, {2, 6}, {1, 7}, {2, 8}}},
      {"B", {{1, 6}, {2, 7}, {1, 8}, {2, 5}}},
      {"B", {{3, 5}, {4, 6}, {3, 7}, {4, 8}}},
      {"B", {{3, 6}, {4, 7}, {3, 8}, {4, 5}}},
      {"C", {{5, 6}, {6, 7}, {7, 8}, {5, 8}}},
      {"S", {{5, 7}, {6, 8}}},
  };
  using Key = std::pair<std::string, std::set<std::pair<int, int>>>;
  std::multiset<Key> want, got;
  for (const auto& e : expected) want.insert({e.kind, {e.edges.begin(), e.edges.end()}});
  const OrbitStructure s(Permutation::from_cycles(8, {{1, 2}, {3, 4}, {5, 6, 7, 8}}));
  for (std::size_t id = 0; id < s.orbits().size(); ++id) {
    std::set<std::pair<int, int>> es;
    for (const Edge& e : s.orbits()[id].edges) es.insert({e.u + 1, e.v + 1});
    got.insert({kind_letter(s.orbit_class(static_cast<int>(id)).kind), es});
  }
  r.pass = want == got && s.orbits().size() == expected.size() && s.census()[1] == 2 && s.census()[2] == 3 &&
           s.census()[4] == 5;
  r.measured = std::to_string(s.orbits().size()) + " orbits; census N1=" + std::to_string(s.census()[1]) +
               " N2=" + std::to_string(s.census()[2]) + " N4=" + std::to_string(s.census()[4]) +
               (want == got ? "; classes and edge sets match" : "; MISMATCH");
  return r;
}

// 3. Per-orbit moments against the exhaustive sum and Monte Carlo.
inline Result orbit_moment_check(const Options& o) {
  Result r{3, "per-orbit moments", true, "", 0.0, 120.0};
  const std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k)
    for (double p : grid)
      for (double s : grid) worst = std::max(worst, std::abs(orbit_moment_er(k, p, s) - orbit_moment_er_oracle(k, p, s)));
  double worst_z = 0.0;
  std::uint64_t stream = 0;
  for (int k = 1; k <= 2; ++k)
    for (double rho : {0.2, 0.4}) {
      const auto mc = orbit_moment_gaussian_monte_carlo(k, rho, 1000000, SeedSpec{o.seed, 0x300 + stream++});
      worst_z = std::max(worst_z, std::abs(mc.mean - orbit_moment_gaussian(k, rho)) / mc.std_error);
    }
  r.pass = worst <= 1e-12 && worst_z <= 3.0;
  r.measured = "max ER deviation " + detail::num(worst, 3) + " (tol 1e-12); max Gaussian |z| " + detail::num(worst_z, 4) +
               " (tol 3)";
  return r;
}

// 4. Second moment by cycle types against the graph-pair enumeration.
inline Result second_moment_check(const Options&) {
  Result r{4, "second moment", true, "", 0.0, 300.0};
  double worst = 0.0;
  for (int n : {2, 3})
    for (double p : {0.2, 0.5, 0.8})
      for (double s : {0.3, 0.6, 0.9}) {
        const double exact = second_moment_exact(n, MomentModel::er(p, s)).exact.value();
        const double brute = second_moment_bruteforce_er(ErParams{n, p, s});
        worst = std::max(worst, std::abs(exact - brute));
      }
  double worst_null = 0.0;
  for (int n : {2, 3}) {
    worst_null = std::max(worst_null, std::abs(second_moment_exact(n, MomentModel::gaussian(0.0)).exact.value() - 1.0));
    for (double p : {0.2, 0.5, 0.8}) {
      worst_null = std::max(worst_null, std::abs(second_moment_exact(n, MomentModel::er(p, 0.0)).exact.value() - 1.0));
      worst_null = std::max(worst_null, std::abs(second_moment_bruteforce_er(ErParams{n, p, 0.0}) - 1.0));
    }
  }
  r.pass = worst <= 1e-9 && worst_null <= 1e-12;
  r.measured = "max |exact - brute| " + detail::num(worst, 3) + " (tol 1e-9); max |value - 1| at zero correlation " +
               detail::num(worst_null, 3);
  return r;
}

// 5. Brute-force generating functions against the product bounds.
inline Result gf_bound_check(const Options& o) {
  Result r{5, "pseudoforest generating function bound", true, "", 0.0, 600.0};
  StreamRng rng(CounterRng(SeedSpec{o.seed, 0x500}));
  const std::vector<double> ss = {0.05, 0.1, 0.3};
  int checked = 0, skipped = 0, violations = 0, forest_violations = 0;
  double max_ratio = 0.0;
  for (int attempt = 0; checked < 200 && attempt < 5000; ++attempt) {
    const int n = 2 + static_cast<int>(rng.bounded(9));
    const int k = 2 + attempt % 4;
    const Permutation sigma = random_permutation(n, rng);
    const OrbitStructure st(sigma);
    if (st.short_orbit_ids(k).size() > 20) {
      ++skipped;
      continue;
    }
    const auto hist = gf_histogram(st, k, false);
    const auto hist_forest = gf_histogram(st, k, true);
    for (double s : ss) {
      const double bound = gf_bound_jk(st.nodes().type, k, s);
      const double value = evaluate_gf(hist, s);
      if (value > bound * (1.0 + 1e-12)) ++violations;
      if (value > 1.0) max_ratio = std::max(max_ratio, (value - 1.0) / (bound - 1.0));  // the empty graph contributes 1 to both
      if (evaluate_gf(hist_forest, s) > gf_bound_forest(st.nodes().type, k, s) * (1.0 + 1e-12)) ++forest_violations;
    }
    ++checked;
  }
  r.pass = checked >= 200 && violations == 0 && forest_violations == 0;
  r.measured = std::to_string(checked) + " permutations (" + std::to_string(skipped) + " with more than 20 short orbits skipped), " +
               std::to_string(violations) + " pseudoforest and " + std::to_string(forest_violations) +
               " forest violations, max (value - 1)/(bound - 1) " + detail::num(max_ratio, 8);
  return r;
}

// 6. Counting formulas, validator soundness and stream containment.
inline Result enumeration_check(const Options&) {
  Result r{6, "enumeration formulas and containment", true, "", 0.0, 600.0};
  int forest_mismatch = 0, bound_violations = 0;
  for (int n = 1; n <= 7; ++n)
    for (int a = 0; a <= n - 1; ++a)
      if (count_rooted_forests(n, a) != count_rooted_forests_bruteforce(n, a)) ++forest_mismatch;
  for (int n = 1; n <= 5; ++n)
    for (int a = 0; a <= 5; ++a)
      if (count_rooted_pseudoforests_bruteforce(n, a) > pseudoforest_count_bound(n, a)) ++bound_violations;

  long long graphs = 0, invalid = 0, missing = 0, forests = 0, invalid_forests = 0;
  std::map<std::pair<std::vector<int>, ConstructionParams>, std::set<std::string>> streams;
  for (int n = 2; n <= 8; ++n)
    for (const CycleType& type : all_cycle_types(n)) {
      const OrbitStructure st(canonical_permutation(type));
      for (int k = 1; k <= 4; ++k) {
        if (st.short_orbit_ids(k).size() > 20) continue;
        for_each_orbit_pseudoforest(st, k, false, [&](const std::vector<int>& ids, int) {
          std::vector<Edge> es;
          for (int id : ids)
            for (const Edge& e : st.orbits()[static_cast<std::size_t>(id)].edges) es.push_back(e);
          const BinaryGraph h(n, es);
          const BackboneGraph g = backbone(st, h, k);
          ++graphs;
          if (!validate_pseudoforest(g).ok) ++invalid;
          if (is_forest(h)) {
            ++forests;
            if (!validate_forest(g).ok) ++invalid_forests;
          }
          const ConstructionParams p = params_of_backbone(g, k);
          std::vector<int> tag(type.count.begin(), type.count.begin() + std::min<std::size_t>(type.count.size(), 2 * k + 1));
          tag.push_back(k);
          auto it = streams.find({tag, p});
          if (it == streams.end()) {
            std::set<std::string> keys;
            algorithm2_pseudoforests(type, p, [&](const Emission& e) {
              keys.insert(e.graph.key());
              return true;
            }, StreamOptions{false});
            it = streams.emplace(std::make_pair(tag, p), std::move(keys)).first;
          }
          if (!it->second.count(g.key())) ++missing;
        });
      }
    }
  r.pass = forest_mismatch == 0 && bound_violations == 0 && invalid == 0 && invalid_forests == 0 && missing == 0 &&
           graphs > 0;
  r.measured = "rooted-forest mismatches " + std::to_string(forest_mismatch) + ", pseudoforest bound violations " +
               std::to_string(bound_violations) + "; " + std::to_string(graphs) + " orbit pseudoforests (" +
               std::to_string(forests) + " forests): " + std::to_string(invalid) + " fail P1-P7, " +
               std::to_string(invalid_forests) + " fail T1-T4, " + std::to_string(missing) + " missing from streams (" +
               std::to_string(streams.size()) + " streams)";
  return r;
}

// 7. Cycle-count moments and the Poisson approximation.
inline Result cycle_poisson_check(const Options& o) {
  Result r{7, "Poisson cycle counts", true, "", 0.0, 0.0};
  double worst = 0.0;
  int vectors = 0;
  for (int n = 1; n <= 8; ++n) {
    // all a = (a_1..a_n) with Σ ℓ a_ℓ ≤ n
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int l, int budget) -> void {
      if (l > n) {
        const double exact = cycle_moment_exact(n, a);
        worst = std::max(worst, std::abs(exact - poisson_cycle_moment(a)) / poisson_cycle_moment(a));
        ++vectors;
        return;
      }
      for (int c = 0; c * l <= budget; ++c) {
        a[static_cast<std::size_t>(l - 1)] = c;
        self(self, l + 1, budget - c * l);
      }
      a[static_cast<std::size_t>(l - 1)] = 0;
    };
    rec(rec, 1, n);
  }
  const auto tv = cycle_type_tv_check(50, 2, 100000, SeedSpec{o.seed, 0x700});
  r.pass = worst <= 1e-12 && tv.tv <= 0.02;
  r.measured = std::to_string(vectors) + " moment vectors, max rel deviation " + detail::num(worst, 3) +
               "; TV((n1,n2) at n=50, Poi(1)xPoi(1/2)) " + detail::num(tv.tv, 4) + " (tol 0.02)";
  return r;
}

// 8. The likelihood ratio test has the minimal error sum, 1 − TV.
inline Result lr_optimality_check(const Options&) {
  Result r{8, "likelihood ratio optimality", true, "", 0.0, 0.0};
  double worst_tv = 0.0, worst_gap = 0.0;
  int points = 0, order_violations = 0;
  for (int n : {3, 4})
    for (double p : {0.2, 0.5, 0.8})
      for (double s : {0.3, 0.6, 0.9, 1.0}) {
        const ErParams params{n, p, s};
        const auto c = exact_compare_er(params);
        const double tv = exact_tv_er(params);
        worst_tv = std::max(worst_tv, std::abs(c.lr_error - (1.0 - tv)));
        worst_tv = std::max(worst_tv, std::abs(c.bayes_error - (1.0 - tv)));
        if (c.lr_error > c.qap_min_error + 1e-12 || c.lr_error > c.edge_min_error + 1e-12 ||
            c.lr_error > c.edge_fixed_error + 1e-12)
          ++order_violations;
        worst_gap = std::max(worst_gap, c.lr_error - std::min(c.qap_min_error, c.edge_min_error));
        ++points;
      }
  r.pass = worst_tv <= 1e-9 && order_violations == 0;
  r.measured = std::to_string(points) + " grid points, max |LR error - (1 - TV)| " + detail::num(worst_tv, 3) +
               ", ordering violations " + std::to_string(order_violations);
  return r;
}

// 9. Edge-count test at n = 2000.
inline Result edge_weak_detection_check(const Options& o) {
  Result r{9, "weak detection by edge counts", true, "", 0.0, 180.0};
  SweepConfig c;
  c.model = SweepModel::Er;
  c.n = {2000};
  c.p = {0.01};
  c.s = {0.8};
  c.tests = {SweepTest::Edge};
  c.trials = 2000;
  c.seed = o.seed;
  const auto res = run_sweep(c, o.workers);
  const auto& e = res.rows.at(0).estimate;
  r.pass = !res.rows[0].failed && e.sum + e.ci <= 0.90;
  r.measured = "type1 " + detail::num(e.type1, 4) + ", type2 " + detail::num(e.type2, 4) + ", error sum " +
               detail::num(e.sum, 4) + " +/- " + detail::num(e.ci, 3) + " (bound 0.90)";
  return r;
}

// 10. Error sum decreases with correlation (exact QAP, n = 9).
inline Result monotonicity_check(const Options& o) {
  Result r{10, "detection monotonicity", true, "", 0.0, 600.0};
  SweepConfig c;
  c.model = SweepModel::Gaussian;
  c.n = {9};
  c.rho = {0.3, 0.9};
  c.tests = {SweepTest::QapExact};
  c.trials = 100;
  c.seed = o.seed;
  const auto res = run_sweep(c, o.workers);
  const auto& lo = res.rows.at(0).estimate;
  const auto& hi = res.rows.at(1).estimate;
  const double combined = std::sqrt(lo.ci * lo.ci + hi.ci * hi.ci);
  const double drop = lo.sum - hi.sum;
  r.pass = !res.rows[0].failed && !res.rows[1].failed && drop > 2.0 * combined;
  r.measured = "error sum " + detail::num(lo.sum, 4) + " at rho=0.3, " + detail::num(hi.sum, 4) + " at rho=0.9; drop " +
               detail::num(drop, 4) + " vs 2 x combined CI " + detail::num(2.0 * combined, 4);
  return r;
}

// 11. Lambert W, ζ and p*.
inline Result numerics_check(const Options&) {
  Result r{11, "numerics", true, "", 0.0, 0.0};
  double worst_w = 0.0;
  for (int i = 0; i <= 130; ++i) {
    const double x = std::pow(10.0, -10.0 + 0.1 * i);
    const double w = lambert_w(x);
    worst_w = std::max(worst_w, std::abs(w * std::exp(w) - x));
  }
  // ζ solves μ h(ζ/μ) = k log(2en/k) with μ = C(k,2) p s² and h(y) = y log y − y + 1.
  double worst_z = 0.0;
  struct Z {
    int k, n;
    double p, s;
  };
  for (const Z& z : {Z{2, 10, 0.5, 0.5}, Z{5, 100, 0.1, 0.9}, Z{10, 1000, 0.01, 0.5}, Z{50, 50, 0.9, 0.9},
                     Z{100000, 100000, 0.5, 0.5}}) {
    const auto v = zeta_threshold(z.k, z.n, z.p, z.s);
    const double mu = static_cast<double>(pair_count(z.k)) * z.p * z.s * z.s;
    const double y = v.value / mu;
    const double lhs = mu * (y * std::log(y) - y + 1.0);
    const double rhs = z.k * std::log(2.0 * std::exp(1.0) * z.n / z.k);
    worst_z = std::max(worst_z, std::abs(lhs - rhs) / rhs);
  }
  const PStar ps = p_star();
  const double agree = std::abs(ps.by_maximization - ps.by_root);
  r.pass = worst_w <= 1e-12 && worst_z <= 1e-8 && agree <= 1e-6 && ps.residual <= 1e-6 &&
           std::abs(ps.by_root - 0.203) <= 5e-4;
  r.measured = "max |W e^W - x| " + detail::num(worst_w, 3) + "; max zeta relative residual " + detail::num(worst_z, 3) +
               "; p* = " + detail::num(ps.by_root, 8) + " (argmax " + detail::num(ps.by_maximization, 8) + ")";
  return r;
}

// 12. Identical reports and sweeps across repeated and parallel runs.
inline std::string report_line(const Result& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.measured;
}

inline Result determinism_check(const Options& o) {
  Result r{12, "determinism", true, "", 0.0, 0.0};
  auto sweep_csv = [&](int workers) {
    SweepConfig g;
    g.model = SweepModel::Gaussian;
    g.n = {6};
    g.rho = {0.0, 0.6};
    g.tests = {SweepTest::QapExact, SweepTest::QapLocal, SweepTest::Lr};
    g.trials = 20;
    g.seed = o.seed;
    g.oracle_threshold = true;
    SweepConfig e;
    e.model = SweepModel::Er;
    e.n = {6, 12};
    e.p = {0.3};
    e.s = {0.5, 0.9};
    e.tests = {SweepTest::Edge, SweepTest::QapLocal};
    e.trials = 20;
    e.seed = o.seed;
    return run_sweep(g, workers).csv() + run_sweep(e, workers).csv();
  };
  auto reports = [&](int workers) {
    Options w = o;
    w.workers = workers;
    return report_line(orbit_moment_check(w)) + "\n" + report_line(cycle_poisson_check(w)) + "\n" +
           report_line(edge_weak_detection_check(w)) + "\n";
  };
  const std::string s1 = sweep_csv(1), s2 = sweep_csv(1), s4 = sweep_csv(4);
  const std::string r1 = reports(1), r4 = reports(4);
  r.pass = s1 == s2 && s1 == s4 && r1 == r4;
  r.measured = std::string("sweep CSV ") + (s1 == s2 && s1 == s4 ? "identical" : "DIFFERS") +
               " across runs and 1/4 workers; Monte-Carlo reports " + (r1 == r4 ? "identical" : "DIFFER");
  return r;
}

struct Criterion {
  int id;
  const char* suite;
  std::function<Result(const Options&)> run;
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "census", census_check},           {2, "table", table_check},
      {3, "orbit-moment", orbit_moment_check}, {4, "second-moment", second_moment_check},
      {5, "gf-bound", gf_bound_check},       {6, "enumeration", enumeration_check},
      {7, "poisson", cycle_poisson_check},   {8, "lr-optimality", lr_optimality_check},
      {9, "edge-count", edge_weak_detection_check}, {10, "monotonicity", monotonicity_check},
      {11, "numerics", numerics_check},      {12, "determinism", determinism_check},
  };
  return all;
}

/// Runs the selected suites (by number or name; empty = all). Returns true when all pass.
inline bool run(const Options& o, const std::vector<std::string>& selection, std::ostream& report,
                std::ostream& timing) {
  bool all = true;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (!selection.empty() &&
        std::none_of(selection.begin(), selection.end(),
                     [&](const std::string& s) { return s == c.suite || s == std::to_string(c.id); }))
      continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run(o);
    } catch (const std::exception& e) {
      res = Result{c.id, c.suite, false, std::string("exception: ") + e.what(), 0.0, 0.0};
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.limit_seconds > 0.0 && res.seconds > res.limit_seconds) {
      res.pass = false;
      res.measured += "; runtime over " + detail::num(res.limit_seconds) + " s";
    }
    all = all && res.pass;
    report << report_line(res) << std::endl;
    timing << "[" << res.id << "] " << detail::num(res.seconds, 3) << " s" << std::endl;
  }
  if (ran == 0) throw DomainError("no acceptance suite matches the selection");
  return all;
}

}  // namespace corrtest::acceptance
