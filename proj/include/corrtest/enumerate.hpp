#pragma once

// Counting and generation of backbone graphs of orbit forests and
// pseudoforests: rooted-forest counts, the rooted-pseudoforest bound, structural
// validators (T1–T4 for forests, P1–P7 for pseudoforests), and the two staged
// constructions as callback streams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "corrtest/errors.hpp"
#include "corrtest/graph.hpp"
#include "corrtest/orbits.hpp"
#include "corrtest/union_find.hpp"

namespace corrtest {

// ---------------------------------------------------------------------------
// Closed-form counts

namespace detail {
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r > UINT64_MAX) throw LimitError("count overflows 64 bits");
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw LimitError("binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}
}  // namespace detail

/// Rooted forests on n labeled vertices with a edges: C(n−1, a)·n^a.
inline std::uint64_t count_rooted_forests(int n, int a) {
  if (n < 1 || a < 0 || a > n - 1) throw DomainError("count_rooted_forests: requires 0 <= a <= n-1");
  return detail::checked_mul(detail::binom_u64(static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(a)),
                             detail::pow_u64(static_cast<std::uint64_t>(n), a));
}

/// Upper bound C(n, a)·(2n)^a on rooted pseudoforests with self-loops and multi-edges.
inline std::uint64_t pseudoforest_count_bound(int n, int a) {
  if (n < 0 || a < 0) throw DomainError("pseudoforest_count_bound: negative argument");
  return detail::checked_mul(detail::binom_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(a)),
                             detail::pow_u64(2 * static_cast<std::uint64_t>(n), a));
}

/// Rooted forests by exhaustive enumeration of edge subsets of K_n, weighting
/// each forest by the number of ways to root its components.
inline std::uint64_t count_rooted_forests_bruteforce(int n, int a) {
  const auto pairs = all_pairs(n);
  std::uint64_t total = 0;
  RollbackUnionFind uf(n);
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (static_cast<int>(chosen.size()) == a) {
      RollbackUnionFind comp(n);
      for (int id : chosen) comp.add_edge(pairs[static_cast<std::size_t>(id)].u, pairs[static_cast<std::size_t>(id)].v);
      std::uint64_t roots = 1;
      for (int x = 0; x < n; ++x)
        if (comp.find(x) == x) roots *= static_cast<std::uint64_t>(std::max(1, comp.component_vertices(x)));
      total += roots;
      return;
    }
    if (pos == pairs.size()) return;
    self(self, pos + 1);
    const Edge e = pairs[pos];
    if (!uf.connected(e.u, e.v)) {
      const auto mark = uf.checkpoint();
      uf.add_edge(e.u, e.v);
      chosen.push_back(static_cast<int>(pos));
      self(self, pos + 1);
      chosen.pop_back();
      uf.rollback(mark);
    }
  };
  dfs(dfs, 0);
  return total;
}

/// Rooted pseudoforests on n labeled vertices with a unlabeled edges, self-loops
/// and parallel edges allowed (every component has at most one cycle and one root).
inline std::uint64_t count_rooted_pseudoforests_bruteforce(int n, int a) {
  std::vector<Edge> types;
  for (int u = 0; u < n; ++u) types.push_back({u, u});
  for (const Edge& e : all_pairs(n)) types.push_back(e);
  std::uint64_t total = 0;
  RollbackUnionFind uf(n);
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(chosen.size()) == a) {
      RollbackUnionFind comp(n);
      for (int id : chosen) comp.add_edge(types[static_cast<std::size_t>(id)].u, types[static_cast<std::size_t>(id)].v);
      std::uint64_t roots = 1;
      for (int x = 0; x < n; ++x)
        if (comp.find(x) == x) roots *= static_cast<std::uint64_t>(std::max(1, comp.component_vertices(x)));
      total += roots;
      return;
    }
    for (std::size_t t = from; t < types.size(); ++t) {  // multisets: non-decreasing type index
      const auto mark = uf.checkpoint();
      if (uf.add_edge(types[t].u, types[t].v) <= 0) {
        chosen.push_back(static_cast<int>(t));
        self(self, t);
        chosen.pop_back();
      }
      uf.rollback(mark);
    }
  };
  dfs(dfs, 0);
  return total;
}

// ---------------------------------------------------------------------------
// Backbone structure

/// Components of Γ_m and their attachments, for every node length m.
struct BackboneAnalysis {
  struct Component {
    int length = 0;
    std::vector<int> nodes;
    int inner_edges = 0;          // matchings and self-loops inside Γ_m
    bool parallel = false;        // some pair joined by two matchings
    int loops = 0;
    int splits = 0;
    std::vector<int> down_bridges;  // indices into edges of bridges to shorter orbits

    bool tree() const { return inner_edges == static_cast<int>(nodes.size()) - 1; }
    bool unicyclic() const { return inner_edges == static_cast<int>(nodes.size()); }
    bool plain() const { return splits == 0 && down_bridges.empty(); }
  };

  std::vector<Component> components;
  std::vector<int> component_of;  // giant node -> component index
};

inline BackboneAnalysis analyze_backbone(const BackboneGraph& g) {
  const int nn = static_cast<int>(g.nodes.size());
  RollbackUnionFind uf(nn);
  for (const GiantEdge& e : g.edges)
    if (e.kind != OrbitKind::Bridge && e.u >= 0 && e.u < nn && e.v >= 0 && e.v < nn) uf.add_edge(e.u, e.v);
  BackboneAnalysis out;
  out.component_of.assign(static_cast<std::size_t>(nn), -1);
  std::map<int, int> root_to_comp;
  for (int x = 0; x < nn; ++x) {
    const int r = uf.find(x);
    auto it = root_to_comp.find(r);
    if (it == root_to_comp.end()) {
      it = root_to_comp.emplace(r, static_cast<int>(out.components.size())).first;
      out.components.push_back({});
      out.components.back().length = g.nodes[static_cast<std::size_t>(x)].length;
    }
    auto& c = out.components[static_cast<std::size_t>(it->second)];
    c.nodes.push_back(x);
    if (g.nodes[static_cast<std::size_t>(x)].split) ++c.splits;
    out.component_of[static_cast<std::size_t>(x)] = it->second;
  }
  std::set<std::pair<int, int>> seen_pairs;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const GiantEdge& e = g.edges[i];
    if (e.u < 0 || e.u >= nn || e.v < 0 || e.v >= nn) continue;
    auto& c = out.components[static_cast<std::size_t>(out.component_of[static_cast<std::size_t>(e.u)])];
    if (e.kind == OrbitKind::Bridge) {
      c.down_bridges.push_back(static_cast<int>(i));
      continue;
    }
    ++c.inner_edges;
    if (e.u == e.v) {
      ++c.loops;
    } else if (!seen_pairs.insert({e.u, e.v}).second) {
      c.parallel = true;
    }
  }
  return out;
}

struct Violation {
  std::string condition;  // "W" (malformed), "T1".."T4", "P1".."P7"
  std::string detail;
};

struct ValidationResult {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string cond, std::string detail) {
    ok = false;
    violations.push_back({std::move(cond), std::move(detail)});
  }
  bool has(const std::string& cond) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.condition == cond; });
  }
};

namespace detail {
inline void check_well_formed(const BackboneGraph& g, ValidationResult& r) {
  const int nn = static_cast<int>(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (g.nodes[i].split && g.nodes[i].length % 2 != 0) r.add("W", "split on odd node " + std::to_string(i));
  std::set<GiantEdge> seen;
  for (const GiantEdge& e : g.edges) {
    if (e.u < 0 || e.u >= nn || e.v < 0 || e.v >= nn) {
      r.add("W", "edge endpoint out of range");
      continue;
    }
    if (!seen.insert(e).second) r.add("W", "duplicate giant edge");
    const int lu = g.nodes[static_cast<std::size_t>(e.u)].length;
    const int lv = g.nodes[static_cast<std::size_t>(e.v)].length;
    switch (e.kind) {
      case OrbitKind::Matching:
        if (e.u >= e.v || lu != lv || e.label < 1 || e.label > lu) r.add("W", "malformed matching edge");
        break;
      case OrbitKind::Cycle:
        if (e.u != e.v || e.label < 1 || e.label > (lu - 1) / 2) r.add("W", "malformed self-loop");
        break;
      case OrbitKind::Bridge:
        if (lu <= lv || e.label < 1 || e.label > std::gcd(lu, lv)) r.add("W", "malformed bridge");
        break;
      case OrbitKind::Split:
        r.add("W", "split stored as an edge");
        break;
    }
  }
}
}  // namespace detail

/// Conditions T1–T4, necessary for the orbit graph to be a forest.
inline ValidationResult validate_forest(const BackboneGraph& g) {
  ValidationResult r;
  detail::check_well_formed(g, r);
  const auto an = analyze_backbone(g);
  for (const GiantEdge& e : g.edges) {
    if (e.kind == OrbitKind::Cycle) r.add("T3", "self-loop at node " + std::to_string(e.u));
    if (e.kind == OrbitKind::Bridge) {
      const int m = g.nodes[static_cast<std::size_t>(e.u)].length;
      const int l = g.nodes[static_cast<std::size_t>(e.v)].length;
      if (m % l != 0) r.add("T2", "bridge between lengths " + std::to_string(m) + " and " + std::to_string(l));
    }
  }
  for (const auto& c : an.components) {
    const int matchings = c.inner_edges - c.loops;
    if (c.parallel || matchings > static_cast<int>(c.nodes.size()) - 1)
      r.add("T1", "component of length " + std::to_string(c.length) + " is not a simple tree");
    if (c.splits + static_cast<int>(c.down_bridges.size()) > 1)
      r.add("T4", "component of length " + std::to_string(c.length) + " has " + std::to_string(c.splits) +
                      " splits and " + std::to_string(c.down_bridges.size()) + " bridges to shorter orbits");
  }
  return r;
}

/// Conditions P1–P7, necessary for the orbit graph to be a pseudoforest.
inline ValidationResult validate_pseudoforest(const BackboneGraph& g) {
  ValidationResult r;
  detail::check_well_formed(g, r);
  if (!r.ok) return r;
  const auto an = analyze_backbone(g);
  auto comp_of = [&](int node) -> const BackboneAnalysis::Component& {
    return an.components[static_cast<std::size_t>(an.component_of[static_cast<std::size_t>(node)])];
  };
  for (const GiantEdge& e : g.edges) {
    if (e.kind != OrbitKind::Bridge) continue;
    const int m = g.nodes[static_cast<std::size_t>(e.u)].length;
    const int l = g.nodes[static_cast<std::size_t>(e.v)].length;
    if (m % l != 0) r.add("P2", "bridge between lengths " + std::to_string(m) + " and " + std::to_string(l));
  }
  std::vector<int> doubles;  // bridges whose start component has a split or another bridge
  for (const auto& c : an.components) {
    const std::string name = "component of length " + std::to_string(c.length);
    if (c.inner_edges > static_cast<int>(c.nodes.size())) r.add("P1", name + " has more than one cycle");
    if (c.unicyclic() && !c.plain()) r.add("P3", name + " is unicyclic but not plain");
    if (!c.tree()) continue;
    if (c.splits > 2) r.add("P4", name + " contains " + std::to_string(c.splits) + " splits");
    if (c.down_bridges.size() >= 2) {
      for (int bi : c.down_bridges) {
        const GiantEdge& b = g.edges[static_cast<std::size_t>(bi)];
        const int l = g.nodes[static_cast<std::size_t>(b.v)].length;
        if (c.length % 2 != 0 || 2 * l != c.length)
          r.add("P5", name + " meets two bridges not both to length " + std::to_string(c.length / 2));
      }
    }
    if (c.splits > 0) {
      for (int bi : c.down_bridges) {
        const GiantEdge& b = g.edges[static_cast<std::size_t>(bi)];
        const int l = g.nodes[static_cast<std::size_t>(b.v)].length;
        if (c.length % 2 != 0 || 2 * l != c.length) {
          r.add("P6", name + " has a split and a bridge to length " + std::to_string(l));
          continue;
        }
        const auto& end = comp_of(b.v);
        if (!(end.tree() && end.plain())) r.add("P6", name + " has a split and a bridge ending outside a plain tree");
      }
    }
    if (c.splits > 0 || c.down_bridges.size() >= 2)
      for (int bi : c.down_bridges) doubles.push_back(bi);
  }
  for (std::size_t x = 0; x < doubles.size(); ++x)
    for (std::size_t y = x + 1; y < doubles.size(); ++y) {
      const GiantEdge& e1 = g.edges[static_cast<std::size_t>(doubles[x])];
      const GiantEdge& e2 = g.edges[static_cast<std::size_t>(doubles[y])];
      if (e1.v == e2.v) continue;
      const int c1 = an.component_of[static_cast<std::size_t>(e1.v)];
      const int c2 = an.component_of[static_cast<std::size_t>(e2.v)];
      const auto& k1 = an.components[static_cast<std::size_t>(c1)];
      const auto& k2 = an.components[static_cast<std::size_t>(c2)];
      if (c1 == c2 || !(k1.tree() && k1.plain()) || !(k2.tree() && k2.plain()))
        r.add("P7", "bridge end points are not in distinct plain tree components");
    }
  return r;
}

// ---------------------------------------------------------------------------
// Construction parameters

/// a_t, b_t, c_t, d_t for t = 1..k (index 0 unused).
struct ConstructionParams {
  int k = 0;
  std::vector<int> a, b, c, d;

  static ConstructionParams zeros(int k) {
    ConstructionParams p;
    p.k = k;
    p.a.assign(static_cast<std::size_t>(k) + 1, 0);
    p.b = p.c = p.d = p.a;
    return p;
  }

  friend auto operator<=>(const ConstructionParams&, const ConstructionParams&) = default;
};

inline bool feasible(const CycleType& type, const ConstructionParams& p, bool forest) {
  if (p.k < 0 || p.a.size() != static_cast<std::size_t>(p.k) + 1 || p.b.size() != p.a.size() ||
      p.c.size() != p.a.size() || p.d.size() != p.a.size())
    return false;
  for (int t = 1; t <= p.k; ++t) {
    const auto i = static_cast<std::size_t>(t);
    if (p.a[i] < 0 || p.b[i] < 0 || p.c[i] < 0 || p.d[i] < 0) return false;
    if (t % 2 != 0 && p.b[i] != 0) return false;
    if (2 * t > p.k && p.d[i] != 0) return false;
    if (forest && p.d[i] != 0) return false;
    const int nt = t <= type.n() ? type[t] : 0;
    if (p.a[i] + p.b[i] + p.c[i] + p.d[i] > nt) return false;
  }
  return true;
}

namespace detail {
inline double multinomial(int n, std::initializer_list<int> parts) {
  double lr = std::lgamma(n + 1.0);
  int rest = n;
  for (int x : parts) {
    lr -= std::lgamma(x + 1.0);
    rest -= x;
  }
  return std::exp(lr - std::lgamma(rest + 1.0));
}

inline double shorter_mass(const CycleType& type, int t) {
  double s = 0.0;
  for (int l = 1; l < t; ++l) s += static_cast<double>(l) * type[l];
  return s;
}
}  // namespace detail

/// ∏_t C(n_t; a_t, b_t, c_t) (t n_t)^{a_t} (Σ_{ℓ<t} ℓ n_ℓ)^{c_t}.
inline double forest_stream_bound(const CycleType& type, const ConstructionParams& p) {
  if (!feasible(type, p, true)) return 0.0;
  double v = 1.0;
  for (int t = 1; t <= p.k; ++t) {
    const auto i = static_cast<std::size_t>(t);
    const int nt = type[t];
    v *= detail::multinomial(nt, {p.a[i], p.b[i], p.c[i]}) * std::pow(static_cast<double>(t) * nt, p.a[i]) *
         std::pow(detail::shorter_mass(type, t), p.c[i]);
  }
  return v;
}

/// ∏_t C(n_t; a,b,c,d) (2t n_t)^a n_t^b (Σ_{ℓ<t} ℓ n_ℓ)^c (t n_{2t})^d.
inline double pseudoforest_stream_bound(const CycleType& type, const ConstructionParams& p) {
  if (!feasible(type, p, false)) return 0.0;
  double v = 1.0;
  for (int t = 1; t <= p.k; ++t) {
    const auto i = static_cast<std::size_t>(t);
    const int nt = type[t];
    v *= detail::multinomial(nt, {p.a[i], p.b[i], p.c[i], p.d[i]}) * std::pow(2.0 * t * nt, p.a[i]) *
         std::pow(static_cast<double>(nt), p.b[i]) * std::pow(detail::shorter_mass(type, t), p.c[i]) *
         std::pow(static_cast<double>(t) * type[2 * t], p.d[i]);
  }
  return v;
}

/// Parameters (a, b, c, d) under which the pseudoforest construction can
/// produce Γ: a_m giant edges inside Γ_m, b_m tree components with splits,
/// c_m single bridges, d_m bridges of the double kind ending in Γ_m.
inline ConstructionParams params_of_backbone(const BackboneGraph& g, int k) {
  ConstructionParams p = ConstructionParams::zeros(k);
  const auto an = analyze_backbone(g);
  for (const auto& c : an.components) {
    const auto t = static_cast<std::size_t>(c.length);
    p.a[t] += c.inner_edges;
    if (c.splits > 0) ++p.b[t];
    const bool lone = c.splits == 0 && c.down_bridges.size() == 1;
    for (int bi : c.down_bridges) {
      const GiantEdge& e = g.edges[static_cast<std::size_t>(bi)];
      const int l = g.nodes[static_cast<std::size_t>(e.v)].length;
      if (lone)
        ++p.c[t];
      else if (2 * l == c.length)
        ++p.d[static_cast<std::size_t>(l)];
      else
        ++p.c[t];  // not realizable; counted so the parameters stay total
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Streams

struct StreamOptions {
  bool validate = true;
};

/// One emitted graph with the validator verdict attached (when requested).
struct Emission {
  const BackboneGraph& graph;
  const ValidationResult* verdict;
};

namespace detail {
struct StageNodes {
  std::vector<int> first;  // first giant id of length t
  std::vector<int> count;  // n_t
};

inline StageNodes stage_nodes(const CycleType& type, int k) {
  StageNodes s;
  s.first.assign(static_cast<std::size_t>(k) + 2, 0);
  s.count.assign(static_cast<std::size_t>(k) + 2, 0);
  int next = 0;
  for (int t = 1; t <= k; ++t) {
    s.first[static_cast<std::size_t>(t)] = next;
    s.count[static_cast<std::size_t>(t)] = t <= type.n() ? type[t] : 0;
    next += s.count[static_cast<std::size_t>(t)];
  }
  return s;
}

/// Enumerates sets of `want` distinct labeled edges on `n` local nodes forming a
/// (pseudo)forest; calls emit(edges) with local endpoints.
template <class Emit>
void labeled_edge_sets(int n, int t, int want, bool pseudo, Emit&& emit) {
  struct Cand {
    int u, v, label;
    OrbitKind kind;
  };
  std::vector<Cand> cands;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v)
      for (int l = 1; l <= t; ++l) cands.push_back({u, v, l, OrbitKind::Matching});
    if (pseudo)
      for (int l = 1; l <= (t - 1) / 2; ++l) cands.push_back({u, u, l, OrbitKind::Cycle});
  }
  RollbackUnionFind uf(std::max(n, 1));
  std::vector<GiantEdge> chosen;
  std::vector<char> pair_used(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n, 1)), 0);
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(chosen.size()) == want) {
      emit(static_cast<const std::vector<GiantEdge>&>(chosen));
      return;
    }
    if (cands.size() - from < static_cast<std::size_t>(want) - chosen.size()) return;
    for (std::size_t i = from; i < cands.size(); ++i) {
      const Cand& c = cands[i];
      const auto slot = static_cast<std::size_t>(c.u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c.v);
      if (!pseudo && pair_used[slot]) continue;  // forests: simple edges only
      const auto mark = uf.checkpoint();
      const bool ok = pseudo ? uf.add_edge(c.u, c.v) <= 0 : (!uf.connected(c.u, c.v) && (uf.add_edge(c.u, c.v), true));
      if (ok) {
        pair_used[slot] = 1;
        chosen.push_back({c.kind, c.u, c.v, c.label});
        self(self, i + 1);
        chosen.pop_back();
        pair_used[slot] = 0;
      }
      uf.rollback(mark);
    }
  };
  dfs(dfs, 0);
}

/// Components (lists of local nodes, tree flag) of a local edge set on n nodes.
inline std::vector<std::pair<std::vector<int>, bool>> local_components(int n, const std::vector<GiantEdge>& edges) {
  RollbackUnionFind uf(std::max(n, 1));
  for (const auto& e : edges) uf.add_edge(e.u, e.v);
  std::map<int, std::size_t> idx;
  std::vector<std::pair<std::vector<int>, bool>> comps;
  std::vector<int> edge_count;
  for (int x = 0; x < n; ++x) {
    const int r = uf.find(x);
    auto it = idx.find(r);
    if (it == idx.end()) {
      it = idx.emplace(r, comps.size()).first;
      comps.push_back({{}, true});
      edge_count.push_back(uf.component_edges(x));
    }
    comps[it->second].first.push_back(x);
  }
  for (std::size_t c = 0; c < comps.size(); ++c)
    comps[c].second = edge_count[c] == static_cast<int>(comps[c].first.size()) - 1;
  return comps;
}

/// Calls fn(chosen indices) for every size-r subset of [0, n) in lexicographic order.
template <class Fn>
bool for_each_subset(int n, int r, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(std::max(r, 0)));
  auto rec = [&](auto&& self, int pos, int from) -> bool {
    if (pos == r) return fn(static_cast<const std::vector<int>&>(idx));
    for (int i = from; i <= n - (r - pos); ++i) {
      idx[static_cast<std::size_t>(pos)] = i;
      if (!self(self, pos + 1, i + 1)) return false;
    }
    return true;
  };
  if (r < 0 || r > n) return true;
  return rec(rec, 0, 0);
}

/// Generic staged construction shared by both algorithms.
template <class Visit>
class StageRunner {
 public:
  StageRunner(const CycleType& type, const ConstructionParams& p, bool pseudo, StreamOptions opt, Visit& visit)
      : type_(type), p_(p), pseudo_(pseudo), opt_(opt), visit_(visit), nodes_(stage_nodes(type, p.k)) {
    graph_ = empty_backbone(type, p.k);
  }

  /// Returns the number of emitted graphs.
  std::uint64_t run() {
    if (!feasible(type_, p_, !pseudo_)) return 0;
    stage(1);
    return emitted_;
  }

 private:
  int n_of(int t) const { return t <= p_.k ? nodes_.count[static_cast<std::size_t>(t)] : 0; }
  int first_of(int t) const { return nodes_.first[static_cast<std::size_t>(t)]; }

  bool emit() {
    ++emitted_;
    BackboneGraph g = graph_;
    g.normalize();
    if (opt_.validate) {
      const ValidationResult v = pseudo_ ? validate_pseudoforest(g) : validate_forest(g);
      return visit_(Emission{g, &v});
    }
    return visit_(Emission{g, nullptr});
  }

  // Stage t: matching, splitting, forward bridging, backward bridging.
  bool stage(int t) {
    if (t > p_.k) return emit();
    const auto i = static_cast<std::size_t>(t);
    const int nt = n_of(t);
    const int base = first_of(t);
    bool keep_going = true;
    labeled_edge_sets(nt, t, p_.a[i], pseudo_, [&](const std::vector<GiantEdge>& local) {
      if (!keep_going) return;
      const std::size_t edge_mark = graph_.edges.size();
      for (const GiantEdge& e : local) graph_.edges.push_back({e.kind, base + e.u, base + e.v, e.label});
      auto comps = local_components(nt, local);
      // Every component gets a root.
      std::vector<int> root(comps.size(), 0);
      auto choose_roots = [&](auto&& self, std::size_t c) -> bool {
        if (c == comps.size()) return after_roots(t, comps, root);
        for (int x : comps[c].first) {
          root[c] = x;
          if (!self(self, c + 1)) return false;
        }
        return true;
      };
      keep_going = choose_roots(choose_roots, 0);
      graph_.edges.resize(edge_mark);
    });
    return keep_going;
  }

  bool after_roots(int t, const std::vector<std::pair<std::vector<int>, bool>>& comps, const std::vector<int>& root) {
    const auto i = static_cast<std::size_t>(t);
    const int base = first_of(t);
    std::vector<int> trees;
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (comps[c].second) trees.push_back(static_cast<int>(c));
    const int nt_trees = static_cast<int>(trees.size());
    return for_each_subset(nt_trees, p_.b[i], [&](const std::vector<int>& split_sel) {
      std::vector<char> used(trees.size(), 0);
      for (int s : split_sel) used[static_cast<std::size_t>(s)] = 1;
      std::vector<int> split_comps;
      for (int s : split_sel) split_comps.push_back(trees[static_cast<std::size_t>(s)]);
      return place_splits(t, comps, root, split_comps, 0, [&] {
        std::vector<int> rest;
        for (std::size_t x = 0; x < trees.size(); ++x)
          if (!used[x]) rest.push_back(trees[x]);
        return for_each_subset(static_cast<int>(rest.size()), p_.c[i], [&](const std::vector<int>& fwd_sel) {
          std::vector<char> used2(rest.size(), 0);
          for (int s : fwd_sel) used2[static_cast<std::size_t>(s)] = 1;
          std::vector<int> fwd_roots;
          for (int s : fwd_sel) fwd_roots.push_back(base + root[static_cast<std::size_t>(rest[static_cast<std::size_t>(s)])]);
          return forward_bridges(t, fwd_roots, 0, [&] {
            std::vector<int> rest2;
            for (std::size_t x = 0; x < rest.size(); ++x)
              if (!used2[x]) rest2.push_back(rest[x]);
            if (!pseudo_) return stage(t + 1);
            return for_each_subset(static_cast<int>(rest2.size()), p_.d[i], [&](const std::vector<int>& back_sel) {
              std::vector<int> back_roots;
              for (int s : back_sel) back_roots.push_back(base + root[static_cast<std::size_t>(rest2[static_cast<std::size_t>(s)])]);
              return backward_bridges(t, back_roots, 0, [&] { return stage(t + 1); });
            });
          });
        });
      });
    });
  }

  template <class Next>
  bool place_splits(int t, const std::vector<std::pair<std::vector<int>, bool>>& comps, const std::vector<int>& root,
                    const std::vector<int>& chosen, std::size_t pos, Next&& next) {
    if (pos == chosen.size()) return next();
    const int base = first_of(t);
    const auto c = static_cast<std::size_t>(chosen[pos]);
    const int r = base + root[c];
    const std::vector<int> nodes_here = pseudo_ ? comps[c].first : std::vector<int>{root[c]};
    for (int x : nodes_here) {
      const int gx = base + x;
      graph_.nodes[static_cast<std::size_t>(r)].split = true;
      graph_.nodes[static_cast<std::size_t>(gx)].split = true;
      const bool go = place_splits(t, comps, root, chosen, pos + 1, next);
      graph_.nodes[static_cast<std::size_t>(r)].split = false;
      graph_.nodes[static_cast<std::size_t>(gx)].split = false;
      if (!go) return false;
    }
    return true;
  }

  template <class Next>
  bool forward_bridges(int t, const std::vector<int>& roots, std::size_t pos, Next&& next) {
    if (pos == roots.size()) return next();
    for (int l = 1; l < t; ++l) {
      if (t % l != 0) continue;
      for (int v = first_of(l); v < first_of(l) + n_of(l); ++v)
        for (int label = 1; label <= l; ++label) {
          graph_.edges.push_back({OrbitKind::Bridge, roots[pos], v, label});
          const bool go = forward_bridges(t, roots, pos + 1, next);
          graph_.edges.pop_back();
          if (!go) return false;
        }
    }
    return true;
  }

  template <class Next>
  bool backward_bridges(int t, const std::vector<int>& roots, std::size_t pos, Next&& next) {
    if (pos == roots.size()) return next();
    const int t2 = 2 * t;
    for (int u = first_of(t2); u < first_of(t2) + n_of(t2); ++u)
      for (int label = 1; label <= t; ++label) {
        graph_.edges.push_back({OrbitKind::Bridge, u, roots[pos], label});
        const bool go = backward_bridges(t, roots, pos + 1, next);
        graph_.edges.pop_back();
        if (!go) return false;
      }
    return true;
  }

  const CycleType& type_;
  const ConstructionParams& p_;
  bool pseudo_;
  StreamOptions opt_;
  Visit& visit_;
  StageNodes nodes_;
  BackboneGraph graph_;
  std::uint64_t emitted_ = 0;
};
}  // namespace detail

/// Forest construction: per length t, a rooted forest Γ_t with a_t labeled
/// edges, b_t splits at roots, c_t bridges from roots to divisor lengths.
/// visit(Emission) returns false to stop early; the return value counts emissions.
template <class Visit>
std::uint64_t algorithm1_forests(const CycleType& type, const ConstructionParams& p, Visit&& visit,
                                 StreamOptions opt = {}) {
  detail::StageRunner<std::remove_reference_t<Visit>> runner(type, p, false, opt, visit);
  return runner.run();
}

/// Pseudoforest construction: adds self-loops and parallel edges in Γ_t, one
/// or two splits per chosen tree, and backward bridges into Γ_{2t}.
template <class Visit>
std::uint64_t algorithm2_pseudoforests(const CycleType& type, const ConstructionParams& p, Visit&& visit,
                                       StreamOptions opt = {}) {
  detail::StageRunner<std::remove_reference_t<Visit>> runner(type, p, true, opt, visit);
  return runner.run();
}

// ---------------------------------------------------------------------------
// Orbit-graph excess of a component of Γ_m

struct ComponentOrbitGraph {
  BinaryGraph graph;
  std::vector<int> vertices;  // union of the node orbits involved
  int excess = 0;
};

/// H_C for the component `comp` of Γ_m: its splits, matchings and cycles plus
/// the bridges from C to shorter orbits, over the node orbits they touch.
inline ComponentOrbitGraph component_orbit_graph(const OrbitStructure& s, const BackboneGraph& g, int k,
                                                 std::span<const int> comp) {
  std::set<int> in_comp(comp.begin(), comp.end());
  BackboneGraph sub;
  sub.nodes = g.nodes;
  for (auto& nd : sub.nodes) nd.split = false;
  std::set<int> touched(comp.begin(), comp.end());
  for (int x : comp) sub.nodes[static_cast<std::size_t>(x)].split = g.nodes[static_cast<std::size_t>(x)].split;
  for (const GiantEdge& e : g.edges) {
    if (!in_comp.count(e.u)) continue;
    if (e.kind == OrbitKind::Bridge) touched.insert(e.v);
    sub.edges.push_back(e);
  }
  ComponentOrbitGraph out;
  out.graph = orbit_graph_from_backbone(s, sub, k);
  const auto giant = giant_node_orbits(s.nodes(), k);
  for (int x : touched) {
    const auto& orb = s.nodes().orbits[static_cast<std::size_t>(giant[static_cast<std::size_t>(x)])];
    out.vertices.insert(out.vertices.end(), orb.begin(), orb.end());
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.excess = static_cast<int>(out.graph.edge_count()) - static_cast<int>(out.vertices.size());
  return out;
}

/// Operation applied to a component of Γ_m.
struct ComponentOp {
  enum class Kind { Split, Bridge } kind = Kind::Split;
  int node = 0;    // giant node inside the component
  int target = 0;  // bridges: giant node of a shorter orbit
  int label = 1;   // bridges: label in [gcd]
};

struct ExcessDelta {
  int delta = 0;
  int lower_bound = 0;  // m/2 for a split, lcm(ℓ, m) − ℓ for a bridge
};

/// Change of ex(H_C) when a split or a bridge is added to component C.
inline ExcessDelta excess_operations_check(const OrbitStructure& s, const BackboneGraph& g, int k,
                                           std::span<const int> comp, const ComponentOp& op) {
  if (std::find(comp.begin(), comp.end(), op.node) == comp.end())
    throw ContractViolation("operation node is not in the component");
  const int m = g.nodes[static_cast<std::size_t>(op.node)].length;
  BackboneGraph after = g;
  ExcessDelta out;
  if (op.kind == ComponentOp::Kind::Split) {
    if (m % 2 != 0 || g.nodes[static_cast<std::size_t>(op.node)].split)
      throw ContractViolation("split requires an even, unsplit node");
    after.nodes[static_cast<std::size_t>(op.node)].split = true;
    out.lower_bound = m / 2;
  } else {
    if (op.target < 0 || op.target >= static_cast<int>(g.nodes.size()))
      throw ContractViolation("bridge target out of range");
    const int l = g.nodes[static_cast<std::size_t>(op.target)].length;
    if (l >= m) throw ContractViolation("bridge must end in a shorter orbit");
    const GiantEdge e{OrbitKind::Bridge, op.node, op.target, op.label};
    if (std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end())
      throw ContractViolation("bridge already present");
    after.edges.push_back(e);
    after.normalize();
    out.lower_bound = std::lcm(l, m) - l;
  }
  out.delta = component_orbit_graph(s, after, k, comp).excess - component_orbit_graph(s, g, k, comp).excess;
  return out;
}

/// Every cycle type of S_n (integer partitions of n), largest parts first.
inline std::vector<CycleType> all_cycle_types(int n) {
  std::vector<CycleType> out;
  std::vector<int> counts(static_cast<std::size_t>(std::max(n, 0)), 0);
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(CycleType::from_counts(counts));
      return;
    }
    for (int part = std::min(rest, max_part); part >= 1; --part) {
      ++counts[static_cast<std::size_t>(part - 1)];
      self(self, rest - part, part);
      --counts[static_cast<std::size_t>(part - 1)];
    }
  };
  rec(rec, n, n);
  return out;
}

/// Giant-node lists of the components of Γ_m.
inline std::vector<std::vector<int>> components_of_length(const BackboneGraph& g, int m) {
  std::vector<std::vector<int>> out;
  for (const auto& c : analyze_backbone(g).components)
    if (c.length == m) out.push_back(c.nodes);
  return out;
}

}  // namespace corrtest
