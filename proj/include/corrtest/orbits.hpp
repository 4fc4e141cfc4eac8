#pragma once

// Cycle structure of a node permutation σ and of the permutation σ^E it
// induces on unordered pairs: edge orbits, their census and M/B/C/S
// classification, the sets O_k and J_k, backbone graphs, and excess.
//
// Labeling convention. Each node orbit X is listed as x_0, x_1, ... with x_0 its
// minimum element and x_{t+1} = σ(x_t). For an edge {x_a, y_b}:
//   M (X, Y distinct, same length m, X the orbit with the smaller minimum):
//       label = ((b − a) mod m) + 1                           ∈ [m]
//   B (X of length ℓ shorter than Y of length m):
//       label = ((b − a) mod gcd(ℓ, m)) + 1                   ∈ [gcd(ℓ, m)]
//   C (both ends in X of length m, d = (b − a) mod m, d ≠ m/2):
//       label = min(d, m − d)                                  ∈ [⌊(m − 1)/2⌋]
//   S (both ends in X, d = m/2): no label, marks X as split.
// All four are invariant under σ^E, so they label whole orbits.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "corrtest/errors.hpp"
#include "corrtest/graph.hpp"
#include "corrtest/union_find.hpp"

namespace corrtest {

// ---------------------------------------------------------------------------
// Node cycles

/// n_k for k = 1..n, the number of k-node orbits.
struct CycleType {
  std::vector<int> count;  // count[k]; count[0] is unused

  CycleType() = default;
  explicit CycleType(int n) : count(static_cast<std::size_t>(n) + 1, 0) {}

  /// From {n_1, n_2, ...}.
  static CycleType from_counts(const std::vector<int>& n_k) {
    int n = 0;
    for (std::size_t t = 0; t < n_k.size(); ++t) {
      if (n_k[t] < 0) throw DomainError("cycle type entries must be non-negative");
      n += static_cast<int>(t + 1) * n_k[t];
    }
    CycleType c(n);
    for (std::size_t t = 0; t < n_k.size(); ++t)
      if (n_k[t] > 0) c.count[t + 1] = n_k[t];
    return c;
  }

  int n() const { return count.empty() ? 0 : static_cast<int>(count.size()) - 1; }

  int operator[](int k) const {
    return k >= 1 && k < static_cast<int>(count.size()) ? count[static_cast<std::size_t>(k)] : 0;
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;
};

struct NodeCycles {
  std::vector<std::vector<int>> orbits;  // sorted by minimum; each starts at its minimum
  std::vector<int> orbit_of;             // node -> orbit index
  std::vector<int> position;             // node -> index inside its orbit
  CycleType type;

  int length(int orbit) const { return static_cast<int>(orbits[static_cast<std::size_t>(orbit)].size()); }
};

inline NodeCycles node_cycles(const Permutation& sigma) {
  const int n = sigma.size();
  NodeCycles out;
  out.orbit_of.assign(static_cast<std::size_t>(n), -1);
  out.position.assign(static_cast<std::size_t>(n), -1);
  out.type = CycleType(n);
  for (int start = 0; start < n; ++start) {
    if (out.orbit_of[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = static_cast<int>(out.orbits.size());
    std::vector<int> orbit;
    int x = start;
    do {
      out.orbit_of[static_cast<std::size_t>(x)] = id;
      out.position[static_cast<std::size_t>(x)] = static_cast<int>(orbit.size());
      orbit.push_back(x);
      x = sigma(x);
    } while (x != start);
    ++out.type.count[orbit.size()];
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

/// Canonical permutation of a cycle type: cycles of consecutive labels in
/// increasing length, e.g. n_1 = 1, n_2 = 1 gives (1)(2 3).
inline Permutation canonical_permutation(const CycleType& type) {
  std::vector<int> m(static_cast<std::size_t>(type.n()));
  int next = 0;
  for (int k = 1; k <= type.n(); ++k)
    for (int c = 0; c < type[k]; ++c) {
      for (int t = 0; t < k; ++t) m[static_cast<std::size_t>(next + t)] = next + (t + 1) % k;
      next += k;
    }
  return Permutation(std::move(m));
}

// ---------------------------------------------------------------------------
// Edge permutation and edge orbits

/// σ^E as a map on pair indices: {i, j} -> {σ(i), σ(j)}.
inline std::vector<std::size_t> edge_permutation(const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<std::size_t> out;
  out.reserve(pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(pair_index(sigma(i), sigma(j), n));
  return out;
}

/// One orbit of σ^E, listed from its lexicographically smallest pair.
struct EdgeOrbit {
  std::vector<Edge> edges;

  std::size_t size() const { return edges.size(); }
  Edge representative() const { return edges.front(); }

  friend bool operator==(const EdgeOrbit&, const EdgeOrbit&) = default;
};

/// N_k for k = 1..C(n,2).
struct EdgeOrbitCensus {
  std::vector<long long> count;  // count[k]; count[0] is unused

  long long operator[](std::size_t k) const { return k < count.size() ? count[k] : 0; }

  long long weighted_total() const {
    long long t = 0;
    for (std::size_t k = 1; k < count.size(); ++k) t += static_cast<long long>(k) * count[k];
    return t;
  }
};

enum class OrbitKind { Matching, Bridge, Cycle, Split };

inline const char* kind_letter(OrbitKind k) {
  switch (k) {
    case OrbitKind::Matching:
      return "M";
    case OrbitKind::Bridge:
      return "B";
    case OrbitKind::Cycle:
      return "C";
    case OrbitKind::Split:
      return "S";
  }
  return "?";
}

struct OrbitClass {
  OrbitKind kind = OrbitKind::Matching;
  int m = 0;       // node-orbit length (the longer one for bridges)
  int l = 0;       // shorter node-orbit length, bridges only
  int length = 0;  // |O|
  int label = 0;   // 0 for splits
  int orbit_a = -1;  // M: smaller-minimum orbit; B: longer orbit; C, S: the orbit
  int orbit_b = -1;  // M: other orbit; B: shorter orbit; C, S: same as orbit_a

  std::string tag() const {
    std::string t = kind_letter(kind);
    if (kind == OrbitKind::Bridge) return t + "_{" + std::to_string(m) + "," + std::to_string(l) + "}";
    return t + "_" + std::to_string(m);
  }

  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

/// Classifies the orbit containing edge e, using the labeling convention above.
inline OrbitClass classify_edge(const NodeCycles& nc, Edge e) {
  const int ou = nc.orbit_of[static_cast<std::size_t>(e.u)];
  const int ov = nc.orbit_of[static_cast<std::size_t>(e.v)];
  const int pu = nc.position[static_cast<std::size_t>(e.u)];
  const int pv = nc.position[static_cast<std::size_t>(e.v)];
  OrbitClass c;
  if (ou == ov) {
    const int m = nc.length(ou);
    const int d = ((pv - pu) % m + m) % m;
    c.m = m;
    c.orbit_a = c.orbit_b = ou;
    if (2 * d == m) {
      c.kind = OrbitKind::Split;
      c.length = m / 2;
    } else {
      c.kind = OrbitKind::Cycle;
      c.length = m;
      c.label = std::min(d, m - d);
    }
    return c;
  }
  const int lu = nc.length(ou);
  const int lv = nc.length(ov);
  if (lu == lv) {
    // X is the orbit with the smaller minimum, i.e. the smaller orbit index.
    const bool u_first = ou < ov;
    const int a = u_first ? pu : pv;
    const int b = u_first ? pv : pu;
    c.kind = OrbitKind::Matching;
    c.m = lu;
    c.length = lu;
    c.label = ((b - a) % lu + lu) % lu + 1;
    c.orbit_a = std::min(ou, ov);
    c.orbit_b = std::max(ou, ov);
    return c;
  }
  const bool u_short = lu < lv;
  const int a = u_short ? pu : pv;  // position in the shorter orbit
  const int b = u_short ? pv : pu;
  const int l = std::min(lu, lv);
  const int m = std::max(lu, lv);
  const int g = std::gcd(l, m);
  c.kind = OrbitKind::Bridge;
  c.m = m;
  c.l = l;
  c.length = l / g * m;
  c.label = ((b - a) % g + g) % g + 1;
  c.orbit_a = u_short ? ov : ou;
  c.orbit_b = u_short ? ou : ov;
  return c;
}

/// Caches node cycles, σ^E and its orbits for one permutation.
class OrbitStructure {
 public:
  explicit OrbitStructure(Permutation sigma)
      : sigma_(std::move(sigma)), nodes_(node_cycles(sigma_)), edge_perm_(edge_permutation(sigma_)) {
    const int n = sigma_.size();
    const std::size_t m = pair_count(n);
    const auto pairs = all_pairs(n);
    orbit_of_pair_.assign(m, -1);
    census_.count.assign(m + 1, 0);
    for (std::size_t start = 0; start < m; ++start) {
      if (orbit_of_pair_[start] >= 0) continue;
      const int id = static_cast<int>(orbits_.size());
      EdgeOrbit orbit;
      std::size_t idx = start;
      do {
        orbit_of_pair_[idx] = id;
        orbit.edges.push_back(pairs[idx]);
        idx = edge_perm_[idx];
      } while (idx != start);
      ++census_.count[orbit.size()];
      classes_.push_back(classify_edge(nodes_, orbit.representative()));
      orbits_.push_back(std::move(orbit));
    }
  }

  const Permutation& sigma() const { return sigma_; }
  int size() const { return sigma_.size(); }
  const NodeCycles& nodes() const { return nodes_; }
  const std::vector<std::size_t>& edge_perm() const { return edge_perm_; }
  const std::vector<EdgeOrbit>& orbits() const { return orbits_; }
  const EdgeOrbitCensus& census() const { return census_; }
  int orbit_of_pair(std::size_t idx) const { return orbit_of_pair_[idx]; }
  int orbit_of_edge(Edge e) const { return orbit_of_pair_[pair_index(e.u, e.v, size())]; }
  const OrbitClass& orbit_class(int id) const { return classes_[static_cast<std::size_t>(id)]; }

  /// Whether orbit `id` belongs to O_k: both node orbits and the edge orbit have length ≤ k.
  bool in_short_set(int id, int k) const {
    const OrbitClass& c = classes_[static_cast<std::size_t>(id)];
    return c.m <= k && c.length <= k;  // c.m is the longer node-orbit length
  }

  /// Orbit ids of O_k in representative order.
  std::vector<int> short_orbit_ids(int k) const {
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(orbits_.size()); ++id)
      if (in_short_set(id, k)) out.push_back(id);
    return out;
  }

 private:
  Permutation sigma_;
  NodeCycles nodes_;
  std::vector<std::size_t> edge_perm_;
  std::vector<EdgeOrbit> orbits_;
  std::vector<OrbitClass> classes_;
  std::vector<int> orbit_of_pair_;
  EdgeOrbitCensus census_;
};

struct EdgeOrbitDecomposition {
  std::vector<EdgeOrbit> orbits;
  EdgeOrbitCensus census;
};

inline EdgeOrbitDecomposition edge_orbits(const Permutation& sigma) {
  OrbitStructure s(sigma);
  return {s.orbits(), s.census()};
}

/// (N_1, N_2) from the node cycle type alone.
inline std::pair<long long, long long> census_predict_small(const CycleType& t) {
  const long long n1 = t[1];
  const long long n2 = t[2];
  const long long n4 = t[4];
  return {n1 * (n1 - 1) / 2 + n2, n2 * (n2 - 1) + n1 * n2 + n4};
}

/// Classifies O after checking that it is an orbit of σ^E.
inline OrbitClass classify_orbit(const Permutation& sigma, const EdgeOrbit& orbit) {
  const int n = sigma.size();
  if (orbit.edges.empty()) throw ContractViolation("classify_orbit: empty orbit");
  std::vector<char> seen(pair_count(n), 0);
  for (std::size_t t = 0; t < orbit.size(); ++t) {
    const Edge e = orbit.edges[t];
    if (e.u < 0 || e.v >= n || e.u >= e.v) throw ContractViolation("classify_orbit: malformed pair");
    const std::size_t idx = pair_index(e.u, e.v, n);
    if (seen[idx]) throw ContractViolation("classify_orbit: repeated pair");
    seen[idx] = 1;
    const Edge next = orbit.edges[(t + 1) % orbit.size()];
    if (make_edge(sigma(e.u), sigma(e.v)) != next)
      throw ContractViolation("classify_orbit: edges do not form an orbit of the edge permutation");
  }
  return classify_edge(node_cycles(sigma), orbit.representative());
}

/// O_k: orbits O_ij with |O_i| ≤ k, |O_j| ≤ k and |O_ij| ≤ k.
inline std::vector<EdgeOrbit> orbits_up_to(const Permutation& sigma, int k) {
  if (k < 1) throw DomainError("orbits_up_to: k must be >= 1");
  OrbitStructure s(sigma);
  std::vector<EdgeOrbit> out;
  for (int id : s.short_orbit_ids(k)) out.push_back(s.orbits()[static_cast<std::size_t>(id)]);
  return out;
}

struct CompleteOrbits {
  std::vector<EdgeOrbit> orbits;  // J_k
  BinaryGraph graph;              // H_k
};

/// J_k: orbits of O_k contained in A ∧ B^π, and their union H_k.
inline CompleteOrbits complete_orbits(const Permutation& sigma, const BinaryGraph& a,
                                      const BinaryGraph& b_relabeled, int k) {
  detail::require_same_size(a.size(), sigma.size(), "complete_orbits");
  const BinaryGraph both = intersect(a, b_relabeled);
  OrbitStructure s(sigma);
  const int n = sigma.size();
  CompleteOrbits out;
  std::vector<Edge> edges;
  for (int id : s.short_orbit_ids(k)) {
    const EdgeOrbit& o = s.orbits()[static_cast<std::size_t>(id)];
    const bool full = std::all_of(o.edges.begin(), o.edges.end(),
                                  [&](const Edge& e) { return both.has_edge(e.u, e.v); });
    if (!full) continue;
    out.orbits.push_back(o);
    edges.insert(edges.end(), o.edges.begin(), o.edges.end());
  }
  out.graph = BinaryGraph(n, edges);
  return out;
}

// ---------------------------------------------------------------------------
// Backbone graphs

struct GiantNode {
  int length = 0;
  bool split = false;
};

/// Matching: u < v, both of the same length. Bridge: u longer, v shorter.
/// Cycle (self-loop): u == v.
struct GiantEdge {
  OrbitKind kind = OrbitKind::Matching;
  int u = 0;
  int v = 0;
  int label = 0;

  friend auto operator<=>(const GiantEdge&, const GiantEdge&) = default;
};

/// Giant nodes are the node orbits of length ≤ k ordered by (length, minimum);
/// in a graph built from a permutation, `orbit_min` records each minimum.
struct BackboneGraph {
  std::vector<GiantNode> nodes;
  std::vector<GiantEdge> edges;
  std::vector<int> orbit_min;

  void normalize() { std::sort(edges.begin(), edges.end()); }

  int split_count() const {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const GiantNode& g) { return g.split; }));
  }

  /// Stable text key: node lengths/splits and sorted edges.
  std::string key() const {
    std::string s;
    for (const GiantNode& g : nodes) {
      s += std::to_string(g.length);
      s += g.split ? '*' : '.';
    }
    s += '|';
    for (const GiantEdge& e : edges) {
      s += kind_letter(e.kind);
      s += std::to_string(e.u) + ',' + std::to_string(e.v) + ',' + std::to_string(e.label) + ';';
    }
    return s;
  }

  friend bool operator==(const BackboneGraph& a, const BackboneGraph& b) {
    if (a.nodes.size() != b.nodes.size()) return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i)
      if (a.nodes[i].length != b.nodes[i].length || a.nodes[i].split != b.nodes[i].split) return false;
    auto ea = a.edges;
    auto eb = b.edges;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
  }
};

/// Node orbit indices of length ≤ k ordered by (length, minimum); position = giant node id.
inline std::vector<int> giant_node_orbits(const NodeCycles& nc, int k) {
  std::vector<int> ids;
  for (int o = 0; o < static_cast<int>(nc.orbits.size()); ++o)
    if (nc.length(o) <= k) ids.push_back(o);
  std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return nc.length(x) < nc.length(y); });
  return ids;
}

/// Empty backbone over the node orbits of length ≤ k of the given cycle type.
inline BackboneGraph empty_backbone(const CycleType& type, int k) {
  BackboneGraph g;
  for (int t = 1; t <= std::min(k, type.n()); ++t)
    for (int c = 0; c < type[t]; ++c) g.nodes.push_back({t, false});
  return g;
}

namespace detail {
inline GiantEdge giant_edge_of(const OrbitClass& c, const std::vector<int>& giant_of_orbit) {
  const int a = giant_of_orbit[static_cast<std::size_t>(c.orbit_a)];
  const int b = giant_of_orbit[static_cast<std::size_t>(c.orbit_b)];
  return {c.kind, a, b, c.label};
}
}  // namespace detail

/// Backbone of an orbit graph H built from orbits of O_k.
inline BackboneGraph backbone(const OrbitStructure& s, const BinaryGraph& h, int k) {
  detail::require_same_size(h.size(), s.size(), "backbone");
  const NodeCycles& nc = s.nodes();
  const auto giant = giant_node_orbits(nc, k);
  std::vector<int> giant_of_orbit(nc.orbits.size(), -1);
  BackboneGraph g;
  for (std::size_t i = 0; i < giant.size(); ++i) {
    giant_of_orbit[static_cast<std::size_t>(giant[i])] = static_cast<int>(i);
    g.nodes.push_back({nc.length(giant[i]), false});
    g.orbit_min.push_back(nc.orbits[static_cast<std::size_t>(giant[i])].front());
  }
  std::vector<char> done(s.orbits().size(), 0);
  for (const Edge& e : h.edges()) {
    const int id = s.orbit_of_edge(e);
    if (done[static_cast<std::size_t>(id)]) continue;
    done[static_cast<std::size_t>(id)] = 1;
    const EdgeOrbit& o = s.orbits()[static_cast<std::size_t>(id)];
    for (const Edge& f : o.edges)
      if (!h.has_edge(f.u, f.v)) throw ContractViolation("backbone: graph is not a union of edge orbits");
    if (!s.in_short_set(id, k)) throw ContractViolation("backbone: orbit outside O_k");
    const OrbitClass& c = s.orbit_class(id);
    if (c.kind == OrbitKind::Split)
      g.nodes[static_cast<std::size_t>(giant_of_orbit[static_cast<std::size_t>(c.orbit_a)])].split = true;
    else
      g.edges.push_back(detail::giant_edge_of(c, giant_of_orbit));
  }
  g.normalize();
  return g;
}

inline BackboneGraph backbone(const Permutation& sigma, const BinaryGraph& h, int k) {
  return backbone(OrbitStructure(sigma), h, k);
}

/// Inverse of backbone(): the orbit graph whose backbone is Γ.
inline BinaryGraph orbit_graph_from_backbone(const OrbitStructure& s, const BackboneGraph& g, int k) {
  const NodeCycles& nc = s.nodes();
  const auto giant = giant_node_orbits(nc, k);
  if (giant.size() != g.nodes.size()) throw ContractViolation("backbone does not match the permutation");
  for (std::size_t i = 0; i < giant.size(); ++i)
    if (nc.length(giant[i]) != g.nodes[i].length)
      throw ContractViolation("backbone node lengths do not match the permutation");
  const int n = s.size();
  auto orbit_nodes = [&](int giant_id) -> const std::vector<int>& {
    if (giant_id < 0 || giant_id >= static_cast<int>(giant.size()))
      throw ContractViolation("giant edge endpoint out of range");
    return nc.orbits[static_cast<std::size_t>(giant[static_cast<std::size_t>(giant_id)])];
  };
  std::vector<char> chosen(s.orbits().size(), 0);
  auto add = [&](int x, int y, const OrbitClass& expect) {
    const int id = s.orbit_of_edge(make_edge(x, y));
    const OrbitClass& c = s.orbit_class(id);
    if (c.kind != expect.kind || c.label != expect.label)
      throw ContractViolation("giant edge label outside its range");
    if (chosen[static_cast<std::size_t>(id)]) throw ContractViolation("duplicate giant edge");
    chosen[static_cast<std::size_t>(id)] = 1;
  };
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!g.nodes[i].split) continue;
    const auto& x = orbit_nodes(static_cast<int>(i));
    if (x.size() % 2 != 0) throw ContractViolation("split on an odd orbit");
    OrbitClass c;
    c.kind = OrbitKind::Split;
    add(x[0], x[x.size() / 2], c);
  }
  for (const GiantEdge& e : g.edges) {
    const auto& x = orbit_nodes(e.u);
    const auto& y = orbit_nodes(e.v);
    OrbitClass c;
    c.kind = e.kind;
    c.label = e.label;
    switch (e.kind) {
      case OrbitKind::Matching:
        if (e.u >= e.v || x.size() != y.size()) throw ContractViolation("malformed matching edge");
        if (e.label < 1 || e.label > static_cast<int>(x.size())) throw ContractViolation("matching label out of range");
        add(x[0], y[static_cast<std::size_t>(e.label - 1)], c);
        break;
      case OrbitKind::Bridge: {
        if (x.size() <= y.size()) throw ContractViolation("bridge must run from the longer orbit");
        const int gcd = std::gcd(static_cast<int>(x.size()), static_cast<int>(y.size()));
        if (e.label < 1 || e.label > gcd) throw ContractViolation("bridge label out of range");
        add(y[0], x[static_cast<std::size_t>(e.label - 1)], c);
        break;
      }
      case OrbitKind::Cycle: {
        const int m = static_cast<int>(x.size());
        if (e.u != e.v) throw ContractViolation("self-loop endpoints differ");
        if (e.label < 1 || e.label > (m - 1) / 2) throw ContractViolation("self-loop label out of range");
        add(x[0], x[static_cast<std::size_t>(e.label)], c);
        break;
      }
      case OrbitKind::Split:
        throw ContractViolation("splits are node flags, not giant edges");
    }
  }
  std::vector<Edge> edges;
  for (std::size_t id = 0; id < chosen.size(); ++id) {
    if (!chosen[id]) continue;
    if (!s.in_short_set(static_cast<int>(id), k)) throw ContractViolation("reconstructed orbit outside O_k");
    const auto& o = s.orbits()[id].edges;
    edges.insert(edges.end(), o.begin(), o.end());
  }
  return BinaryGraph(n, edges);
}

// ---------------------------------------------------------------------------
// Excess and (pseudo)forest predicates

struct ComponentSize {
  int vertices = 0;
  int edges = 0;
  int excess() const { return edges - vertices; }
};

/// Connected components over non-isolated vertices.
inline std::vector<ComponentSize> excess_components(const BinaryGraph& g) {
  RollbackUnionFind uf(g.size());
  for (const Edge& e : g.edges()) uf.add_edge(e.u, e.v);
  std::vector<ComponentSize> out;
  for (int x = 0; x < g.size(); ++x) {
    if (uf.find(x) != x || uf.component_vertices(x) == 0) continue;
    out.push_back({uf.component_vertices(x), uf.component_edges(x)});
  }
  return out;
}

/// e(G) minus the number of non-isolated vertices.
inline int excess(const BinaryGraph& g) {
  int total = 0;
  for (const auto& c : excess_components(g)) total += c.excess();
  return total;
}

/// e(G) − n, counting isolated vertices.
inline int excess_whole(const BinaryGraph& g) { return static_cast<int>(g.edge_count()) - g.size(); }

/// Edges with both ends in V minus |V|, for an explicit vertex set V.
inline int excess_on(const BinaryGraph& g, std::span<const int> vertices) {
  std::vector<int> v(vertices.begin(), vertices.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return static_cast<int>(induced_edge_weight(g, v)) - static_cast<int>(v.size());
}

inline bool is_pseudoforest(const BinaryGraph& g) {
  const auto comps = excess_components(g);
  return std::all_of(comps.begin(), comps.end(), [](const ComponentSize& c) { return c.excess() <= 0; });
}

inline bool is_forest(const BinaryGraph& g) {
  const auto comps = excess_components(g);
  return std::all_of(comps.begin(), comps.end(), [](const ComponentSize& c) { return c.excess() == -1; });
}

// ---------------------------------------------------------------------------
// Reporting

/// Orbit listing grouped by type, one orbit per line, 1-based pairs.
inline std::string orbit_table(const OrbitStructure& s) {
  std::ostringstream out;
  const OrbitKind order[] = {OrbitKind::Matching, OrbitKind::Bridge, OrbitKind::Cycle, OrbitKind::Split};
  for (OrbitKind kind : order) {
    out << "Type " << kind_letter(kind) << '\n';
    for (std::size_t id = 0; id < s.orbits().size(); ++id) {
      const OrbitClass& c = s.orbit_class(static_cast<int>(id));
      if (c.kind != kind) continue;
      out << "  (";
      const auto& edges = s.orbits()[id].edges;
      for (std::size_t t = 0; t < edges.size(); ++t)
        out << (t ? "," : "") << edges[t].u + 1 << '-' << edges[t].v + 1;
      out << ")  " << c.tag() << "  length=" << c.length;
      if (c.kind != OrbitKind::Split) out << "  label=" << c.label;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace corrtest
