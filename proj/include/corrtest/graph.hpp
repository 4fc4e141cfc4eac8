#pragma once

// Value types for permutations and observation graphs.
//
// Nodes are 0-based internally. Unordered pairs {i, j} are stored as (min, max)
// and addressed through a dense lexicographic index in [0, n(n-1)/2).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corrtest/errors.hpp"

namespace corrtest {

struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Canonical (min, max) form of an unordered pair.
constexpr Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

constexpr std::size_t pair_count(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

/// Lexicographic rank of the pair (i, j), i < j, among all pairs of [n].
constexpr std::size_t pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  const auto ii = static_cast<std::size_t>(i);
  const auto nn = static_cast<std::size_t>(n);
  return ii * (2 * nn - ii - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

/// All pairs of [n] in index order; `pairs(n)[pair_index(i, j, n)] == {i, j}`.
inline std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> out;
  out.reserve(pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

// ---------------------------------------------------------------------------
// Permutation

/// Bijection on {0, ..., n-1}; `p(i)` is the image of node i.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    std::vector<char> seen(map_.size(), 0);
    for (int image : map_) {
      if (image < 0 || static_cast<std::size_t>(image) >= map_.size() || seen[image])
        throw ContractViolation("permutation mapping is not a bijection");
      seen[image] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
  }

  /// Build from cycles written with 1-based labels, e.g. {{1,2},{3,4},{5,6,7,8}}.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    for (const auto& cyc : cycles) {
      for (std::size_t t = 0; t < cyc.size(); ++t) {
        const int from = cyc[t] - 1;
        const int to = cyc[(t + 1) % cyc.size()] - 1;
        if (from < 0 || from >= n || to < 0 || to >= n)
          throw ContractViolation("cycle element out of range");
        m[static_cast<std::size_t>(from)] = to;
      }
    }
    return Permutation(std::move(m));
  }

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& mapping() const { return map_; }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (map_[static_cast<std::size_t>(i)] != i) return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.map_ <=> b.map_; }

 private:
  std::vector<int> map_;
};

/// (outer ∘ inner)(i) = outer(inner(i)).
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw DimensionError("compose: size mismatch");
  std::vector<int> m(static_cast<std::size_t>(inner.size()));
  for (int i = 0; i < inner.size(); ++i) m[static_cast<std::size_t>(i)] = outer(inner(i));
  return Permutation(std::move(m));
}

inline Permutation invert(const Permutation& p) {
  std::vector<int> m(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) m[static_cast<std::size_t>(p(i))] = i;
  return Permutation(std::move(m));
}

/// Cycle notation with 1-based labels, fixed points included: "(1 2)(3)(4 5 6)".
inline std::string to_cycle_string(const Permutation& p) {
  std::string out;
  std::vector<char> seen(static_cast<std::size_t>(p.size()), 0);
  for (int start = 0; start < p.size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    out += '(';
    int x = start;
    bool first = true;
    do {
      seen[static_cast<std::size_t>(x)] = 1;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = p(x);
    } while (x != start);
    out += ')';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graphs

/// Simple undirected graph on [n] stored as a packed bitset over pair indices.
class BinaryGraph {
 public:
  BinaryGraph() = default;

  explicit BinaryGraph(int n) : n_(n), words_((pair_count(n) + 63) / 64, 0) {}

  BinaryGraph(int n, std::span<const Edge> edges) : BinaryGraph(n) {
    for (const Edge& e : edges) {
      if (e.u == e.v) throw ContractViolation("self-loops are not allowed");
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw DimensionError("edge endpoint out of range");
      set_pair(pair_index(e.u, e.v, n));
    }
  }

  BinaryGraph(int n, std::initializer_list<Edge> edges)
      : BinaryGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  /// Graph whose pair `idx` is present iff `has_pair(idx)`.
  template <class Pred>
  static BinaryGraph from_predicate(int n, Pred&& has_pair) {
    BinaryGraph g(n);
    const std::size_t m = pair_count(n);
    for (std::size_t idx = 0; idx < m; ++idx)
      if (has_pair(idx)) g.set_pair(idx);
    return g;
  }

  static BinaryGraph from_words(int n, std::vector<std::uint64_t> words) {
    BinaryGraph g(n);
    if (words.size() != g.words_.size()) throw DimensionError("bitset size mismatch");
    g.words_ = std::move(words);
    g.clear_padding();
    return g;
  }

  static BinaryGraph complete(int n) {
    return from_predicate(n, [](std::size_t) { return true; });
  }

  int size() const { return n_; }
  std::size_t pair_slots() const { return pair_count(n_); }

  bool has_pair(std::size_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1U; }

  bool has_edge(int i, int j) const {
    if (i == j) return false;
    return has_pair(pair_index(i, j, n_));
  }

  double weight(int i, int j) const { return has_edge(i, j) ? 1.0 : 0.0; }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j, ++idx)
        if (has_pair(idx)) out.push_back({i, j});
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BinaryGraph&, const BinaryGraph&) = default;

 private:
  void set_pair(std::size_t idx) { words_[idx >> 6] |= std::uint64_t{1} << (idx & 63); }

  void clear_padding() {
    const std::size_t m = pair_count(n_);
    if (m % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (m % 64)) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Complete weighted graph on [n]: symmetric weights, zero diagonal, stored per pair.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  explicit WeightedGraph(int n) : n_(n), w_(pair_count(n), 0.0) {}

  /// `weights[pair_index(i, j, n)]` is the weight of {i, j}.
  WeightedGraph(int n, std::vector<double> weights) : n_(n), w_(std::move(weights)) {
    if (w_.size() != pair_count(n)) throw DimensionError("weight vector has wrong length");
  }

  template <class Fn>
  static WeightedGraph from_function(int n, Fn&& weight_of_pair) {
    std::vector<double> w(pair_count(n));
    for (std::size_t idx = 0; idx < w.size(); ++idx) w[idx] = weight_of_pair(idx);
    return WeightedGraph(n, std::move(w));
  }

  int size() const { return n_; }
  std::size_t pair_slots() const { return w_.size(); }

  double weight(int i, int j) const {
    if (i == j) return 0.0;
    return w_[pair_index(i, j, n_)];
  }
  double pair_weight(std::size_t idx) const { return w_[idx]; }
  const std::vector<double>& weights() const { return w_; }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  int n_ = 0;
  std::vector<double> w_;
};

template <class G>
concept ObservationGraph = std::same_as<G, BinaryGraph> || std::same_as<G, WeightedGraph>;

namespace detail {
inline void require_same_size(int a, int b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": size mismatch");
}
}  // namespace detail

/// B^π with entries B[π(i)][π(j)].
inline BinaryGraph relabel(const BinaryGraph& b, const Permutation& pi) {
  detail::require_same_size(b.size(), pi.size(), "relabel");
  const int n = b.size();
  BinaryGraph out = BinaryGraph::from_predicate(n, [&, i = 0, j = 1](std::size_t) mutable {
    const bool present = b.has_edge(pi(i), pi(j));
    if (++j == n) {
      ++i;
      j = i + 1;
    }
    return present;
  });
  return out;
}

inline WeightedGraph relabel(const WeightedGraph& b, const Permutation& pi) {
  detail::require_same_size(b.size(), pi.size(), "relabel");
  const int n = b.size();
  std::vector<double> w;
  w.reserve(pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w.push_back(b.weight(pi(i), pi(j)));
  return WeightedGraph(n, std::move(w));
}

/// Edgewise product A ∧ B; for binary graphs the edge-set intersection.
inline BinaryGraph intersect(const BinaryGraph& a, const BinaryGraph& b) {
  detail::require_same_size(a.size(), b.size(), "intersect");
  std::vector<std::uint64_t> words(a.words().size());
  for (std::size_t t = 0; t < words.size(); ++t) words[t] = a.words()[t] & b.words()[t];
  return BinaryGraph::from_words(a.size(), std::move(words));
}

inline WeightedGraph intersect(const WeightedGraph& a, const WeightedGraph& b) {
  detail::require_same_size(a.size(), b.size(), "intersect");
  std::vector<double> w(a.pair_slots());
  for (std::size_t t = 0; t < w.size(); ++t) w[t] = a.pair_weight(t) * b.pair_weight(t);
  return WeightedGraph(a.size(), std::move(w));
}

/// e_A(S): total edge weight inside the node set S (duplicates in S are ignored).
template <ObservationGraph G>
double induced_edge_weight(const G& a, std::span<const int> nodes) {
  std::vector<int> s(nodes.begin(), nodes.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int x : s)
    if (x < 0 || x >= a.size()) throw DimensionError("induced_edge_weight: node out of range");
  double total = 0.0;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = x + 1; y < s.size(); ++y) total += a.weight(s[x], s[y]);
  return total;
}

inline double total_weight(const BinaryGraph& g) { return static_cast<double>(g.edge_count()); }
inline double total_weight(const WeightedGraph& g) {
  return std::accumulate(g.weights().begin(), g.weights().end(), 0.0);
}

}  // namespace corrtest
