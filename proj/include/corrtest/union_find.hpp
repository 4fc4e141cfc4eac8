#pragma once

// Union-find with undo, tracking edge and vertex counts per component.
//
// Vertices become "active" when the first incident edge arrives, so component
// sizes count only non-isolated vertices. No path compression: union by size
// keeps finds logarithmic and makes every operation reversible.

#include <cstddef>
#include <utility>
#include <vector>

namespace corrtest {

class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(int n)
      : parent_(static_cast<std::size_t>(n)),
        verts_(static_cast<std::size_t>(n), 0),
        edges_(static_cast<std::size_t>(n), 0),
        active_(static_cast<std::size_t>(n), 0) {
    for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
  }

  int find(int x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)];
    return x;
  }

  /// Edges minus vertices of the component containing x.
  int excess(int x) const {
    const auto r = static_cast<std::size_t>(find(x));
    return edges_[r] - verts_[r];
  }

  int component_edges(int x) const { return edges_[static_cast<std::size_t>(find(x))]; }
  int component_vertices(int x) const { return verts_[static_cast<std::size_t>(find(x))]; }

  /// Adds edge (u, v); returns the excess of the resulting component.
  int add_edge(int u, int v) {
    activate(u);
    activate(v);
    int ru = find(u);
    int rv = find(v);
    if (ru == rv) {
      ++edges_[static_cast<std::size_t>(ru)];
      log_.push_back({Op::kEdge, ru, -1});
      return excess(ru);
    }
    if (verts_[static_cast<std::size_t>(ru)] < verts_[static_cast<std::size_t>(rv)]) std::swap(ru, rv);
    parent_[static_cast<std::size_t>(rv)] = ru;
    verts_[static_cast<std::size_t>(ru)] += verts_[static_cast<std::size_t>(rv)];
    edges_[static_cast<std::size_t>(ru)] += edges_[static_cast<std::size_t>(rv)] + 1;
    log_.push_back({Op::kUnion, ru, rv});
    return excess(ru);
  }

  bool connected(int u, int v) const { return find(u) == find(v); }

  std::size_t checkpoint() const { return log_.size(); }

  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      const Entry e = log_.back();
      log_.pop_back();
      const auto a = static_cast<std::size_t>(e.a);
      switch (e.op) {
        case Op::kActivate:
          active_[a] = 0;
          verts_[a] = 0;
          break;
        case Op::kEdge:
          --edges_[a];
          break;
        case Op::kUnion: {
          const auto b = static_cast<std::size_t>(e.b);
          parent_[b] = e.b;
          verts_[a] -= verts_[b];
          edges_[a] -= edges_[b] + 1;
          break;
        }
      }
    }
  }

 private:
  enum class Op { kActivate, kEdge, kUnion };
  struct Entry {
    Op op;
    int a;
    int b;
  };

  void activate(int x) {
    const auto i = static_cast<std::size_t>(x);
    if (active_[i]) return;
    active_[i] = 1;
    verts_[i] = 1;
    log_.push_back({Op::kActivate, x, -1});
  }

  std::vector<int> parent_;
  std::vector<int> verts_;
  std::vector<int> edges_;
  std::vector<char> active_;
  std::vector<Entry> log_;
};

}  // namespace corrtest
