#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "corrtest/graph.hpp"
#include "corrtest/rng.hpp"
#include "corrtest/union_find.hpp"

using namespace corrtest;

TEST(PairIndex, MatchesLexicographicEnumeration) {
  for (int n = 0; n <= 9; ++n) {
    const auto pairs = all_pairs(n);
    ASSERT_EQ(pairs.size(), pair_count(n));
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      EXPECT_EQ(pair_index(pairs[t].u, pairs[t].v, n), t);
      EXPECT_EQ(pair_index(pairs[t].v, pairs[t].u, n), t);
    }
  }
}

TEST(Permutation, ComposeAndInvert) {
  const auto a = Permutation::from_cycles(5, {{1, 2, 3}});
  const auto b = Permutation::from_cycles(5, {{4, 5}, {1, 3}});
  const auto ab = compose(a, b);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(ab(i), a(b(i)));
  EXPECT_TRUE(compose(invert(a), a).is_identity());
  EXPECT_EQ(to_cycle_string(a), "(1 2 3)(4)(5)");
  EXPECT_THROW(Permutation({0, 0, 1}), ContractViolation);
  EXPECT_THROW(compose(a, Permutation::identity(4)), DimensionError);
}

TEST(BinaryGraph, EdgesRoundTrip) {
  const std::vector<Edge> es = {{0, 3}, {1, 2}, {2, 4}};
  const BinaryGraph g(5, es);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.edges(), es);
  EXPECT_TRUE(g.has_edge(3, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(BinaryGraph::complete(70).edge_count(), pair_count(70));
}

TEST(Relabel, ComposesAsPermutationProduct) {
  StreamRng rng(CounterRng(SeedSpec{3, 0}));
  const int n = 9;
  const auto g = BinaryGraph::from_predicate(n, [&](std::size_t) { return rng.uniform() < 0.4; });
  const auto p1 = random_permutation(n, rng);
  const auto p2 = random_permutation(n, rng);
  const auto lhs = relabel(relabel(g, p1), p2);
  const auto rhs = relabel(g, compose(p1, p2));
  EXPECT_EQ(lhs.edges(), rhs.edges());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) EXPECT_EQ(relabel(g, p1).has_edge(i, j), g.has_edge(p1(i), p1(j)));
}

TEST(Intersect, IsEdgewiseProduct) {
  const BinaryGraph a(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  const BinaryGraph b(4, std::vector<Edge>{{1, 2}, {0, 3}, {2, 3}});
  EXPECT_EQ(intersect(a, b).edges(), (std::vector<Edge>{{1, 2}, {2, 3}}));
  const WeightedGraph wa(3, {1.0, 2.0, 3.0});
  const WeightedGraph wb(3, {2.0, 0.5, -1.0});
  EXPECT_EQ(intersect(wa, wb).weights(), (std::vector<double>{2.0, 1.0, -3.0}));
  EXPECT_THROW(intersect(a, BinaryGraph(5)), DimensionError);
}

TEST(InducedEdgeWeight, CountsEdgesInsideSet) {
  const BinaryGraph g(5, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}, {0, 2}});
  const std::vector<int> s = {0, 1, 2, 2};
  EXPECT_EQ(induced_edge_weight(g, std::span<const int>(s)), 3.0);
  const std::vector<int> bad = {0, 7};
  EXPECT_THROW(induced_edge_weight(g, std::span<const int>(bad)), DimensionError);
}

// Excess of every component recomputed from scratch after each edge and rollback.
TEST(RollbackUnionFind, TracksExcessAgainstRecount) {
  StreamRng rng(CounterRng(SeedSpec{11, 0}));
  const int n = 8;
  RollbackUnionFind uf(n);
  std::vector<Edge> edges;
  std::vector<std::size_t> marks;
  for (int step = 0; step < 400; ++step) {
    if (!marks.empty() && rng.uniform() < 0.3) {
      uf.rollback(marks.back());
      marks.pop_back();
      edges.pop_back();
    } else {
      marks.push_back(uf.checkpoint());
      const int u = static_cast<int>(rng.bounded(n));
      const int v = static_cast<int>(rng.bounded(n));
      edges.push_back({u, v});
      const int ex = uf.add_edge(u, v);
      EXPECT_EQ(ex, uf.excess(u));
    }
    // recount: components over touched vertices
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> f = [&](int x) { return comp[x] == x ? x : comp[x] = f(comp[x]); };
    std::vector<char> touched(n, 0);
    for (const Edge& e : edges) {
      touched[e.u] = touched[e.v] = 1;
      comp[f(e.u)] = f(e.v);
    }
    std::map<int, int> ecount, vcount;
    for (const Edge& e : edges) ++ecount[f(e.u)];
    for (int x = 0; x < n; ++x)
      if (touched[x]) ++vcount[f(x)];
    for (int x = 0; x < n; ++x) {
      if (!touched[x]) continue;
      EXPECT_EQ(uf.excess(x), ecount[f(x)] - vcount[f(x)]);
      for (int y = 0; y < n; ++y)
        if (touched[y]) {
          EXPECT_EQ(uf.connected(x, y), f(x) == f(y));
        }
    }
  }
}

TEST(CounterRng, DeterministicAndStreamSeparated) {
  const CounterRng a(SeedSpec{1, 2});
  const CounterRng b(SeedSpec{1, 2});
  const CounterRng c(SeedSpec{1, 3});
  for (std::uint64_t i = 0; i < 100; ++i) {
    EXPECT_EQ(a.bits(i), b.bits(i));
    EXPECT_NE(a.bits(i), c.bits(i));
    EXPECT_NE(a.substream(1).bits(i), a.substream(2).bits(i));
  }
}

TEST(CounterRng, MomentsOfUniformAndNormal) {
  const CounterRng r(SeedSpec{5, 0});
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = r.normal(i);
    sn += z;
    sn2 += z * z;
    ASSERT_LT(r.bounded(i, 7), 7u);
  }
  EXPECT_NEAR(su / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(RandomPermutation, UniformOnS3) {
  const CounterRng root(SeedSpec{9, 0});
  std::map<std::vector<int>, int> freq;
  const int trials = 60000;
  for (int t = 0; t < trials; ++t) ++freq[random_permutation(3, root.substream(t)).mapping()];
  ASSERT_EQ(freq.size(), 6u);
  double chi2 = 0.0;
  for (const auto& [perm, c] : freq) chi2 += (c - trials / 6.0) * (c - trials / 6.0) / (trials / 6.0);
  EXPECT_LT(chi2, 20.5);  // chi-square, 5 d.o.f., p ≈ 0.001
}
