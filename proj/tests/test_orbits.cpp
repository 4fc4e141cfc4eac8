#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "corrtest/orbits.hpp"
#include "corrtest/sampler.hpp"

using namespace corrtest;

namespace {

Permutation random_sigma(int n, std::uint64_t stream) {
  return random_permutation(n, CounterRng(SeedSpec{77, stream}));
}

// Orbit of a pair under σ^E, by repeated application.
std::set<Edge> orbit_by_iteration(const Permutation& sigma, Edge e) {
  std::set<Edge> out;
  Edge x = e;
  do {
    out.insert(x);
    x = make_edge(sigma(x.u), sigma(x.v));
  } while (x != e);
  return out;
}

}  // namespace

TEST(NodeCycles, TypeAndCanonicalPermutation) {
  const auto sigma = Permutation::from_cycles(8, {{1, 2}, {3, 4}, {5, 6, 7, 8}});
  const auto nc = node_cycles(sigma);
  EXPECT_EQ(nc.type, CycleType::from_counts({0, 2, 0, 1}));
  EXPECT_EQ(nc.orbits.size(), 3u);
  EXPECT_EQ(node_cycles(canonical_permutation(nc.type)).type, nc.type);
  EXPECT_EQ(to_cycle_string(canonical_permutation(CycleType::from_counts({1, 1}))), "(1)(2 3)");
  EXPECT_THROW(CycleType::from_counts({-1}), DomainError);
}

TEST(EdgeOrbits, PartitionPairsAndMatchIteration) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(t % 9);
    const auto sigma = random_sigma(n, t);
    const OrbitStructure s(sigma);
    std::size_t covered = 0;
    for (const EdgeOrbit& o : s.orbits()) {
      covered += o.size();
      const std::set<Edge> expect = orbit_by_iteration(sigma, o.representative());
      EXPECT_EQ(std::set<Edge>(o.edges.begin(), o.edges.end()), expect);
      EXPECT_EQ(o.representative(), *expect.begin());
    }
    EXPECT_EQ(covered, pair_count(n));
    EXPECT_EQ(s.census().weighted_total(), static_cast<long long>(pair_count(n)));
  }
}

TEST(EdgeOrbits, ClassLengthsFollowNodeOrbitLengths) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    const auto sigma = random_sigma(10, 100 + t);
    const OrbitStructure s(sigma);
    for (int id = 0; id < static_cast<int>(s.orbits().size()); ++id) {
      const OrbitClass& c = s.orbit_class(id);
      const auto len = static_cast<int>(s.orbits()[static_cast<std::size_t>(id)].size());
      EXPECT_EQ(c.length, len);
      switch (c.kind) {
        case OrbitKind::Matching:
        case OrbitKind::Cycle: EXPECT_EQ(len, c.m); break;
        case OrbitKind::Split: EXPECT_EQ(2 * len, c.m); break;
        case OrbitKind::Bridge: EXPECT_EQ(len, std::lcm(c.m, c.l)); break;
      }
      EXPECT_EQ(classify_orbit(sigma, s.orbits()[static_cast<std::size_t>(id)]), c);
    }
  }
}

// Per pair of node orbits: m matchings (equal lengths) or gcd bridges; per orbit
// floor((m-1)/2) cycles plus one split when m is even.
TEST(EdgeOrbits, ClassCountsPerNodeOrbitPair) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto sigma = random_sigma(11, 200 + t);
    const OrbitStructure s(sigma);
    const auto& nc = s.nodes();
    std::map<std::pair<int, int>, int> between;
    std::map<int, int> cycles, splits;
    for (int id = 0; id < static_cast<int>(s.orbits().size()); ++id) {
      const OrbitClass& c = s.orbit_class(id);
      if (c.kind == OrbitKind::Cycle) ++cycles[c.orbit_a];
      else if (c.kind == OrbitKind::Split) ++splits[c.orbit_a];
      else ++between[{std::min(c.orbit_a, c.orbit_b), std::max(c.orbit_a, c.orbit_b)}];
    }
    const int r = static_cast<int>(nc.orbits.size());
    for (int x = 0; x < r; ++x) {
      const int m = nc.length(x);
      EXPECT_EQ(cycles[x], (m - 1) / 2);
      EXPECT_EQ(splits[x], m % 2 == 0 ? 1 : 0);
      for (int y = x + 1; y < r; ++y) {
        const int l = nc.length(y);
        EXPECT_EQ((between[{x, y}]), m == l ? m : std::gcd(m, l));
      }
    }
  }
}

TEST(EdgeOrbits, CensusPredictionForShortOrbits) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto sigma = random_sigma(2 + static_cast<int>(t % 12), 300 + t);
    const OrbitStructure s(sigma);
    const auto [n1, n2] = census_predict_small(s.nodes().type);
    EXPECT_EQ(s.census()[1], n1);
    EXPECT_EQ(s.census()[2], n2);
  }
}

TEST(EdgeOrbits, ClassifyRejectsNonOrbit) {
  const auto sigma = Permutation::from_cycles(4, {{1, 2, 3, 4}});
  EXPECT_THROW(classify_orbit(sigma, EdgeOrbit{{{0, 1}}}), ContractViolation);
  EXPECT_THROW(classify_orbit(sigma, EdgeOrbit{}), ContractViolation);
}

TEST(ShortOrbits, DefinitionBoundsAllLengths) {
  const auto sigma = Permutation::from_cycles(9, {{1, 2}, {3, 4, 5}, {6, 7, 8, 9}});
  const OrbitStructure s(sigma);
  for (int k = 1; k <= 5; ++k) {
    const auto ids = s.short_orbit_ids(k);
    for (int id = 0; id < static_cast<int>(s.orbits().size()); ++id) {
      const auto& c = s.orbit_class(id);
      const bool want = c.m <= k && (c.kind != OrbitKind::Bridge || c.l <= k) && c.length <= k;
      EXPECT_EQ(std::find(ids.begin(), ids.end(), id) != ids.end(), want);
    }
    EXPECT_EQ(orbits_up_to(sigma, k).size(), ids.size());
  }
  // B_{3,2} has length 6 and never enters O_k for k < 6.
  EXPECT_EQ(orbits_up_to(sigma, 2).size(), 1u);
  EXPECT_THROW(orbits_up_to(sigma, 0), DomainError);
}

TEST(CompleteOrbits, MatchesEdgewiseDefinition) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const int n = 8;
    const auto x = sample_planted_er(ErParams{n, 0.8, 0.9}, SeedSpec{12, t});
    const auto sigma = random_sigma(n, 400 + t);
    const auto bp = relabel(x.b, x.pi);
    const auto both = intersect(x.a, bp);
    const OrbitStructure s(sigma);
    const auto j = complete_orbits(sigma, x.a, bp, 4);
    std::size_t expect = 0;
    for (int id : s.short_orbit_ids(4)) {
      const auto& o = s.orbits()[static_cast<std::size_t>(id)];
      if (std::all_of(o.edges.begin(), o.edges.end(), [&](Edge e) { return both.has_edge(e.u, e.v); })) ++expect;
    }
    EXPECT_EQ(j.orbits.size(), expect);
    for (const Edge& e : j.graph.edges()) EXPECT_TRUE(both.has_edge(e.u, e.v));
  }
}

TEST(Backbone, RoundTripsRandomOrbitUnions) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(t % 8);
    const int k = 1 + static_cast<int>(t % 4);
    const OrbitStructure s(random_sigma(n, 500 + t));
    StreamRng rng(CounterRng(SeedSpec{13, t}));
    std::vector<Edge> edges;
    for (int id : s.short_orbit_ids(k))
      if (rng.uniform() < 0.4) {
        const auto& o = s.orbits()[static_cast<std::size_t>(id)].edges;
        edges.insert(edges.end(), o.begin(), o.end());
      }
    const BinaryGraph h(n, edges);
    const BackboneGraph g = backbone(s, h, k);
    EXPECT_EQ(orbit_graph_from_backbone(s, g, k).edges(), h.edges());
    EXPECT_EQ(g.nodes.size(), giant_node_orbits(s.nodes(), k).size());
  }
}

TEST(Backbone, ExampleEdgesAndErrors) {
  const auto sigma = Permutation::from_cycles(8, {{1, 2}, {3, 4}, {5, 6, 7, 8}});
  const OrbitStructure s(sigma);
  // Split of (5678) and the bridge {1-5, 2-6, 1-7, 2-8}.
  const BinaryGraph h(8, std::vector<Edge>{{4, 6}, {5, 7}, {0, 4}, {1, 5}, {0, 6}, {1, 7}});
  const auto g = backbone(s, h, 4);
  EXPECT_EQ(g.key(), "2.2.4*|B2,0,1;");
  EXPECT_EQ(g.orbit_min, (std::vector<int>{0, 2, 4}));
  EXPECT_THROW(backbone(s, BinaryGraph(8, std::vector<Edge>{{4, 6}}), 4), ContractViolation);
  EXPECT_THROW(backbone(s, h, 2), ContractViolation);
  BackboneGraph bad = g;
  bad.edges.push_back({OrbitKind::Bridge, 2, 0, 3});
  EXPECT_THROW(orbit_graph_from_backbone(s, bad, 4), ContractViolation);
  EXPECT_EQ(empty_backbone(s.nodes().type, 4).key(), "2.2.4.|");
}

TEST(Excess, ComponentsAndPredicates) {
  const BinaryGraph tree(6, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}});
  EXPECT_EQ(excess(tree), -2);
  EXPECT_EQ(excess_whole(tree), -3);
  EXPECT_TRUE(is_forest(tree));
  const BinaryGraph uni(4, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  EXPECT_EQ(excess(uni), 0);
  EXPECT_TRUE(is_pseudoforest(uni));
  EXPECT_FALSE(is_forest(uni));
  const BinaryGraph k4 = BinaryGraph::complete(4);
  EXPECT_EQ(excess(k4), 2);
  EXPECT_FALSE(is_pseudoforest(k4));
  const std::vector<int> v = {0, 1, 2};
  EXPECT_EQ(excess_on(k4, v), 0);
}

TEST(OrbitTable, ListsEveryOrbit) {
  const OrbitStructure s(Permutation::from_cycles(8, {{1, 2}, {3, 4}, {5, 6, 7, 8}}));
  const std::string t = orbit_table(s);
  EXPECT_NE(t.find("(5-6,6-7,7-8,5-8)"), std::string::npos);
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 4 + 10);
}

TEST(Backbone, SplitTwoOrbitWithMatchingsBridgeAndLoop) {
  const OrbitStructure s(Permutation::from_cycles(8, {{1, 2}, {3, 4}, {5, 6, 7, 8}}));
  BackboneGraph g;
  g.nodes = {{2, true}, {2, false}, {4, false}};
  g.edges = {{OrbitKind::Matching, 0, 1, 1},
             {OrbitKind::Matching, 0, 1, 2},
             {OrbitKind::Bridge, 2, 1, 1},
             {OrbitKind::Cycle, 2, 2, 1}};
  g.normalize();
  const BinaryGraph h = orbit_graph_from_backbone(s, g, 4);
  EXPECT_EQ(h.edge_count(), 1u + 2 + 2 + 4 + 4);
  EXPECT_EQ(backbone(s, h, 4), g);
}

TEST(Backbone, EmptyAndSingleFixedEdge) {
  const OrbitStructure s(Permutation::identity(3));
  EXPECT_EQ(backbone(s, BinaryGraph(3), 1).key(), "1.1.1.|");
  const auto j = complete_orbits(s.sigma(), BinaryGraph(3, std::vector<Edge>{{0, 1}}),
                                 BinaryGraph(3, std::vector<Edge>{{0, 1}, {1, 2}}), 1);
  ASSERT_EQ(j.orbits.size(), 1u);
  EXPECT_EQ(backbone(s, j.graph, 1).key(), "1.1.1.|M0,1,1;");
  const auto all = complete_orbits(s.sigma(), BinaryGraph::complete(3), BinaryGraph::complete(3), 1);
  EXPECT_EQ(all.orbits, orbits_up_to(s.sigma(), 1));
}
