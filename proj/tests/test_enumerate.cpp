#include <gtest/gtest.h>

#include <map>
#include <set>

#include "corrtest/enumerate.hpp"
#include "corrtest/moments.hpp"
#include "fixtures.hpp"

using namespace corrtest;
namespace fx = corrtest::fixtures;

namespace {

BinaryGraph realize(const BackboneGraph& g, int k) {
  std::vector<int> counts;
  for (const GiantNode& nd : g.nodes) {
    if (static_cast<int>(counts.size()) < nd.length) counts.resize(static_cast<std::size_t>(nd.length), 0);
    ++counts[static_cast<std::size_t>(nd.length - 1)];
  }
  const OrbitStructure s(canonical_permutation(CycleType::from_counts(counts)));
  return orbit_graph_from_backbone(s, g, k);
}

// Every vector with 0 <= x_t <= n_t for t = 1..k.
template <class Fn>
void for_each_params(const CycleType& type, int k, bool forest, Fn&& fn) {
  ConstructionParams p = ConstructionParams::zeros(k);
  std::vector<int*> slots;
  for (int t = 1; t <= k; ++t) {
    const auto i = static_cast<std::size_t>(t);
    slots.push_back(&p.a[i]);
    slots.push_back(&p.b[i]);
    slots.push_back(&p.c[i]);
    if (!forest) slots.push_back(&p.d[i]);
  }
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == slots.size()) {
      if (feasible(type, p, forest)) fn(p);
      return;
    }
    const int t = static_cast<int>(pos / (forest ? 3 : 4)) + 1;
    for (int x = 0; x <= type[t]; ++x) {
      *slots[pos] = x;
      self(self, pos + 1);
    }
    *slots[pos] = 0;
  };
  rec(rec, 0);
}

}  // namespace

TEST(RootedForests, KnownCountsAndBruteForce) {
  EXPECT_EQ(count_rooted_forests(1, 0), 1u);
  EXPECT_EQ(count_rooted_forests(3, 1), 6u);
  EXPECT_EQ(count_rooted_forests(4, 3), 64u);
  for (int n = 1; n <= 6; ++n)
    for (int a = 0; a < n; ++a) EXPECT_EQ(count_rooted_forests(n, a), count_rooted_forests_bruteforce(n, a));
  EXPECT_THROW(count_rooted_forests(3, 3), DomainError);
  EXPECT_THROW(count_rooted_forests(60, 59), LimitError);
}

TEST(RootedPseudoforests, BelowBound) {
  for (int n = 1; n <= 4; ++n)
    for (int a = 0; a <= 4; ++a) EXPECT_LE(count_rooted_pseudoforests_bruteforce(n, a), pseudoforest_count_bound(n, a));
}

TEST(Validators, ForestViolationsOnPseudoforestBackbones) {
  for (const BackboneGraph& g : {fx::two_bridges_from_one_orbit(), fx::path_with_two_splits(), fx::split_and_bridge()}) {
    const auto f = validate_forest(g);
    EXPECT_FALSE(f.ok) << g.key();
    EXPECT_TRUE(f.has("T4")) << g.key();
    EXPECT_TRUE(validate_pseudoforest(g).ok) << g.key();
    const BinaryGraph h = realize(g, 4);
    EXPECT_FALSE(is_forest(h));
    EXPECT_TRUE(is_pseudoforest(h));
  }
}

TEST(Validators, PseudoforestViolations) {
  const auto three = validate_pseudoforest(fx::path_with_three_splits());
  EXPECT_TRUE(three.has("P4"));
  EXPECT_FALSE(is_pseudoforest(realize(fx::path_with_three_splits(), 4)));
  const auto mixed = validate_pseudoforest(fx::bridges_to_mixed_lengths());
  EXPECT_TRUE(mixed.has("P5"));
  EXPECT_FALSE(is_pseudoforest(realize(fx::bridges_to_mixed_lengths(), 4)));
}

TEST(Validators, MalformedAndSimpleCases) {
  auto bad = fx::make_backbone({{3, true}}, {});
  EXPECT_TRUE(validate_forest(bad).has("W"));
  EXPECT_TRUE(validate_pseudoforest(bad).has("W"));
  const auto loop = fx::make_backbone({{5, false}}, {fx::loop(0, 2)});
  EXPECT_TRUE(validate_forest(loop).has("T3"));
  EXPECT_TRUE(validate_pseudoforest(loop).ok);
  const auto nondiv = fx::make_backbone({{2, false}, {3, false}}, {fx::bridge(1, 0, 1)});
  EXPECT_TRUE(validate_forest(nondiv).has("T2"));
  EXPECT_TRUE(validate_pseudoforest(nondiv).has("P2"));
  EXPECT_TRUE(validate_forest(fx::make_backbone({{2, false}, {2, false}}, {fx::matching(0, 1, 2)})).ok);
}

TEST(Validators, NecessaryOnAllSmallOrbitGraphs) {
  for (int n = 2; n <= 6; ++n)
    for (const CycleType& type : all_cycle_types(n)) {
      const OrbitStructure st(canonical_permutation(type));
      for (int k = 1; k <= 4; ++k)
        for_each_orbit_pseudoforest(st, k, false, [&](const std::vector<int>& ids, int) {
          std::vector<Edge> es;
          for (int id : ids)
            for (const Edge& e : st.orbits()[static_cast<std::size_t>(id)].edges) es.push_back(e);
          const BinaryGraph h(n, es);
          const BackboneGraph g = backbone(st, h, k);
          EXPECT_TRUE(validate_pseudoforest(g).ok) << g.key();
          if (is_forest(h)) {
            EXPECT_TRUE(validate_forest(g).ok) << g.key();
          }
        });
    }
}

TEST(Streams, ZeroParametersGiveEmptyBackbone) {
  const CycleType type = CycleType::from_counts({1, 2});
  std::vector<std::string> keys;
  const auto count = algorithm1_forests(type, ConstructionParams::zeros(2), [&](const Emission& e) {
    keys.push_back(e.graph.key());
    return true;
  });
  EXPECT_EQ(count, 1u);
  EXPECT_EQ(keys, std::vector<std::string>{empty_backbone(type, 2).key()});
}

TEST(Streams, SingleEdgeBetweenFixedPoints) {
  const CycleType type = CycleType::from_counts({2});
  auto p = ConstructionParams::zeros(1);
  p.a[1] = 1;
  std::set<std::string> keys;
  const auto count = algorithm1_forests(type, p, [&](const Emission& e) {
    keys.insert(e.graph.key());
    EXPECT_TRUE(e.verdict && e.verdict->ok);
    return true;
  });
  EXPECT_GE(count, 1u);
  EXPECT_LE(count, 2u);
  EXPECT_LE(static_cast<double>(count), forest_stream_bound(type, p));
  EXPECT_EQ(keys, std::set<std::string>{"1.1.|M0,1,1;"});
}

TEST(Streams, SelfLoopLabelsStayInRange) {
  const CycleType type = CycleType::from_counts({0, 0, 0, 0, 1});
  auto p = ConstructionParams::zeros(5);
  p.a[5] = 1;
  std::set<int> labels;
  algorithm2_pseudoforests(type, p, [&](const Emission& e) {
    for (const GiantEdge& g : e.graph.edges)
      if (g.kind == OrbitKind::Cycle) labels.insert(g.label);
    return true;
  });
  EXPECT_EQ(labels, (std::set<int>{1, 2}));
  EXPECT_EQ(algorithm1_forests(type, p, [](const Emission&) { return true; }), 0u);
}

TEST(Streams, EarlyStopHonoured) {
  const CycleType type = CycleType::from_counts({3});
  auto p = ConstructionParams::zeros(1);
  p.a[1] = 1;
  int seen = 0;
  algorithm1_forests(type, p, [&](const Emission&) { return ++seen < 2; });
  EXPECT_EQ(seen, 2);
}

TEST(Streams, LengthWithinBoundAndEmissionsValid) {
  for (int n = 1; n <= 6; ++n)
    for (const CycleType& type : all_cycle_types(n))
      for (int k = 1; k <= 3; ++k) {
        for_each_params(type, k, true, [&](const ConstructionParams& p) {
          std::uint64_t invalid = 0;
          const auto count = algorithm1_forests(type, p, [&](const Emission& e) {
            invalid += !e.verdict->ok;
            return true;
          });
          EXPECT_LE(static_cast<double>(count), forest_stream_bound(type, p) * (1 + 1e-12));
          EXPECT_EQ(invalid, 0u);
        });
        // The pseudoforest stream over-generates; each emission carries its verdict.
        for_each_params(type, k, false, [&](const ConstructionParams& p) {
          std::uint64_t wrong_verdict = 0;
          const auto count = algorithm2_pseudoforests(type, p, [&](const Emission& e) {
            wrong_verdict += e.verdict == nullptr || e.verdict->ok != validate_pseudoforest(e.graph).ok;
            return true;
          });
          EXPECT_LE(static_cast<double>(count), pseudoforest_stream_bound(type, p) * (1 + 1e-12));
          EXPECT_EQ(wrong_verdict, 0u);
        });
      }
}

TEST(Streams, ContainEveryOrbitForestOfTheirParameters) {
  for (int n = 2; n <= 6; ++n)
    for (const CycleType& type : all_cycle_types(n)) {
      const OrbitStructure st(canonical_permutation(type));
      for (int k = 1; k <= 4; ++k) {
        std::map<ConstructionParams, std::set<std::string>> forests, pseudo;
        for_each_orbit_pseudoforest(st, k, false, [&](const std::vector<int>& ids, int) {
          std::vector<Edge> es;
          for (int id : ids)
            for (const Edge& e : st.orbits()[static_cast<std::size_t>(id)].edges) es.push_back(e);
          const BinaryGraph h(n, es);
          const BackboneGraph g = backbone(st, h, k);
          const ConstructionParams p = params_of_backbone(g, k);
          auto it = pseudo.find(p);
          if (it == pseudo.end()) {
            std::set<std::string> keys;
            algorithm2_pseudoforests(type, p, [&](const Emission& e) { return keys.insert(e.graph.key()), true; },
                                     StreamOptions{false});
            it = pseudo.emplace(p, std::move(keys)).first;
          }
          EXPECT_TRUE(it->second.count(g.key())) << g.key();
          if (!is_forest(h)) return;
          auto jt = forests.find(p);
          if (jt == forests.end()) {
            std::set<std::string> keys;
            algorithm1_forests(type, p, [&](const Emission& e) { return keys.insert(e.graph.key()), true; },
                               StreamOptions{false});
            jt = forests.emplace(p, std::move(keys)).first;
          }
          EXPECT_TRUE(jt->second.count(g.key())) << g.key();
        });
      }
    }
}

TEST(Excess, SplitAddsHalfTheOrbit) {
  const OrbitStructure s(canonical_permutation(CycleType::from_counts({0, 0, 0, 1})));
  const BackboneGraph g = empty_backbone(s.nodes().type, 4);
  const std::vector<int> comp = {0};
  const auto d = excess_operations_check(s, g, 4, comp, {ComponentOp::Kind::Split, 0, 0, 1});
  EXPECT_EQ(d.delta, 2);
  EXPECT_EQ(d.lower_bound, 2);
}

TEST(Excess, BridgeToShorterOrbit) {
  const OrbitStructure s(canonical_permutation(CycleType::from_counts({0, 1, 0, 1})));
  const BackboneGraph g = empty_backbone(s.nodes().type, 4);
  const std::vector<int> comp = {1};
  // First bridge onto an untouched orbit adds m edges and ℓ vertices.
  const auto first = excess_operations_check(s, g, 4, comp, {ComponentOp::Kind::Bridge, 1, 0, 1});
  EXPECT_EQ(first.delta, 4 - 2);
  EXPECT_GE(first.delta, first.lower_bound);
  BackboneGraph with = g;
  with.edges.push_back(fx::bridge(1, 0, 1));
  const auto second = excess_operations_check(s, with, 4, comp, {ComponentOp::Kind::Bridge, 1, 0, 2});
  EXPECT_GE(second.delta, second.lower_bound);
  EXPECT_EQ(second.delta, 4);
}

TEST(Excess, StarOfBridgesIsExact) {
  // A 6-orbit bridged to a fixed point, a 2-orbit and a 3-orbit, one at a time.
  const OrbitStructure s(canonical_permutation(CycleType::from_counts({1, 1, 1, 0, 0, 1})));
  BackboneGraph g = empty_backbone(s.nodes().type, 6);
  const std::vector<int> comp = {3};
  for (int target : {0, 1, 2}) {
    const int l = g.nodes[static_cast<std::size_t>(target)].length;
    const auto d = excess_operations_check(s, g, 6, comp, {ComponentOp::Kind::Bridge, 3, target, 1});
    EXPECT_EQ(d.delta, 6 - l);
    g.edges.push_back(fx::bridge(3, target, 1));
    g.normalize();
  }
}

TEST(Excess, InvalidOperationsRejected) {
  const OrbitStructure s(canonical_permutation(CycleType::from_counts({0, 1, 1})));
  const BackboneGraph g = empty_backbone(s.nodes().type, 3);
  const std::vector<int> comp = {1};
  EXPECT_THROW(excess_operations_check(s, g, 3, comp, {ComponentOp::Kind::Split, 1, 0, 1}), ContractViolation);
  EXPECT_THROW(excess_operations_check(s, g, 3, comp, {ComponentOp::Kind::Split, 0, 0, 1}), ContractViolation);
  const std::vector<int> short_comp = {0};
  EXPECT_THROW(excess_operations_check(s, g, 3, short_comp, {ComponentOp::Kind::Bridge, 0, 1, 1}), ContractViolation);
}

// ex(H_C) >= -m for every component of Γ_m, with equality exactly for plain trees.
TEST(Excess, ComponentLowerBoundAttainedByPlainTrees) {
  for (int n = 2; n <= 7; ++n)
    for (const CycleType& type : all_cycle_types(n)) {
      const OrbitStructure st(canonical_permutation(type));
      const int k = 4;
      if (st.short_orbit_ids(k).size() > 18) continue;
      for_each_orbit_pseudoforest(st, k, false, [&](const std::vector<int>& ids, int) {
        std::vector<Edge> es;
        for (int id : ids)
          for (const Edge& e : st.orbits()[static_cast<std::size_t>(id)].edges) es.push_back(e);
        const BackboneGraph g = backbone(st, BinaryGraph(n, es), k);
        for (const auto& c : analyze_backbone(g).components) {
          const int ex = component_orbit_graph(st, g, k, c.nodes).excess;
          EXPECT_GE(ex, -c.length);
          EXPECT_EQ(ex == -c.length, c.tree() && c.plain()) << g.key();
        }
      });
    }
}

TEST(ParamsOfBackbone, CountsInnerEdgesSplitsAndBridges) {
  const auto p = params_of_backbone(fx::split_and_bridge(), 4);
  EXPECT_EQ(p.a[4], 1);
  EXPECT_EQ(p.b[4], 1);
  EXPECT_EQ(p.d[2], 1);
  const auto q = params_of_backbone(fx::make_backbone({{1, false}, {3, false}}, {fx::bridge(1, 0, 1)}), 3);
  EXPECT_EQ(q.c[3], 1);
}

TEST(CycleTypes, PartitionCounts) {
  const std::vector<std::size_t> partitions = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(all_cycle_types(n).size(), partitions[static_cast<std::size_t>(n)]);
}
