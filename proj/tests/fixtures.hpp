#pragma once

// Hand-built backbone graphs for validator tests.

#include <vector>

#include "corrtest/orbits.hpp"

namespace corrtest::fixtures {

inline BackboneGraph make_backbone(std::vector<GiantNode> nodes, std::vector<GiantEdge> edges) {
  BackboneGraph g;
  g.nodes = std::move(nodes);
  g.edges = std::move(edges);
  g.normalize();
  return g;
}

inline GiantEdge matching(int u, int v, int label) { return {OrbitKind::Matching, u, v, label}; }
inline GiantEdge bridge(int u, int v, int label) { return {OrbitKind::Bridge, u, v, label}; }
inline GiantEdge loop(int u, int label) { return {OrbitKind::Cycle, u, u, label}; }

/// Length-4 orbit bridged to two 2-orbits.
inline BackboneGraph two_bridges_from_one_orbit() {
  return make_backbone({{2, false}, {2, false}, {4, false}}, {bridge(2, 0, 1), bridge(2, 1, 1)});
}

/// Path of three 4-orbits with splits at both ends.
inline BackboneGraph path_with_two_splits() {
  return make_backbone({{4, true}, {4, false}, {4, true}}, {matching(0, 1, 1), matching(1, 2, 1)});
}

/// Path of two 4-orbits with a split and a bridge down to a 2-orbit.
inline BackboneGraph split_and_bridge() {
  return make_backbone({{2, false}, {4, false}, {4, true}}, {bridge(1, 0, 1), matching(1, 2, 1)});
}

/// Path of three 4-orbits, all split.
inline BackboneGraph path_with_three_splits() {
  return make_backbone({{4, true}, {4, true}, {4, true}}, {matching(0, 1, 1), matching(1, 2, 1)});
}

/// Two 4-orbits joined by a matching, bridged to a fixed point and to a 2-orbit.
inline BackboneGraph bridges_to_mixed_lengths() {
  return make_backbone({{1, false}, {2, false}, {4, false}, {4, false}},
                       {bridge(2, 0, 1), matching(2, 3, 1), bridge(3, 1, 1)});
}

}  // namespace corrtest::fixtures
