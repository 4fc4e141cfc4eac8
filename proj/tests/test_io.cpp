#include <gtest/gtest.h>

#include <sstream>

#include "corrtest/io.hpp"

using namespace corrtest;

TEST(Io, BinaryGraphRoundTrip) {
  const BinaryGraph g(6, std::vector<Edge>{{0, 5}, {1, 2}, {3, 4}});
  std::stringstream ss;
  io::write_binary_graph(ss, g);
  EXPECT_EQ(ss.str(), "6\n1 6\n2 3\n4 5\n");
  EXPECT_EQ(io::read_binary_graph(ss).edges(), g.edges());
}

TEST(Io, BinaryGraphSkipsCommentsAndRejectsBadPairs) {
  std::istringstream ok("# header\n3\n\n1 2\n# c\n2 3\n");
  EXPECT_EQ(io::read_binary_graph(ok).edge_count(), 2u);
  std::istringstream out_of_range("3\n1 4\n");
  EXPECT_THROW(io::read_binary_graph(out_of_range), ParseError);
  std::istringstream loop("3\n2 2\n");
  EXPECT_THROW(io::read_binary_graph(loop), ParseError);
  std::istringstream junk("3\n1 x\n");
  EXPECT_THROW(io::read_binary_graph(junk), ParseError);
}

TEST(Io, WeightedGraphRoundTrip) {
  const WeightedGraph g(3, {0.5, -1.25, 2.0});
  std::stringstream ss;
  io::write_weighted_graph(ss, g);
  const auto back = io::read_weighted_graph(ss);
  EXPECT_EQ(back.weights(), g.weights());
}

TEST(Io, WeightedGraphRejectsAsymmetricMatrix) {
  std::istringstream in("2\n0,1\n2,0\n");
  EXPECT_THROW(io::read_weighted_graph(in), ParseError);
}

TEST(Io, PermutationRoundTripAndValidation) {
  const auto p = Permutation::from_cycles(4, {{1, 3}, {2, 4}});
  std::stringstream ss;
  io::write_permutation(ss, p);
  EXPECT_EQ(ss.str(), "3 4 1 2\n");
  EXPECT_EQ(io::read_permutation(ss), p);
  std::istringstream bad("1 1 2\n");
  EXPECT_THROW(io::read_permutation(bad), ParseError);
}

TEST(Io, MissingFileIsParseError) {
  EXPECT_THROW(io::read_file<Permutation>("/nonexistent/corrtest", io::read_permutation), ParseError);
}
