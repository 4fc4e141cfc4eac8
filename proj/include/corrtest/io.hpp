#pragma once

// Text formats (all labels 1-based on disk):
//   binary graph    first line `n`, then one `i j` pair per line with i < j
//   weighted graph  first line `n`, then n lines of n comma-separated reals
//   permutation     one line of n space-separated images

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "corrtest/graph.hpp"

namespace corrtest::io {

namespace detail {
inline std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return line;
  }
  return {};
}

inline int parse_node_count(std::istream& in) {
  const std::string line = next_content_line(in);
  std::istringstream ls(line);
  int n = -1;
  if (!(ls >> n) || n < 0) throw ParseError("expected node count on first line");
  return n;
}
}  // namespace detail

inline BinaryGraph read_binary_graph(std::istream& in) {
  const int n = detail::parse_node_count(in);
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int i = 0;
    int j = 0;
    if (!(ls >> i >> j)) throw ParseError("bad edge line: " + line);
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError("edge endpoint out of range: " + line);
    if (i >= j) throw ParseError("edge must satisfy i < j: " + line);
    edges.push_back({i - 1, j - 1});
  }
  return BinaryGraph(n, edges);
}

inline void write_binary_graph(std::ostream& out, const BinaryGraph& g) {
  out << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline WeightedGraph read_weighted_graph(std::istream& in) {
  const int n = detail::parse_node_count(in);
  std::vector<std::vector<double>> rows;
  for (int r = 0; r < n; ++r) {
    const std::string line = detail::next_content_line(in);
    if (line.empty()) throw ParseError("weighted graph: missing matrix row");
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError("weighted graph: bad number '" + cell + "'");
      }
    }
    if (static_cast<int>(row.size()) != n) throw ParseError("weighted graph: row has wrong length");
    rows.push_back(std::move(row));
  }
  std::vector<double> w;
  w.reserve(pair_count(n));
  for (int i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0) throw ParseError("weighted graph: nonzero diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) throw ParseError("weighted graph: matrix is not symmetric");
      w.push_back(rows[i][j]);
    }
  }
  return WeightedGraph(n, std::move(w));
}

inline void write_weighted_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.size() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (j) out << ',';
      out << g.weight(i, j);
    }
    out << '\n';
  }
}

inline Permutation read_permutation(std::istream& in) {
  const std::string line = detail::next_content_line(in);
  std::istringstream ls(line);
  std::vector<int> m;
  int x = 0;
  while (ls >> x) m.push_back(x - 1);
  if (!ls.eof()) throw ParseError("permutation: non-integer token");
  try {
    return Permutation(std::move(m));
  } catch (const ContractViolation&) {
    throw ParseError("permutation: images do not form a bijection of 1..n");
  }
}

inline void write_permutation(std::ostream& out, const Permutation& p) {
  for (int i = 0; i < p.size(); ++i) out << (i ? " " : "") << p(i) + 1;
  out << '\n';
}

template <class T, class Reader>
T read_file(const std::string& path, Reader&& reader) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return reader(in);
}

}  // namespace corrtest::io
