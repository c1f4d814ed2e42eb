// Copyright 2026 The gsample Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Weighted edge-list files: one "i j w" triple per line, 0-based, i < j.
// Blank lines and lines starting with '#' are ignored. The node count is
// max index + 1 unless the caller passes it explicitly.

#ifndef GSAMPLE_GRAPH_IO_HPP_
#define GSAMPLE_GRAPH_IO_HPP_

#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gsample/graph.hpp"

namespace gsample {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes " << g.size() << "\n";
  for (Index i = 0; i < g.size(); ++i) {
    for (Index j = i + 1; j < g.size(); ++j) {
      const double w = g.adjacency()(i, j);
      if (w > 0.0) out << i << ' ' << j << ' ' << format_double(w) << '\n';
    }
  }
}

inline Graph read_edge_list(std::istream& in, std::optional<Index> nodes = std::nullopt) {
  std::vector<std::tuple<Index, Index, double>> edges;
  std::set<std::pair<Index, Index>> seen;
  Index max_index = -1;
  std::optional<Index> header_nodes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      // "# nodes N" (as written by write_edge_list) fixes the node count.
      std::istringstream header(line.substr(first + 1));
      std::string word;
      long long count = 0;
      if (header >> word && word == "nodes" && header >> count && !header_nodes) {
        if (count < 2) throw ParseError("node count must be >= 2", line_no);
        header_nodes = static_cast<Index>(count);
      }
      continue;
    }
    std::istringstream fields(line);
    long long i = 0;
    long long j = 0;
    double w = 0.0;
    std::string extra;
    if (!(fields >> i >> j >> w) || (fields >> extra)) {
      throw ParseError("expected 'i j w', got '" + line + "'", line_no);
    }
    if (i < 0 || j < 0) throw ParseError("negative node index", line_no);
    const auto limit = nodes ? nodes : header_nodes;
    if (limit && (i >= *limit || j >= *limit)) {
      throw ParseError("node index out of range for " + std::to_string(*limit) + " nodes",
                       line_no);
    }
    if (i == j) throw ParseError("self-loop at node " + std::to_string(i), line_no);
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ParseError("edge weight must be finite and nonnegative", line_no);
    }
    if (i > j) std::swap(i, j);
    if (!seen.emplace(i, j).second) {
      throw ParseError("duplicate edge " + std::to_string(i) + "-" + std::to_string(j),
                       line_no);
    }
    edges.emplace_back(i, j, w);
    max_index = std::max<Index>(max_index, j);
  }
  // Explicit count, else the header, else the largest index seen.
  const Index n = nodes.value_or(header_nodes.value_or(max_index + 1));
  if (n < 2) throw ParseError("edge list describes fewer than 2 nodes", 0);
  if (max_index >= n) {
    throw ParseError("node index " + std::to_string(max_index) + " out of range for " +
                         std::to_string(n) + " nodes",
                     0);
  }
  Matrix a = Matrix::Zero(n, n);
  for (const auto& [i, j, w] : edges) a(i, j) = a(j, i) = w;
  return Graph(std::move(a));
}

inline void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_edge_list(g, out);
  if (!out) throw Error("failed writing '" + path + "'");
}

inline Graph load_edge_list(const std::string& path,
                            std::optional<Index> nodes = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_edge_list(in, nodes);
}

}  // namespace gsample

#endif  // GSAMPLE_GRAPH_IO_HPP_
