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

// Weighted undirected graphs, the combinatorial Laplacian, and the three
// random graph families used by the benchmarks.

#ifndef GSAMPLE_GRAPH_HPP_
#define GSAMPLE_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "gsample/core.hpp"
#include "gsample/rng.hpp"

namespace gsample {

enum class GraphModel { kSensor, kErdosRenyi, kCommunity, kExternal };

inline std::string to_string(GraphModel m) {
  switch (m) {
    case GraphModel::kSensor: return "G1";
    case GraphModel::kErdosRenyi: return "G2";
    case GraphModel::kCommunity: return "G3";
    case GraphModel::kExternal: return "external";
  }
  return "unknown";
}

struct GraphMeta {
  GraphModel model = GraphModel::kExternal;
  std::uint64_t seed = 0;  // seed passed by the caller
  int attempts = 1;        // resamples needed to get a connected graph
};

class Graph {
 public:
  // Validates symmetry (bitwise), nonnegativity, zero diagonal and n >= 2.
  explicit Graph(Matrix adjacency, GraphMeta meta = {})
      : adjacency_(std::move(adjacency)), meta_(meta) {
    const Index n = adjacency_.rows();
    if (adjacency_.cols() != n) throw InvalidArgument("adjacency must be square");
    if (n < 2) throw InvalidArgument("graph needs at least 2 nodes");
    for (Index i = 0; i < n; ++i) {
      if (adjacency_(i, i) != 0.0) {
        throw InvalidArgument("self-loop at node " + std::to_string(i));
      }
      for (Index j = i + 1; j < n; ++j) {
        const double w = adjacency_(i, j);
        if (w != adjacency_(j, i)) {
          throw InvalidArgument("adjacency not symmetric at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
        }
        if (!(w >= 0.0) || !std::isfinite(w)) {
          throw InvalidArgument("negative or non-finite weight at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
  }

  Index size() const { return adjacency_.rows(); }
  const Matrix& adjacency() const { return adjacency_; }
  const GraphMeta& meta() const { return meta_; }

  Index edge_count() const {
    Index count = 0;
    for (Index i = 0; i < size(); ++i) {
      for (Index j = i + 1; j < size(); ++j) count += adjacency_(i, j) > 0.0;
    }
    return count;
  }

  Index degree(Index i) const {
    return (adjacency_.row(i).array() > 0.0).count();
  }

 private:
  Matrix adjacency_;
  GraphMeta meta_;
};

struct Laplacian {
  Matrix matrix;  // D - A
  Vector degree;  // weighted degrees D_ii
};

inline Laplacian build_laplacian(const Graph& g) {
  Laplacian lap;
  lap.degree = g.adjacency().rowwise().sum();
  lap.matrix = -g.adjacency();
  lap.matrix.diagonal() = lap.degree;
  return lap;
}

inline bool is_connected(const Matrix& adjacency) {
  const Index n = adjacency.rows();
  if (n == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<Index> frontier;
  frontier.push(0);
  seen[0] = true;
  Index reached = 1;
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop();
    for (Index v = 0; v < n; ++v) {
      if (adjacency(u, v) > 0.0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

inline constexpr int kMaxConnectAttempts = 50;

namespace detail {

// Runs `sample(seed + a)` for a = 0, 1, ... until the result is connected.
template <typename Sampler>
Graph sample_connected(GraphModel model, std::uint64_t seed, Sampler&& sample) {
  for (int attempt = 0; attempt < kMaxConnectAttempts; ++attempt) {
    Matrix a = sample(seed + static_cast<std::uint64_t>(attempt));
    if (is_connected(a)) {
      return Graph(std::move(a), GraphMeta{model, seed, attempt + 1});
    }
  }
  throw NumericalError(to_string(model) + ": no connected sample after " +
                       std::to_string(kMaxConnectAttempts) + " attempts");
}

}  // namespace detail

// G1: random sensor graph. Nodes uniform in the unit square, each linked to
// its k_nn nearest neighbours (union-symmetrized), Gaussian kernel weights
// exp(-d^2 / (2 theta^2)) with theta the mean k_nn-th neighbour distance.
inline Graph gen_sensor(Index n, Index k_nn, std::uint64_t seed) {
  if (k_nn < 1 || n < k_nn + 1) {
    throw InvalidArgument("gen_sensor requires 1 <= k_nn <= n - 1");
  }
  return detail::sample_connected(GraphModel::kSensor, seed, [&](std::uint64_t s) {
    Rng rng(s);
    Eigen::MatrixX2d pos(n, 2);
    for (Index i = 0; i < n; ++i) {
      pos(i, 0) = rng.uniform();
      pos(i, 1) = rng.uniform();
    }
    Matrix dist = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        dist(i, j) = dist(j, i) = std::hypot(pos(i, 0) - pos(j, 0), pos(i, 1) - pos(j, 1));
      }
    }
    std::vector<std::vector<Index>> nearest(static_cast<std::size_t>(n));
    double theta = 0.0;
    for (Index i = 0; i < n; ++i) {
      std::vector<Index> others;
      others.reserve(static_cast<std::size_t>(n - 1));
      for (Index j = 0; j < n; ++j) {
        if (j != i) others.push_back(j);
      }
      std::partial_sort(others.begin(), others.begin() + k_nn, others.end(),
                        [&](Index a, Index b) {
                          return dist(i, a) != dist(i, b) ? dist(i, a) < dist(i, b) : a < b;
                        });
      others.resize(static_cast<std::size_t>(k_nn));
      theta += dist(i, others.back());
      nearest[static_cast<std::size_t>(i)] = std::move(others);
    }
    theta /= static_cast<double>(n);
    Matrix a = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j : nearest[static_cast<std::size_t>(i)]) {
        const double d = dist(i, j);
        a(i, j) = a(j, i) = std::exp(-d * d / (2.0 * theta * theta));
      }
    }
    return a;
  });
}

// G2: Erdos-Renyi, each unordered pair present with probability p, weight 1.
inline Graph gen_er(Index n, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("gen_er requires 0 < p <= 1");
  if (n < 2) throw InvalidArgument("graph needs at least 2 nodes");
  return detail::sample_connected(GraphModel::kErdosRenyi, seed, [&](std::uint64_t s) {
    Rng rng(s);
    Matrix a = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        if (rng.uniform() < p) a(i, j) = a(j, i) = 1.0;
      }
    }
    return a;
  });
}

inline constexpr double kCommunityIntraProbability = 0.3;

inline Index community_count(Index n) {
  return static_cast<Index>(std::floor(std::sqrt(static_cast<double>(n)) / 2.0));
}

// Random community sizes: each community gets 2 nodes, the remaining
// n - 2c are split at c - 1 uniform cut points.
inline std::vector<Index> community_sizes(Index n, Rng& rng) {
  const Index c = community_count(n);
  const Index spare = n - 2 * c;
  std::vector<Index> cuts;
  for (Index k = 0; k + 1 < c; ++k) {
    cuts.push_back(static_cast<Index>(rng.below(static_cast<std::uint64_t>(spare + 1))));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(spare);
  std::vector<Index> sizes;
  Index prev = 0;
  for (Index cut : cuts) {
    sizes.push_back(2 + cut - prev);
    prev = cut;
  }
  return sizes;
}

// Community label of every node, communities laid out contiguously.
inline std::vector<Index> community_labels(const std::vector<Index>& sizes) {
  std::vector<Index> labels;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    labels.insert(labels.end(), static_cast<std::size_t>(sizes[c]), static_cast<Index>(c));
  }
  return labels;
}

// G3: stochastic block model with floor(sqrt(n)/2) random-size communities,
// p_in = 0.3 and p_out = 2/n, unit weights.
inline Graph gen_community(Index n, std::uint64_t seed) {
  if (n < 8) throw InvalidArgument("gen_community requires n >= 8");
  const double p_out = 2.0 / static_cast<double>(n);
  return detail::sample_connected(GraphModel::kCommunity, seed, [&](std::uint64_t s) {
    Rng rng(s);
    const auto labels = community_labels(community_sizes(n, rng));
    Matrix a = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const bool same = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)];
        if (rng.uniform() < (same ? kCommunityIntraProbability : p_out)) {
          a(i, j) = a(j, i) = 1.0;
        }
      }
    }
    return a;
  });
}

struct GraphParams {
  Index k_nn = 6;         // G1
  double er_p = 0.05;     // G2
};

inline Graph generate_graph(GraphModel model, Index n, std::uint64_t seed,
                            const GraphParams& params = {}) {
  switch (model) {
    case GraphModel::kSensor: return gen_sensor(n, params.k_nn, seed);
    case GraphModel::kErdosRenyi: return gen_er(n, params.er_p, seed);
    case GraphModel::kCommunity: return gen_community(n, seed);
    case GraphModel::kExternal: break;
  }
  throw InvalidArgument("cannot generate an external graph");
}

}  // namespace gsample

#endif  // GSAMPLE_GRAPH_HPP_
