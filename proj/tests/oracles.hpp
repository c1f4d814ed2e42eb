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

// Slow, obviously-correct reference implementations used as test oracles.
// Nothing here shares code paths with the library beyond Eigen's dense
// solvers.

#ifndef GSAMPLE_TESTS_ORACLES_HPP_
#define GSAMPLE_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <vector>

namespace oracle {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Set = std::vector<Index>;
using Fn = std::function<double(const Set&)>;

inline Matrix rows_of(const Matrix& m, const Set& s) {
  Matrix out(static_cast<Index>(s.size()), m.cols());
  for (std::size_t i = 0; i < s.size(); ++i) out.row(static_cast<Index>(i)) = m.row(s[i]);
  return out;
}

inline Matrix dense_inverse(const Matrix& a) { return a.fullPivLu().inverse(); }

// max diag (V_SK^T V_SK + mu I)^{-1}, by an explicit sum of outer products.
inline double agod(const Matrix& vk, const Set& s, double mu) {
  Matrix z = mu * Matrix::Identity(vk.cols(), vk.cols());
  for (Index i : s) z += vk.row(i).transpose() * vk.row(i);
  return dense_inverse(z).diagonal().maxCoeff();
}

inline double fagod(const Matrix& t, const Set& s, double mu) {
  if (s.empty()) return 1.0 / mu;
  Matrix m(static_cast<Index>(s.size()), static_cast<Index>(s.size()));
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      m(static_cast<Index>(a), static_cast<Index>(b)) = t(s[a], s[b]);
    }
  }
  m.diagonal().array() += mu;
  return dense_inverse(m).diagonal().maxCoeff();
}

inline double god(const Matrix& vk, const Set& s) {
  if (s.empty()) return std::numeric_limits<double>::infinity();
  const Matrix v = rows_of(vk, s);
  // Pseudo-inverse through the SVD, tolerance relative to the top value.
  Eigen::JacobiSVD<Matrix> svd(v.transpose() * v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  Vector inv = Vector::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) inv(i) = 1.0 / sv(i);
  }
  const Matrix pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return pinv.diagonal().maxCoeff();
}

// log det (V_SK^T V_SK + mu I) via eigenvalues.
inline double logdet_info(const Matrix& vk, const Set& s, double mu) {
  Matrix z = mu * Matrix::Identity(vk.cols(), vk.cols());
  for (Index i : s) z += vk.row(i).transpose() * vk.row(i);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(z);
  return eig.eigenvalues().array().log().sum();
}

inline double trace_inv(const Matrix& vk, const Set& s, double mu) {
  Matrix z = mu * Matrix::Identity(vk.cols(), vk.cols());
  for (Index i : s) z += vk.row(i).transpose() * vk.row(i);
  return dense_inverse(z).trace();
}

// Naive greedy minimizer: evaluates f(S + j) from scratch for every
// candidate, keeping the first strict minimum in index order.
inline Set naive_greedy(const Fn& f, Index n, Index budget) {
  Set s;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index step = 0; step < budget; ++step) {
    Index best = -1;
    double best_v = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      Set t = s;
      t.push_back(j);
      const double v = f(t);
      if (best < 0 || v < best_v) {
        best = j;
        best_v = v;
      }
    }
    s.push_back(best);
    used[static_cast<std::size_t>(best)] = true;
  }
  return s;
}

// Exhaustive minimum over size-M subsets via bitmasks (descending order, a
// different enumeration from the library). Ties resolve to the
// lexicographically smallest sorted set.
struct Best {
  double value = std::numeric_limits<double>::infinity();
  Set set;
};

inline Best brute_force(const Fn& f, Index n, Index budget) {
  Best best;
  for (std::uint32_t mask = (1U << n); mask-- > 0;) {
    if (static_cast<Index>(__builtin_popcount(mask)) != budget) continue;
    Set s;
    for (Index i = 0; i < n; ++i) {
      if (mask & (1U << i)) s.push_back(i);
    }
    const double v = f(s);
    if (v < best.value || (v == best.value && s < best.set)) best = {v, s};
  }
  return best;
}

// Empirical alpha by explicit nested loops over sets (no bitmask tables).
inline double alpha(const Fn& f, Index n, Index max_size, double tiny = 1e-14) {
  double out = std::numeric_limits<double>::infinity();
  std::vector<Set> all;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    Set s;
    for (Index i = 0; i < n; ++i) {
      if (mask & (1U << i)) s.push_back(i);
    }
    all.push_back(s);
  }
  for (const auto& b : all) {
    if (static_cast<Index>(b.size()) > max_size) continue;
    for (const auto& a : all) {
      if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
      for (Index j = 0; j < n; ++j) {
        if (std::find(b.begin(), b.end(), j) != b.end()) continue;
        Set bj = b, aj = a;
        bj.push_back(j);
        aj.push_back(j);
        const double den = f(bj) - f(b);
        if (std::abs(den) <= tiny) continue;
        out = std::min(out, (f(aj) - f(a)) / den);
      }
    }
  }
  return out;
}

// Explicit rotation matrix with the library's sign convention.
inline Matrix givens_matrix(Index n, Index p, Index q, double theta) {
  Matrix g = Matrix::Identity(n, n);
  g(p, p) = g(q, q) = std::cos(theta);
  g(p, q) = std::sin(theta);
  g(q, p) = -std::sin(theta);
  return g;
}

inline double off_diagonal_energy(const Matrix& w) {
  return w.squaredNorm() - w.diagonal().squaredNorm();
}

// L = D - A by loops.
inline Matrix laplacian(const Matrix& a) {
  const Index n = a.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j) {
        l(i, j) = -a(i, j);
        l(i, i) += a(i, j);
      }
    }
  }
  return l;
}

inline Matrix random_matrix(std::uint64_t seed, Index rows, Index cols) {
  // Small LCG, independent of the library PRNG.
  std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      m(i, j) = static_cast<double>(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }
  }
  return m;
}

inline Matrix random_spd(std::uint64_t seed, Index k, double shift = 0.5) {
  const Matrix b = random_matrix(seed, k, k);
  return b * b.transpose() + shift * Matrix::Identity(k, k);
}

}  // namespace oracle

#endif  // GSAMPLE_TESTS_ORACLES_HPP_
