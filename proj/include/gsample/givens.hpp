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

// Eigendecomposition-free approximation of the ideal low-pass filter
// V_K V_K^T.
//
// GreedyJacobi repeatedly zeroes the largest off-diagonal entry of a working
// copy of the Laplacian with a classical Jacobi (Givens) rotation. After J
// rotations L ~= Q diag(W) Q^T with Q = G_1 G_2 ... G_J; sorting diag(W)
// ascending and keeping the first K columns of Q gives the approximate
// low-pass basis. Each rotation costs O(n): only rows/columns p and q of W
// change, and a per-row cache of the largest upper-triangular entry makes
// pair selection O(n) after an O(n^2) setup.

#ifndef GSAMPLE_GIVENS_HPP_
#define GSAMPLE_GIVENS_HPP_

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gsample/core.hpp"
#include "gsample/graph.hpp"
#include "gsample/graph_io.hpp"
#include "gsample/spectral.hpp"

namespace gsample {

// G(p, q, theta) is the identity except G_pp = G_qq = cos(theta),
// G_pq = sin(theta), G_qp = -sin(theta).
struct GivensRotation {
  Index p = 0;
  Index q = 0;
  double theta = 0.0;
};

struct GivensSeq {
  Index n = 0;
  std::vector<GivensRotation> rotations;

  std::size_t count() const { return rotations.size(); }

  // Q = G_1 G_2 ... G_J as a dense n x n matrix.
  Matrix product() const {
    Matrix q = Matrix::Identity(n, n);
    for (const auto& r : rotations) {
      const double c = std::cos(r.theta);
      const double s = std::sin(r.theta);
      const Vector col_p = q.col(r.p);
      q.col(r.p) = c * col_p - s * q.col(r.q);
      q.col(r.q) = s * col_p + c * q.col(r.q);
    }
    return q;
  }
};

// Rotation budget ceil(6 n log10 n).
inline Index default_rotation_budget(Index n) {
  return static_cast<Index>(std::ceil(6.0 * static_cast<double>(n) *
                                      std::log10(static_cast<double>(n))));
}

inline constexpr double kJacobiOffDiagonalFloor = 1e-12;

class GreedyJacobi {
 public:
  explicit GreedyJacobi(const Matrix& symmetric)
      : work_(symmetric), n_(symmetric.rows()),
        row_best_(static_cast<std::size_t>(symmetric.rows()), -1) {
    if (symmetric.cols() != n_) throw InvalidArgument("GreedyJacobi needs a square matrix");
    givens_.n = n_;
    for (Index r = 0; r < n_; ++r) refresh_row(r);
  }

  const Matrix& working() const { return work_; }
  const GivensSeq& givens() const { return givens_; }

  // Largest |W_pq| over p < q, ties to smallest p then smallest q.
  // Returns {-1, -1} for a 1x1 matrix.
  std::pair<Index, Index> pivot() const {
    Index best_p = -1;
    double best = -1.0;
    for (Index r = 0; r + 1 < n_; ++r) {
      const double v = std::abs(work_(r, row_best_[static_cast<std::size_t>(r)]));
      if (v > best) {
        best = v;
        best_p = r;
      }
    }
    if (best_p < 0) return {-1, -1};
    return {best_p, row_best_[static_cast<std::size_t>(best_p)]};
  }

  double max_off_diagonal() const {
    const auto [p, q] = pivot();
    return p < 0 ? 0.0 : std::abs(work_(p, q));
  }

  // Applies one rotation; returns false (and does nothing) once every
  // off-diagonal entry is at or below the floor.
  bool step() {
    const auto [p, q] = pivot();
    if (p < 0 || std::abs(work_(p, q)) <= kJacobiOffDiagonalFloor) return false;
    const double theta = 0.5 * std::atan2(2.0 * work_(p, q), work_(q, q) - work_(p, p));
    rotate(p, q, theta);
    givens_.rotations.push_back({p, q, theta});
    return true;
  }

 private:
  void rotate(Index p, Index q, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double wpp = work_(p, p);
    const double wqq = work_(q, q);
    const double wpq = work_(p, q);
    for (Index r = 0; r < n_; ++r) {
      if (r == p || r == q) continue;
      const double rp = work_(r, p);
      const double rq = work_(r, q);
      work_(r, p) = work_(p, r) = c * rp - s * rq;
      work_(r, q) = work_(q, r) = s * rp + c * rq;
    }
    work_(p, p) = c * c * wpp - 2.0 * c * s * wpq + s * s * wqq;
    work_(q, q) = s * s * wpp + 2.0 * c * s * wpq + c * c * wqq;
    work_(p, q) = work_(q, p) = 0.0;

    refresh_row(p);
    refresh_row(q);
    for (Index r = 0; r < n_; ++r) {
      if (r == p || r == q) continue;
      Index& best = row_best_[static_cast<std::size_t>(r)];
      if (best == p || best == q) {
        refresh_row(r);
        continue;
      }
      for (Index col : {p, q}) {
        if (col <= r) continue;
        const double v = std::abs(work_(r, col));
        const double cur = best < 0 ? -1.0 : std::abs(work_(r, best));
        if (v > cur || (v == cur && col < best)) best = col;
      }
    }
  }

  void refresh_row(Index r) {
    Index best = -1;
    double best_val = -1.0;
    for (Index c = r + 1; c < n_; ++c) {
      const double v = std::abs(work_(r, c));
      if (v > best_val) {
        best_val = v;
        best = c;
      }
    }
    row_best_[static_cast<std::size_t>(r)] = best;
  }

  Matrix work_;
  Index n_;
  std::vector<Index> row_best_;  // column of the max |W_rc|, c > r
  GivensSeq givens_;
};

struct JacobiResult {
  GivensSeq givens;
  Vector approx_eigs;  // ascending
  IndexList perm;      // approx_eigs[k] = diag(W)[perm[k]]
};

inline IndexList ascending_order(const Vector& values) {
  IndexList perm(static_cast<std::size_t>(values.size()));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](Index a, Index b) { return values(a) < values(b); });
  return perm;
}

inline JacobiResult greedy_jacobi(const Laplacian& lap, Index budget) {
  if (budget < 0) throw InvalidArgument("rotation budget must be >= 0");
  GreedyJacobi jacobi(lap.matrix);
  for (Index j = 0; j < budget && jacobi.step(); ++j) {
  }
  JacobiResult result;
  result.givens = jacobi.givens();
  const Vector diag = jacobi.working().diagonal();
  result.perm = ascending_order(diag);
  result.approx_eigs.resize(diag.size());
  for (Index k = 0; k < diag.size(); ++k) result.approx_eigs(k) = diag(result.perm[static_cast<std::size_t>(k)]);
  return result;
}

struct ApproxFilter {
  GivensSeq givens;
  Vector approx_eigs;
  IndexList perm;
  Matrix filter;  // T = Q_K Q_K^T
  Index bandwidth = 0;
};

// T = Q_K Q_K^T where Q_K holds the columns perm[0..K) of Q.
inline Matrix lowpass_matrix(const GivensSeq& givens, std::span<const Index> perm,
                             Index bandwidth) {
  if (bandwidth < 1 || bandwidth > givens.n) {
    throw InvalidArgument("bandwidth must lie in [1, n]");
  }
  if (static_cast<Index>(perm.size()) != givens.n) {
    throw InvalidArgument("permutation length must equal n");
  }
  const Matrix q = givens.product();
  const Matrix qk = select_cols(q, perm.first(static_cast<std::size_t>(bandwidth)));
  Matrix t = qk * qk.transpose();
  // Exact symmetry for downstream principal-submatrix solves.
  t = 0.5 * (t + t.transpose()).eval();
  return t;
}

inline ApproxFilter lowpass_from_givens(const JacobiResult& jacobi, Index bandwidth) {
  ApproxFilter f;
  f.givens = jacobi.givens;
  f.approx_eigs = jacobi.approx_eigs;
  f.perm = jacobi.perm;
  f.filter = lowpass_matrix(jacobi.givens, jacobi.perm, bandwidth);
  f.bandwidth = bandwidth;
  return f;
}

// Convenience: Laplacian -> approximate filter with `budget` rotations.
inline ApproxFilter approximate_lowpass(const Laplacian& lap, Index bandwidth, Index budget) {
  return lowpass_from_givens(greedy_jacobi(lap, budget), bandwidth);
}

// Ideal low-pass filter V_K V_K^T.
inline Matrix exact_lowpass(const SpectralBasis& basis, Index bandwidth) {
  const Matrix vk = basis.lowpass(bandwidth);
  Matrix t = vk * vk.transpose();
  t = 0.5 * (t + t.transpose()).eval();
  return t;
}

inline void write_givens_csv(const GivensSeq& seq, std::ostream& out) {
  out << "p,q,theta\n";
  for (const auto& r : seq.rotations) {
    out << r.p << ',' << r.q << ',' << format_double(r.theta) << '\n';
  }
}

inline GivensSeq read_givens_csv(std::istream& in, Index n) {
  GivensSeq seq;
  seq.n = n;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.rfind("p,q,theta", 0) != 0) {
    throw ParseError("expected header 'p,q,theta'", 1);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    GivensRotation r;
    if (!(fields >> r.p >> r.q >> r.theta)) throw ParseError("expected 'p,q,theta'", line_no);
    if (r.p < 0 || r.q >= n || r.p >= r.q) throw ParseError("invalid rotation pair", line_no);
    seq.rotations.push_back(r);
  }
  return seq;
}

}  // namespace gsample

#endif  // GSAMPLE_GIVENS_HPP_
