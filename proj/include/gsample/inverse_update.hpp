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

// Incremental inverse updates used by the greedy selectors.

#ifndef GSAMPLE_INVERSE_UPDATE_HPP_
#define GSAMPLE_INVERSE_UPDATE_HPP_

#include "gsample/core.hpp"

namespace gsample {

// (Z + v^T v)^{-1} from Z^{-1} (Sherman-Morrison), v a row vector.
inline Matrix update_inverse_rank_one(const Matrix& zinv, const Eigen::RowVectorXd& v) {
  if (zinv.rows() != zinv.cols() || zinv.cols() != v.size()) {
    throw InvalidArgument("update_inverse_rank_one: dimension mismatch");
  }
  const Vector u = zinv * v.transpose();
  const double denom = 1.0 + v.dot(u);
  Matrix out = zinv - (u * u.transpose()) / denom;
  return out;
}

// Inverse of [[M, col], [col^T, diag_entry]] from M^{-1} via the Schur
// complement s = diag_entry - col^T M^{-1} col.
inline Matrix update_inverse_grow(const Matrix& minv, const Vector& col, double diag_entry) {
  const Index m = minv.rows();
  if (minv.cols() != m || col.size() != m) {
    throw InvalidArgument("update_inverse_grow: dimension mismatch");
  }
  const Vector w = minv * col;
  const double schur = diag_entry - col.dot(w);
  if (!(schur > 0.0)) {
    throw NumericalError("update_inverse_grow: nonpositive Schur complement");
  }
  Matrix out(m + 1, m + 1);
  out.topLeftCorner(m, m) = minv + (w * w.transpose()) / schur;
  out.topRightCorner(m, 1) = -w / schur;
  out.bottomLeftCorner(1, m) = (-w / schur).transpose();
  out(m, m) = 1.0 / schur;
  return out;
}

inline constexpr double kPinvRelativeTolerance = 1e-10;

// Moore-Penrose pseudo-inverse through a complete orthogonal decomposition
// with relative rank threshold 1e-10.
inline Matrix pseudo_inverse(const Matrix& a) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(kPinvRelativeTolerance);
  return cod.pseudoInverse();
}

inline Index numerical_rank(const Matrix& a) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(kPinvRelativeTolerance);
  return cod.rank();
}

// Inverse of a symmetric positive definite matrix; throws when the
// Cholesky factorization fails.
inline Matrix spd_inverse(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw NumericalError("matrix is not positive definite");
  return llt.solve(Matrix::Identity(a.rows(), a.cols()));
}

}  // namespace gsample

#endif  // GSAMPLE_INVERSE_UPDATE_HPP_
