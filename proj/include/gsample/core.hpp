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

// Shared numeric types, error hierarchy and small matrix helpers.

#ifndef GSAMPLE_CORE_HPP_
#define GSAMPLE_CORE_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsample {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexList = std::vector<Index>;

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed something that violates a precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Singular systems, failed eigensolvers and similar numerical faults.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed input files and experiment specs. `line` is 1-based, 0 when the
// problem is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::string what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// f(C) in the G-optimal criterion: the largest diagonal entry.
inline double max_diag(const Matrix& m) {
  return m.diagonal().maxCoeff();
}

inline double min_diag(const Matrix& m) {
  return m.diagonal().minCoeff();
}

// Rows `rows` of `m`, in the given order.
inline Matrix select_rows(const Matrix& m, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = m.row(rows[r]);
  return out;
}

// Principal submatrix m[rows, rows].
inline Matrix principal_submatrix(const Matrix& m, std::span<const Index> rows) {
  const auto k = static_cast<Index>(rows.size());
  Matrix out(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) out(a, b) = m(rows[a], rows[b]);
  }
  return out;
}

// Columns `cols` of `m`, in the given order.
inline Matrix select_cols(const Matrix& m, std::span<const Index> cols) {
  Matrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(c) = m.col(cols[c]);
  return out;
}

// Throws InvalidArgument unless the indices are distinct and in [0, n).
inline void check_index_set(std::span<const Index> indices, Index n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index i : indices) {
    if (i < 0 || i >= n) {
      throw InvalidArgument("node index " + std::to_string(i) +
                            " out of range [0, " + std::to_string(n) + ")");
    }
    if (seen[static_cast<std::size_t>(i)]) {
      throw InvalidArgument("duplicate node index " + std::to_string(i));
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
}

}  // namespace gsample

#endif  // GSAMPLE_CORE_HPP_
