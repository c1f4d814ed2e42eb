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

#include <gtest/gtest.h>

#include "gsample/inverse_update.hpp"
#include "oracles.hpp"

namespace gsample {
namespace {

TEST(RankOneUpdateTest, MatchesDenseInverse) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index k = 1 + static_cast<Index>(seed % 6);
    const Matrix z = oracle::random_spd(seed, k);
    const Eigen::RowVectorXd v = oracle::random_matrix(seed + 100, 1, k);
    const Matrix updated = update_inverse_rank_one(oracle::dense_inverse(z), v);
    const Matrix expected = oracle::dense_inverse(z + v.transpose() * v);
    EXPECT_LE((updated - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(RankOneUpdateTest, DimensionMismatch) {
  EXPECT_THROW(update_inverse_rank_one(Matrix::Identity(3, 3), Eigen::RowVectorXd::Ones(2)),
               InvalidArgument);
}

TEST(GrowUpdateTest, MatchesDenseInverse) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index k = 1 + static_cast<Index>(seed % 6);
    const Matrix full = oracle::random_spd(seed, k + 1);
    const Matrix head = full.topLeftCorner(k, k);
    const Matrix grown =
        update_inverse_grow(oracle::dense_inverse(head), full.col(k).head(k), full(k, k));
    EXPECT_LE((grown - oracle::dense_inverse(full)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(GrowUpdateTest, FromEmpty) {
  const Matrix grown = update_inverse_grow(Matrix(0, 0), Vector(0), 4.0);
  ASSERT_EQ(grown.rows(), 1);
  EXPECT_EQ(grown(0, 0), 0.25);
}

TEST(GrowUpdateTest, RejectsNonPositiveSchurComplement) {
  Matrix m(1, 1);
  m << 1.0;
  Vector c(1);
  c << 1.0;
  // [[1, 1], [1, 1]] is singular.
  EXPECT_THROW(update_inverse_grow(m, c, 1.0), NumericalError);
}

TEST(PseudoInverseTest, PenroseConditionsAndRank) {
  const Matrix a = oracle::random_matrix(3, 6, 2) * oracle::random_matrix(4, 2, 5);  // rank 2
  const Matrix p = pseudo_inverse(a);
  EXPECT_EQ(numerical_rank(a), 2);
  EXPECT_LE((a * p * a - a).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((p * a * p - p).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE(((a * p).transpose() - a * p).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SpdInverseTest, ThrowsOnIndefinite) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -1.0;
  EXPECT_THROW(spd_inverse(m), NumericalError);
  const Matrix z = oracle::random_spd(9, 4);
  EXPECT_LE((spd_inverse(z) * z - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace gsample
