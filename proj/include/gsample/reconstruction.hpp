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

// Signal recovery from samples and error metrics.

#ifndef GSAMPLE_RECONSTRUCTION_HPP_
#define GSAMPLE_RECONSTRUCTION_HPP_

#include <cmath>
#include <string>

#include "gsample/core.hpp"
#include "gsample/inverse_update.hpp"
#include "gsample/spectral.hpp"

namespace gsample {

struct Reconstruction {
  Vector values;
  std::string method;
  double residual = 0.0;  // |y_S - x*_S|_2
};

namespace detail {

inline Reconstruction finish(Vector values, const Observation& obs, std::string method) {
  Reconstruction r{std::move(values), std::move(method), 0.0};
  double sq = 0.0;
  for (std::size_t s = 0; s < obs.sample_indices.size(); ++s) {
    const double d = obs.values(static_cast<Index>(s)) - r.values(obs.sample_indices[s]);
    sq += d * d;
  }
  r.residual = std::sqrt(sq);
  return r;
}

inline void check_observation(const Observation& obs, Index n) {
  check_index_set(obs.sample_indices, n);
  if (obs.values.size() != static_cast<Index>(obs.sample_indices.size())) {
    throw InvalidArgument("observation values and indices differ in length");
  }
}

}  // namespace detail

// BLUE: x* = V_K V_SK^+ y_S. Requires rank(V_SK) = K.
inline Reconstruction blue_reconstruct(const Observation& obs, const SpectralBasis& basis,
                                       Index bandwidth) {
  detail::check_observation(obs, basis.size());
  const Matrix vk = basis.lowpass(bandwidth);
  const Matrix vsk = select_rows(vk, obs.sample_indices);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(vsk);
  cod.setThreshold(kPinvRelativeTolerance);
  if (cod.rank() < bandwidth) {
    throw NumericalError("BLUE needs rank(V_SK) = K; got rank " + std::to_string(cod.rank()));
  }
  const Vector coeffs = cod.solve(obs.values);
  return detail::finish(vk * coeffs, obs, "blue");
}

// x* = V_K (V_SK^T V_SK + mu I)^{-1} V_SK^T y_S.
inline Reconstruction biased_reconstruct(const Observation& obs, const SpectralBasis& basis,
                                         Index bandwidth, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("biased reconstruction needs mu > 0");
  detail::check_observation(obs, basis.size());
  const Matrix vk = basis.lowpass(bandwidth);
  const Matrix vsk = select_rows(vk, obs.sample_indices);
  Matrix z = vsk.transpose() * vsk;
  z.diagonal().array() += mu;
  const Vector coeffs = z.llt().solve(vsk.transpose() * obs.values);
  return detail::finish(vk * coeffs, obs, "biased");
}

// x* = T_{:,S} (T_SS + mu I)^{-1} y_S. With T = V_K V_K^T this equals
// biased_reconstruct by the push-through identity; with an approximate T it
// needs no eigenvectors.
inline Reconstruction filter_reconstruct(const Observation& obs, const Matrix& filter,
                                         double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("filter reconstruction needs mu > 0");
  detail::check_observation(obs, filter.rows());
  Matrix tss = principal_submatrix(filter, obs.sample_indices);
  tss.diagonal().array() += mu;
  const Vector weights = tss.llt().solve(obs.values);
  const Matrix cols = select_cols(filter, obs.sample_indices);
  return detail::finish(cols * weights, obs, "filter");
}

// E = V_K (V_SK^T V_SK)^{-1} V_K^T.
inline Matrix error_covariance(const SpectralBasis& basis, Index bandwidth,
                               std::span<const Index> s) {
  check_index_set(s, basis.size());
  const Matrix vk = basis.lowpass(bandwidth);
  const Matrix vsk = select_rows(vk, s);
  const Matrix g = vsk.transpose() * vsk;
  if (numerical_rank(g) < bandwidth) throw NumericalError("error covariance needs rank(V_SK) = K");
  Matrix e = vk * spd_inverse(g) * vk.transpose();
  return 0.5 * (e + e.transpose());
}

inline double rmse(const Vector& estimate, const Vector& truth) {
  if (estimate.size() != truth.size() || truth.size() == 0) {
    throw InvalidArgument("rmse: dimension mismatch");
  }
  return std::sqrt((estimate - truth).squaredNorm() / static_cast<double>(truth.size()));
}

// Inverts SNR = 10 log10(0.5 / sigma^2).
inline double snr_to_sigma2(double snr_db) {
  return kInbandVariance * std::pow(10.0, -snr_db / 10.0);
}

}  // namespace gsample

#endif  // GSAMPLE_RECONSTRUCTION_HPP_
