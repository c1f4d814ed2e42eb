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

// Laplacian eigendecomposition, graph Fourier transform, the GS1-GS3 signal
// models and the noisy sampling model.

#ifndef GSAMPLE_SPECTRAL_HPP_
#define GSAMPLE_SPECTRAL_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gsample/core.hpp"
#include "gsample/graph.hpp"
#include "gsample/graph_io.hpp"
#include "gsample/rng.hpp"

namespace gsample {

// Eigenpairs of a Laplacian: ascending eigenvalues, orthonormal columns.
// In every column the first entry with |v| > 1e-12 is positive.
struct SpectralBasis {
  Vector eigenvalues;
  Matrix eigenvectors;

  Index size() const { return eigenvalues.size(); }

  // First K columns (V_K).
  Matrix lowpass(Index bandwidth) const {
    if (bandwidth < 1 || bandwidth > size()) {
      throw InvalidArgument("bandwidth must lie in [1, n]");
    }
    return eigenvectors.leftCols(bandwidth);
  }
};

inline SpectralBasis eigendecompose(const Laplacian& lap) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(lap.matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  SpectralBasis basis{solver.eigenvalues(), solver.eigenvectors()};
  for (Index k = 0; k < basis.size(); ++k) {
    auto col = basis.eigenvectors.col(k);
    for (Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
  return basis;
}

inline Vector gft(const SpectralBasis& basis, const Vector& x) {
  if (x.size() != basis.size()) throw InvalidArgument("gft: dimension mismatch");
  return basis.eigenvectors.transpose() * x;
}

inline Vector igft(const SpectralBasis& basis, const Vector& spectrum) {
  if (spectrum.size() != basis.size()) throw InvalidArgument("igft: dimension mismatch");
  return basis.eigenvectors * spectrum;
}

enum class SignalModel { kGS1, kGS2, kGS3 };

inline std::string to_string(SignalModel m) {
  switch (m) {
    case SignalModel::kGS1: return "GS1";
    case SignalModel::kGS2: return "GS2";
    case SignalModel::kGS3: return "GS3";
  }
  return "unknown";
}

inline constexpr double kInbandVariance = 0.5;
inline constexpr double kOutOfBandVariance = 5e-3;

inline Index default_bandwidth(SignalModel m) {
  return m == SignalModel::kGS3 ? 40 : 10;
}

struct GraphSignal {
  Vector values;
  std::optional<Vector> spectrum;
  Index bandwidth = 0;
};

// GS1/GS3: exactly K-bandlimited with in-band coefficients ~ N(0, 0.5).
// GS2: as GS1 plus out-of-band coefficients ~ N(0, 5e-3).
// `bandwidth` overrides the model default (10 for GS1/GS2, 40 for GS3).
inline GraphSignal gen_signal(SignalModel model, const SpectralBasis& basis,
                              std::uint64_t seed,
                              std::optional<Index> bandwidth = std::nullopt) {
  const Index n = basis.size();
  const Index k = bandwidth.value_or(default_bandwidth(model));
  if (k < 1 || k > n) {
    throw InvalidArgument(to_string(model) + " needs n >= " + std::to_string(k));
  }
  Rng rng(seed);
  Vector spectrum = Vector::Zero(n);
  for (Index i = 0; i < k; ++i) spectrum(i) = rng.normal(0.0, kInbandVariance);
  if (model == SignalModel::kGS2) {
    for (Index i = k; i < n; ++i) spectrum(i) = rng.normal(0.0, kOutOfBandVariance);
  }
  GraphSignal signal;
  signal.values = igft(basis, spectrum);
  signal.spectrum = std::move(spectrum);
  signal.bandwidth = k;
  return signal;
}

struct Observation {
  IndexList sample_indices;
  Vector values;
  double noise_variance = 0.0;
};

// y_S = x_S + i.i.d. N(0, noise_variance), drawn in sample order.
inline Observation observe(const GraphSignal& signal, std::span<const Index> indices,
                           double noise_variance, std::uint64_t seed) {
  check_index_set(indices, signal.values.size());
  if (!(noise_variance >= 0.0)) throw InvalidArgument("noise variance must be >= 0");
  Observation obs;
  obs.sample_indices.assign(indices.begin(), indices.end());
  obs.noise_variance = noise_variance;
  obs.values.resize(static_cast<Index>(indices.size()));
  Rng rng(seed);
  for (std::size_t s = 0; s < indices.size(); ++s) {
    obs.values(static_cast<Index>(s)) = signal.values(indices[s]);
    if (noise_variance > 0.0) obs.values(static_cast<Index>(s)) += rng.normal(0.0, noise_variance);
  }
  return obs;
}

// p_i = |v_{i,:K}|^2 / K; sums to one.
inline Vector leverage_scores(const SpectralBasis& basis, Index bandwidth) {
  const Matrix vk = basis.lowpass(bandwidth);
  return vk.rowwise().squaredNorm() / static_cast<double>(bandwidth);
}

inline void write_signal_csv(const Vector& values, std::ostream& out) {
  out << "value\n";
  for (Index i = 0; i < values.size(); ++i) out << format_double(values(i)) << '\n';
}

inline Vector read_signal_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.substr(0, 5) != "value") {
    throw ParseError("expected header 'value'", 1);
  }
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(line, &used));
      if (line.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + line + "'", line_no);
    }
  }
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

}  // namespace gsample

#endif  // GSAMPLE_SPECTRAL_HPP_
