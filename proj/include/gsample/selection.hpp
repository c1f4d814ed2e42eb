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

// Sampling-set selection.
//
// The G-optimal family minimizes the largest diagonal entry of an inverse
// information matrix:
//   GOD    max diag (V_SK^T V_SK)^+
//   AGOD   max diag (V_SK^T V_SK + mu I)^{-1}
//   FAGOD  max diag (T_SS + mu I)^{-1}, T a (possibly approximate) low-pass
//          filter, so no eigenvectors are needed.
// A-, D- and E-optimal greedy selectors and two random baselines are
// provided for comparison. All greedy selectors pick
// argmin_j score(S + j) with ties going to the smallest node index.

#ifndef GSAMPLE_SELECTION_HPP_
#define GSAMPLE_SELECTION_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gsample/core.hpp"
#include "gsample/graph_io.hpp"
#include "gsample/inverse_update.hpp"
#include "gsample/rng.hpp"
#include "gsample/spectral.hpp"

namespace gsample {

// mu = 1 / (kappa0 - 1); kappa0 = 100 gives 1/99.
inline double mu_from_condition(double kappa0) {
  if (!(kappa0 > 1.0)) throw InvalidArgument("kappa0 must exceed 1");
  return 1.0 / (kappa0 - 1.0);
}

inline constexpr double kDefaultConditionNumber = 100.0;

using SetFunction = std::function<double(std::span<const Index>)>;

// ---------------------------------------------------------------------------
// From-scratch objectives. `vk` is V_K (n x K).

inline Matrix gram(const Matrix& vk, std::span<const Index> s) {
  const Matrix vsk = select_rows(vk, s);
  return vsk.transpose() * vsk;
}

inline Matrix agod_information(const Matrix& vk, std::span<const Index> s, double mu) {
  Matrix z = gram(vk, s);
  z.diagonal().array() += mu;
  return z;
}

namespace detail {

inline Matrix agod_inverse(const Matrix& vk, std::span<const Index> s, double mu) {
  if (mu < 0.0) throw InvalidArgument("mu must be >= 0");
  const Matrix z = agod_information(vk, s, mu);
  if (mu == 0.0 && numerical_rank(z) < vk.cols()) {
    throw NumericalError("V_SK^T V_SK is singular (mu = 0 needs |S| >= K and full rank)");
  }
  return spd_inverse(z);
}

}  // namespace detail

// AGOD: max diag (V_SK^T V_SK + mu I)^{-1}; mu = 0 is GOD on a full-rank set.
inline double objective_agod(std::span<const Index> s, const Matrix& vk, double mu) {
  return max_diag(detail::agod_inverse(vk, s, mu));
}

inline double objective_agod(std::span<const Index> s, const SpectralBasis& basis,
                             Index bandwidth, double mu) {
  return objective_agod(s, basis.lowpass(bandwidth), mu);
}

// Variant max diag V_K (V_SK^T V_SK + mu I)^{-1} V_K^T.
inline double objective_agod_full(std::span<const Index> s, const Matrix& vk, double mu) {
  const Matrix zinv = detail::agod_inverse(vk, s, mu);
  return (vk * zinv).cwiseProduct(vk).rowwise().sum().maxCoeff();
}

inline double objective_agod_full(std::span<const Index> s, const SpectralBasis& basis,
                                  Index bandwidth, double mu) {
  return objective_agod_full(s, basis.lowpass(bandwidth), mu);
}

// FAGOD: max diag (T_SS + mu I)^{-1}; 1/mu for the empty set.
inline double objective_fagod(std::span<const Index> s, const Matrix& filter, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("FAGOD needs mu > 0");
  if (s.empty()) return 1.0 / mu;
  Matrix m = principal_submatrix(filter, s);
  m.diagonal().array() += mu;
  return max_diag(spd_inverse(m));
}

// GOD with the pseudo-inverse for rank-deficient sets.
inline double objective_god(std::span<const Index> s, const Matrix& vk) {
  return max_diag(pseudo_inverse(gram(vk, s)));
}

// ln |V_SK^T V_SK + mu I| (maximized by D-optimal design).
inline double objective_doptimal(std::span<const Index> s, const Matrix& vk, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("D-optimal needs mu > 0");
  Eigen::LLT<Matrix> llt(agod_information(vk, s, mu));
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

// Tr (V_SK^T V_SK + mu I)^{-1} (minimized by A-optimal design).
inline double objective_aoptimal(std::span<const Index> s, const Matrix& vk, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("A-optimal needs mu > 0");
  return spd_inverse(agod_information(vk, s, mu)).trace();
}

// Smallest of the min(|S|, K) singular values of V_SK; 0 for the empty set.
inline double objective_eoptimal(std::span<const Index> s, const Matrix& vk) {
  if (s.empty()) return 0.0;
  const Matrix vsk = select_rows(vk, s);
  const Matrix small = static_cast<Index>(s.size()) < vk.cols()
                           ? Matrix(vsk * vsk.transpose())
                           : Matrix(vsk.transpose() * vsk);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(small, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
}

// ---------------------------------------------------------------------------
// Incremental objective states. score(j) is the value to minimize after
// adding j; value() is the criterion at the current set.

class AgodState {
 public:
  AgodState(Matrix vk, double mu) : vk_(std::move(vk)), mu_(mu) {
    if (!(mu_ > 0.0)) throw InvalidArgument("AGOD needs mu > 0");
    zinv_ = Matrix::Identity(vk_.cols(), vk_.cols()) / mu_;
  }

  Index candidates() const { return vk_.rows(); }
  double value() const { return max_diag(zinv_); }
  const Matrix& inverse() const { return zinv_; }

  double score(Index j) const {
    const Vector u = zinv_ * vk_.row(j).transpose();
    const double denom = 1.0 + vk_.row(j).dot(u);
    return (zinv_.diagonal().array() - u.array().square() / denom).maxCoeff();
  }

  void add(Index j) { zinv_ = update_inverse_rank_one(zinv_, vk_.row(j)); }

 private:
  Matrix vk_;
  double mu_;
  Matrix zinv_;  // (V_SK^T V_SK + mu I)^{-1}
};

class AgodFullState {
 public:
  AgodFullState(Matrix vk, double mu) : inner_(vk, mu), vk_(std::move(vk)) {}

  Index candidates() const { return vk_.rows(); }
  double value() const { return full(inner_.inverse()); }

  double score(Index j) const {
    return full(update_inverse_rank_one(inner_.inverse(), vk_.row(j)));
  }

  void add(Index j) { inner_.add(j); }

 private:
  double full(const Matrix& zinv) const {
    return (vk_ * zinv).cwiseProduct(vk_).rowwise().sum().maxCoeff();
  }

  AgodState inner_;
  Matrix vk_;
};

// FAGOD keeps (T_SS + mu I)^{-1}, which grows by one row/column per pick.
class FagodState {
 public:
  FagodState(Matrix filter, double mu) : filter_(std::move(filter)), mu_(mu) {
    if (!(mu_ > 0.0)) throw InvalidArgument("FAGOD needs mu > 0");
    if (filter_.rows() != filter_.cols()) throw InvalidArgument("filter must be square");
  }

  Index candidates() const { return filter_.rows(); }
  const Matrix& inverse() const { return minv_; }
  const IndexList& selected() const { return selected_; }

  double value() const { return selected_.empty() ? 1.0 / mu_ : max_diag(minv_); }

  double score(Index j) const {
    const Vector col = column(j);
    const Vector w = minv_ * col;
    const double schur = filter_(j, j) + mu_ - col.dot(w);
    if (!(schur > 0.0)) return std::numeric_limits<double>::infinity();
    double best = 1.0 / schur;
    for (Index i = 0; i < w.size(); ++i) {
      best = std::max(best, minv_(i, i) + w(i) * w(i) / schur);
    }
    return best;
  }

  void add(Index j) {
    minv_ = update_inverse_grow(minv_, column(j), filter_(j, j) + mu_);
    selected_.push_back(j);
  }

 private:
  Vector column(Index j) const {
    Vector col(static_cast<Index>(selected_.size()));
    for (std::size_t a = 0; a < selected_.size(); ++a) col(static_cast<Index>(a)) = filter_(selected_[a], j);
    return col;
  }

  Matrix filter_;
  double mu_;
  Matrix minv_ = Matrix(0, 0);
  IndexList selected_;
};

// GOD (mu = 0) re-evaluates the pseudo-inverse from scratch for every
// candidate; below K samples the Gram matrix is rank deficient.
class GodState {
 public:
  explicit GodState(Matrix vk) : vk_(std::move(vk)) {}

  Index candidates() const { return vk_.rows(); }
  double value() const {
    return selected_.empty() ? std::numeric_limits<double>::infinity()
                             : objective_god(selected_, vk_);
  }

  double score(Index j) const {
    IndexList s = selected_;
    s.push_back(j);
    return objective_god(s, vk_);
  }

  void add(Index j) { selected_.push_back(j); }

 private:
  Matrix vk_;
  IndexList selected_;
};

// D-optimal: maximize ln|Z|, Z = V_SK^T V_SK + mu I, via the determinant
// lemma ln|Z + v^T v| = ln|Z| + ln(1 + v Z^{-1} v^T).
class DOptimalState {
 public:
  DOptimalState(Matrix vk, double mu)
      : agod_(vk, mu), vk_(std::move(vk)),
        logdet_(static_cast<double>(vk_.cols()) * std::log(mu)) {}

  Index candidates() const { return vk_.rows(); }
  double value() const { return logdet_; }

  double score(Index j) const { return -(logdet_ + std::log1p(quad(j))); }

  void add(Index j) {
    logdet_ += std::log1p(quad(j));
    agod_.add(j);
  }

 private:
  double quad(Index j) const {
    return vk_.row(j) * agod_.inverse() * vk_.row(j).transpose();
  }

  AgodState agod_;
  Matrix vk_;
  double logdet_;
};

// A-optimal: minimize Tr Z^{-1}.
class AOptimalState {
 public:
  AOptimalState(Matrix vk, double mu) : agod_(vk, mu), vk_(std::move(vk)) {}

  Index candidates() const { return vk_.rows(); }
  double value() const { return agod_.inverse().trace(); }

  double score(Index j) const {
    const Vector u = agod_.inverse() * vk_.row(j).transpose();
    return agod_.inverse().trace() - u.squaredNorm() / (1.0 + vk_.row(j).dot(u));
  }

  void add(Index j) { agod_.add(j); }

 private:
  AgodState agod_;
  Matrix vk_;
};

// E-optimal: maximize the smallest singular value of V_SK.
class EOptimalState {
 public:
  explicit EOptimalState(Matrix vk) : vk_(std::move(vk)) {}

  Index candidates() const { return vk_.rows(); }
  double value() const { return objective_eoptimal(selected_, vk_); }

  double score(Index j) const {
    IndexList s = selected_;
    s.push_back(j);
    return -objective_eoptimal(s, vk_);
  }

  void add(Index j) { selected_.push_back(j); }

 private:
  Matrix vk_;
  IndexList selected_;
};

// ---------------------------------------------------------------------------

enum class Method {
  kGod,
  kAgod,
  kAgodFull,
  kFagod,       // approximate (Givens) filter
  kFagodExact,  // exact V_K V_K^T filter
  kDOptimal,
  kAOptimal,
  kEOptimal,
  kUniform,
  kLeverage,
};

inline std::string to_string(Method m) {
  switch (m) {
    case Method::kGod: return "god";
    case Method::kAgod: return "agod";
    case Method::kAgodFull: return "agod_full";
    case Method::kFagod: return "fagod";
    case Method::kFagodExact: return "fagod_exact";
    case Method::kDOptimal: return "doptimal";
    case Method::kAOptimal: return "aoptimal";
    case Method::kEOptimal: return "eoptimal";
    case Method::kUniform: return "uniform";
    case Method::kLeverage: return "leverage";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kGod, Method::kAgod, Method::kAgodFull, Method::kFagod,
                   Method::kFagodExact, Method::kDOptimal, Method::kAOptimal,
                   Method::kEOptimal, Method::kUniform, Method::kLeverage}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

// True for methods that never touch the eigenvectors.
inline bool is_eigendecomposition_free(Method m) {
  return m == Method::kFagod || m == Method::kUniform;
}

struct SamplingSet {
  IndexList indices;
  std::vector<double> objective_trace;  // criterion after each addition
  std::string method;
  Index bandwidth = 0;
  double mu = 0.0;
};

template <typename State>
concept ObjectiveState = requires(State s, const State cs, Index j) {
  { cs.candidates() } -> std::convertible_to<Index>;
  { cs.score(j) } -> std::convertible_to<double>;
  { cs.value() } -> std::convertible_to<double>;
  s.add(j);
};

// Greedy minimization of state.score. Deterministic: a candidate replaces
// the incumbent only on a strictly smaller score, and candidates are
// scanned in index order.
template <ObjectiveState State>
SamplingSet greedy_select(State& state, Index budget, std::string method) {
  const Index n = state.candidates();
  if (budget < 1 || budget > n) throw InvalidArgument("budget must lie in [1, n]");
  SamplingSet out;
  out.method = std::move(method);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  for (Index step = 0; step < budget; ++step) {
    Index best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      const double sc = state.score(j);
      if (best < 0 || sc < best_score) {
        best = j;
        best_score = sc;
      }
    }
    state.add(best);
    taken[static_cast<std::size_t>(best)] = true;
    out.indices.push_back(best);
    out.objective_trace.push_back(state.value());
  }
  return out;
}

inline SamplingSet greedy_agod(const SpectralBasis& basis, Index bandwidth, double mu,
                               Index budget) {
  AgodState state(basis.lowpass(bandwidth), mu);
  auto s = greedy_select(state, budget, "agod");
  s.bandwidth = bandwidth;
  s.mu = mu;
  return s;
}

inline SamplingSet greedy_god(const SpectralBasis& basis, Index bandwidth, Index budget) {
  GodState state(basis.lowpass(bandwidth));
  auto s = greedy_select(state, budget, "god");
  s.bandwidth = bandwidth;
  return s;
}

inline SamplingSet greedy_agod_full(const SpectralBasis& basis, Index bandwidth, double mu,
                                    Index budget) {
  AgodFullState state(basis.lowpass(bandwidth), mu);
  auto s = greedy_select(state, budget, "agod_full");
  s.bandwidth = bandwidth;
  s.mu = mu;
  return s;
}

inline SamplingSet greedy_fagod(const Matrix& filter, Index bandwidth, double mu,
                                Index budget, std::string method = "fagod") {
  FagodState state(filter, mu);
  auto s = greedy_select(state, budget, std::move(method));
  s.bandwidth = bandwidth;
  s.mu = mu;
  return s;
}

inline SamplingSet greedy_doptimal(const SpectralBasis& basis, Index bandwidth, double mu,
                                   Index budget) {
  DOptimalState state(basis.lowpass(bandwidth), mu);
  auto s = greedy_select(state, budget, "doptimal");
  s.bandwidth = bandwidth;
  s.mu = mu;
  return s;
}

inline SamplingSet greedy_aoptimal(const SpectralBasis& basis, Index bandwidth, double mu,
                                   Index budget) {
  AOptimalState state(basis.lowpass(bandwidth), mu);
  auto s = greedy_select(state, budget, "aoptimal");
  s.bandwidth = bandwidth;
  s.mu = mu;
  return s;
}

inline SamplingSet greedy_eoptimal(const SpectralBasis& basis, Index bandwidth, Index budget) {
  EOptimalState state(basis.lowpass(bandwidth));
  auto s = greedy_select(state, budget, "eoptimal");
  s.bandwidth = bandwidth;
  return s;
}

enum class RandomMode { kUniform, kLeverage };

// Draws `budget` distinct nodes without replacement. Leverage mode draws
// sequentially proportional to leverage scores, renormalizing over the
// remaining nodes. The objective trace holds the AGOD objective.
inline SamplingSet random_select(RandomMode mode, const SpectralBasis& basis,
                                 Index bandwidth, double mu, Index budget,
                                 std::uint64_t seed) {
  const Index n = basis.size();
  if (budget < 1 || budget > n) throw InvalidArgument("budget must lie in [1, n]");
  Rng rng(seed);
  SamplingSet out;
  out.method = mode == RandomMode::kUniform ? "uniform" : "leverage";
  out.bandwidth = bandwidth;
  out.mu = mu;
  if (mode == RandomMode::kUniform) {
    IndexList pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index k = 0; k < budget; ++k) {
      const auto pick = k + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - k)));
      std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick)]);
      out.indices.push_back(pool[static_cast<std::size_t>(k)]);
    }
  } else {
    Vector weights = leverage_scores(basis, bandwidth);
    for (Index k = 0; k < budget; ++k) {
      const double total = weights.sum();
      Index pick = -1;
      if (total > 0.0) {
        const double u = rng.uniform() * total;
        double acc = 0.0;
        for (Index i = 0; i < n; ++i) {
          if (weights(i) <= 0.0) continue;
          acc += weights(i);
          pick = i;
          if (u < acc) break;
        }
      }
      if (pick < 0) {
        // Only zero-weight nodes remain: fall back to uniform among them.
        IndexList rest;
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (Index i : out.indices) used[static_cast<std::size_t>(i)] = true;
        for (Index i = 0; i < n; ++i) {
          if (!used[static_cast<std::size_t>(i)]) rest.push_back(i);
        }
        pick = rest[static_cast<std::size_t>(rng.below(rest.size()))];
      }
      out.indices.push_back(pick);
      weights(pick) = 0.0;
    }
  }
  AgodState trace(basis.lowpass(bandwidth), mu);
  for (Index i : out.indices) {
    trace.add(i);
    out.objective_trace.push_back(trace.value());
  }
  return out;
}

inline void write_sampling_csv(const SamplingSet& s, std::ostream& out) {
  out << "step,node,objective\n";
  for (std::size_t k = 0; k < s.indices.size(); ++k) {
    out << k + 1 << ',' << s.indices[k] << ',' << format_double(s.objective_trace[k]) << '\n';
  }
}

}  // namespace gsample

#endif  // GSAMPLE_SELECTION_HPP_
