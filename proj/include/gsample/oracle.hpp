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

// Ground truth for small instances: exhaustive optima, relative
// suboptimality, empirical alpha-supermodularity, the greedy decay bound,
// and the matrix inequalities behind the G-optimal analysis.

#ifndef GSAMPLE_ORACLE_HPP_
#define GSAMPLE_ORACLE_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsample/core.hpp"
#include "gsample/selection.hpp"

namespace gsample {

inline constexpr double kMaxExhaustiveSubsets = 1e6;
inline constexpr Index kAlphaMaxNodes = 8;

inline double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (Index i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

struct ExhaustiveResult {
  double g_star = 0.0;
  IndexList optimal_set;  // lexicographically smallest argmin
};

// Minimum of `objective` over all size-M subsets of [0, n), enumerated in
// lexicographic order.
inline ExhaustiveResult exhaustive_optimum(const SetFunction& objective, Index n, Index budget) {
  if (budget < 0 || budget > n) throw InvalidArgument("budget must lie in [0, n]");
  if (binomial(n, budget) > kMaxExhaustiveSubsets) {
    throw InvalidArgument("exhaustive search over C(" + std::to_string(n) + ", " +
                          std::to_string(budget) + ") subsets exceeds the 1e6 guard");
  }
  IndexList s(static_cast<std::size_t>(budget));
  std::iota(s.begin(), s.end(), Index{0});
  ExhaustiveResult best{std::numeric_limits<double>::infinity(), s};
  bool first = true;
  while (true) {
    const double v = objective(s);
    if (first || v < best.g_star) {
      best = {v, s};
      first = false;
    }
    // Next combination.
    Index i = budget - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - budget + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (Index k = i + 1; k < budget; ++k) {
      s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  return best;
}

struct SuboptimalityReport {
  double g_hat = 0.0;
  double g_star = 0.0;
  double g_empty = 0.0;
  double r = 0.0;
  IndexList optimal_set;
};

// r = (g(S_hat) - g*) / (g(empty) - g*).
inline SuboptimalityReport relative_suboptimality(const SetFunction& objective,
                                                  std::span<const Index> candidate, Index n,
                                                  Index budget) {
  if (static_cast<Index>(candidate.size()) != budget) {
    throw InvalidArgument("candidate set size must equal the budget");
  }
  check_index_set(candidate, n);
  const auto opt = exhaustive_optimum(objective, n, budget);
  SuboptimalityReport rep;
  rep.g_hat = objective(candidate);
  rep.g_star = opt.g_star;
  rep.g_empty = objective({});
  rep.optimal_set = opt.optimal_set;
  const double gap = rep.g_empty - rep.g_star;
  if (!(gap > 0.0)) throw NumericalError("relative suboptimality undefined: g(empty) <= g*");
  rep.r = (rep.g_hat - rep.g_star) / gap;
  return rep;
}

struct TheoremBounds {
  double bound_g = 0.0;   // mu (2 + mu) / (1 + mu)^2, max-diagonal criterion
  double bound_tr = 0.0;  // mu^3 (2 + mu) / (1 + mu)^4, trace criterion
};

inline TheoremBounds theorem_bounds(double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be > 0");
  const double a = mu * (2.0 + mu) / ((1.0 + mu) * (1.0 + mu));
  return {a, a * mu * mu / ((1.0 + mu) * (1.0 + mu))};
}

struct AlphaReport {
  double alpha_empirical = std::numeric_limits<double>::infinity();
  double bound_g = 0.0;
  double bound_tr = 0.0;
  double mu = 0.0;
  std::int64_t evaluated = 0;  // ratios that entered the minimum
  std::int64_t skipped = 0;    // |g(B + j) - g(B)| <= 1e-14
  // Minimizing triple (A, B, j).
  IndexList witness_a;
  IndexList witness_b;
  Index witness_j = -1;
};

namespace detail {

inline IndexList mask_to_set(std::uint32_t mask) {
  IndexList s;
  for (Index i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) s.push_back(i);
  }
  return s;
}

// g on every subset of [0, n) with at most `max_size` elements.
inline std::vector<double> tabulate(const SetFunction& objective, Index n, Index max_size) {
  std::vector<double> g(std::size_t{1} << n, std::numeric_limits<double>::quiet_NaN());
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) <= max_size) g[mask] = objective(mask_to_set(mask));
  }
  return g;
}

}  // namespace detail

inline constexpr double kAlphaDegenerateDenominator = 1e-14;

// alpha = min over A subset-of B, |B| <= max_set_size, j not in B of
// [g(A + j) - g(A)] / [g(B + j) - g(B)].
inline AlphaReport empirical_alpha(const SetFunction& objective, Index n, Index max_set_size,
                                   double mu) {
  if (n < 1 || n > kAlphaMaxNodes) {
    throw InvalidArgument("empirical_alpha is limited to 1 <= n <= 8");
  }
  if (max_set_size < 0 || max_set_size >= n) {
    throw InvalidArgument("max_set_size must lie in [0, n - 1]");
  }
  const auto bounds = theorem_bounds(mu);
  AlphaReport rep;
  rep.bound_g = bounds.bound_g;
  rep.bound_tr = bounds.bound_tr;
  rep.mu = mu;
  const auto g = detail::tabulate(objective, n, max_set_size + 1);
  std::uint32_t best_a = 0;
  std::uint32_t best_b = 0;
  for (std::uint32_t b = 0; b < (1U << n); ++b) {
    if (std::popcount(b) > max_set_size) continue;
    for (Index j = 0; j < n; ++j) {
      const std::uint32_t bit = 1U << j;
      if (b & bit) continue;
      const double den = g[b | bit] - g[b];
      // Submasks of b, including b itself and the empty set.
      for (std::uint32_t a = b;; a = (a - 1) & b) {
        if (std::abs(den) <= kAlphaDegenerateDenominator) {
          ++rep.skipped;
        } else {
          ++rep.evaluated;
          const double ratio = (g[a | bit] - g[a]) / den;
          if (ratio < rep.alpha_empirical) {
            rep.alpha_empirical = ratio;
            best_a = a;
            best_b = b;
            rep.witness_j = j;
          }
        }
        if (a == 0) break;
      }
    }
  }
  if (rep.evaluated == 0) throw NumericalError("empirical_alpha: every denominator is degenerate");
  rep.witness_a = detail::mask_to_set(best_a);
  rep.witness_b = detail::mask_to_set(best_b);
  return rep;
}

struct MonotonicityReport {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  double worst_increase = -std::numeric_limits<double>::infinity();
};

// Checks g(S + j) <= g(S) (1 + rel_tol) for every |S| <= max_set_size, j not in S.
inline MonotonicityReport monotonicity_check(const SetFunction& objective, Index n,
                                             Index max_set_size, double rel_tol = 1e-12) {
  if (n < 1 || n > kAlphaMaxNodes) throw InvalidArgument("monotonicity_check is limited to n <= 8");
  if (max_set_size < 0 || max_set_size >= n) {
    throw InvalidArgument("max_set_size must lie in [0, n - 1]");
  }
  const auto g = detail::tabulate(objective, n, max_set_size + 1);
  MonotonicityReport rep;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) > max_set_size) continue;
    for (Index j = 0; j < n; ++j) {
      if (s & (1U << j)) continue;
      ++rep.checked;
      const double inc = g[s | (1U << j)] - g[s];
      rep.worst_increase = std::max(rep.worst_increase, inc);
      if (inc > rel_tol * std::abs(g[s])) ++rep.violations;
    }
  }
  return rep;
}

struct DecayRow {
  Index l = 0;
  double ratio = 0.0;          // (g(S_l) - g*_l) / (g(empty) - g*_l)
  double bound_product = 1.0;  // (1 - alpha/M)^l
  double bound_exp = 1.0;      // exp(-alpha l / M)
};

struct DecayReport {
  double alpha = 0.0;
  std::vector<DecayRow> rows;  // l = 0..M
  bool holds_product = true;
  bool holds_exp = true;
};

inline constexpr double kDecayTolerance = 1e-12;

// Greedy AGOD decay against the alpha-supermodular guarantee, with alpha the
// closed-form bound (or an explicit override) and an exhaustive g* per l.
inline DecayReport greedy_decay_check(const SpectralBasis& basis, Index bandwidth, double mu,
                                      Index budget, std::optional<double> alpha = std::nullopt) {
  const Matrix vk = basis.lowpass(bandwidth);
  const Index n = basis.size();
  const SetFunction g = [&](std::span<const Index> s) { return objective_agod(s, vk, mu); };
  const auto greedy = greedy_agod(basis, bandwidth, mu, budget);
  DecayReport rep;
  rep.alpha = alpha.value_or(theorem_bounds(mu).bound_g);
  const double g_empty = g({});
  const double m = static_cast<double>(budget);
  for (Index l = 0; l <= budget; ++l) {
    DecayRow row;
    row.l = l;
    row.bound_product = std::pow(1.0 - rep.alpha / m, static_cast<double>(l));
    row.bound_exp = std::exp(-rep.alpha * static_cast<double>(l) / m);
    if (l == 0) {
      row.ratio = 1.0;
    } else {
      const std::span<const Index> prefix(greedy.indices.data(), static_cast<std::size_t>(l));
      const double g_star = exhaustive_optimum(g, n, l).g_star;
      row.ratio = (g(prefix) - g_star) / (g_empty - g_star);
    }
    rep.holds_product = rep.holds_product && row.ratio <= row.bound_product + kDecayTolerance &&
                        row.bound_product <= row.bound_exp + kDecayTolerance;
    rep.holds_exp = rep.holds_exp && row.ratio <= row.bound_exp + kDecayTolerance;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Matrix inequalities.

// For positive definite C: max diag >= geometric mean of the diagonal >=
// geometric mean of the eigenvalues (Hadamard). Values are returned so the
// caller can check the chain with its own tolerance.
struct DiagonalChain {
  double max_diag = 0.0;
  double geo_mean_diag = 0.0;
  double geo_mean_eig = 0.0;
};

inline DiagonalChain diagonal_chain(const Matrix& c) {
  const double k = static_cast<double>(c.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(c, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0) throw InvalidArgument("matrix is not positive definite");
  return {max_diag(c), std::exp(c.diagonal().array().log().sum() / k),
          std::exp(eig.eigenvalues().array().log().sum() / k)};
}

// -d(B - A) <= d(A) - d(B) <= d(A - B), d = max diag.
struct MaxDiagDifference {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
};

inline MaxDiagDifference max_diag_difference(const Matrix& a, const Matrix& b) {
  return {-max_diag(b - a), max_diag(a) - max_diag(b), max_diag(a - b)};
}

// Largest gap between the nonzero eigenvalues of C^T C and those of C C^T
// (both sorted descending, the min(rows, cols) largest compared), plus the
// largest magnitude among the surplus eigenvalues of the bigger product,
// which must vanish.
struct SharedSpectrum {
  double max_gap = 0.0;
  double surplus = 0.0;
  double scale = 0.0;  // largest eigenvalue, for relative tolerances
};

inline SharedSpectrum shared_spectrum(const Matrix& c) {
  Eigen::SelfAdjointEigenSolver<Matrix> left(c.transpose() * c, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> right(c * c.transpose(), Eigen::EigenvaluesOnly);
  Vector l = left.eigenvalues().reverse();
  Vector r = right.eigenvalues().reverse();
  if (l.size() > r.size()) std::swap(l, r);
  SharedSpectrum out;
  out.scale = r.size() > 0 ? std::max(std::abs(r(0)), 1.0) : 1.0;
  for (Index i = 0; i < l.size(); ++i) out.max_gap = std::max(out.max_gap, std::abs(l(i) - r(i)));
  for (Index i = l.size(); i < r.size(); ++i) out.surplus = std::max(out.surplus, std::abs(r(i)));
  return out;
}

}  // namespace gsample

#endif  // GSAMPLE_ORACLE_HPP_
