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

// Declarative Monte Carlo studies: spec-file parsing and validation, the
// seeded per-trial pipeline (graph -> signal -> select -> observe ->
// reconstruct), CSV output, and the oracle reports driven by the same specs.

#ifndef GSAMPLE_EXPERIMENT_HPP_
#define GSAMPLE_EXPERIMENT_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "gsample/core.hpp"
#include "gsample/givens.hpp"
#include "gsample/graph.hpp"
#include "gsample/graph_io.hpp"
#include "gsample/oracle.hpp"
#include "gsample/parallel.hpp"
#include "gsample/reconstruction.hpp"
#include "gsample/rng.hpp"
#include "gsample/selection.hpp"
#include "gsample/spectral.hpp"

namespace gsample {

enum class Study { kRmseVsSize, kRmseVsSnr, kRmseVsN, kObjectiveGap, kSuboptimality, kAlpha };

inline std::string to_string(Study s) {
  switch (s) {
    case Study::kRmseVsSize: return "rmse_vs_size";
    case Study::kRmseVsSnr: return "rmse_vs_snr";
    case Study::kRmseVsN: return "rmse_vs_n";
    case Study::kObjectiveGap: return "objective_gap";
    case Study::kSuboptimality: return "suboptimality";
    case Study::kAlpha: return "alpha";
  }
  return "?";
}

inline constexpr Index kDefaultNodes = 400;
inline constexpr Index kObjectiveGapNodes = 120;
inline constexpr Index kDefaultTrials = 150;
inline constexpr Index kDeskNodes = 200;
inline constexpr Index kDeskTrials = 50;
inline constexpr double kDefaultNoiseVariance = 5e-3;

struct ExperimentSpec {
  Study study = Study::kRmseVsSize;
  GraphModel graph = GraphModel::kSensor;
  Index n = kDefaultNodes;
  SignalModel signal = SignalModel::kGS1;
  std::vector<Method> methods;
  std::vector<Index> bandwidths;  // empty: signal default; several only for `alpha`
  std::vector<double> mus;        // empty: derived from kappa0; several only for `alpha`
  double kappa0 = kDefaultConditionNumber;
  std::optional<Index> rotations;  // nullopt: ceil(6 n log10 n)
  Index trials = kDefaultTrials;
  std::uint64_t seed = 1;
  std::vector<double> sweep;
  std::string output;
  double noise_variance = kDefaultNoiseVariance;
  bool blue = false;
  GraphParams graph_params;
  std::optional<Index> budget;          // M for studies that sweep something else
  std::optional<Index> max_set_size;    // alpha: |B| limit, default n - 1
  std::map<std::string, std::size_t> key_lines;  // where each key was set

  bool has(const std::string& key) const { return key_lines.count(key) != 0; }

  Index bandwidth() const {
    return bandwidths.empty() ? default_bandwidth(signal) : bandwidths.front();
  }
  double mu() const { return mus.empty() ? mu_from_condition(kappa0) : mus.front(); }
  Index rotation_budget(Index nodes) const {
    return rotations.value_or(default_rotation_budget(nodes));
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

inline double parse_double(const std::string& v, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
}

inline std::int64_t parse_int(const std::string& v, std::size_t line) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + v + "'", line);
  }
}

inline std::uint64_t parse_seed(const std::string& v, std::size_t line) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    const unsigned long long d = std::stoull(v, &pos, 0);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("expected an unsigned seed, got '" + v + "'", line);
  }
}

inline Study parse_study(const std::string& v, std::size_t line) {
  for (Study s : {Study::kRmseVsSize, Study::kRmseVsSnr, Study::kRmseVsN, Study::kObjectiveGap,
                  Study::kSuboptimality, Study::kAlpha}) {
    if (v == to_string(s)) return s;
  }
  throw ParseError("unknown study '" + v + "'", line);
}

inline GraphModel parse_graph_model(const std::string& v, std::size_t line) {
  if (v == "G1") return GraphModel::kSensor;
  if (v == "G2") return GraphModel::kErdosRenyi;
  if (v == "G3") return GraphModel::kCommunity;
  throw ParseError("unknown graph model '" + v + "' (expected G1, G2 or G3)", line);
}

inline SignalModel parse_signal_model(const std::string& v, std::size_t line) {
  if (v == "GS1") return SignalModel::kGS1;
  if (v == "GS2") return SignalModel::kGS2;
  if (v == "GS3") return SignalModel::kGS3;
  throw ParseError("unknown signal model '" + v + "' (expected GS1, GS2 or GS3)", line);
}

inline bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("expected true or false, got '" + v + "'", line);
}

}  // namespace detail

// Flat `key = value` lines; `#` starts a comment; lists are comma-separated.
// Syntax errors carry the offending line number. Semantic checks live in
// validate_spec.
inline ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = detail::trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = detail::trim(std::string_view(text).substr(0, eq));
    const std::string value = detail::trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ParseError("missing key", line);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line);
    if (spec.has(key)) {
      throw ParseError("duplicate key '" + key + "' (first set on line " +
                           std::to_string(spec.key_lines[key]) + ")",
                       line);
    }
    const auto list = detail::split_list(value);
    for (const auto& item : list) {
      if (item.empty()) throw ParseError("empty list element in '" + key + "'", line);
    }
    if (key == "study") {
      spec.study = detail::parse_study(value, line);
    } else if (key == "graph") {
      spec.graph = detail::parse_graph_model(value, line);
    } else if (key == "n") {
      spec.n = detail::parse_int(value, line);
    } else if (key == "signal") {
      spec.signal = detail::parse_signal_model(value, line);
    } else if (key == "methods") {
      for (const auto& m : list) {
        const auto method = parse_method(m);
        if (!method) throw ParseError("unknown method '" + m + "'", line);
        spec.methods.push_back(*method);
      }
    } else if (key == "K") {
      for (const auto& k : list) spec.bandwidths.push_back(detail::parse_int(k, line));
    } else if (key == "mu") {
      for (const auto& m : list) spec.mus.push_back(detail::parse_double(m, line));
    } else if (key == "kappa0") {
      spec.kappa0 = detail::parse_double(value, line);
    } else if (key == "rotations") {
      if (value != "auto") spec.rotations = detail::parse_int(value, line);
    } else if (key == "trials") {
      spec.trials = detail::parse_int(value, line);
    } else if (key == "seed") {
      spec.seed = detail::parse_seed(value, line);
    } else if (key == "sweep") {
      for (const auto& s : list) spec.sweep.push_back(detail::parse_double(s, line));
    } else if (key == "output") {
      spec.output = value;
    } else if (key == "noise_variance") {
      spec.noise_variance = detail::parse_double(value, line);
    } else if (key == "blue") {
      spec.blue = detail::parse_bool(value, line);
    } else if (key == "k_nn") {
      spec.graph_params.k_nn = detail::parse_int(value, line);
    } else if (key == "er_p") {
      spec.graph_params.er_p = detail::parse_double(value, line);
    } else if (key == "budget") {
      spec.budget = detail::parse_int(value, line);
    } else if (key == "max_set_size") {
      spec.max_set_size = detail::parse_int(value, line);
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
    spec.key_lines[key] = line;
  }
  if (!spec.has("n") && spec.study == Study::kObjectiveGap) spec.n = kObjectiveGapNodes;
  return spec;
}

inline ExperimentSpec parse_spec_string(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

inline ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file " + path);
  return parse_spec(in);
}

// Desk preset: n = 200 and 50 trials unless the spec sets them.
inline void apply_desk_preset(ExperimentSpec& spec) {
  if (!spec.has("n")) spec.n = kDeskNodes;
  if (!spec.has("trials")) spec.trials = kDeskTrials;
}

namespace detail {

inline bool is_integral(double v) { return std::floor(v) == v; }

// Validation failure anchored to the line that set `key` (line 0 if unset).
[[noreturn]] inline void reject(const ExperimentSpec& spec, const std::string& key,
                                const std::string& message) {
  const auto it = spec.key_lines.find(key);
  throw ParseError(key + ": " + message, it == spec.key_lines.end() ? 0 : it->second);
}

}  // namespace detail

// Semantic checks. Every failure is a ParseError naming the key and the line
// where it was set.
inline void validate_spec(const ExperimentSpec& spec) {
  using detail::reject;
  const bool alpha = spec.study == Study::kAlpha;
  const bool n_swept = spec.study == Study::kRmseVsN;
  if (!spec.has("study")) reject(spec, "study", "required");
  if (spec.trials < 1) reject(spec, "trials", "must be >= 1");
  if (spec.kappa0 <= 1.0) reject(spec, "kappa0", "must be > 1");
  if (spec.has("mu") && spec.has("kappa0")) reject(spec, "mu", "set either mu or kappa0, not both");
  for (double m : spec.mus) {
    if (!(m > 0.0)) reject(spec, "mu", "must be > 0");
  }
  if (!alpha && spec.mus.size() > 1) reject(spec, "mu", "a list is only allowed for study alpha");
  if (!alpha && spec.bandwidths.size() > 1) {
    reject(spec, "K", "a list is only allowed for study alpha");
  }
  if (spec.rotations && *spec.rotations < 0) reject(spec, "rotations", "must be >= 0 or auto");
  if (!(spec.noise_variance >= 0.0)) reject(spec, "noise_variance", "must be >= 0");
  if (spec.graph_params.k_nn < 1) reject(spec, "k_nn", "must be >= 1");
  if (!(spec.graph_params.er_p > 0.0 && spec.graph_params.er_p <= 1.0)) {
    reject(spec, "er_p", "must lie in (0, 1]");
  }
  if (spec.budget && *spec.budget < 1) reject(spec, "budget", "must be >= 1");

  // Node counts the study will touch.
  std::vector<Index> node_counts;
  if (n_swept) {
    for (double v : spec.sweep) {
      if (!detail::is_integral(v) || v < 2) reject(spec, "sweep", "node counts must be integers >= 2");
      node_counts.push_back(static_cast<Index>(v));
    }
  } else {
    if (spec.n < 2) reject(spec, "n", "must be >= 2");
    node_counts.push_back(spec.n);
  }
  for (Index nodes : node_counts) {
    const std::string where = n_swept ? "sweep" : "n";
    if (spec.graph == GraphModel::kSensor && nodes < spec.graph_params.k_nn + 1) {
      reject(spec, where, "G1 needs n >= k_nn + 1");
    }
    if (spec.graph == GraphModel::kCommunity && nodes < 8) reject(spec, where, "G3 needs n >= 8");
    const bool uses_signal = spec.study == Study::kRmseVsSize || spec.study == Study::kRmseVsSnr ||
                             spec.study == Study::kRmseVsN;
    if (uses_signal && nodes < default_bandwidth(spec.signal)) {
      reject(spec, where, to_string(spec.signal) + " needs n >= " +
                              std::to_string(default_bandwidth(spec.signal)));
    }
    for (Index k : spec.bandwidths) {
      if (k < 1 || k > nodes) reject(spec, "K", "must lie in [1, n]");
    }
    if (spec.bandwidths.empty() && spec.bandwidth() > nodes) reject(spec, where, "K exceeds n");
    if (spec.budget && *spec.budget > nodes) reject(spec, "budget", "exceeds n");
  }

  if (alpha) {
    if (spec.n > kAlphaMaxNodes) reject(spec, "n", "study alpha is limited to n <= 8");
    if (spec.max_set_size && (*spec.max_set_size < 0 || *spec.max_set_size >= spec.n)) {
      reject(spec, "max_set_size", "must lie in [0, n - 1]");
    }
    return;
  }
  if (spec.methods.empty() && spec.study != Study::kObjectiveGap) {
    reject(spec, "methods", "at least one method is required");
  }
  std::set<Method> seen;
  for (Method m : spec.methods) {
    if (!seen.insert(m).second) reject(spec, "methods", "duplicate method " + to_string(m));
  }
  if (spec.sweep.empty()) reject(spec, "sweep", "must be nonempty");
  std::set<double> distinct(spec.sweep.begin(), spec.sweep.end());
  if (distinct.size() != spec.sweep.size()) reject(spec, "sweep", "values must be distinct");
  if (spec.study == Study::kRmseVsSize || spec.study == Study::kObjectiveGap ||
      spec.study == Study::kSuboptimality) {
    for (double v : spec.sweep) {
      if (!detail::is_integral(v) || v < 1 || v > static_cast<double>(spec.n)) {
        reject(spec, "sweep", "sample sizes must be integers in [1, n]");
      }
    }
  }
  if (spec.study == Study::kSuboptimality) {
    for (double v : spec.sweep) {
      if (binomial(spec.n, static_cast<Index>(v)) > kMaxExhaustiveSubsets) {
        reject(spec, "sweep", "exhaustive search guard: C(n, M) must be <= 1e6");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Results.

struct ResultRow {
  std::string method;
  std::size_t method_order = 0;
  std::size_t sweep_index = 0;
  double sweep = 0.0;
  Index trial = 0;
  double value = 0.0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  std::string study;
  std::string graph;
  std::string signal;
  std::vector<ResultRow> rows;
};

inline constexpr std::string_view kResultHeader =
    "study,graph,signal,method,sweep,trial,value,wall_ms,seed";

// With include_wall = false the wall_ms column is left empty, which makes
// runs byte-comparable.
inline void write_result_csv(const ExperimentResult& r, std::ostream& out,
                             bool include_wall = true) {
  out << kResultHeader << '\n';
  for (const auto& row : r.rows) {
    out << r.study << ',' << r.graph << ',' << r.signal << ',' << row.method << ','
        << format_double(row.sweep) << ',' << row.trial << ',' << format_double(row.value) << ',';
    if (include_wall) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", row.wall_ms);
      out << buf;
    }
    out << ',' << row.seed << '\n';
  }
}

inline std::uint64_t trial_seed(const ExperimentSpec& spec, Index trial) {
  return derive_seed(spec.seed, to_string(spec.study), trial);
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Everything a trial needs about one graph.
struct Instance {
  Index n = 0;
  Laplacian lap;
  SpectralBasis basis;
  double eig_ms = 0.0;
  std::optional<Matrix> approx_filter;
  double givens_ms = 0.0;
  std::optional<Matrix> exact_filter;
  double exact_filter_ms = 0.0;
};

inline Instance make_instance(const ExperimentSpec& spec, Index n, std::uint64_t tseed,
                              const std::vector<Method>& methods) {
  Instance inst;
  inst.n = n;
  inst.lap = build_laplacian(generate_graph(spec.graph, n, derive_seed(tseed, "graph", n),
                                            spec.graph_params));
  auto t0 = Clock::now();
  inst.basis = eigendecompose(inst.lap);
  inst.eig_ms = elapsed_ms(t0);
  const Index k = spec.bandwidth();
  for (Method m : methods) {
    if (m == Method::kFagod && !inst.approx_filter) {
      t0 = Clock::now();
      inst.approx_filter = approximate_lowpass(inst.lap, k, spec.rotation_budget(n)).filter;
      inst.givens_ms = elapsed_ms(t0);
    }
    if (m == Method::kFagodExact && !inst.exact_filter) {
      t0 = Clock::now();
      inst.exact_filter = exact_lowpass(inst.basis, k);
      inst.exact_filter_ms = elapsed_ms(t0) + inst.eig_ms;
    }
  }
  return inst;
}

// Time spent building what the method consumes (filter or eigenbasis).
inline double setup_ms(const Instance& inst, Method m) {
  if (m == Method::kFagod) return inst.givens_ms;
  if (m == Method::kFagodExact) return inst.exact_filter_ms;
  if (m == Method::kUniform) return 0.0;
  return inst.eig_ms;
}

inline SamplingSet select(Method m, const Instance& inst, Index k, double mu, Index budget,
                          std::uint64_t seed) {
  switch (m) {
    case Method::kGod: return greedy_god(inst.basis, k, budget);
    case Method::kAgod: return greedy_agod(inst.basis, k, mu, budget);
    case Method::kAgodFull: return greedy_agod_full(inst.basis, k, mu, budget);
    case Method::kFagod: return greedy_fagod(*inst.approx_filter, k, mu, budget, "fagod");
    case Method::kFagodExact:
      return greedy_fagod(*inst.exact_filter, k, mu, budget, "fagod_exact");
    case Method::kDOptimal: return greedy_doptimal(inst.basis, k, mu, budget);
    case Method::kAOptimal: return greedy_aoptimal(inst.basis, k, mu, budget);
    case Method::kEOptimal: return greedy_eoptimal(inst.basis, k, budget);
    case Method::kUniform: return random_select(RandomMode::kUniform, inst.basis, k, mu, budget, seed);
    case Method::kLeverage:
      return random_select(RandomMode::kLeverage, inst.basis, k, mu, budget, seed);
  }
  throw InvalidArgument("unknown method");
}

// FAGOD variants reconstruct through their filter; the rest use the biased
// estimator, or BLUE when requested and |S| >= K.
inline Reconstruction reconstruct(Method m, const Instance& inst, const Observation& obs,
                                  Index k, double mu, bool blue) {
  if (blue && static_cast<Index>(obs.sample_indices.size()) >= k) {
    return blue_reconstruct(obs, inst.basis, k);
  }
  if (m == Method::kFagod) return filter_reconstruct(obs, *inst.approx_filter, mu);
  if (m == Method::kFagodExact) return filter_reconstruct(obs, *inst.exact_filter, mu);
  return biased_reconstruct(obs, inst.basis, k, mu);
}

template <typename Fn>
auto with_context(Index trial, double sweep, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw Error("trial " + std::to_string(trial) + ", sweep " + format_double(sweep) + ": " +
                e.what());
  }
}

inline std::vector<ResultRow> rmse_trial(const ExperimentSpec& spec, Index trial,
                                         std::uint64_t tseed) {
  std::vector<ResultRow> rows;
  const Index k = spec.bandwidth();
  const double mu = spec.mu();
  std::optional<Instance> shared;
  std::optional<GraphSignal> shared_signal;
  for (std::size_t si = 0; si < spec.sweep.size(); ++si) {
    const double sv = spec.sweep[si];
    with_context(trial, sv, [&] {
      Index n = spec.n;
      Index budget = spec.budget.value_or(k);
      double noise = spec.noise_variance;
      switch (spec.study) {
        case Study::kRmseVsSize: budget = static_cast<Index>(sv); break;
        case Study::kRmseVsSnr: noise = snr_to_sigma2(sv); break;
        case Study::kRmseVsN: n = static_cast<Index>(sv); break;
        default: throw InvalidArgument("not an RMSE study");
      }
      // One graph per (n, trial): rebuilt only when the sweep changes n.
      if (!shared || shared->n != n) {
        shared = make_instance(spec, n, tseed, spec.methods);
        shared_signal = gen_signal(spec.signal, shared->basis, derive_seed(tseed, "signal", n));
      }
      const Instance& inst = *shared;
      if (budget > n) throw InvalidArgument("sample size exceeds n");
      for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
        const Method m = spec.methods[mi];
        const auto t0 = Clock::now();
        const auto set = select(m, inst, k, mu, budget,
                                derive_seed(tseed, "select", to_string(m), sv));
        const auto obs = observe(*shared_signal, set.indices, noise,
                                 derive_seed(tseed, "noise", sv));
        const auto rec = reconstruct(m, inst, obs, k, mu, spec.blue);
        const double ms = elapsed_ms(t0) + setup_ms(inst, m);
        rows.push_back({to_string(m), mi, si, sv, trial, rmse(rec.values, shared_signal->values), ms,
                        tseed});
      }
      return 0;
    });
  }
  return rows;
}

inline constexpr double kTraceTolerance = 1e-12;

inline void check_nonincreasing(const std::vector<double>& values, const std::string& curve) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + kTraceTolerance * std::abs(values[i - 1])) {
      throw NumericalError(curve + " trace increased between sweep points " + std::to_string(i - 1) +
                           " and " + std::to_string(i));
    }
  }
}

// Three curves over M: G-G (AGOD objective at the AGOD set), G-D and D-D
// ((1/K) ln det of the regularized inverse at the AGOD and D-optimal sets).
inline std::vector<ResultRow> objective_gap_trial(const ExperimentSpec& spec, Index trial,
                                                  std::uint64_t tseed) {
  const Index k = spec.bandwidth();
  const double mu = spec.mu();
  const Instance inst = make_instance(spec, spec.n, tseed, {});
  const Matrix vk = inst.basis.lowpass(k);
  std::vector<double> gg, gd, dd;
  std::vector<ResultRow> rows;
  for (std::size_t si = 0; si < spec.sweep.size(); ++si) {
    const double sv = spec.sweep[si];
    with_context(trial, sv, [&] {
      const auto budget = static_cast<Index>(sv);
      auto t0 = Clock::now();
      const auto g_set = greedy_agod(inst.basis, k, mu, budget);
      const double g_ms = elapsed_ms(t0) + inst.eig_ms;
      t0 = Clock::now();
      const auto d_set = greedy_doptimal(inst.basis, k, mu, budget);
      const double d_ms = elapsed_ms(t0) + inst.eig_ms;
      const double kk = static_cast<double>(k);
      gg.push_back(objective_agod(g_set.indices, vk, mu));
      gd.push_back(-objective_doptimal(g_set.indices, vk, mu) / kk);
      dd.push_back(-objective_doptimal(d_set.indices, vk, mu) / kk);
      // ln(max diag) >= (1/K) ln det for a positive definite matrix.
      if (std::log(gg.back()) < gd.back() - 1e-9 * std::max(1.0, std::abs(gd.back()))) {
        throw NumericalError("max-diagonal / determinant chain violated");
      }
      rows.push_back({"G-G", 0, si, sv, trial, gg.back(), g_ms, tseed});
      rows.push_back({"G-D", 1, si, sv, trial, gd.back(), g_ms, tseed});
      rows.push_back({"D-D", 2, si, sv, trial, dd.back(), d_ms, tseed});
      return 0;
    });
  }
  // Sweep order need not be ascending; check monotonicity in M.
  std::vector<std::size_t> order(spec.sweep.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return spec.sweep[a] < spec.sweep[b]; });
  std::vector<double> gg_sorted, dd_sorted;
  for (auto i : order) {
    gg_sorted.push_back(gg[i]);
    dd_sorted.push_back(dd[i]);
  }
  check_nonincreasing(gg_sorted, "G-G");
  check_nonincreasing(dd_sorted, "D-D");
  return rows;
}

struct SuboptRecord {
  Index trial = 0;
  std::string method;
  std::size_t method_order = 0;
  std::size_t sweep_index = 0;
  Index budget = 0;
  SuboptimalityReport report;
  IndexList selected;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

// Relative suboptimality of each method, measured with the AGOD objective.
inline std::vector<SuboptRecord> subopt_trial(const ExperimentSpec& spec, Index trial,
                                              std::uint64_t tseed) {
  const Index k = spec.bandwidth();
  const double mu = spec.mu();
  const Instance inst = make_instance(spec, spec.n, tseed, spec.methods);
  const Matrix vk = inst.basis.lowpass(k);
  const SetFunction g = [&](std::span<const Index> s) { return objective_agod(s, vk, mu); };
  std::vector<SuboptRecord> out;
  for (std::size_t si = 0; si < spec.sweep.size(); ++si) {
    const double sv = spec.sweep[si];
    with_context(trial, sv, [&] {
      const auto budget = static_cast<Index>(sv);
      const auto opt = exhaustive_optimum(g, inst.n, budget);
      const double g_empty = g({});
      for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
        const Method m = spec.methods[mi];
        const auto t0 = Clock::now();
        const auto set = select(m, inst, k, mu, budget,
                                derive_seed(tseed, "select", to_string(m), sv));
        const double ms = elapsed_ms(t0) + setup_ms(inst, m);
        SuboptRecord rec;
        rec.trial = trial;
        rec.method = to_string(m);
        rec.method_order = mi;
        rec.sweep_index = si;
        rec.budget = budget;
        rec.report.g_hat = g(set.indices);
        rec.report.g_star = opt.g_star;
        rec.report.g_empty = g_empty;
        rec.report.optimal_set = opt.optimal_set;
        const double gap = g_empty - opt.g_star;
        if (!(gap > 0.0)) throw NumericalError("g(empty) <= g*");
        rec.report.r = (rec.report.g_hat - opt.g_star) / gap;
        rec.selected = set.indices;
        rec.wall_ms = ms;
        rec.seed = tseed;
        out.push_back(std::move(rec));
      }
      return 0;
    });
  }
  return out;
}

inline void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.method_order, a.sweep_index, a.trial) <
           std::tie(b.method_order, b.sweep_index, b.trial);
  });
}

}  // namespace detail

// Rows for a single trial from its seed alone, which is how the seed column
// reproduces a trial standalone.
inline std::vector<ResultRow> run_trial(const ExperimentSpec& spec, Index trial,
                                        std::uint64_t seed) {
  switch (spec.study) {
    case Study::kRmseVsSize:
    case Study::kRmseVsSnr:
    case Study::kRmseVsN: return detail::rmse_trial(spec, trial, seed);
    case Study::kObjectiveGap: return detail::objective_gap_trial(spec, trial, seed);
    case Study::kSuboptimality: {
      std::vector<ResultRow> rows;
      for (const auto& rec : detail::subopt_trial(spec, trial, seed)) {
        rows.push_back({rec.method, rec.method_order, rec.sweep_index,
                        static_cast<double>(rec.budget), rec.trial, rec.report.r, rec.wall_ms,
                        rec.seed});
      }
      return rows;
    }
    case Study::kAlpha: break;
  }
  throw InvalidArgument("study alpha runs through the alpha oracle, not run_experiment");
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads = 1) {
  validate_spec(spec);
  if (spec.study == Study::kAlpha) {
    throw InvalidArgument("study alpha runs through the alpha oracle, not run_experiment");
  }
  ExperimentResult result;
  result.study = to_string(spec.study);
  result.graph = to_string(spec.graph);
  result.signal = to_string(spec.signal);
  const auto per_trial = parallel_map<std::vector<ResultRow>>(
      static_cast<std::size_t>(spec.trials), threads, [&](std::size_t t) {
        const auto trial = static_cast<Index>(t);
        return run_trial(spec, trial, trial_seed(spec, trial));
      });
  for (const auto& rows : per_trial) result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  detail::sort_rows(result.rows);
  return result;
}

// Mean of `value` for one (method, sweep) cell.
inline double mean_value(const ExperimentResult& r, const std::string& method, double sweep) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : r.rows) {
    if (row.method == method && row.sweep == sweep) {
      sum += row.value;
      ++count;
    }
  }
  if (count == 0) throw InvalidArgument("no rows for " + method + " at " + format_double(sweep));
  return sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Oracle reports.

inline void write_subopt_csv(const std::vector<detail::SuboptRecord>& records, std::ostream& out) {
  auto set_string = [](const IndexList& s) {
    std::string text;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) text += ' ';
      text += std::to_string(s[i]);
    }
    return text;
  };
  out << "trial,method,M,g_hat,g_star,g_empty,r,selected,optimal,seed\n";
  for (const auto& rec : records) {
    out << rec.trial << ',' << rec.method << ',' << rec.budget << ','
        << format_double(rec.report.g_hat) << ',' << format_double(rec.report.g_star) << ','
        << format_double(rec.report.g_empty) << ',' << format_double(rec.report.r) << ','
        << set_string(rec.selected) << ',' << set_string(rec.report.optimal_set) << ','
        << rec.seed << '\n';
  }
}

inline std::vector<detail::SuboptRecord> run_subopt_report(const ExperimentSpec& spec,
                                                           unsigned threads = 1) {
  validate_spec(spec);
  if (spec.study != Study::kSuboptimality) {
    detail::reject(spec, "study", "oracle subopt needs study = suboptimality");
  }
  const auto per_trial = parallel_map<std::vector<detail::SuboptRecord>>(
      static_cast<std::size_t>(spec.trials), threads, [&](std::size_t t) {
        const auto trial = static_cast<Index>(t);
        return detail::subopt_trial(spec, trial, trial_seed(spec, trial));
      });
  std::vector<detail::SuboptRecord> out;
  for (const auto& recs : per_trial) out.insert(out.end(), recs.begin(), recs.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.method_order, a.sweep_index, a.trial) <
           std::tie(b.method_order, b.sweep_index, b.trial);
  });
  return out;
}

struct AlphaRow {
  Index instance = 0;
  Index n = 0;
  Index bandwidth = 0;
  AlphaReport alpha;
  MonotonicityReport monotone;
  bool decay_holds = false;
  std::uint64_t seed = 0;

  bool holds() const { return alpha.alpha_empirical >= alpha.bound_g - 1e-9; }
};

inline constexpr Index kDefaultDecayBudget = 3;

// One row per (instance, K, mu): empirical alpha of the AGOD objective,
// monotonicity, and the greedy decay bound at M = budget (default 3).
inline std::vector<AlphaRow> run_alpha_report(const ExperimentSpec& spec, unsigned threads = 1) {
  validate_spec(spec);
  if (spec.study != Study::kAlpha) detail::reject(spec, "study", "oracle alpha needs study = alpha");
  const std::vector<Index> ks =
      spec.bandwidths.empty() ? std::vector<Index>{1} : spec.bandwidths;
  const std::vector<double> mus =
      spec.mus.empty() ? std::vector<double>{mu_from_condition(spec.kappa0)} : spec.mus;
  const Index max_set = spec.max_set_size.value_or(spec.n - 1);
  const Index decay_budget = std::min(spec.budget.value_or(kDefaultDecayBudget), spec.n);
  const auto per_instance = parallel_map<std::vector<AlphaRow>>(
      static_cast<std::size_t>(spec.trials), threads, [&](std::size_t t) {
        const auto trial = static_cast<Index>(t);
        const std::uint64_t tseed = trial_seed(spec, trial);
        const auto inst = detail::make_instance(spec, spec.n, tseed, {});
        std::vector<AlphaRow> rows;
        for (Index k : ks) {
          const Matrix vk = inst.basis.lowpass(k);
          for (double mu : mus) {
            const SetFunction g = [&](std::span<const Index> s) {
              return objective_agod(s, vk, mu);
            };
            AlphaRow row;
            row.instance = trial;
            row.n = spec.n;
            row.bandwidth = k;
            row.alpha = empirical_alpha(g, spec.n, max_set, mu);
            row.monotone = monotonicity_check(g, spec.n, max_set);
            row.decay_holds = greedy_decay_check(inst.basis, k, mu, decay_budget).holds_exp;
            row.seed = tseed;
            rows.push_back(std::move(row));
          }
        }
        return rows;
      });
  std::vector<AlphaRow> out;
  for (const auto& rows : per_instance) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

inline void write_alpha_csv(const std::vector<AlphaRow>& rows, std::ostream& out) {
  out << "instance,n,K,mu,alpha_empirical,bound_g,bound_tr,evaluated,skipped,holds,"
         "monotone_violations,decay_holds,seed\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.bandwidth << ',' << format_double(r.alpha.mu)
        << ',' << format_double(r.alpha.alpha_empirical) << ','
        << format_double(r.alpha.bound_g) << ',' << format_double(r.alpha.bound_tr) << ','
        << r.alpha.evaluated << ',' << r.alpha.skipped << ',' << (r.holds() ? 1 : 0) << ','
        << r.monotone.violations << ',' << (r.decay_holds ? 1 : 0) << ',' << r.seed << '\n';
  }
}

}  // namespace gsample

#endif  // GSAMPLE_EXPERIMENT_HPP_
