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

// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// `--criterion N` runs only that one. Exit status is nonzero if any
// selected criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gsample/gsample.hpp"

namespace {

using namespace gsample;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

ExperimentSpec LoadBundled(const std::string& name) {
  return load_spec(std::string(GSAMPLE_SPECS_DIR) + "/" + name);
}

Matrix RandomMatrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal(0.0, 1.0);
  }
  return m;
}

Matrix RandomSpd(Rng& rng, Index k) {
  const Matrix a = RandomMatrix(rng, k, k);
  Matrix s = a.transpose() * a;
  s.diagonal().array() += 0.1 + rng.uniform();
  return s;
}

SpectralBasis SensorBasis(Index n, std::uint64_t seed) {
  return eigendecompose(build_laplacian(gen_sensor(n, 6, seed)));
}

double OffDiagonalEnergy(const Matrix& w) {
  return w.squaredNorm() - w.diagonal().squaredNorm();
}

// 1. Relative suboptimality of exact-filter FAGOD on 10-node sensor graphs.
Outcome Criterion1() {
  auto spec = LoadBundled("suboptimality_n10.spec");
  spec.methods = {Method::kFagodExact};
  const auto records = run_subopt_report(spec, resolve_thread_count(0));
  std::map<Index, std::vector<double>> by_m;
  double worst = 0.0;
  for (const auto& r : records) {
    by_m[r.budget].push_back(r.report.r);
    worst = std::max(worst, r.report.r);
  }
  bool medians_zero = true;
  std::string medians;
  for (auto& [m, rs] : by_m) {
    std::sort(rs.begin(), rs.end());
    const double median = 0.5 * (rs[(rs.size() - 1) / 2] + rs[rs.size() / 2]);
    medians_zero = medians_zero && median <= 1e-12;
    medians += Fmt(" M=%.0f:%.3g", static_cast<double>(m), median);
  }
  return {worst <= 0.05 && medians_zero && records.size() == 250,
          Fmt("%.0f records, max r = %.4g", static_cast<double>(records.size()), worst) +
              (worst <= 0.05 ? " (<= 0.05)" : " (> 0.05)") + "; median r" + medians +
              (medians_zero ? " (all 0)" : " (not all 0)")};
}

// Instances shared by criteria 2 and 3: two sensor graphs per n in {6,7,8},
// K in {1,2,3}, mu in {0.01, 0.1, 1}.
std::vector<AlphaRow> AlphaInstances() {
  static const std::vector<AlphaRow> rows = [] {
    std::vector<AlphaRow> out;
    for (Index n : {6, 7, 8}) {
      auto spec = parse_spec_string(
          "study = alpha\ngraph = G1\nK = 1, 2, 3\nmu = 0.01, 0.1, 1\ntrials = 2\nbudget = 3\n"
          "k_nn = 4\nseed = " +
          std::to_string(100 + n) + "\nn = " + std::to_string(n) + "\n");
      const auto part = run_alpha_report(spec, resolve_thread_count(0));
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }();
  return rows;
}

// 2. Empirical alpha against the closed-form bound; monotone objective.
Outcome Criterion2() {
  const auto rows = AlphaInstances();
  std::size_t holds = 0, monotone = 0;
  double worst_gap = 1e300;
  std::map<Index, std::size_t> holds_by_k, total_by_k;
  for (const auto& r : rows) {
    holds += r.holds();
    monotone += r.monotone.violations == 0;
    holds_by_k[r.bandwidth] += r.holds();
    ++total_by_k[r.bandwidth];
    worst_gap = std::min(worst_gap, r.alpha.alpha_empirical - r.alpha.bound_g);
  }
  std::string per_k;
  for (const auto& [k, total] : total_by_k) {
    per_k += Fmt(" K=%.0f:%.0f/%.0f", static_cast<double>(k), static_cast<double>(holds_by_k[k]),
                 static_cast<double>(total));
  }
  const bool pass = rows.size() >= 50 && holds == rows.size() && monotone == rows.size();
  return {pass, Fmt("%.0f instances; alpha >= bound in %.0f, monotone in %.0f", static_cast<double>(rows.size()),
                    static_cast<double>(holds), static_cast<double>(monotone)) +
                    ";" + per_k + Fmt("; min(alpha - bound_g) = %.4g", worst_gap)};
}

// 3. Greedy decay against exp(-alpha l / M), alpha = bound_g, M = 3.
Outcome Criterion3() {
  const auto rows = AlphaInstances();
  std::size_t holds = 0;
  for (const auto& r : rows) holds += r.decay_holds;
  return {holds == rows.size() && !rows.empty(),
          Fmt("decay bound holds on %.0f/%.0f instances", static_cast<double>(holds),
              static_cast<double>(rows.size()))};
}

// 4. bound_g dominates bound_tr; spot values at mu = 1.
Outcome Criterion4() {
  std::size_t ok = 0;
  for (int i = 1; i <= 100; ++i) {
    const double mu = std::pow(10.0, -3.0 + 4.0 * i / 100.0);
    const auto b = theorem_bounds(mu);
    ok += b.bound_g > b.bound_tr;
  }
  const auto one = theorem_bounds(1.0);
  const bool spot = one.bound_g == 0.75 && one.bound_tr == 0.1875;
  return {ok == 100 && spot,
          Fmt("bound_g > bound_tr on %.0f/100 grid points; mu=1 -> (%.17g, %.17g)",
              static_cast<double>(ok), one.bound_g, one.bound_tr)};
}

// 5. Incremental inverse updates against dense inversion.
Outcome Criterion5() {
  Rng rng(5);
  double worst_sm = 0.0, worst_grow = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Index k = 1 + static_cast<Index>(rng.below(12));
    const Matrix z = RandomSpd(rng, k);
    const Matrix v = RandomMatrix(rng, 1, k);
    const Matrix updated = update_inverse_rank_one(z.inverse(), v.row(0));
    const Matrix dense = (z + v.transpose() * v).inverse();
    worst_sm = std::max(worst_sm, (updated - dense).cwiseAbs().maxCoeff());

    const Matrix big = RandomSpd(rng, k + 1);
    const Matrix grown =
        update_inverse_grow(big.topLeftCorner(k, k).inverse(), big.col(k).head(k), big(k, k));
    worst_grow = std::max(worst_grow, (grown - big.inverse()).cwiseAbs().maxCoeff());
  }
  return {worst_sm <= 1e-8 && worst_grow <= 1e-8,
          Fmt("max deviation: rank-one %.3g, grow %.3g (1000 each)", worst_sm, worst_grow)};
}

// 6. Matrix inequality property suites.
Outcome Criterion6() {
  Rng rng(6);
  constexpr double kTol = 1e-9;
  std::size_t chain_bad = 0, diff_bad = 0, spectrum_bad = 0;
  for (int t = 0; t < 500; ++t) {
    const Index k = 1 + static_cast<Index>(rng.below(10));
    const auto c = diagonal_chain(RandomSpd(rng, k));
    chain_bad += !(c.max_diag >= c.geo_mean_diag * (1.0 - kTol) &&
                   c.geo_mean_diag >= c.geo_mean_eig * (1.0 - kTol));
  }
  for (int t = 0; t < 500; ++t) {
    const Index k = 1 + static_cast<Index>(rng.below(10));
    const Matrix a = RandomMatrix(rng, k, k), b = RandomMatrix(rng, k, k);
    const auto d = max_diag_difference(a + a.transpose(), b + b.transpose());
    const double scale = std::max({1.0, std::abs(d.lower), std::abs(d.upper)});
    diff_bad += !(d.lower <= d.middle + kTol * scale && d.middle <= d.upper + kTol * scale);
  }
  for (int t = 0; t < 500; ++t) {
    const Index n = 12 + static_cast<Index>(rng.below(20));
    const auto basis = SensorBasis(n, 600 + static_cast<std::uint64_t>(t));
    const Index k = 1 + static_cast<Index>(rng.below(6));
    const Index m = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    IndexList s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
      std::swap(s[static_cast<std::size_t>(i)],
                s[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    }
    s.resize(static_cast<std::size_t>(m));
    const auto sp = shared_spectrum(select_rows(basis.lowpass(k), s));
    spectrum_bad += !(sp.max_gap <= kTol * sp.scale && sp.surplus <= kTol * sp.scale);
  }
  return {chain_bad + diff_bad + spectrum_bad == 0,
          Fmt("violations over 500 each: chain %.0f, max-diag difference %.0f", static_cast<double>(chain_bad),
              static_cast<double>(diff_bad)) +
              Fmt(", shared spectrum %.0f", static_cast<double>(spectrum_bad))};
}

// 7. Greedy Jacobi rotations and the approximate low-pass filter.
Outcome Criterion7() {
  constexpr Index kN = 16, kK = 4;
  double worst_drop = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GreedyJacobi jacobi(build_laplacian(gen_sensor(kN, 6, seed)).matrix);
    for (int step = 0; step < 200; ++step) {
      const auto [p, q] = jacobi.pivot();
      const double w = jacobi.working()(p, q);
      const double before = OffDiagonalEnergy(jacobi.working());
      if (!jacobi.step()) break;
      worst_drop = std::max(worst_drop,
                            std::abs(before - OffDiagonalEnergy(jacobi.working()) - 2.0 * w * w));
    }
  }

  const Index j0 = default_rotation_budget(kN);
  const std::vector<Index> doubling = {j0 / 4, j0 / 2, j0, 2 * j0, 4 * j0};
  std::vector<double> mean_err(doubling.size(), 0.0);
  std::size_t beats_identity = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto lap = build_laplacian(gen_sensor(kN, 6, 700 + seed));
    const Matrix exact = exact_lowpass(eigendecompose(lap), kK);
    auto err = [&](Index j) { return (approximate_lowpass(lap, kK, j).filter - exact).norm(); };
    beats_identity += err(j0) < err(0);
    for (std::size_t i = 0; i < doubling.size(); ++i) mean_err[i] += err(doubling[i]) / 20.0;
  }
  bool nonincreasing = true;
  std::string trail;
  for (std::size_t i = 0; i < doubling.size(); ++i) {
    if (i > 0) nonincreasing = nonincreasing && mean_err[i] <= mean_err[i - 1] + 1e-12;
    trail += Fmt(" J=%.0f:%.3g", static_cast<double>(doubling[i]), mean_err[i]);
  }
  return {worst_drop <= 1e-10 && beats_identity == 20 && nonincreasing,
          Fmt("energy-drop error %.3g; J=%.0f beats J=0 on %.0f/20 seeds; mean error", worst_drop,
              static_cast<double>(j0), static_cast<double>(beats_identity)) +
              trail + (nonincreasing ? " (nonincreasing)" : " (increases)")};
}

// 8. Noiseless BLUE recovery and the push-through identity.
Outcome Criterion8() {
  double worst_blue = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto basis = SensorBasis(60, 800 + seed);
    const auto signal = gen_signal(SignalModel::kGS1, basis, seed);
    const auto s = greedy_agod(basis, 10, 0.01, 10);
    const auto obs = observe(signal, s.indices, 0.0, seed);
    worst_blue = std::max(worst_blue, rmse(blue_reconstruct(obs, basis, 10).values, signal.values));
  }
  Rng rng(8);
  double worst_push = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 20 + static_cast<Index>(rng.below(40));
    const auto basis = SensorBasis(n, 900 + static_cast<std::uint64_t>(t));
    const Index k = 1 + static_cast<Index>(rng.below(10));
    const Index m = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    const double mu = std::pow(10.0, -3.0 + 3.0 * rng.uniform());
    const auto signal = gen_signal(SignalModel::kGS2, basis, rng.next(), k);
    const auto s = random_select(RandomMode::kUniform, basis, k, mu, m, rng.next());
    const auto obs = observe(signal, s.indices, 5e-3, rng.next());
    const Vector a = biased_reconstruct(obs, basis, k, mu).values;
    const Vector b = filter_reconstruct(obs, exact_lowpass(basis, k), mu).values;
    worst_push = std::max(worst_push, (a - b).cwiseAbs().maxCoeff());
  }
  return {worst_blue <= 1e-9 && worst_push <= 1e-9,
          Fmt("noiseless BLUE max RMSE %.3g (20 graphs); push-through max deviation %.3g (100)",
              worst_blue, worst_push)};
}

// 9. FAGOD beats uniform sampling at M = K on 200-node sensor graphs.
Outcome Criterion9() {
  const auto spec = LoadBundled("desk_fagod_vs_uniform.spec");
  const auto result = run_experiment(spec, resolve_thread_count(0));
  const double fagod = mean_value(result, "fagod", 10);
  const double uniform = mean_value(result, "uniform", 10);
  return {fagod < uniform, Fmt("mean RMSE at M = K = 10: fagod %.4g, uniform %.4g", fagod, uniform)};
}

// 10. CLI determinism at one and at all threads.
std::string DataColumns(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line, out;
  std::getline(in, line);
  const bool has_wall = line.find("wall_ms") != std::string::npos;
  out += line + "\n";
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field;
    int col = 0;
    while (std::getline(fields, field, ',')) out += (has_wall && ++col == 8 ? "" : field) + ",";
    out += "\n";
  }
  return out;
}

Outcome Criterion10() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gsample_acceptance_10";
  fs::create_directories(dir);
  const unsigned max_threads = std::max(2u, std::thread::hardware_concurrency());
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"run", "determinism_small.spec"},
      {"oracle alpha", "alpha_small.spec"},
      {"oracle subopt", "suboptimality_n10.spec"},
  };
  std::size_t identical = 0, total = 0;
  std::string failures;
  for (const auto& [command, spec] : runs) {
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 1u, max_threads, max_threads}) {
      const fs::path out = dir / ("out_" + std::to_string(outputs.size()) + ".csv");
      const std::string cmd = std::string(GSAMPLE_CLI_PATH) + " " + command + " " +
                              GSAMPLE_SPECS_DIR + "/" + spec + " --threads " +
                              std::to_string(threads) + " --out " + out.string() + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      if (status != 0) {
        failures += " " + spec + " exited " + std::to_string(WEXITSTATUS(status)) + ";";
        outputs.push_back("<failed>");
      } else {
        outputs.push_back(DataColumns(out));
      }
    }
    for (std::size_t i = 1; i < outputs.size(); ++i) {
      ++total;
      identical += outputs[i] == outputs[0] && outputs[0] != "<failed>";
    }
  }
  fs::remove_all(dir);
  return {identical == total && failures.empty(),
          Fmt("%.0f/%.0f repeated runs byte-identical (threads 1 and %.0f)", static_cast<double>(identical),
              static_cast<double>(total), static_cast<double>(max_threads)) +
              failures};
}

const std::vector<std::function<Outcome()>> kCriteria = {
    Criterion1, Criterion2, Criterion3, Criterion4, Criterion5,
    Criterion6, Criterion7, Criterion8, Criterion9, Criterion10,
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) {
    for (int c = 1; c <= static_cast<int>(kCriteria.size()); ++c) selected.push_back(c);
  }
  bool all_pass = true;
  for (int c : selected) {
    if (c < 1 || c > static_cast<int>(kCriteria.size())) {
      std::cerr << "no criterion " << c << "\n";
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = kCriteria[static_cast<std::size_t>(c - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << c << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
              << Fmt(" [%.1f s]", secs) << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
