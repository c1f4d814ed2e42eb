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

// gsample: run sampling studies from spec files, validate specs, produce
// oracle reports, and generate graphs.
//
// Exit codes: 0 success, 1 invalid spec or arguments, 2 runtime failure.

#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gsample/gsample.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string spec_path;
  std::string out;
  unsigned threads = 0;
  bool desk = false;
  // graph gen
  std::string model = "G1";
  gsample::Index n = 0;
  std::uint64_t seed = 1;
  gsample::Index knn = 6;
  double p = 0.05;
};

gsample::ExperimentSpec load(const Options& o) {
  auto spec = gsample::load_spec(o.spec_path);
  if (o.desk) gsample::apply_desk_preset(spec);
  return spec;
}

// Writes to `path`, or stdout when empty.
template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw gsample::Error("cannot open output file " + path);
  write(f);
  if (!f) throw gsample::Error("failed writing " + path);
}

void write_meta(const std::string& path, const gsample::ExperimentSpec& spec, unsigned threads,
                std::size_t rows) {
  if (path.empty()) return;
  emit(path + ".meta", [&](std::ostream& out) {
    out << "rng = " << gsample::kRngName << '\n'
        << "study = " << gsample::to_string(spec.study) << '\n'
        << "seed = " << spec.seed << '\n'
        << "n = " << spec.n << '\n'
        << "trials = " << spec.trials << '\n'
        << "threads = " << threads << '\n'
        << "rows = " << rows << '\n';
  });
}

std::string output_path(const Options& o, const gsample::ExperimentSpec& spec) {
  return o.out.empty() ? spec.output : o.out;
}

int cmd_run(const Options& o) {
  const auto spec = load(o);
  const unsigned threads = gsample::resolve_thread_count(o.threads);
  const auto result = gsample::run_experiment(spec, threads);
  const auto path = output_path(o, spec);
  emit(path, [&](std::ostream& out) { gsample::write_result_csv(result, out); });
  write_meta(path, spec, threads, result.rows.size());
  std::cerr << "wrote " << result.rows.size() << " rows" << (path.empty() ? "" : " to " + path)
            << '\n';
  return kExitOk;
}

int cmd_validate(const Options& o) {
  const auto spec = load(o);
  gsample::validate_spec(spec);
  std::cout << "ok: study " << gsample::to_string(spec.study) << ", n " << spec.n << ", trials "
            << spec.trials << '\n';
  return kExitOk;
}

int cmd_alpha(const Options& o) {
  const auto spec = load(o);
  const unsigned threads = gsample::resolve_thread_count(o.threads);
  const auto rows = gsample::run_alpha_report(spec, threads);
  const auto path = output_path(o, spec);
  emit(path, [&](std::ostream& out) { gsample::write_alpha_csv(rows, out); });
  write_meta(path, spec, threads, rows.size());
  std::size_t holds = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    holds += r.holds() ? 1 : 0;
    worst = std::min(worst, r.alpha.alpha_empirical - r.alpha.bound_g);
  }
  std::cerr << holds << "/" << rows.size()
            << " instances satisfy alpha >= bound_g; min(alpha - bound_g) = " << worst << '\n';
  return kExitOk;
}

int cmd_subopt(const Options& o) {
  const auto spec = load(o);
  const unsigned threads = gsample::resolve_thread_count(o.threads);
  const auto records = gsample::run_subopt_report(spec, threads);
  const auto path = output_path(o, spec);
  emit(path, [&](std::ostream& out) { gsample::write_subopt_csv(records, out); });
  write_meta(path, spec, threads, records.size());
  double worst = 0.0;
  for (const auto& r : records) worst = std::max(worst, r.report.r);
  std::cerr << records.size() << " records; max r = " << worst << '\n';
  return kExitOk;
}

int cmd_graph_gen(const Options& o) {
  gsample::GraphModel model;
  if (o.model == "G1") {
    model = gsample::GraphModel::kSensor;
  } else if (o.model == "G2") {
    model = gsample::GraphModel::kErdosRenyi;
  } else if (o.model == "G3") {
    model = gsample::GraphModel::kCommunity;
  } else {
    throw gsample::InvalidArgument("unknown graph model '" + o.model + "'");
  }
  const auto g = gsample::generate_graph(model, o.n, o.seed, {o.knn, o.p});
  emit(o.out, [&](std::ostream& out) { gsample::write_edge_list(g, out); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph signal sampling studies"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("spec", o.spec_path, "Spec file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Output path (overrides the spec's output key)");
    cmd->add_option("--threads", o.threads, "Worker threads (default: GSAMPLE_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--desk", o.desk, "Desk preset: n = 200, trials = 50 unless set in the spec");
  };

  auto* run = app.add_subcommand("run", "Run a study and write its CSV");
  add_common(run);
  auto* validate = app.add_subcommand("validate", "Check a spec file without running it");
  add_common(validate);

  auto* oracle = app.add_subcommand("oracle", "Oracle reports");
  oracle->require_subcommand(1);
  auto* alpha = oracle->add_subcommand("alpha", "Empirical alpha, monotonicity and decay per instance");
  add_common(alpha);
  auto* subopt = oracle->add_subcommand("subopt", "Relative suboptimality against exhaustive search");
  add_common(subopt);

  auto* graph = app.add_subcommand("graph", "Graph utilities");
  graph->require_subcommand(1);
  auto* gen = graph->add_subcommand("gen", "Generate a random graph as an edge list");
  gen->add_option("--model", o.model, "G1 (sensor), G2 (Erdos-Renyi) or G3 (community)")
      ->check(CLI::IsMember({"G1", "G2", "G3"}));
  gen->add_option("--n", o.n, "Node count")->required();
  gen->add_option("--seed", o.seed, "Seed");
  gen->add_option("--knn", o.knn, "G1 neighbour count");
  gen->add_option("--p", o.p, "G2 edge probability");
  gen->add_option("--out", o.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*run) return cmd_run(o);
    if (*validate) return cmd_validate(o);
    if (*alpha) return cmd_alpha(o);
    if (*subopt) return cmd_subopt(o);
    if (*gen) return cmd_graph_gen(o);
  } catch (const gsample::ParseError& e) {
    std::cerr << "invalid spec " << o.spec_path << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const gsample::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitInvalid;
}
