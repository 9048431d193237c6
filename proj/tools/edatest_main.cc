// Copyright 2026 The edatest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, model, deps, enum, exec.
//
// Exit codes: 0 success, 1 usage or parse error, 2 time budget expired with
// a partial result.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "edatest/app_spec.h"
#include "edatest/campaign.h"
#include "edatest/depend.h"
#include "edatest/engine.h"
#include "edatest/genseq.h"
#include "edatest/model.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;

struct BuildFlags {
  std::string strategy = "random";
  std::string abstraction = "coarse";
};

void add_build_flags(CLI::App* cmd, edatest::BuildConfig& cfg, BuildFlags& flags) {
  cmd->add_option("--max-length", cfg.max_length, "Events per construction run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--restarts", cfg.restarts, "Construction runs")->check(CLI::PositiveNumber);
  cmd->add_option("--strategy", flags.strategy, "Event selection strategy")
      ->check(CLI::IsMember({"random", "weighted"}));
  cmd->add_option("--abstraction", flags.abstraction, "State abstraction")
      ->check(CLI::IsMember({"coarse", "fine"}));
  cmd->add_option("--alpha", cfg.alpha, "Weight of dependent events")->check(CLI::NonNegativeNumber);
  cmd->add_option("--beta", cfg.beta, "Weight of independent events")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", cfg.seed, "Random seed");
}

void apply_build_flags(edatest::BuildConfig& cfg, const BuildFlags& flags) {
  cfg.strategy = *edatest::parse_strategy(flags.strategy);
  cfg.abstraction = *edatest::parse_abstraction(flags.abstraction);
}

std::shared_ptr<const edatest::AppSpec> load(const std::string& path) {
  return std::make_shared<const edatest::AppSpec>(edatest::parse_file(path));
}

std::string ratio_line(const char* label, const edatest::CoverageReport& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %zu/%zu %.4f", label, c.covered.size(), c.total, c.ratio);
  return buf;
}

int cmd_run(const std::string& path, edatest::CampaignConfig cfg, const BuildFlags& flags,
            const std::string& generator, double budget, bool budget_set) {
  apply_build_flags(cfg.build, flags);
  cfg.generator = *edatest::parse_generator(generator);
  if (budget_set) cfg.time_budget_seconds = budget;
  const auto report = edatest::run_campaign(load(path), cfg);
  std::cout << "app " << report.app << "\n";
  std::cout << "states " << report.model_states << "\n";
  std::cout << "transitions " << report.model_transitions << "\n";
  std::cout << "sequences " << report.sequences.size() << " executed " << report.per_sequence.size()
            << "\n";
  std::cout << ratio_line("construction", report.construction) << "\n";
  std::cout << ratio_line("execution", report.execution) << "\n";
  std::cout << ratio_line("aggregated", report.aggregated) << "\n";
  std::cout << "findings " << report.findings.size() << "\n";
  if (report.partial) {
    std::cout << "partial true\n";
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_model(const std::string& path, edatest::BuildConfig cfg, const BuildFlags& flags,
              const std::string& dot_path) {
  apply_build_flags(cfg, flags);
  auto spec = load(path);
  const auto rel = edatest::analyze(*spec);
  const auto built = edatest::build_model(spec, rel, cfg);
  std::set<std::string> labels;
  for (const auto& t : built.fsm.transitions()) labels.insert(built.fsm.event_name(t.event));
  std::string joined;
  for (const auto& l : labels) joined += (joined.empty() ? "" : ",") + l;
  const std::string dot = edatest::export_dot(built.fsm);
  if (dot_path.empty()) {
    std::cout << dot;
  } else {
    edatest::write_text_file(dot_path, dot);
  }
  std::cout << "states " << built.fsm.states().size() << "\n";
  std::cout << "transitions " << built.fsm.transitions().size() << "\n";
  std::cout << "labels " << joined << "\n";
  return kExitOk;
}

int cmd_deps(const std::string& path) {
  const auto spec = load(path);
  for (const auto& [a, b] : edatest::analyze(*spec).dependent_pairs()) {
    std::cout << a << " -> " << b << "\n";
  }
  return kExitOk;
}

int cmd_enum(const std::string& path, int depth) {
  std::cout << edatest::enumerate_all(load(path), depth).count << "\n";
  return kExitOk;
}

int cmd_exec(const std::string& path, const std::string& seq_file, std::uint64_t seed) {
  auto spec = load(path);
  const auto sequences = edatest::read_sequence_file(seq_file, *spec);
  const auto stats = edatest::execute_all(spec, sequences, seed);
  std::vector<std::string> names;
  for (const auto& e : spec->events) names.push_back(e.name);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    std::cout << "sequence " << i << " " << edatest::format_sequence(names, sequences[i].events)
              << " fired " << stats[i].fired << " skipped " << stats[i].skipped << " covered "
              << stats[i].covered.size() << "/" << spec->statement_count() << "\n";
    for (const auto& f : stats[i].findings) {
      std::cout << "  finding " << spec->event_name(f.fault.event) << " at "
                << edatest::to_string(f.fault.statement) << ": " << f.fault.message << "\n";
    }
  }
  const auto total = edatest::make_coverage_report(*spec, edatest::union_coverage(*spec, stats));
  std::cout << ratio_line("coverage", total) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-based test generation for event-driven apps"};
  app.require_subcommand(1);

  std::string run_path, model_path, deps_path, enum_path, exec_path;

  edatest::CampaignConfig run_cfg;
  BuildFlags run_flags;
  std::string generator = "long";
  double budget = 0.0;
  auto* run = app.add_subcommand("run", "Build a model, generate and execute sequences");
  run->add_option("app", run_path, "Application file (.eda)")->required()->check(CLI::ExistingFile);
  add_build_flags(run, run_cfg.build, run_flags);
  run->add_option("--gen", generator, "Sequence generator")->check(CLI::IsMember({"long", "por"}));
  run->add_option("--por-depth", run_cfg.por_depth, "Depth of partial-order generation")
      ->check(CLI::PositiveNumber);
  run->add_option("--sequences", run_cfg.num_sequences, "Number of long sequences")
      ->check(CLI::PositiveNumber);
  auto* budget_opt = run->add_option("--time-budget", budget, "Seconds before stopping")
                         ->check(CLI::NonNegativeNumber);
  run->add_option("--jobs", run_cfg.jobs, "Parallel executors")->check(CLI::PositiveNumber);
  run->add_option("--report", run_cfg.report_path, "Write the JSON report here");
  run->add_option("--dot", run_cfg.dot_path, "Write the model as DOT here");
  run->add_flag("--timings", run_cfg.include_timings, "Include wall-clock timings in the report");

  edatest::BuildConfig model_cfg;
  BuildFlags model_flags;
  std::string model_dot;
  auto* model = app.add_subcommand("model", "Build the model and print it as DOT");
  model->add_option("app", model_path, "Application file (.eda)")->required()->check(CLI::ExistingFile);
  add_build_flags(model, model_cfg, model_flags);
  model->add_option("--dot", model_dot, "Write DOT here instead of stdout");

  auto* deps = app.add_subcommand("deps", "Print the dependency relation");
  deps->add_option("app", deps_path, "Application file (.eda)")->required()->check(CLI::ExistingFile);

  int depth = 0;
  auto* enumerate = app.add_subcommand("enum", "Count feasible event sequences up to a depth");
  enumerate->add_option("app", enum_path, "Application file (.eda)")->required()->check(CLI::ExistingFile);
  enumerate->add_option("--depth", depth, "Maximum sequence length")->required()->check(CLI::PositiveNumber);

  std::string seq_file;
  std::uint64_t exec_seed = 0;
  auto* exec = app.add_subcommand("exec", "Replay sequences from a file");
  exec->add_option("app", exec_path, "Application file (.eda)")->required()->check(CLI::ExistingFile);
  exec->add_option("--seq-file", seq_file, "Sequence file")->required()->check(CLI::ExistingFile);
  exec->add_option("--seed", exec_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_path, run_cfg, run_flags, generator, budget, budget_opt->count() > 0);
    if (*model) return cmd_model(model_path, model_cfg, model_flags, model_dot);
    if (*deps) return cmd_deps(deps_path);
    if (*enumerate) return cmd_enum(enum_path, depth);
    if (*exec) return cmd_exec(exec_path, seq_file, exec_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
