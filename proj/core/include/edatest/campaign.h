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

#ifndef EDATEST_CAMPAIGN_H_
#define EDATEST_CAMPAIGN_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edatest/app_spec.h"
#include "edatest/engine.h"
#include "edatest/genseq.h"
#include "edatest/model.h"

namespace edatest {

enum class Generator { kLong, kPor };

std::string_view to_string(Generator g);
std::optional<Generator> parse_generator(std::string_view s);

struct CampaignConfig {
  BuildConfig build;
  Generator generator = Generator::kLong;
  int por_depth = 4;
  int num_sequences = 10;
  std::optional<double> time_budget_seconds;
  int jobs = 1;
  std::string report_path;  // empty: no file
  std::string dot_path;     // empty: no DOT export
  bool include_timings = false;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct SequenceStats {
  std::size_t fired = 0;
  std::size_t skipped = 0;
  std::vector<std::uint32_t> covered;  // ordinals covered by this sequence, sorted
  std::vector<std::uint32_t> delta;    // ordinals newly covered in the session, sorted
  std::vector<Finding> findings;
};

// Fires `seq` in order on `session`. Events that are not enabled at their
// turn are skipped; runtime faults become findings and execution continues.
SequenceStats execute_sequence(EngineSession& session, std::span<const EventId> seq);

// Each sequence on its own fresh session seeded with `seed`; the result for
// sequence i lands in slot i regardless of `jobs`.
std::vector<SequenceStats> execute_all(const std::shared_ptr<const AppSpec>& spec,
                                       const std::vector<EventSeq>& sequences, std::uint64_t seed,
                                       int jobs = 1, const StopFn& stop = {});

// Union of the `covered` sets of `stats`, as a bitmap over statement ordinals.
std::vector<bool> union_coverage(const AppSpec& spec, std::span<const SequenceStats> stats);

struct CampaignReport {
  std::string app;
  CampaignConfig config;

  std::size_t model_states = 0;
  std::size_t model_transitions = 0;
  std::size_t model_inputs = 0;
  std::size_t build_steps = 0;
  std::size_t build_dead_ends = 0;

  std::vector<std::string> sequences;        // unique, in execution order
  std::vector<std::size_t> multiplicity;
  std::size_t sequences_generated = 0;
  std::size_t sequences_truncated = 0;
  std::vector<SequenceStats> per_sequence;   // parallel to `sequences`; may be shorter if partial

  std::vector<bool> construction_covered;
  std::vector<bool> execution_covered;
  std::vector<bool> aggregated_covered;
  CoverageReport construction;
  CoverageReport execution;
  CoverageReport aggregated;

  std::vector<Finding> findings;
  bool partial = false;

  double build_seconds = 0.0;
  double generation_seconds = 0.0;
  double execution_seconds = 0.0;

  std::string dot;  // DOT text of the model
};

class ReportWriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// analyze -> build_model -> generate -> execute. Parse errors propagate as
// ParseError; a set report_path / dot_path is written before returning.
CampaignReport run_campaign(const std::string& spec_path, const CampaignConfig& cfg);
CampaignReport run_campaign(std::shared_ptr<const AppSpec> spec, const CampaignConfig& cfg);

// Single JSON document with keys in fixed order and ratios printed with four
// decimals.
std::string report_to_json(const CampaignReport& report, const AppSpec& spec);

// Deterministic DOT digraph: nodes are named by digest prefix, the initial
// state is drawn as a double circle, parallel edges share one comma-joined
// label.
std::string export_dot(const Fsm& fsm);

// Sequence files: one sequence per line, event names joined by ';', '#'
// starts a comment, blank lines are skipped.
std::vector<EventSeq> parse_sequence_file(std::string_view text, const AppSpec& spec);
std::vector<EventSeq> read_sequence_file(const std::string& path, const AppSpec& spec);
std::string write_sequence_file(const std::vector<EventSeq>& sequences, const AppSpec& spec);

void write_text_file(const std::string& path, std::string_view text);

}  // namespace edatest

#endif  // EDATEST_CAMPAIGN_H_
