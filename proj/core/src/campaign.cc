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

#include "edatest/campaign.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "edatest/depend.h"
#include "json.hpp"

namespace edatest {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string quoted(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

std::string digest_name(Digest d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%012" PRIx64, d >> 16);
  return buf;
}

std::vector<bool> bits_or(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

// Small ordered-key JSON emitter; the report's byte layout is part of its
// contract, so the output is built by hand.
class JsonOut {
 public:
  void open(char c) {
    comma();
    out_ += c;
    first_ = true;
  }
  void close(char c) {
    out_ += c;
    first_ = false;
  }
  void key(std::string_view k) {
    comma();
    out_ += quoted(k);
    out_ += ':';
    first_ = true;
  }
  void raw(std::string_view v) {
    comma();
    out_ += v;
    first_ = false;
  }
  void str(std::string_view v) { raw(quoted(v)); }
  void num(std::uint64_t v) { raw(std::to_string(v)); }
  void inum(std::int64_t v) { raw(std::to_string(v)); }
  void real(double v) { raw(fixed4(v)); }
  void boolean(bool v) { raw(v ? "true" : "false"); }

  template <typename T>
  void field(std::string_view k, const T& v) {
    key(k);
    if constexpr (std::is_same_v<T, bool>) {
      boolean(v);
    } else if constexpr (std::is_same_v<T, double>) {
      real(v);
    } else if constexpr (std::is_signed_v<T>) {
      inum(v);
    } else if constexpr (std::is_unsigned_v<T>) {
      num(v);
    } else {
      str(v);
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void comma() {
    if (!first_) out_ += ',';
    first_ = false;
  }

  std::string out_;
  bool first_ = true;
};

void write_coverage(JsonOut& j, const CoverageReport& c) {
  j.open('{');
  j.field("covered", c.covered.size());
  j.field("total", c.total);
  j.field("ratio", c.ratio);
  j.close('}');
}

void write_finding(JsonOut& j, const Finding& f, const AppSpec& spec) {
  j.open('{');
  j.field("phase", f.phase);
  j.field("event", spec.event_name(f.fault.event));
  j.field("statement", to_string(f.fault.statement));
  j.field("message", f.fault.message);
  std::vector<std::string> names;
  for (const EventDecl& e : spec.events) names.push_back(e.name);
  j.field("sequence", format_sequence(names, f.sequence));
  j.close('}');
}

}  // namespace

std::string_view to_string(Generator g) { return g == Generator::kLong ? "long" : "por"; }

std::optional<Generator> parse_generator(std::string_view s) {
  if (s == "long") return Generator::kLong;
  if (s == "por") return Generator::kPor;
  return std::nullopt;
}

void CampaignConfig::validate() const {
  build.validate();
  if (por_depth < 1) throw std::invalid_argument("por_depth must be at least 1");
  if (num_sequences < 1) throw std::invalid_argument("sequences must be at least 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (time_budget_seconds && !(*time_budget_seconds >= 0.0)) {
    throw std::invalid_argument("time budget must be non-negative");
  }
}

SequenceStats execute_sequence(EngineSession& session, std::span<const EventId> seq) {
  SequenceStats stats;
  const std::vector<bool> before = session.covered_bits();
  std::vector<bool> mine(before.size(), false);
  std::vector<EventId> fired;
  for (EventId e : seq) {
    if (!session.is_enabled(e)) {
      ++stats.skipped;
      continue;
    }
    FireResult r = session.fire(e);
    ++stats.fired;
    fired.push_back(e);
    for (std::uint32_t ord : r.executed) mine[ord] = true;
    if (r.fault) stats.findings.push_back(Finding{"execution", fired, *r.fault});
  }
  for (std::uint32_t i = 0; i < mine.size(); ++i) {
    if (!mine[i]) continue;
    stats.covered.push_back(i);
    if (!before[i]) stats.delta.push_back(i);
  }
  return stats;
}

std::vector<SequenceStats> execute_all(const std::shared_ptr<const AppSpec>& spec,
                                       const std::vector<EventSeq>& sequences, std::uint64_t seed,
                                       int jobs, const StopFn& stop) {
  std::vector<SequenceStats> results(sequences.size());
  // Indices are claimed in increasing order and a claimed index always runs
  // to completion, so the executed set is a prefix.
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stopped{false};
  auto worker = [&]() {
    for (;;) {
      if (stopped.load()) return;
      if (stop && stop()) {
        stopped.store(true);
        return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= sequences.size()) return;
      EngineSession session(spec, seed);
      results[i] = execute_sequence(session, sequences[i].events);
    }
  };
  const int n = std::max(1, jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  results.resize(std::min(next.load(), sequences.size()));
  return results;
}

std::vector<bool> union_coverage(const AppSpec& spec, std::span<const SequenceStats> stats) {
  std::vector<bool> out(spec.statement_count(), false);
  for (const SequenceStats& s : stats) {
    for (std::uint32_t i : s.covered) out[i] = true;
  }
  return out;
}

CampaignReport run_campaign(const std::string& spec_path, const CampaignConfig& cfg) {
  return run_campaign(std::make_shared<const AppSpec>(parse_file(spec_path)), cfg);
}

CampaignReport run_campaign(std::shared_ptr<const AppSpec> spec, const CampaignConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  StopFn stop;
  if (cfg.time_budget_seconds) {
    const double budget = *cfg.time_budget_seconds;
    stop = [start, budget]() { return seconds_since(start) >= budget; };
  }

  CampaignReport report;
  report.app = spec->name;
  report.config = cfg;

  const DependencyRelation rel = analyze(*spec);
  BuildResult built = build_model(spec, rel, cfg.build);
  report.build_seconds = seconds_since(start);
  report.model_states = built.fsm.states().size();
  report.model_transitions = built.fsm.transitions().size();
  report.model_inputs = built.fsm.inputs().size();
  report.build_steps = built.stats.steps;
  report.build_dead_ends = built.stats.dead_ends;
  report.findings = built.stats.findings;
  report.dot = export_dot(built.fsm);

  const auto gen_start = Clock::now();
  GeneratedSet generated;
  if (built.fsm.supp(built.fsm.initial()).empty()) {
    // Nothing is enabled at load: there is no run to generate.
  } else if (cfg.generator == Generator::kLong) {
    Rng rng(mix_seed(cfg.build.seed, 2));
    generated = gen_long(built.fsm, cfg.build.max_length, cfg.num_sequences, rng, stop);
  } else {
    generated = gen_por(built.fsm, cfg.por_depth, rel, stop);
  }
  report.generation_seconds = seconds_since(gen_start);
  report.sequences_generated = generated.generated;
  report.sequences_truncated = generated.truncated;
  for (const EventSeq& s : generated.sequences) {
    report.sequences.push_back(format_sequence(built.fsm.event_names(), s.events));
  }
  report.multiplicity = generated.multiplicity;

  const auto exec_start = Clock::now();
  report.per_sequence = execute_all(spec, generated.sequences, cfg.build.seed, cfg.jobs, stop);
  report.execution_seconds = seconds_since(exec_start);
  for (const SequenceStats& s : report.per_sequence) {
    report.findings.insert(report.findings.end(), s.findings.begin(), s.findings.end());
  }
  report.partial =
      generated.interrupted || report.per_sequence.size() < generated.sequences.size();

  report.construction_covered = built.session.covered_bits();
  report.execution_covered = union_coverage(*spec, report.per_sequence);
  report.aggregated_covered = bits_or(report.construction_covered, report.execution_covered);
  report.construction = make_coverage_report(*spec, report.construction_covered);
  report.execution = make_coverage_report(*spec, report.execution_covered);
  report.aggregated = make_coverage_report(*spec, report.aggregated_covered);

  if (!cfg.report_path.empty()) {
    try {
      write_text_file(cfg.report_path, report_to_json(report, *spec));
    } catch (const std::exception& e) {
      throw ReportWriteError(e.what());
    }
  }
  if (!cfg.dot_path.empty()) {
    try {
      write_text_file(cfg.dot_path, report.dot);
    } catch (const std::exception& e) {
      throw ReportWriteError(e.what());
    }
  }
  return report;
}

std::string report_to_json(const CampaignReport& r, const AppSpec& spec) {
  const CampaignConfig& c = r.config;
  JsonOut j;
  j.open('{');
  j.field("app", r.app);

  j.key("config");
  j.open('{');
  j.field("max_length", c.build.max_length);
  j.field("restarts", c.build.restarts);
  j.field("strategy", to_string(c.build.strategy));
  j.field("abstraction", to_string(c.build.abstraction));
  j.field("alpha", c.build.alpha);
  j.field("beta", c.build.beta);
  j.field("seed", c.build.seed);
  j.field("generator", to_string(c.generator));
  j.field("por_depth", c.por_depth);
  j.field("sequences", c.num_sequences);
  j.key("time_budget");
  if (c.time_budget_seconds) {
    j.real(*c.time_budget_seconds);
  } else {
    j.raw("null");
  }
  j.field("jobs", c.jobs);
  j.close('}');

  j.key("model");
  j.open('{');
  j.field("states", r.model_states);
  j.field("transitions", r.model_transitions);
  j.field("inputs", r.model_inputs);
  j.field("build_steps", r.build_steps);
  j.field("dead_ends", r.build_dead_ends);
  j.close('}');

  std::size_t fired = 0, skipped = 0;
  for (const SequenceStats& s : r.per_sequence) {
    fired += s.fired;
    skipped += s.skipped;
  }
  j.key("sequences");
  j.open('{');
  j.field("count", r.sequences.size());
  j.field("executed", r.per_sequence.size());
  j.field("generated", r.sequences_generated);
  j.field("duplicates", r.sequences_generated - r.sequences.size());
  j.field("truncated", r.sequences_truncated);
  j.field("fired_events", fired);
  j.field("skipped_events", skipped);
  j.key("items");
  j.open('[');
  for (std::size_t i = 0; i < r.sequences.size(); ++i) {
    j.open('{');
    j.field("index", i);
    j.field("events", r.sequences[i]);
    j.field("length", static_cast<std::size_t>(
                          r.sequences[i].empty()
                              ? 0
                              : std::count(r.sequences[i].begin(), r.sequences[i].end(), ';') + 1));
    j.field("multiplicity", r.multiplicity[i]);
    j.field("executed", i < r.per_sequence.size());
    if (i < r.per_sequence.size()) {
      const SequenceStats& s = r.per_sequence[i];
      j.field("fired", s.fired);
      j.field("skipped", s.skipped);
      j.field("covered", s.covered.size());
    }
    j.close('}');
  }
  j.close(']');
  j.close('}');

  j.key("coverage");
  j.open('{');
  j.field("total", spec.statement_count());
  j.key("construction");
  write_coverage(j, r.construction);
  j.key("execution");
  write_coverage(j, r.execution);
  j.key("aggregated");
  write_coverage(j, r.aggregated);
  j.key("per_event");
  j.open('[');
  for (const EventCoverage& e : r.aggregated.per_event) {
    j.open('{');
    j.field("event", e.event);
    j.field("covered", e.covered);
    j.field("total", e.total);
    j.field("ratio", e.total == 0 ? 1.0 : static_cast<double>(e.covered) / e.total);
    j.close('}');
  }
  j.close(']');
  j.key("statements");
  j.open('[');
  for (std::size_t i = 0; i < spec.statement_count(); ++i) {
    j.open('{');
    j.field("statement", to_string(spec.statement_ids()[i]));
    j.field("event", spec.event_name(spec.statement_events()[i]));
    j.field("construction", static_cast<bool>(r.construction_covered[i]));
    j.field("execution", static_cast<bool>(r.execution_covered[i]));
    j.close('}');
  }
  j.close(']');
  j.close('}');

  j.key("findings");
  j.open('[');
  for (const Finding& f : r.findings) write_finding(j, f, spec);
  j.close(']');

  j.field("partial", r.partial);
  if (c.include_timings) {
    j.key("timings");
    j.open('{');
    j.field("build_seconds", r.build_seconds);
    j.field("generation_seconds", r.generation_seconds);
    j.field("execution_seconds", r.execution_seconds);
    j.close('}');
  }
  j.close('}');
  std::string out = j.take();
  out += '\n';
  return out;
}

std::string export_dot(const Fsm& fsm) {
  std::ostringstream out;
  out << "digraph fsm {\n";
  out << "  rankdir=LR;\n";
  for (Digest s : fsm.states()) {
    out << "  \"" << digest_name(s) << "\" [shape="
        << (s == fsm.initial() ? "doublecircle" : "circle") << "];\n";
  }
  std::map<std::pair<Digest, Digest>, std::vector<std::string>> labels;
  for (const Transition& t : fsm.transitions()) {
    labels[{t.from, t.to}].push_back(fsm.event_name(t.event));
  }
  for (auto& [edge, names] : labels) {
    std::sort(names.begin(), names.end());
    std::string label;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i > 0) label += ',';
      label += names[i];
    }
    out << "  \"" << digest_name(edge.first) << "\" -> \"" << digest_name(edge.second)
        << "\" [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<EventSeq> parse_sequence_file(std::string_view text, const AppSpec& spec) {
  std::vector<EventSeq> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    EventSeq seq;
    std::size_t p = 0;
    while (p <= line.size()) {
      std::size_t q = line.find(';', p);
      if (q == std::string_view::npos) q = line.size();
      const std::string name = trim(line.substr(p, q - p));
      p = q + 1;
      if (name.empty()) {
        if (q == line.size()) break;  // tolerate a trailing ';'
        throw std::invalid_argument("line " + std::to_string(line_no) + ": empty event name");
      }
      auto e = spec.find_event(name);
      if (!e) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown event '" +
                                    name + "'");
      }
      seq.events.push_back(*e);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<EventSeq> read_sequence_file(const std::string& path, const AppSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sequence_file(buf.str(), spec);
}

std::string write_sequence_file(const std::vector<EventSeq>& sequences, const AppSpec& spec) {
  std::vector<std::string> names;
  for (const EventDecl& e : spec.events) names.push_back(e.name);
  std::string out;
  for (const EventSeq& s : sequences) {
    out += format_sequence(names, s.events);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace edatest
