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

#include "edatest/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace edatest {
namespace {

constexpr double kTieTolerance = 1e-12;

bool same_weight(double a, double b) {
  return std::fabs(a - b) <= kTieTolerance * std::max(std::fabs(a), std::fabs(b));
}

void append_le64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

}  // namespace

std::string_view to_string(Abstraction a) { return a == Abstraction::kCoarse ? "coarse" : "fine"; }
std::string_view to_string(Strategy s) { return s == Strategy::kRandom ? "random" : "weighted"; }

std::optional<Abstraction> parse_abstraction(std::string_view s) {
  if (s == "coarse") return Abstraction::kCoarse;
  if (s == "fine") return Abstraction::kFine;
  return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "random") return Strategy::kRandom;
  if (s == "weighted") return Strategy::kWeighted;
  return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize_state(const ConcreteState& state, const AppSpec& spec, Abstraction mode) {
  std::string out;
  for (std::size_t v = 0; v < spec.variables.size(); ++v) {
    const VarDecl& decl = spec.variables[v];
    if (mode == Abstraction::kCoarse && decl.implicit) continue;
    out += decl.name;
    out.push_back('\0');
    out.push_back(decl.type == ValueType::kInt ? '\x01' : '\x02');
    append_le64(out, static_cast<std::uint64_t>(state.values.at(v)));
  }
  if (mode == Abstraction::kFine) {
    out.push_back('\xFF');
    std::vector<std::string_view> enabled;
    for (std::size_t e = 0; e < spec.events.size(); ++e) {
      if (state.enabled.at(e)) enabled.push_back(spec.events[e].name);
    }
    std::sort(enabled.begin(), enabled.end());
    for (auto name : enabled) {
      out += name;
      out.push_back('\0');
    }
  }
  return out;
}

AbstractState abstract_state(const ConcreteState& state, const AppSpec& spec, Abstraction mode,
                             bool debug) {
  AbstractState s;
  s.digest = fnv1a64(serialize_state(state, spec, mode));
  if (debug) {
    std::string t = "(";
    bool first = true;
    for (std::size_t v = 0; v < spec.variables.size(); ++v) {
      const VarDecl& decl = spec.variables[v];
      if (mode == Abstraction::kCoarse && decl.implicit) continue;
      if (!first) t += ", ";
      first = false;
      t += decl.name + "=";
      if (decl.type == ValueType::kBool) {
        t += state.values[v] != 0 ? "true" : "false";
      } else {
        t += std::to_string(state.values[v]);
      }
    }
    if (mode == Abstraction::kFine) {
      t += first ? "{" : "; {";
      bool first_event = true;
      for (std::size_t e = 0; e < spec.events.size(); ++e) {
        if (!state.enabled[e]) continue;
        if (!first_event) t += ",";
        first_event = false;
        t += spec.events[e].name;
      }
      t += "}";
    }
    s.tuple = t + ")";
  }
  return s;
}

Fsm::Fsm(std::vector<std::string> event_names, Digest initial)
    : names_(std::move(event_names)), initial_(initial) {
  states_.insert(initial);
}

void Fsm::add_transition(Digest from, EventId e, Digest to) {
  states_.insert(from);
  states_.insert(to);
  inputs_.insert(e);
  delta_.insert(Transition{from, e, to});
}

std::vector<std::pair<EventId, Digest>> Fsm::supp(Digest s) const {
  std::vector<std::pair<EventId, Digest>> out;
  for (auto it = delta_.lower_bound(Transition{s, 0, 0}); it != delta_.end() && it->from == s; ++it) {
    out.emplace_back(it->event, it->to);
  }
  std::sort(out.begin(), out.end(), [this](const auto& a, const auto& b) {
    if (a.first != b.first) return names_[a.first] < names_[b.first];
    return a.second < b.second;
  });
  return out;
}

void BuildConfig::validate() const {
  if (max_length < 1) throw std::invalid_argument("max_length must be at least 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw std::invalid_argument("alpha and beta must be non-negative");
  }
}

double weight(EventId e, std::optional<EventId> prev, const DependencyRelation& rel,
              std::span<const std::uint64_t> fired, double alpha, double beta) {
  const double x = prev && rel.dep(*prev, e) ? 1.0 : 0.0;
  return (alpha * x + beta * (1.0 - x)) / (static_cast<double>(fired[e]) + 1.0);
}

std::vector<EventId> weighted_candidates(std::span<const EventId> available,
                                         std::optional<EventId> prev,
                                         const DependencyRelation& rel,
                                         std::span<const std::uint64_t> fired, double alpha,
                                         double beta) {
  std::vector<double> w;
  w.reserve(available.size());
  double best = 0.0;
  for (EventId e : available) {
    w.push_back(weight(e, prev, rel, fired, alpha, beta));
    best = std::max(best, w.back());
  }
  std::vector<EventId> out;
  for (std::size_t i = 0; i < available.size(); ++i) {
    if (same_weight(w[i], best)) out.push_back(available[i]);
  }
  return out;
}

EventId select_event(Strategy strategy, std::span<const EventId> available,
                     std::optional<EventId> prev, const DependencyRelation& rel,
                     std::span<const std::uint64_t> fired, double alpha, double beta, Rng& rng) {
  if (available.empty()) throw std::invalid_argument("select_event: no available events");
  if (strategy == Strategy::kRandom) return available[rng.uniform(available.size())];
  auto candidates = weighted_candidates(available, prev, rel, fired, alpha, beta);
  return candidates[rng.uniform(candidates.size())];
}

BuildResult build_model(std::shared_ptr<const AppSpec> spec, const DependencyRelation& rel,
                        const BuildConfig& cfg) {
  cfg.validate();
  EngineSession session(spec, cfg.seed);
  Rng selector(mix_seed(cfg.seed, 1));
  std::vector<std::string> names;
  for (const EventDecl& e : spec->events) names.push_back(e.name);

  const Digest s0 = abstract_state(session.state(), *spec, cfg.abstraction).digest;
  Fsm fsm(std::move(names), s0);
  BuildStats stats;

  for (int run = 0; run < cfg.restarts; ++run) {
    if (run > 0) session.reset();
    Digest current = s0;
    std::optional<EventId> prev;
    std::vector<EventId> trace;
    for (int step = 0; step < cfg.max_length; ++step) {
      auto available = session.available();
      if (available.empty()) {
        ++stats.dead_ends;
        break;
      }
      EventId e = select_event(cfg.strategy, available, prev, rel, session.fired_counts(),
                               cfg.alpha, cfg.beta, selector);
      FireResult fired = session.fire(e);
      trace.push_back(e);
      if (fired.fault) stats.findings.push_back(Finding{"construction", trace, *fired.fault});
      Digest next = abstract_state(session.state(), *spec, cfg.abstraction).digest;
      fsm.add_transition(current, e, next);
      current = next;
      prev = e;
      ++stats.steps;
    }
  }
  return BuildResult{std::move(fsm), std::move(session), std::move(stats)};
}

}  // namespace edatest
