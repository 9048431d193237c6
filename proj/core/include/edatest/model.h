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

#ifndef EDATEST_MODEL_H_
#define EDATEST_MODEL_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edatest/app_spec.h"
#include "edatest/depend.h"
#include "edatest/engine.h"
#include "edatest/rng.h"

namespace edatest {

enum class Abstraction { kCoarse, kFine };
enum class Strategy { kRandom, kWeighted };

std::string_view to_string(Abstraction a);
std::string_view to_string(Strategy s);
std::optional<Abstraction> parse_abstraction(std::string_view s);
std::optional<Strategy> parse_strategy(std::string_view s);

using Digest = std::uint64_t;

struct AbstractState {
  Digest digest = 0;
  std::string tuple;  // human-readable abstracted tuple, filled in debug mode

  friend bool operator==(const AbstractState& a, const AbstractState& b) {
    return a.digest == b.digest;
  }
};

std::uint64_t fnv1a64(std::string_view bytes);

// Canonical byte serialization hashed by abstract_state(). For each included
// variable in declaration order: name bytes, 0x00, type tag (0x01 int, 0x02
// bool), value as 8-byte little-endian. Fine mode appends 0xFF and the
// enabled event names in lexicographic order, each NUL-terminated. Coarse
// mode drops implicit variables and the enabled set.
std::string serialize_state(const ConcreteState& state, const AppSpec& spec, Abstraction mode);

AbstractState abstract_state(const ConcreteState& state, const AppSpec& spec, Abstraction mode,
                             bool debug = false);

struct Transition {
  Digest from = 0;
  EventId event = 0;
  Digest to = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Nondeterministic finite-state machine (S, I, delta, s0) over abstract
// states. Parallel transitions (s, e, s') and (s, e, s'') may coexist.
class Fsm {
 public:
  Fsm() = default;
  Fsm(std::vector<std::string> event_names, Digest initial);

  Digest initial() const { return initial_; }
  const std::set<Digest>& states() const { return states_; }
  const std::set<EventId>& inputs() const { return inputs_; }
  const std::set<Transition>& transitions() const { return delta_; }
  const std::vector<std::string>& event_names() const { return names_; }
  const std::string& event_name(EventId e) const { return names_.at(e); }

  void add_state(Digest s) { states_.insert(s); }
  void add_transition(Digest from, EventId e, Digest to);

  // {(e, s') | (s, e, s') in delta}, ordered by (event name, successor).
  std::vector<std::pair<EventId, Digest>> supp(Digest s) const;

  friend bool operator==(const Fsm&, const Fsm&) = default;

 private:
  std::vector<std::string> names_;
  Digest initial_ = 0;
  std::set<Digest> states_;
  std::set<EventId> inputs_;
  std::set<Transition> delta_;
};

struct BuildConfig {
  int max_length = 99;
  int restarts = 2;
  Strategy strategy = Strategy::kRandom;
  Abstraction abstraction = Abstraction::kCoarse;
  double alpha = 0.7;
  double beta = 0.3;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on max_length < 1, restarts < 1, or a
  // negative alpha/beta.
  void validate() const;
};

// (alpha * x + beta * (1 - x)) / (fired[e] + 1), where x = 1 iff prev is set
// and dep(prev, e).
double weight(EventId e, std::optional<EventId> prev, const DependencyRelation& rel,
              std::span<const std::uint64_t> fired, double alpha, double beta);

// Random: uniform over `available`. Weighted: uniform over the events of
// maximal weight. `available` must be non-empty.
EventId select_event(Strategy strategy, std::span<const EventId> available,
                     std::optional<EventId> prev, const DependencyRelation& rel,
                     std::span<const std::uint64_t> fired, double alpha, double beta, Rng& rng);

// The events select_event(kWeighted, ...) chooses among.
std::vector<EventId> weighted_candidates(std::span<const EventId> available,
                                         std::optional<EventId> prev,
                                         const DependencyRelation& rel,
                                         std::span<const std::uint64_t> fired, double alpha,
                                         double beta);

struct Finding {
  std::string phase;             // "construction" or "execution"
  std::vector<EventId> sequence; // events fired up to and including the faulting one
  RuntimeFault fault;
};

struct BuildStats {
  std::size_t steps = 0;
  std::size_t dead_ends = 0;
  std::vector<Finding> findings;
};

struct BuildResult {
  Fsm fsm;
  EngineSession session;
  BuildStats stats;
};

// Explores the app `restarts` times from the initial state, up to
// `max_length` events per run, on one engine session (reset between runs;
// coverage and fire counts accumulate). All runs share one Fsm.
BuildResult build_model(std::shared_ptr<const AppSpec> spec, const DependencyRelation& rel,
                        const BuildConfig& cfg);

}  // namespace edatest

#endif  // EDATEST_MODEL_H_
