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

#ifndef EDATEST_GENSEQ_H_
#define EDATEST_GENSEQ_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edatest/app_spec.h"
#include "edatest/depend.h"
#include "edatest/model.h"
#include "edatest/rng.h"

namespace edatest {

enum class SeqOrigin { kPor, kLong, kExhaustive, kManual };

std::string_view to_string(SeqOrigin origin);

struct EventSeq {
  std::vector<EventId> events;
  SeqOrigin origin = SeqOrigin::kManual;

  std::size_t size() const { return events.size(); }
  friend bool operator==(const EventSeq& a, const EventSeq& b) { return a.events == b.events; }
};

// De-duplicated generator output. `multiplicity[i]` counts how often
// `sequences[i]` was produced.
struct GeneratedSet {
  std::vector<EventSeq> sequences;
  std::vector<std::size_t> multiplicity;
  std::size_t generated = 0;  // emissions before de-duplication
  std::size_t truncated = 0;  // emissions cut short by a dead end
  bool interrupted = false;   // stopped early by the stop callback

  std::size_t duplicates() const { return generated - sequences.size(); }
  bool contains(std::span<const EventId> seq) const;
};

class EmptyModel : public std::runtime_error {
 public:
  EmptyModel() : std::runtime_error("model has no transitions from its initial state") {}
};

// Polled between units of work; returning true stops generation early.
using StopFn = std::function<bool()>;

// `count` random walks of length `length` from the initial state, each step
// picking uniformly from supp(current). A walk that hits a state without
// successors is emitted truncated. Output order is first-generation order.
GeneratedSet gen_long(const Fsm& fsm, int length, int count, Rng& rng, const StopFn& stop = {});

// Depth-first enumeration of model runs up to `depth` events with sleep-set
// pruning. Events are explored in lexicographic name order; each frame's
// sleep set is inherited from its parent filtered to events independent of
// the event taken, and an explored event joins its frame's sleep set.
GeneratedSet gen_por(const Fsm& fsm, int depth, const DependencyRelation& rel,
                     const StopFn& stop = {});

// gen_por without sleep sets: every model run of `depth` events (or shorter,
// ending in a state without successors).
GeneratedSet gen_exhaustive(const Fsm& fsm, int depth, const StopFn& stop = {});

struct Enumeration {
  std::uint64_t count = 0;
  std::vector<std::vector<EventId>> sequences;  // empty unless requested
};

// Counts every event sequence of length 1..depth that is feasible on the
// concrete engine (each event enabled after its prefix), replaying each
// prefix on a fresh session.
Enumeration enumerate_all(std::shared_ptr<const AppSpec> spec, int depth,
                          bool keep_sequences = false, std::uint64_t seed = 0);

std::string format_sequence(const std::vector<std::string>& names, std::span<const EventId> seq);

}  // namespace edatest

#endif  // EDATEST_GENSEQ_H_
