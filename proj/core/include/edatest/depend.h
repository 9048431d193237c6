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

#ifndef EDATEST_DEPEND_H_
#define EDATEST_DEPEND_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edatest/app_spec.h"

namespace edatest {

// Read/write summary of one event handler.
struct HandlerFacts {
  std::set<VarId> reads;
  std::set<VarId> writes;
  std::set<VarId> ctrl_reads;  // variables read by If conditions
  std::set<EventId> regs;      // enable/disable targets
  bool uses_rng = false;       // calls rand_bool()

  friend bool operator==(const HandlerFacts&, const HandlerFacts&) = default;
};

HandlerFacts handler_facts(const EventDecl& event);

// Event-dependency relation over the events of one app.
//
//   rd(a, b)  a writes a variable that b reads, or the two handlers conflict
//             on shared state (both write one variable, both enable/disable
//             one event, or both draw from rand_bool)
//   rc(a, b)  a writes a variable that an If condition of b reads
//   closure   reflexive-transitive closure of rc | rd
//   dep(a, b) closure(a, b) or b is enabled/disabled by a
//   indep     neither dep(a, b) nor dep(b, a)
class DependencyRelation {
 public:
  DependencyRelation() = default;

  std::size_t event_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<HandlerFacts>& facts() const { return facts_; }

  bool rc(EventId a, EventId b) const { return rc_[at(a, b)] != 0; }
  bool rd(EventId a, EventId b) const { return rd_[at(a, b)] != 0; }
  bool closure(EventId a, EventId b) const { return closure_[at(a, b)] != 0; }
  bool dep(EventId a, EventId b) const { return dep_[at(a, b)] != 0; }
  bool indep(EventId a, EventId b) const { return !dep(a, b) && !dep(b, a); }

  // All (a, b) with dep(a, b), sorted by (name(a), name(b)).
  std::vector<std::pair<std::string, std::string>> dependent_pairs() const;

  // Position of each event in lexicographic name order.
  const std::vector<std::size_t>& name_rank() const { return rank_; }

 private:
  friend DependencyRelation analyze(const AppSpec& spec);

  std::size_t at(EventId a, EventId b) const { return a * names_.size() + b; }

  std::vector<std::string> names_;
  std::vector<HandlerFacts> facts_;
  std::vector<char> rc_, rd_, closure_, dep_;
  std::vector<std::size_t> rank_;
};

DependencyRelation analyze(const AppSpec& spec);

// Lexicographically least sequence equivalent to `seq` under swaps of
// adjacent independent events (names compared lexicographically).
std::vector<EventId> normal_form(const DependencyRelation& rel, std::span<const EventId> seq);

// True iff r1 can be turned into r2 by swapping adjacent independent events.
bool equivalent(const DependencyRelation& rel, std::span<const EventId> r1,
                std::span<const EventId> r2);

}  // namespace edatest

#endif  // EDATEST_DEPEND_H_
