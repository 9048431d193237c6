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

#ifndef EDATEST_ENGINE_H_
#define EDATEST_ENGINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edatest/app_spec.h"
#include "edatest/rng.h"

namespace edatest {

// Full interpreter state: one value per declared variable (bools as 0/1) and
// the enabled flag of every declared event.
struct ConcreteState {
  std::vector<std::int64_t> values;
  std::vector<bool> enabled;

  friend bool operator==(const ConcreteState&, const ConcreteState&) = default;
};

ConcreteState initial_state(const AppSpec& spec);

// A handler that faulted (overflow, division by zero). The handler's effects
// were rolled back.
struct RuntimeFault {
  EventId event = 0;
  StmtId statement;
  std::string message;

  friend bool operator==(const RuntimeFault&, const RuntimeFault&) = default;
};

struct FireResult {
  // Ordinals of the statements executed by this fire, in execution order.
  std::vector<std::uint32_t> executed;
  std::optional<RuntimeFault> fault;
};

class EventNotEnabled : public std::runtime_error {
 public:
  explicit EventNotEnabled(const std::string& event)
      : std::runtime_error("event '" + event + "' is not enabled"), event_(event) {}
  const std::string& event() const { return event_; }

 private:
  std::string event_;
};

struct EventCoverage {
  std::string event;
  std::size_t covered = 0;
  std::size_t total = 0;
};

struct CoverageReport {
  std::vector<StmtId> covered;  // sorted
  std::size_t total = 0;
  double ratio = 0.0;
  std::vector<EventCoverage> per_event;  // declaration order
};

// Builds a report from a coverage bitmap indexed by statement ordinal.
CoverageReport make_coverage_report(const AppSpec& spec, const std::vector<bool>& covered);

// One execution of an app: state, rand_bool generator, accumulated coverage
// and per-event fire counts. Copyable; copies are independent sessions.
class EngineSession {
 public:
  EngineSession(std::shared_ptr<const AppSpec> spec, std::uint64_t seed);

  const AppSpec& spec() const { return *spec_; }
  const std::shared_ptr<const AppSpec>& spec_ptr() const { return spec_; }
  const ConcreteState& state() const { return state_; }

  // Enabled events in declaration order.
  std::vector<EventId> available() const;
  std::vector<std::string> available_events() const;
  bool is_enabled(EventId e) const { return state_.enabled.at(e); }

  // Runs the handler of `e` to completion. Throws EventNotEnabled if `e` is
  // not enabled. On a runtime fault the state is restored to its value before
  // the call; statements executed before the fault stay covered.
  FireResult fire(EventId e);
  FireResult fire(std::string_view event_name);

  // Back to the initial state. Coverage, fire counts and the rng stream are
  // kept.
  void reset();

  CoverageReport coverage() const { return make_coverage_report(*spec_, covered_); }
  const std::vector<bool>& covered_bits() const { return covered_; }
  const std::vector<std::uint64_t>& fired_counts() const { return fired_; }
  std::uint64_t fired_count(EventId e) const { return fired_.at(e); }

 private:
  std::shared_ptr<const AppSpec> spec_;
  ConcreteState state_;
  Rng rng_;
  std::vector<bool> covered_;
  std::vector<std::uint64_t> fired_;
};

}  // namespace edatest

#endif  // EDATEST_ENGINE_H_
