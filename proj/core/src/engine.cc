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

#include "edatest/engine.h"

#include <algorithm>
#include <limits>
#include <utility>

namespace edatest {
namespace {

struct Fault {
  StmtId statement;
  std::string message;
};

// Tree-walking evaluator for one handler invocation.
class Interpreter {
 public:
  Interpreter(ConcreteState& state, Rng& rng, std::vector<std::uint32_t>& executed)
      : state_(state), rng_(rng), executed_(executed) {}

  void run(const std::vector<Stmt>& body) {
    for (const Stmt& s : body) exec(s);
  }

 private:
  void exec(const Stmt& s) {
    current_ = s.id;
    executed_.push_back(s.ordinal);
    switch (s.kind) {
      case Stmt::Kind::kAssign:
        state_.values[s.var] = eval(s.expr);
        break;
      case Stmt::Kind::kIf:
        run(eval(s.expr) != 0 ? s.then_body : s.else_body);
        break;
      case Stmt::Kind::kEnable:
        state_.enabled[s.target] = true;
        break;
      case Stmt::Kind::kDisable:
        state_.enabled[s.target] = false;
        break;
      case Stmt::Kind::kLog:
        break;
    }
  }

  std::int64_t eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::kIntLit:
      case Expr::Kind::kBoolLit:
        return e.int_value;
      case Expr::Kind::kVar:
        return state_.values[e.var];
      case Expr::Kind::kRandBool:
        return rng_.next_bool() ? 1 : 0;
      case Expr::Kind::kUnary: {
        std::int64_t v = eval(e.operands[0]);
        if (e.unary_op == UnaryOp::kNot) return v == 0 ? 1 : 0;
        if (v == std::numeric_limits<std::int64_t>::min()) throw Fault{current_, "integer overflow"};
        return -v;
      }
      case Expr::Kind::kBinary:
        return eval_binary(e);
    }
    return 0;
  }

  std::int64_t eval_binary(const Expr& e) {
    // Short-circuit so that rand_bool draws match program order.
    if (e.binary_op == BinaryOp::kAnd) {
      return eval(e.operands[0]) != 0 && eval(e.operands[1]) != 0 ? 1 : 0;
    }
    if (e.binary_op == BinaryOp::kOr) {
      return eval(e.operands[0]) != 0 || eval(e.operands[1]) != 0 ? 1 : 0;
    }
    std::int64_t a = eval(e.operands[0]);
    std::int64_t b = eval(e.operands[1]);
    std::int64_t r = 0;
    switch (e.binary_op) {
      case BinaryOp::kAdd:
        if (__builtin_add_overflow(a, b, &r)) throw Fault{current_, "integer overflow"};
        return r;
      case BinaryOp::kSub:
        if (__builtin_sub_overflow(a, b, &r)) throw Fault{current_, "integer overflow"};
        return r;
      case BinaryOp::kMul:
        if (__builtin_mul_overflow(a, b, &r)) throw Fault{current_, "integer overflow"};
        return r;
      case BinaryOp::kDiv:
        if (b == 0) throw Fault{current_, "division by zero"};
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
          throw Fault{current_, "integer overflow"};
        }
        return a / b;
      case BinaryOp::kEq: return a == b;
      case BinaryOp::kNe: return a != b;
      case BinaryOp::kLt: return a < b;
      case BinaryOp::kLe: return a <= b;
      case BinaryOp::kGt: return a > b;
      case BinaryOp::kGe: return a >= b;
      case BinaryOp::kAnd:
      case BinaryOp::kOr:
        break;
    }
    return 0;
  }

  ConcreteState& state_;
  Rng& rng_;
  std::vector<std::uint32_t>& executed_;
  StmtId current_;
};

}  // namespace

ConcreteState initial_state(const AppSpec& spec) {
  ConcreteState s;
  s.values.reserve(spec.variables.size());
  for (const VarDecl& v : spec.variables) s.values.push_back(v.initial);
  s.enabled.reserve(spec.events.size());
  for (const EventDecl& e : spec.events) s.enabled.push_back(e.initially_enabled);
  return s;
}

CoverageReport make_coverage_report(const AppSpec& spec, const std::vector<bool>& covered) {
  CoverageReport report;
  report.total = spec.statement_count();
  report.per_event.resize(spec.events.size());
  for (std::size_t e = 0; e < spec.events.size(); ++e) report.per_event[e].event = spec.events[e].name;
  const auto& ids = spec.statement_ids();
  const auto& owners = spec.statement_events();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EventCoverage& ev = report.per_event[owners[i]];
    ++ev.total;
    if (i < covered.size() && covered[i]) {
      ++ev.covered;
      report.covered.push_back(ids[i]);
    }
  }
  std::sort(report.covered.begin(), report.covered.end());
  report.ratio = report.total == 0 ? 0.0
                                   : static_cast<double>(report.covered.size()) /
                                         static_cast<double>(report.total);
  return report;
}

EngineSession::EngineSession(std::shared_ptr<const AppSpec> spec, std::uint64_t seed)
    : spec_(std::move(spec)),
      state_(initial_state(*spec_)),
      rng_(seed),
      covered_(spec_->statement_count(), false),
      fired_(spec_->events.size(), 0) {}

std::vector<EventId> EngineSession::available() const {
  std::vector<EventId> out;
  for (std::size_t e = 0; e < state_.enabled.size(); ++e) {
    if (state_.enabled[e]) out.push_back(static_cast<EventId>(e));
  }
  return out;
}

std::vector<std::string> EngineSession::available_events() const {
  std::vector<std::string> out;
  for (EventId e : available()) out.push_back(spec_->event_name(e));
  return out;
}

FireResult EngineSession::fire(EventId e) {
  if (e >= spec_->events.size()) throw std::out_of_range("unknown event id");
  if (!state_.enabled[e]) throw EventNotEnabled(spec_->event_name(e));
  FireResult result;
  ConcreteState saved = state_;
  try {
    Interpreter(state_, rng_, result.executed).run(spec_->events[e].body);
  } catch (const Fault& f) {
    state_ = std::move(saved);
    result.fault = RuntimeFault{e, f.statement, f.message};
  }
  for (std::uint32_t ord : result.executed) covered_[ord] = true;
  ++fired_[e];
  return result;
}

FireResult EngineSession::fire(std::string_view event_name) {
  auto id = spec_->find_event(event_name);
  if (!id) throw std::invalid_argument("unknown event '" + std::string(event_name) + "'");
  return fire(*id);
}

void EngineSession::reset() { state_ = initial_state(*spec_); }

}  // namespace edatest
