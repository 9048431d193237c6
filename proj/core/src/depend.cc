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

#include "edatest/depend.h"

#include <algorithm>
#include <numeric>

namespace edatest {
namespace {

void collect_expr(const Expr& e, std::set<VarId>& reads, bool& uses_rng) {
  if (e.kind == Expr::Kind::kVar) reads.insert(e.var);
  if (e.kind == Expr::Kind::kRandBool) uses_rng = true;
  for (const Expr& op : e.operands) collect_expr(op, reads, uses_rng);
}

void collect_body(const std::vector<Stmt>& body, HandlerFacts& facts) {
  for (const Stmt& s : body) {
    switch (s.kind) {
      case Stmt::Kind::kAssign:
        facts.writes.insert(s.var);
        collect_expr(s.expr, facts.reads, facts.uses_rng);
        break;
      case Stmt::Kind::kIf:
        collect_expr(s.expr, facts.ctrl_reads, facts.uses_rng);
        collect_expr(s.expr, facts.reads, facts.uses_rng);
        collect_body(s.then_body, facts);
        collect_body(s.else_body, facts);
        break;
      case Stmt::Kind::kEnable:
      case Stmt::Kind::kDisable:
        facts.regs.insert(s.target);
        break;
      case Stmt::Kind::kLog:
        break;
    }
  }
}

template <typename T>
bool intersects(const std::set<T>& a, const std::set<T>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

HandlerFacts handler_facts(const EventDecl& event) {
  HandlerFacts facts;
  collect_body(event.body, facts);
  return facts;
}

DependencyRelation analyze(const AppSpec& spec) {
  DependencyRelation rel;
  const std::size_t n = spec.events.size();
  for (const EventDecl& e : spec.events) {
    rel.names_.push_back(e.name);
    rel.facts_.push_back(handler_facts(e));
  }
  rel.rc_.assign(n * n, 0);
  rel.rd_.assign(n * n, 0);
  for (EventId a = 0; a < n; ++a) {
    const HandlerFacts& fa = rel.facts_[a];
    for (EventId b = 0; b < n; ++b) {
      const HandlerFacts& fb = rel.facts_[b];
      bool data = intersects(fa.writes, fb.reads) || intersects(fa.writes, fb.writes) ||
                  intersects(fa.regs, fb.regs) || (fa.uses_rng && fb.uses_rng);
      rel.rd_[rel.at(a, b)] = data ? 1 : 0;
      rel.rc_[rel.at(a, b)] = intersects(fa.writes, fb.ctrl_reads) ? 1 : 0;
    }
  }

  // Warshall over rc | rd, seeded with the identity.
  rel.closure_.assign(n * n, 0);
  for (std::size_t i = 0; i < n * n; ++i) rel.closure_[i] = (rel.rc_[i] | rel.rd_[i]);
  for (EventId a = 0; a < n; ++a) rel.closure_[rel.at(a, a)] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel.closure_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (rel.closure_[k * n + j]) rel.closure_[i * n + j] = 1;
      }
    }
  }

  rel.dep_ = rel.closure_;
  for (EventId a = 0; a < n; ++a) {
    for (EventId b : rel.facts_[a].regs) rel.dep_[rel.at(a, b)] = 1;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return rel.names_[x] < rel.names_[y]; });
  rel.rank_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) rel.rank_[order[r]] = r;
  return rel;
}

std::vector<std::pair<std::string, std::string>> DependencyRelation::dependent_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (EventId a = 0; a < names_.size(); ++a) {
    for (EventId b = 0; b < names_.size(); ++b) {
      if (dep(a, b)) out.emplace_back(names_[a], names_[b]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EventId> normal_form(const DependencyRelation& rel, std::span<const EventId> seq) {
  // Repeatedly extract the smallest event that can be commuted to the front:
  // an occurrence qualifies when it is independent of every event before it.
  std::vector<EventId> rest(seq.begin(), seq.end());
  std::vector<EventId> out;
  out.reserve(rest.size());
  const auto& rank = rel.name_rank();
  while (!rest.empty()) {
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool movable = true;
      for (std::size_t j = 0; j < i && movable; ++j) movable = rel.indep(rest[j], rest[i]);
      if (!movable) continue;
      if (!found || rank[rest[i]] < rank[rest[best]]) {
        best = i;
        found = true;
      }
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

bool equivalent(const DependencyRelation& rel, std::span<const EventId> r1,
                std::span<const EventId> r2) {
  if (r1.size() != r2.size()) return false;
  return normal_form(rel, r1) == normal_form(rel, r2);
}

}  // namespace edatest
