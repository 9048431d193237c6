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

#include "edatest/genseq.h"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "edatest/engine.h"

namespace edatest {
namespace {

std::vector<std::size_t> name_ranks(const std::vector<std::string>& names) {
  std::vector<std::size_t> order(names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
  std::vector<std::size_t> rank(names.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

// Collects emitted sequences; sorts them by event names at the end.
class Collector {
 public:
  Collector(const std::vector<std::string>& names, SeqOrigin origin)
      : rank_(name_ranks(names)), by_rank_(rank_.size()), origin_(origin) {
    for (std::size_t e = 0; e < rank_.size(); ++e) by_rank_[rank_[e]] = static_cast<EventId>(e);
  }

  void emit(const std::vector<EventId>& seq, bool truncated) {
    ++generated_;
    if (truncated) ++truncated_;
    std::vector<EventId> key;
    key.reserve(seq.size());
    for (EventId e : seq) key.push_back(static_cast<EventId>(rank_[e]));
    keys_.push_back(std::move(key));
  }

  GeneratedSet finish(bool interrupted) {
    std::sort(keys_.begin(), keys_.end());
    GeneratedSet out;
    out.generated = generated_;
    out.truncated = truncated_;
    out.interrupted = interrupted;
    for (std::size_t i = 0; i < keys_.size();) {
      std::size_t j = i;
      while (j < keys_.size() && keys_[j] == keys_[i]) ++j;
      EventSeq seq;
      seq.origin = origin_;
      seq.events = std::move(keys_[i]);
      for (EventId& e : seq.events) e = by_rank_[e];
      out.sequences.push_back(std::move(seq));
      out.multiplicity.push_back(j - i);
      i = j;
    }
    keys_.clear();
    return out;
  }

 private:
  std::vector<std::size_t> rank_;
  std::vector<EventId> by_rank_;
  SeqOrigin origin_;
  std::vector<std::vector<EventId>> keys_;
  std::size_t generated_ = 0;
  std::size_t truncated_ = 0;
};

struct Frame {
  Digest state = 0;
  std::vector<char> done;
  std::vector<char> sleep;
  std::optional<EventId> selected;
};

// Depth-first traversal shared by gen_por and gen_exhaustive.
class Explorer {
 public:
  Explorer(const Fsm& fsm, int depth, const DependencyRelation* rel, const StopFn& stop,
           SeqOrigin origin)
      : fsm_(fsm),
        depth_(static_cast<std::size_t>(depth)),
        rel_(rel),
        stop_(stop),
        collector_(fsm.event_names(), origin),
        n_(fsm.event_names().size()) {}

  GeneratedSet run() {
    Frame root;
    root.state = fsm_.initial();
    root.sleep.assign(n_, 0);
    stack_.push_back(std::move(root));
    explore();
    return collector_.finish(interrupted_);
  }

 private:
  void explore() {
    Frame& top = stack_.back();
    top.selected.reset();
    top.done.assign(n_, 0);
    bool reached_dead_end = false;
    if (stack_.size() <= depth_ && !interrupted_) {
      auto supp = fsm_.supp(top.state);
      reached_dead_end = supp.empty();
      std::size_t i = 0;
      while (i < supp.size()) {
        if (stop_ && stop_()) {
          interrupted_ = true;
          break;
        }
        const EventId e = supp[i].first;
        std::size_t j = i;
        while (j < supp.size() && supp[j].first == e) ++j;
        // `stack_` may reallocate during recursion, so re-fetch the frame.
        if (!stack_.back().done[e] && !stack_.back().sleep[e]) {
          const std::size_t level = stack_.size() - 1;
          stack_[level].done[e] = 1;
          stack_[level].selected = e;
          for (std::size_t k = i; k < j; ++k) {
            Frame child;
            child.state = supp[k].second;
            child.sleep.assign(n_, 0);
            if (rel_ != nullptr) {
              for (std::size_t x = 0; x < n_; ++x) {
                if (stack_[level].sleep[x] && rel_->indep(e, static_cast<EventId>(x))) {
                  child.sleep[x] = 1;
                }
              }
            }
            stack_.push_back(std::move(child));
            explore();
            if (rel_ != nullptr) stack_[level].sleep[e] = 1;
          }
        }
        i = j;
      }
    }
    if (!stack_.back().selected) {
      std::vector<EventId> seq;
      seq.reserve(stack_.size());
      for (const Frame& f : stack_) {
        if (f.selected) seq.push_back(*f.selected);
      }
      collector_.emit(seq, reached_dead_end);
    }
    stack_.pop_back();
  }

  const Fsm& fsm_;
  std::size_t depth_;
  const DependencyRelation* rel_;
  const StopFn& stop_;
  Collector collector_;
  std::size_t n_;
  std::vector<Frame> stack_;
  bool interrupted_ = false;
};

void require_model(const Fsm& fsm) {
  if (fsm.supp(fsm.initial()).empty()) throw EmptyModel();
}

}  // namespace

std::string_view to_string(SeqOrigin origin) {
  switch (origin) {
    case SeqOrigin::kPor: return "por";
    case SeqOrigin::kLong: return "long";
    case SeqOrigin::kExhaustive: return "exhaustive";
    case SeqOrigin::kManual: return "manual";
  }
  return "manual";
}

bool GeneratedSet::contains(std::span<const EventId> seq) const {
  return std::any_of(sequences.begin(), sequences.end(), [&](const EventSeq& s) {
    return std::equal(s.events.begin(), s.events.end(), seq.begin(), seq.end());
  });
}

GeneratedSet gen_long(const Fsm& fsm, int length, int count, Rng& rng, const StopFn& stop) {
  if (length < 1 || count < 1) throw std::invalid_argument("gen_long: length and count must be positive");
  require_model(fsm);
  GeneratedSet out;
  std::map<std::vector<EventId>, std::size_t> index;
  for (int walk = 0; walk < count; ++walk) {
    if (stop && stop()) {
      out.interrupted = true;
      break;
    }
    EventSeq seq;
    seq.origin = SeqOrigin::kLong;
    Digest current = fsm.initial();
    bool truncated = false;
    while (seq.events.size() < static_cast<std::size_t>(length)) {
      auto supp = fsm.supp(current);
      if (supp.empty()) {
        truncated = true;
        break;
      }
      const auto& [e, next] = supp[rng.uniform(supp.size())];
      seq.events.push_back(e);
      current = next;
    }
    ++out.generated;
    if (truncated) ++out.truncated;
    auto [it, inserted] = index.try_emplace(seq.events, out.sequences.size());
    if (inserted) {
      out.sequences.push_back(std::move(seq));
      out.multiplicity.push_back(1);
    } else {
      ++out.multiplicity[it->second];
    }
  }
  return out;
}

GeneratedSet gen_por(const Fsm& fsm, int depth, const DependencyRelation& rel,
                     const StopFn& stop) {
  if (depth < 1) throw std::invalid_argument("gen_por: depth must be positive");
  require_model(fsm);
  return Explorer(fsm, depth, &rel, stop, SeqOrigin::kPor).run();
}

GeneratedSet gen_exhaustive(const Fsm& fsm, int depth, const StopFn& stop) {
  if (depth < 1) throw std::invalid_argument("gen_exhaustive: depth must be positive");
  require_model(fsm);
  return Explorer(fsm, depth, nullptr, stop, SeqOrigin::kExhaustive).run();
}

Enumeration enumerate_all(std::shared_ptr<const AppSpec> spec, int depth, bool keep_sequences,
                          std::uint64_t seed) {
  Enumeration out;
  if (depth < 1) return out;
  std::vector<EventId> prefix;
  // Explicit DFS over prefixes; each node replays its prefix from scratch.
  std::function<void()> visit = [&]() {
    EngineSession session(spec, seed);
    for (EventId e : prefix) session.fire(e);
    auto available = session.available();
    for (EventId e : available) {
      prefix.push_back(e);
      ++out.count;
      if (keep_sequences) out.sequences.push_back(prefix);
      if (prefix.size() < static_cast<std::size_t>(depth)) visit();
      prefix.pop_back();
    }
  };
  visit();
  return out;
}

std::string format_sequence(const std::vector<std::string>& names, std::span<const EventId> seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += ';';
    out += names.at(seq[i]);
  }
  return out;
}

}  // namespace edatest
