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

#ifndef EDATEST_TESTS_TEST_SUPPORT_H_
#define EDATEST_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "edatest/app_spec.h"
#include "edatest/rng.h"

namespace edatest::testing {

inline const std::vector<std::string>& corpus_apps() {
  static const std::vector<std::string> apps = {"running_example", "checkboxes10",
                                                "independent_pair", "wizard", "coin_toggle"};
  return apps;
}

inline std::string corpus_path(std::string_view app) {
  return std::string(EDATEST_CORPUS_DIR) + "/" + std::string(app) + ".eda";
}

inline std::shared_ptr<const AppSpec> load_corpus(std::string_view app) {
  return std::make_shared<const AppSpec>(parse_file(corpus_path(app)));
}

inline std::shared_ptr<const AppSpec> load_source(std::string_view source) {
  return std::make_shared<const AppSpec>(parse(source));
}

// "A;B;C" -> event ids. Unknown names abort the test via .value().
inline std::vector<EventId> ids(const AppSpec& spec, std::string_view seq) {
  std::vector<EventId> out;
  std::size_t p = 0;
  while (p < seq.size()) {
    std::size_t q = seq.find(';', p);
    if (q == std::string_view::npos) q = seq.size();
    out.push_back(spec.find_event(seq.substr(p, q - p)).value());
    p = q + 1;
  }
  return out;
}

inline bool uses_rand_bool(const AppSpec& spec) {
  return pretty_print(spec).find("rand_bool") != std::string::npos;
}

// Random well-typed `.eda` source. Every app has at least one event enabled
// at load.
class RandomAppGenerator {
 public:
  struct Options {
    bool allow_rand_bool = true;
    bool allow_division = true;
    int max_depth = 2;
  };

  explicit RandomAppGenerator(std::uint64_t seed) : rng_(seed) {}
  RandomAppGenerator(std::uint64_t seed, Options opts) : rng_(seed), opts_(opts) {}

  std::string generate() {
    ints_ = 1 + static_cast<int>(rng_.uniform(3));
    bools_ = 1 + static_cast<int>(rng_.uniform(2));
    events_ = 2 + static_cast<int>(rng_.uniform(3));
    std::string out = "app generated;\n";
    for (int i = 0; i < ints_; ++i) {
      out += "var i" + std::to_string(i) + ": int = " + std::to_string(small()) +
             (coin() ? " implicit" : "") + ";\n";
    }
    for (int b = 0; b < bools_; ++b) {
      out += "var b" + std::to_string(b) + ": bool = " + (coin() ? "true" : "false") +
             (coin() ? " implicit" : "") + ";\n";
    }
    for (int e = 0; e < events_; ++e) {
      const bool disabled = e > 0 && rng_.uniform(3) == 0;
      out += "event E" + std::to_string(e) + (disabled ? " disabled" : "") + " {\n";
      out += block(1, 1 + static_cast<int>(rng_.uniform(3)));
      out += "}\n";
    }
    return out;
  }

 private:
  bool coin() { return rng_.next_bool(); }
  std::int64_t small() { return static_cast<std::int64_t>(rng_.uniform(7)) - 3; }

  std::string indent(int level) { return std::string(static_cast<std::size_t>(2 * level), ' '); }

  std::string block(int level, int n) {
    std::string out;
    for (int i = 0; i < n; ++i) out += stmt(level);
    return out;
  }

  std::string stmt(int level) {
    const std::uint64_t pick = rng_.uniform(level <= opts_.max_depth ? 6 : 5);
    const std::string pad = indent(level);
    switch (pick) {
      case 0:
        return pad + "i" + std::to_string(rng_.uniform(ints_)) + " = " + int_expr(2) + ";\n";
      case 1:
        return pad + "b" + std::to_string(rng_.uniform(bools_)) + " = " + bool_expr(2) + ";\n";
      case 2:
        return pad + "enable(E" + std::to_string(rng_.uniform(events_)) + ");\n";
      case 3:
        return pad + "disable(E" + std::to_string(rng_.uniform(events_)) + ");\n";
      case 4:
        return pad + "log(\"m" + std::to_string(rng_.uniform(100)) + "\");\n";
      default: {
        std::string out = pad + "if (" + bool_expr(2) + ") {\n" +
                          block(level + 1, 1 + static_cast<int>(rng_.uniform(2))) + pad + "}";
        if (coin()) {
          out += " else {\n" + block(level + 1, 1 + static_cast<int>(rng_.uniform(2))) + pad + "}";
        }
        return out + "\n";
      }
    }
  }

  std::string int_expr(int depth) {
    const std::uint64_t pick = rng_.uniform(depth > 0 ? 4 : 2);
    switch (pick) {
      case 0: {
        const std::int64_t v = small();
        return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
      }
      case 1: return "i" + std::to_string(rng_.uniform(ints_));
      case 2: return "-" + int_expr(depth - 1);
      default: {
        static constexpr const char* kOps[] = {" + ", " - ", " * ", " / "};
        const std::size_t n = opts_.allow_division ? 4 : 3;
        return "(" + int_expr(depth - 1) + kOps[rng_.uniform(n)] + int_expr(depth - 1) + ")";
      }
    }
  }

  std::string bool_expr(int depth) {
    const std::uint64_t pick = rng_.uniform(depth > 0 ? 6 : 3);
    switch (pick) {
      case 0: return coin() ? "true" : "false";
      case 1: return "b" + std::to_string(rng_.uniform(bools_));
      case 2:
        if (opts_.allow_rand_bool && rng_.uniform(4) == 0) return "rand_bool()";
        return "b" + std::to_string(rng_.uniform(bools_));
      case 3: {
        static constexpr const char* kCmp[] = {" == ", " != ", " < ", " <= ", " > ", " >= "};
        return "(" + int_expr(depth - 1) + kCmp[rng_.uniform(6)] + int_expr(depth - 1) + ")";
      }
      case 4: return "!" + bool_expr(depth - 1);
      default:
        return "(" + bool_expr(depth - 1) + (coin() ? " && " : " || ") + bool_expr(depth - 1) + ")";
    }
  }

  Rng rng_;
  Options opts_;
  int ints_ = 1;
  int bools_ = 1;
  int events_ = 2;
};

}  // namespace edatest::testing

#endif  // EDATEST_TESTS_TEST_SUPPORT_H_
