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

#include <sstream>

#include "edatest/app_spec.h"

namespace edatest {
namespace {

int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::kUnary) return 7;
  if (e.kind != Expr::Kind::kBinary) return 8;
  switch (e.binary_op) {
    case BinaryOp::kOr: return 1;
    case BinaryOp::kAnd: return 2;
    case BinaryOp::kEq:
    case BinaryOp::kNe: return 3;
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe: return 4;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 5;
    case BinaryOp::kMul:
    case BinaryOp::kDiv: return 6;
  }
  return 0;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

class Printer {
 public:
  explicit Printer(const AppSpec& spec) : spec_(spec) {}

  std::string run() {
    out_ << "app " << spec_.name << ";\n";
    if (!spec_.variables.empty()) out_ << "\n";
    for (const VarDecl& v : spec_.variables) {
      out_ << "var " << v.name << ": " << to_string(v.type) << " = ";
      if (v.type == ValueType::kBool) {
        out_ << (v.initial != 0 ? "true" : "false");
      } else {
        out_ << v.initial;
      }
      if (v.implicit) out_ << " implicit";
      out_ << ";\n";
    }
    for (const EventDecl& e : spec_.events) {
      out_ << "\nevent " << e.name << (e.initially_enabled ? "" : " disabled") << " ";
      block(e.body, 0);
      out_ << "\n";
    }
    return out_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void block(const std::vector<Stmt>& body, int depth) {
    out_ << "{\n";
    for (const Stmt& s : body) {
      indent(depth + 1);
      stmt(s, depth + 1);
      out_ << "\n";
    }
    indent(depth);
    out_ << "}";
  }

  void stmt(const Stmt& s, int depth) {
    switch (s.kind) {
      case Stmt::Kind::kAssign:
        out_ << spec_.variables[s.var].name << " = " << expr(s.expr) << ";";
        break;
      case Stmt::Kind::kEnable:
        out_ << "enable(" << spec_.event_name(s.target) << ");";
        break;
      case Stmt::Kind::kDisable:
        out_ << "disable(" << spec_.event_name(s.target) << ");";
        break;
      case Stmt::Kind::kLog:
        out_ << "log(" << quote(s.message) << ");";
        break;
      case Stmt::Kind::kIf:
        out_ << "if (" << expr(s.expr) << ") ";
        block(s.then_body, depth);
        if (s.else_body.size() == 1 && s.else_body[0].kind == Stmt::Kind::kIf) {
          out_ << " else ";
          stmt(s.else_body[0], depth);
        } else if (!s.else_body.empty()) {
          out_ << " else ";
          block(s.else_body, depth);
        }
        break;
    }
  }

  std::string expr(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::kIntLit: return std::to_string(e.int_value);
      case Expr::Kind::kBoolLit: return e.int_value != 0 ? "true" : "false";
      case Expr::Kind::kVar: return spec_.variables[e.var].name;
      case Expr::Kind::kRandBool: return "rand_bool()";
      case Expr::Kind::kUnary: {
        std::string inner = expr(e.operands[0]);
        if (precedence(e.operands[0]) < 7) inner = "(" + inner + ")";
        return (e.unary_op == UnaryOp::kNot ? "!" : "-") + inner;
      }
      case Expr::Kind::kBinary: {
        int p = precedence(e);
        std::string lhs = expr(e.operands[0]);
        std::string rhs = expr(e.operands[1]);
        if (precedence(e.operands[0]) < p) lhs = "(" + lhs + ")";
        if (precedence(e.operands[1]) <= p) rhs = "(" + rhs + ")";
        return lhs + " " + std::string(to_string(e.binary_op)) + " " + rhs;
      }
    }
    return {};
  }

  const AppSpec& spec_;
  std::ostringstream out_;
};

}  // namespace

std::string pretty_print(const AppSpec& spec) { return Printer(spec).run(); }

}  // namespace edatest
