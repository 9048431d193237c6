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

// Lexer and recursive-descent parser for `.eda` sources.
//
// Grammar (whitespace-insensitive, `#` starts a line comment):
//
//   app      := "app" IDENT [";"] decl*
//   decl     := "var" IDENT ":" type "=" literal ["implicit"] ";"
//             | "event" IDENT ["disabled"] block
//   block    := "{" stmt* "}"
//   stmt     := IDENT "=" expr ";"
//             | "if" "(" expr ")" block ["else" (block | if-stmt)]
//             | ("enable" | "disable") "(" IDENT ")" ";"
//             | "log" "(" STRING ")" ";"
//   expr     := or ; or := and ("||" and)* ; and := eq ("&&" eq)*
//   eq       := rel (("=="|"!=") rel)* ; rel := add (("<"|"<="|">"|">=") add)*
//   add      := mul (("+"|"-") mul)* ; mul := unary (("*"|"/") unary)*
//   unary    := ("!"|"-") unary | primary
//   primary  := INT | "true" | "false" | IDENT | "rand_bool" "(" ")" | "(" expr ")"

#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "edatest/app_spec.h"

namespace edatest {
namespace {

constexpr std::array<std::string_view, 15> kReserved = {
    "app",  "var",    "event", "implicit", "disabled", "if",   "else",  "enable",
    "disable", "log", "rand_bool", "true", "false", "int", "bool"};

bool is_reserved(std::string_view word) {
  for (auto r : kReserved) {
    if (r == word) return true;
  }
  return false;
}

struct Token {
  enum class Kind { kIdent, kInt, kString, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;  // identifier, digits, punctuation, or decoded string
  std::uint32_t line = 1;
  std::uint32_t column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::kEnd: return "end of input";
    case Token::Kind::kString: return "string literal";
    case Token::Kind::kInt: return "integer '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

[[noreturn]] void fail(ParseError::Kind kind, std::uint32_t line, std::uint32_t col,
                       const std::string& detail) {
  throw ParseError(kind, line, col, detail);
}

// Returns the byte offset of the first invalid UTF-8 sequence, or npos.
std::size_t find_invalid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (c < 0x80) { ++i; continue; }
    if ((c & 0xE0) == 0xC0) { len = 2; min = 0x80; }
    else if ((c & 0xF0) == 0xE0) { len = 3; min = 0x800; }
    else if ((c & 0xF8) == 0xF0) { len = 4; min = 0x10000; }
    else return i;
    if (i + len > s.size()) return i;
    std::uint32_t cp = c & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (is_ident_start(c)) {
        t.kind = Token::Kind::kIdent;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) t.text += advance();
      } else if (c >= '0' && c <= '9') {
        t.kind = Token::Kind::kInt;
        while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') t.text += advance();
        if (pos_ < src_.size() && is_ident_char(src_[pos_])) {
          fail(ParseError::Kind::kSyntax, line_, col_, "malformed integer literal");
        }
      } else if (c == '"') {
        t.kind = Token::Kind::kString;
        t.text = lex_string();
      } else {
        t.kind = Token::Kind::kPunct;
        static constexpr std::array<std::string_view, 6> kTwo = {"==", "!=", "<=", ">=", "&&", "||"};
        bool matched = false;
        for (auto two : kTwo) {
          if (src_.substr(pos_, 2) == two) {
            t.text = std::string(two);
            advance();
            advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          static constexpr std::string_view kOne = "{}();:=+-*/<>!";
          if (kOne.find(c) == std::string_view::npos) {
            fail(ParseError::Kind::kSyntax, line_, col_,
                 std::string("unexpected character '") + c + "'");
          }
          t.text = std::string(1, advance());
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string lex_string() {
    std::uint32_t line = line_, col = col_;
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        fail(ParseError::Kind::kSyntax, line, col, "unterminated string literal");
      }
      char c = advance();
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= src_.size()) fail(ParseError::Kind::kSyntax, line, col, "unterminated string literal");
        char e = advance();
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default:
            fail(ParseError::Kind::kSyntax, line_, col_ - 1,
                 std::string("unknown escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  AppSpec run() {
    expect_keyword("app");
    spec_.name = expect_ident("application name").text;
    if (peek_punct(";")) advance();
    collect_declarations();
    while (!at_end()) {
      if (peek_keyword("var")) {
        parse_var();
      } else if (peek_keyword("event")) {
        parse_event();
      } else {
        syntax_error("'var' or 'event'");
      }
    }
    spec_.index_statements();
    return std::move(spec_);
  }

 private:
  // Pre-scan top-level declarations so bodies can refer to events declared
  // later in the file.
  void collect_declarations() {
    int depth = 0;
    std::unordered_map<std::string, bool> seen;
    for (std::size_t i = pos_; i + 1 < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == Token::Kind::kPunct) {
        if (t.text == "{") ++depth;
        if (t.text == "}") --depth;
        continue;
      }
      if (depth != 0 || t.kind != Token::Kind::kIdent) continue;
      if (t.text != "var" && t.text != "event") continue;
      const Token& name = toks_[i + 1];
      if (name.kind != Token::Kind::kIdent || is_reserved(name.text)) continue;
      if (seen.count(name.text) != 0) {
        fail(ParseError::Kind::kDuplicateDeclaration, name.line, name.column,
             "'" + name.text + "' is already declared");
      }
      seen[name.text] = true;
      if (t.text == "var") {
        var_ids_[name.text] = static_cast<VarId>(var_ids_.size());
        // A malformed declaration is rejected later by parse_var().
        bool is_bool = i + 3 < toks_.size() && toks_[i + 3].kind == Token::Kind::kIdent &&
                       toks_[i + 3].text == "bool";
        var_types_.push_back(is_bool ? ValueType::kBool : ValueType::kInt);
      } else {
        event_ids_[name.text] = static_cast<EventId>(event_ids_.size());
      }
    }
  }

  void parse_var() {
    advance();  // var
    VarDecl decl;
    decl.name = expect_ident("variable name").text;
    expect_punct(":");
    if (peek_keyword("int")) {
      decl.type = ValueType::kInt;
    } else if (peek_keyword("bool")) {
      decl.type = ValueType::kBool;
    } else {
      syntax_error("type 'int' or 'bool'");
    }
    advance();
    expect_punct("=");
    const Token& lit = peek();
    if (peek_keyword("true") || peek_keyword("false")) {
      if (decl.type != ValueType::kBool) {
        fail(ParseError::Kind::kTypeMismatch, lit.line, lit.column,
             "bool literal initializes int variable '" + decl.name + "'");
      }
      decl.initial = lit.text == "true" ? 1 : 0;
      advance();
    } else {
      bool negative = false;
      if (peek_punct("-")) {
        negative = true;
        advance();
      }
      const Token& num = peek();
      if (num.kind != Token::Kind::kInt) syntax_error("literal");
      if (decl.type != ValueType::kInt) {
        fail(ParseError::Kind::kTypeMismatch, lit.line, lit.column,
             "int literal initializes bool variable '" + decl.name + "'");
      }
      decl.initial = parse_int(num, negative);
      advance();
    }
    if (peek_keyword("implicit")) {
      decl.implicit = true;
      advance();
    }
    expect_punct(";");
    spec_.variables.push_back(std::move(decl));
  }

  void parse_event() {
    advance();  // event
    EventDecl decl;
    decl.name = expect_ident("event name").text;
    if (peek_keyword("disabled")) {
      decl.initially_enabled = false;
      advance();
    }
    decl.body = parse_block();
    spec_.events.push_back(std::move(decl));
  }

  std::vector<Stmt> parse_block() {
    expect_punct("{");
    std::vector<Stmt> body;
    while (!peek_punct("}")) {
      if (at_end()) syntax_error("'}'");
      body.push_back(parse_stmt());
    }
    advance();
    return body;
  }

  Stmt parse_stmt() {
    const Token& start = peek();
    Stmt s;
    s.id = StmtId{start.line, start.column};
    if (peek_keyword("if")) {
      advance();
      s.kind = Stmt::Kind::kIf;
      expect_punct("(");
      s.expr = parse_expr();
      expect_punct(")");
      if (s.expr.type != ValueType::kBool) {
        fail(ParseError::Kind::kTypeMismatch, start.line, start.column,
             "if condition must be bool");
      }
      s.then_body = parse_block();
      if (peek_keyword("else")) {
        advance();
        if (peek_keyword("if")) {
          s.else_body.push_back(parse_stmt());
        } else {
          s.else_body = parse_block();
        }
      }
      return s;
    }
    if (peek_keyword("enable") || peek_keyword("disable")) {
      s.kind = peek().text == "enable" ? Stmt::Kind::kEnable : Stmt::Kind::kDisable;
      advance();
      expect_punct("(");
      const Token& target = expect_ident("event name");
      auto it = event_ids_.find(target.text);
      if (it == event_ids_.end()) {
        fail(ParseError::Kind::kUnknownEventTarget, target.line, target.column,
             "'" + target.text + "' is not a declared event");
      }
      s.target = it->second;
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    if (peek_keyword("log")) {
      advance();
      s.kind = Stmt::Kind::kLog;
      expect_punct("(");
      if (peek().kind != Token::Kind::kString) syntax_error("string literal");
      s.message = peek().text;
      advance();
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    if (start.kind == Token::Kind::kIdent && !is_reserved(start.text)) {
      advance();
      auto it = var_ids_.find(start.text);
      if (it == var_ids_.end()) {
        fail(ParseError::Kind::kUnknownIdentifier, start.line, start.column,
             "'" + start.text + "' is not a declared variable");
      }
      s.kind = Stmt::Kind::kAssign;
      s.var = it->second;
      expect_punct("=");
      const Token& rhs = peek();
      s.expr = parse_expr();
      expect_punct(";");
      ValueType want = var_type(s.var);
      if (s.expr.type != want) {
        fail(ParseError::Kind::kTypeMismatch, rhs.line, rhs.column,
             "cannot assign " + std::string(to_string(s.expr.type)) + " to " +
                 std::string(to_string(want)) + " variable '" + start.text + "'");
      }
      return s;
    }
    syntax_error("statement");
  }

  ValueType var_type(VarId v) const { return var_types_.at(v); }

  // Expressions, lowest precedence first.
  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (peek_punct("||")) {
      const Token op = advance();
      lhs = make_logical(BinaryOp::kOr, std::move(lhs), parse_and(), op);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_eq();
    while (peek_punct("&&")) {
      const Token op = advance();
      lhs = make_logical(BinaryOp::kAnd, std::move(lhs), parse_eq(), op);
    }
    return lhs;
  }

  Expr parse_eq() {
    Expr lhs = parse_rel();
    while (peek_punct("==") || peek_punct("!=")) {
      const Token op = advance();
      Expr rhs = parse_rel();
      if (lhs.type != rhs.type) type_error(op, "operands of '" + op.text + "' differ in type");
      lhs = make_binary(op.text == "==" ? BinaryOp::kEq : BinaryOp::kNe, ValueType::kBool,
                        std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_rel() {
    Expr lhs = parse_add();
    for (;;) {
      BinaryOp op;
      if (peek_punct("<")) op = BinaryOp::kLt;
      else if (peek_punct("<=")) op = BinaryOp::kLe;
      else if (peek_punct(">")) op = BinaryOp::kGt;
      else if (peek_punct(">=")) op = BinaryOp::kGe;
      else return lhs;
      const Token tok = advance();
      Expr rhs = parse_add();
      require_int(tok, lhs, rhs);
      lhs = make_binary(op, ValueType::kBool, std::move(lhs), std::move(rhs));
    }
  }

  Expr parse_add() {
    Expr lhs = parse_mul();
    while (peek_punct("+") || peek_punct("-")) {
      const Token tok = advance();
      Expr rhs = parse_mul();
      require_int(tok, lhs, rhs);
      lhs = make_binary(tok.text == "+" ? BinaryOp::kAdd : BinaryOp::kSub, ValueType::kInt,
                        std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_mul() {
    Expr lhs = parse_unary();
    while (peek_punct("*") || peek_punct("/")) {
      const Token tok = advance();
      Expr rhs = parse_unary();
      require_int(tok, lhs, rhs);
      lhs = make_binary(tok.text == "*" ? BinaryOp::kMul : BinaryOp::kDiv, ValueType::kInt,
                        std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek_punct("!") || peek_punct("-")) {
      const Token tok = advance();
      Expr operand = parse_unary();
      Expr e;
      e.kind = Expr::Kind::kUnary;
      if (tok.text == "!") {
        if (operand.type != ValueType::kBool) type_error(tok, "'!' requires a bool operand");
        e.unary_op = UnaryOp::kNot;
        e.type = ValueType::kBool;
      } else {
        if (operand.type != ValueType::kInt) type_error(tok, "'-' requires an int operand");
        e.unary_op = UnaryOp::kNeg;
        e.type = ValueType::kInt;
      }
      e.operands.push_back(std::move(operand));
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    Expr e;
    if (t.kind == Token::Kind::kInt) {
      e.kind = Expr::Kind::kIntLit;
      e.type = ValueType::kInt;
      e.int_value = parse_int(t, false);
      advance();
      return e;
    }
    if (peek_punct("(")) {
      advance();
      e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind != Token::Kind::kIdent) syntax_error("expression");
    if (t.text == "true" || t.text == "false") {
      e.kind = Expr::Kind::kBoolLit;
      e.type = ValueType::kBool;
      e.int_value = t.text == "true" ? 1 : 0;
      advance();
      return e;
    }
    if (t.text == "rand_bool") {
      advance();
      expect_punct("(");
      expect_punct(")");
      e.kind = Expr::Kind::kRandBool;
      e.type = ValueType::kBool;
      return e;
    }
    if (is_reserved(t.text)) syntax_error("expression");
    auto it = var_ids_.find(t.text);
    if (it == var_ids_.end()) {
      fail(ParseError::Kind::kUnknownIdentifier, t.line, t.column,
           "'" + t.text + "' is not a declared variable");
    }
    e.kind = Expr::Kind::kVar;
    e.var = it->second;
    e.type = var_type(e.var);
    advance();
    return e;
  }

  Expr make_logical(BinaryOp op, Expr lhs, Expr rhs, const Token& tok) {
    if (lhs.type != ValueType::kBool || rhs.type != ValueType::kBool) {
      type_error(tok, "'" + tok.text + "' requires bool operands");
    }
    return make_binary(op, ValueType::kBool, std::move(lhs), std::move(rhs));
  }

  static Expr make_binary(BinaryOp op, ValueType type, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = Expr::Kind::kBinary;
    e.binary_op = op;
    e.type = type;
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
  }

  void require_int(const Token& tok, const Expr& lhs, const Expr& rhs) {
    if (lhs.type != ValueType::kInt || rhs.type != ValueType::kInt) {
      type_error(tok, "'" + tok.text + "' requires int operands");
    }
  }

  [[noreturn]] void type_error(const Token& tok, const std::string& msg) {
    fail(ParseError::Kind::kTypeMismatch, tok.line, tok.column, msg);
  }

  static std::int64_t parse_int(const Token& t, bool negative) {
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
    constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (ec != std::errc() || magnitude > kMax + (negative ? 1 : 0)) {
      fail(ParseError::Kind::kSyntax, t.line, t.column, "integer literal out of range");
    }
    if (negative) return static_cast<std::int64_t>(0 - magnitude);
    return static_cast<std::int64_t>(magnitude);
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::kEnd; }
  Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool peek_keyword(std::string_view kw) const {
    return peek().kind == Token::Kind::kIdent && peek().text == kw;
  }
  bool peek_punct(std::string_view p) const {
    return peek().kind == Token::Kind::kPunct && peek().text == p;
  }

  void expect_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) syntax_error("'" + std::string(kw) + "'");
    advance();
  }
  void expect_punct(std::string_view p) {
    if (!peek_punct(p)) syntax_error("'" + std::string(p) + "'");
    advance();
  }
  Token expect_ident(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::kIdent || is_reserved(t.text)) syntax_error(what);
    return advance();
  }

  [[noreturn]] void syntax_error(const std::string& expected) {
    const Token& t = peek();
    fail(ParseError::Kind::kSyntax, t.line, t.column,
         "expected " + expected + ", found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  AppSpec spec_;
  std::unordered_map<std::string, VarId> var_ids_;
  std::unordered_map<std::string, EventId> event_ids_;
  std::vector<ValueType> var_types_;
};

void index_body(std::vector<Stmt>& body, EventId owner, std::vector<StmtId>& ids,
                std::vector<EventId>& owners) {
  for (Stmt& s : body) {
    s.ordinal = static_cast<std::uint32_t>(ids.size());
    ids.push_back(s.id);
    owners.push_back(owner);
    index_body(s.then_body, owner, ids, owners);
    index_body(s.else_body, owner, ids, owners);
  }
}

bool same_expr(const Expr& a, const Expr& b) { return a == b; }

bool same_body(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Stmt& x = a[i];
    const Stmt& y = b[i];
    if (x.kind != y.kind || x.ordinal != y.ordinal || x.var != y.var || x.target != y.target ||
        x.message != y.message || !same_expr(x.expr, y.expr) ||
        !same_body(x.then_body, y.then_body) || !same_body(x.else_body, y.else_body)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(ValueType t) { return t == ValueType::kInt ? "int" : "bool"; }

std::string to_string(StmtId id) {
  return std::to_string(id.line) + ":" + std::to_string(id.column);
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

std::string_view to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::kSyntax: return "SyntaxError";
    case ParseError::Kind::kUnknownIdentifier: return "UnknownIdentifier";
    case ParseError::Kind::kDuplicateDeclaration: return "DuplicateDeclaration";
    case ParseError::Kind::kTypeMismatch: return "TypeMismatch";
    case ParseError::Kind::kUnknownEventTarget: return "UnknownEventTarget";
  }
  return "ParseError";
}

ParseError::ParseError(Kind kind, std::uint32_t line, std::uint32_t column,
                       const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + detail),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(detail) {}

std::optional<EventId> AppSpec::find_event(std::string_view name) const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].name == name) return static_cast<EventId>(i);
  }
  return std::nullopt;
}

std::optional<VarId> AppSpec::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

void AppSpec::index_statements() {
  stmt_ids_.clear();
  stmt_events_.clear();
  for (std::size_t e = 0; e < events.size(); ++e) {
    index_body(events[e].body, static_cast<EventId>(e), stmt_ids_, stmt_events_);
  }
}

bool same_structure(const AppSpec& a, const AppSpec& b) {
  if (a.name != b.name || a.variables != b.variables || a.events.size() != b.events.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const EventDecl& x = a.events[i];
    const EventDecl& y = b.events[i];
    if (x.name != y.name || x.initially_enabled != y.initially_enabled ||
        !same_body(x.body, y.body)) {
      return false;
    }
  }
  return true;
}

AppSpec parse(std::string_view source) {
  if (auto bad = find_invalid_utf8(source); bad != std::string_view::npos) {
    std::uint32_t line = 1, col = 1;
    for (std::size_t i = 0; i < bad; ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(ParseError::Kind::kSyntax, line, col, "invalid UTF-8");
  }
  Parser parser(Lexer(source).run());
  return parser.run();
}

AppSpec parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace edatest
