// Copyright 2026 The qforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qforge/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "qforge/error.hpp"

namespace qforge {

namespace {

using std::numbers::pi;

enum class Tok { Ident, Number, String, Symbol, Arrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        t.kind = Tok::Number;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
          t.text += advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
          t.text += advance();
          if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) t.text += advance();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            t.text += advance();
          }
        }
      } else if (ch == '"') {
        t.kind = Tok::String;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') t.text += advance();
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw SyntaxError(t.line, t.column, "unterminated string");
        }
        advance();
      } else if (ch == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        t.kind = Tok::Arrow;
        t.text = "->";
        advance();
        advance();
      } else if (std::string_view("[](){};,+-*/^=<>!&|").find(ch) != std::string_view::npos) {
        t.kind = Tok::Symbol;
        t.text = std::string(1, advance());
      } else {
        throw SyntaxError(t.line, t.column, std::string("unexpected character '") + ch + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char ch = src_[pos_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return ch;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Register {
  std::size_t offset;
  std::size_t size;
};

struct Operand {
  std::string reg;
  std::optional<std::size_t> index;
  Token where;
};

const std::map<std::string, GateType, std::less<>>& builtin_gates() {
  static const std::map<std::string, GateType, std::less<>> table{
      {"x", GateType::X},     {"y", GateType::Y},         {"z", GateType::Z},
      {"h", GateType::H},     {"s", GateType::S},         {"t", GateType::T},
      {"rx", GateType::RX},   {"ry", GateType::RY},       {"rz", GateType::RZ},
      {"u1", GateType::U1},   {"u2", GateType::U2},       {"u3", GateType::U3},
      {"cx", GateType::CNOT}, {"swap", GateType::SWAP},   {"ccx", GateType::TOFFOLI},
      {"crk", GateType::CRK}, {"cp", GateType::CPHASE},   {"barrier", GateType::BARRIER},
      {"measure", GateType::MEASURE},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Circuit run() {
    std::vector<Gate> pending;
    while (peek().kind != Tok::End) statement(pending);
    Circuit c(num_qubits_, num_cbits_);
    for (auto& g : pending) c.append(std::move(g));
    return c;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw SyntaxError(t.line, t.column, msg);
  }
  bool accept(std::string_view sym) {
    if ((peek().kind == Tok::Symbol || peek().kind == Tok::Arrow) && peek().text == sym) {
      next();
      return true;
    }
    return false;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) {
      const Token& t = peek();
      fail(t, "expected '" + std::string(sym) + "' but found '" +
                  (t.kind == Tok::End ? std::string("end of input") : t.text) + "'");
    }
  }
  std::size_t integer() {
    const Token& t = next();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (t.kind != Tok::Number || ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail(t, "expected a non-negative integer");
    }
    return value;
  }

  // expr := term (('+'|'-') term)*
  double expr() {
    double v = term();
    while (true) {
      if (accept("+")) {
        v += term();
      } else if (accept("-")) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  double term() {
    double v = unary();
    while (true) {
      if (accept("*")) {
        v *= unary();
      } else if (accept("/")) {
        v /= unary();
      } else {
        return v;
      }
    }
  }
  double unary() {
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    return primary();
  }
  double primary() {
    const Token& t = next();
    if (t.kind == Tok::Number) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "malformed number");
      return v;
    }
    if (t.kind == Tok::Ident && t.text == "pi") return pi;
    if (t.kind == Tok::Symbol && t.text == "(") {
      const double v = expr();
      expect(")");
      return v;
    }
    fail(t, "expected a number, 'pi' or '('");
  }

  Operand operand() {
    Operand op;
    op.where = peek();
    const Token& t = next();
    if (t.kind != Tok::Ident) fail(t, "expected a register operand");
    op.reg = t.text;
    if (accept("[")) {
      op.index = integer();
      expect("]");
    }
    return op;
  }

  std::vector<std::size_t> resolve(const Operand& op, const std::map<std::string, Register>& regs,
                                   const char* what) const {
    auto it = regs.find(op.reg);
    if (it == regs.end()) fail(op.where, std::string("undeclared ") + what + " '" + op.reg + "'");
    const Register& r = it->second;
    if (op.index) {
      if (*op.index >= r.size) {
        fail(op.where, "index " + std::to_string(*op.index) + " out of range for '" + op.reg +
                           "[" + std::to_string(r.size) + "]'");
      }
      return {r.offset + *op.index};
    }
    std::vector<std::size_t> all(r.size);
    for (std::size_t i = 0; i < r.size; ++i) all[i] = r.offset + i;
    return all;
  }

  void declaration(bool quantum) {
    const Token& name = next();
    if (name.kind != Tok::Ident) fail(name, "expected register name");
    expect("[");
    const std::size_t size = integer();
    expect("]");
    expect(";");
    auto& regs = quantum ? qregs_ : cregs_;
    auto& total = quantum ? num_qubits_ : num_cbits_;
    if (qregs_.count(name.text) || cregs_.count(name.text)) {
      fail(name, "register '" + name.text + "' redeclared");
    }
    if (size == 0) fail(name, "register size must be positive");
    regs[name.text] = Register{total, size};
    total += size;
  }

  void statement(std::vector<Gate>& out) {
    const Token head = next();
    if (head.kind != Tok::Ident) fail(head, "expected a statement");
    const std::string& kw = head.text;
    if (kw == "OPENQASM") {
      const Token& v = next();
      if (v.kind != Tok::Number) fail(v, "expected version number");
      if (v.text != "2.0" && v.text != "2") {
        throw Error(ErrorCode::UnsupportedConstruct, "OPENQASM " + v.text);
      }
      expect(";");
      return;
    }
    if (kw == "include") {
      if (next().kind != Tok::String) fail(head, "expected file name after include");
      expect(";");
      return;
    }
    if (kw == "qreg") return declaration(true);
    if (kw == "creg") return declaration(false);
    if (kw == "gate" || kw == "opaque" || kw == "if" || kw == "reset") {
      throw Error(ErrorCode::UnsupportedConstruct, kw);
    }

    std::vector<double> params;
    if (accept("(")) {
      if (!accept(")")) {
        do {
          params.push_back(expr());
        } while (accept(","));
        expect(")");
      }
    }

    if (kw == "measure") {
      const Operand q = operand();
      expect("->");
      const Operand c = operand();
      expect(";");
      const auto qs = resolve(q, qregs_, "qreg");
      const auto cs = resolve(c, cregs_, "creg");
      if (qs.size() != cs.size()) fail(q.where, "measure operands differ in size");
      for (std::size_t i = 0; i < qs.size(); ++i) out.push_back(gates::measure(qs[i], cs[i]));
      return;
    }

    std::vector<Operand> ops;
    do {
      ops.push_back(operand());
    } while (accept(","));
    expect(";");

    std::vector<std::vector<std::size_t>> resolved;
    for (const auto& op : ops) resolved.push_back(resolve(op, qregs_, "qreg"));

    auto builtin = builtin_gates().find(kw);
    if (builtin != builtin_gates().end() && builtin->second == GateType::BARRIER) {
      std::vector<Qubit> all;
      for (const auto& r : resolved) all.insert(all.end(), r.begin(), r.end());
      try {
        out.push_back(gates::barrier(std::move(all)));
      } catch (const Error& e) {
        fail(head, e.what());
      }
      return;
    }

    // Broadcast whole-register operands for single-operand statements.
    std::vector<std::vector<Qubit>> instances;
    if (resolved.size() == 1) {
      for (Qubit q : resolved[0]) instances.push_back({q});
    } else {
      std::vector<Qubit> qs;
      for (std::size_t i = 0; i < resolved.size(); ++i) {
        if (!ops[i].index) fail(ops[i].where, "register broadcast needs a single operand");
        qs.push_back(resolved[i][0]);
      }
      instances.push_back(std::move(qs));
    }

    for (auto& qs : instances) {
      Gate g;
      if (builtin != builtin_gates().end()) {
        g.type = builtin->second;
      } else {
        g.type = GateType::MACRO;
        g.macro_name = kw;
      }
      g.params = params;
      g.qubits = std::move(qs);
      try {
        validate_gate(g);
      } catch (const Error& e) {
        fail(head, e.what());
      }
      out.push_back(std::move(g));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Register> qregs_;
  std::map<std::string, Register> cregs_;
  std::size_t num_qubits_ = 0;
  std::size_t num_cbits_ = 0;
};

std::string_view qasm_keyword(GateType t) {
  switch (t) {
    case GateType::X: return "x";
    case GateType::Y: return "y";
    case GateType::Z: return "z";
    case GateType::H: return "h";
    case GateType::S: return "s";
    case GateType::T: return "t";
    case GateType::RX: return "rx";
    case GateType::RY: return "ry";
    case GateType::RZ: return "rz";
    case GateType::U1: return "u1";
    case GateType::U2: return "u2";
    case GateType::U3: return "u3";
    case GateType::CNOT: return "cx";
    case GateType::SWAP: return "swap";
    case GateType::TOFFOLI: return "ccx";
    case GateType::CRK: return "crk";
    case GateType::CPHASE: return "cp";
    case GateType::BARRIER: return "barrier";
    case GateType::MEASURE: return "measure";
    case GateType::MACRO: return "";
  }
  return "";
}

}  // namespace

std::string format_angle(double value) {
  struct Named {
    double v;
    const char* text;
  };
  static const Named named[] = {
      {pi, "pi"},           {-pi, "-pi"},         {pi / 2, "pi/2"},
      {-pi / 2, "-pi/2"},   {pi / 4, "pi/4"},     {-pi / 4, "-pi/4"},
  };
  for (const auto& n : named) {
    if (value == n.v) return n.text;
  }
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "unprintable angle");
  std::string text(buf, ptr);
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "non-finite angle " + text);
  return text;
}

Circuit parse_qasm(std::string_view text) {
  Parser parser(Lexer(text).run());
  return parser.run();
}

std::string emit_qasm(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  if (c.num_qubits() > 0) os << "qreg q[" << c.num_qubits() << "];\n";
  if (c.num_cbits() > 0) os << "creg c[" << c.num_cbits() << "];\n";
  for (const auto& g : c) {
    if (g.type == GateType::MEASURE) {
      os << "measure q[" << g.qubits[0] << "] -> c[" << g.cbits[0] << "];\n";
      continue;
    }
    if (g.type == GateType::MACRO) {
      if (builtin_gates().count(g.macro_name) || g.macro_name == "pi" ||
          !(std::isalpha(static_cast<unsigned char>(g.macro_name[0])) || g.macro_name[0] == '_')) {
        throw Error(ErrorCode::UnsupportedConstruct,
                    "macro name '" + g.macro_name + "' is not representable in OpenQASM");
      }
      os << g.macro_name;
    } else {
      os << qasm_keyword(g.type);
    }
    if (g.type == GateType::CRK) {
      os << '(' << g.crk_order() << ')';
    } else if (!g.params.empty() || (g.type == GateType::MACRO && !g.params.empty())) {
      os << '(';
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        if (i) os << ',';
        os << format_angle(g.params[i]);
      }
      os << ')';
    }
    os << ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) os << ',';
      os << "q[" << g.qubits[i] << ']';
    }
    os << ";\n";
  }
  return os.str();
}

}  // namespace qforge
