#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "relalg/atom_structure.hpp"
#include "relalg/error.hpp"

namespace relalg {

enum class TermOp { Var, Zero, One, Ident, Diver, Join, Meet, Compose, Complement, Converse, Dom, Rng };

// Immutable term tree. Precedence when printed or parsed: + < · < ; < prefix - < postfix ~.
class Term {
 public:
  static Term var(std::string name) { return Term(TermOp::Var, std::move(name), nullptr, nullptr); }
  static Term zero() { return leaf(TermOp::Zero); }
  static Term one() { return leaf(TermOp::One); }
  static Term ident() { return leaf(TermOp::Ident); }
  static Term diver() { return leaf(TermOp::Diver); }

  friend Term operator+(const Term& a, const Term& b) { return bin(TermOp::Join, a, b); }
  friend Term operator*(const Term& a, const Term& b) { return bin(TermOp::Meet, a, b); }
  friend Term compose(const Term& a, const Term& b) { return bin(TermOp::Compose, a, b); }
  friend Term complement(const Term& a) { return un(TermOp::Complement, a); }
  friend Term converse(const Term& a) { return un(TermOp::Converse, a); }
  friend Term dom(const Term& a) { return un(TermOp::Dom, a); }
  friend Term rng(const Term& a) { return un(TermOp::Rng, a); }

  TermOp op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  Term lhs() const { return Term(node_->a); }
  Term rhs() const { return Term(node_->b); }

  // Free variables in order of first occurrence.
  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    collect(*node_, out);
    return out;
  }

  std::string str() const { return print(*node_, 0); }

 private:
  struct Node {
    TermOp op;
    std::string name;
    std::shared_ptr<const Node> a, b;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  Term(TermOp op, std::string name, std::shared_ptr<const Node> a, std::shared_ptr<const Node> b)
      : node_(std::make_shared<const Node>(Node{op, std::move(name), std::move(a), std::move(b)})) {}
  static Term leaf(TermOp op) { return Term(op, {}, nullptr, nullptr); }
  static Term un(TermOp op, const Term& a) { return Term(op, {}, a.node_, nullptr); }
  static Term bin(TermOp op, const Term& a, const Term& b) { return Term(op, {}, a.node_, b.node_); }

  static void collect(const Node& n, std::vector<std::string>& out) {
    if (n.op == TermOp::Var) {
      if (std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
      return;
    }
    if (n.a) collect(*n.a, out);
    if (n.b) collect(*n.b, out);
  }

  static int level(TermOp op) {
    switch (op) {
      case TermOp::Join: return 1;
      case TermOp::Meet: return 2;
      case TermOp::Compose: return 3;
      case TermOp::Complement: case TermOp::Dom: case TermOp::Rng: return 4;
      case TermOp::Converse: return 5;
      default: return 6;
    }
  }

  static std::string print(const Node& n, int ctx) {
    std::string s;
    const int lv = level(n.op);
    switch (n.op) {
      case TermOp::Var: return n.name;
      case TermOp::Zero: return "0";
      case TermOp::One: return "1";
      case TermOp::Ident: return "1'";
      case TermOp::Diver: return "0'";
      case TermOp::Join: s = print(*n.a, lv) + " + " + print(*n.b, lv + 1); break;
      case TermOp::Meet: s = print(*n.a, lv) + " * " + print(*n.b, lv + 1); break;
      case TermOp::Compose: s = print(*n.a, lv) + ";" + print(*n.b, lv + 1); break;
      case TermOp::Complement: s = "-" + print(*n.a, lv); break;
      case TermOp::Dom: s = "dom " + print(*n.a, lv + 1); break;
      case TermOp::Rng: s = "rng " + print(*n.a, lv + 1); break;
      case TermOp::Converse: s = print(*n.a, lv) + "~"; break;
    }
    return lv < ctx ? "(" + s + ")" : s;
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view src) : src_(src) {}

  Term parse() {
    Term t = join();
    skip();
    if (pos_ != src_.size()) fail("unexpected input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, what + " at column " + std::to_string(pos_ + 1) + " in term '" + std::string(src_) + "'");
  }
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (src_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool keyword(std::string_view kw) {
    skip();
    if (src_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  Term join() {
    Term t = meet();
    while (eat("+")) t = t + meet();
    return t;
  }
  Term meet() {
    Term t = comp();
    while (eat("*") || eat("·")) t = t * comp();
    return t;
  }
  Term comp() {
    Term t = prefix();
    while (eat(";")) t = compose(t, prefix());
    return t;
  }
  Term prefix() {
    if (eat("-")) return complement(prefix());
    if (keyword("dom")) return dom(postfix());
    if (keyword("rng")) return rng(postfix());
    return postfix();
  }
  Term postfix() {
    Term t = primary();
    while (eat("~") || eat("˘")) t = converse(t);
    return t;
  }
  Term primary() {
    skip();
    if (eat("(")) {
      Term t = join();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    if (eat("1'")) return Term::ident();
    if (eat("0'")) return Term::diver();
    if (eat("1")) return Term::one();
    if (eat("0")) return Term::zero();
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(src_[start]))) fail("expected a term");
    return Term::var(std::string(src_.substr(start, pos_ - start)));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Syntax: + * ; - ~ dom rng, constants 0 1 0' 1', parentheses; ';' binds tighter than '*'.
inline Term parse_term(std::string_view src) { return detail::TermParser(src).parse(); }

// Postfix program for a term with variables resolved to slots.
class CompiledTerm {
 public:
  CompiledTerm(const Term& t, const std::vector<std::string>& slots) { emit(t, slots); }

  Element eval(const AtomStructure& A, const Element* env) const {
    Element stack[64];
    int sp = 0;
    for (const Instr& in : code_) {
      switch (in.op) {
        case TermOp::Var: stack[sp++] = env[in.slot]; break;
        case TermOp::Zero: stack[sp++] = Element{}; break;
        case TermOp::One: stack[sp++] = A.top(); break;
        case TermOp::Ident: stack[sp++] = A.identity(); break;
        case TermOp::Diver: stack[sp++] = A.diversity(); break;
        case TermOp::Join: --sp; stack[sp - 1] = stack[sp - 1] | stack[sp]; break;
        case TermOp::Meet: --sp; stack[sp - 1] = stack[sp - 1] & stack[sp]; break;
        case TermOp::Compose: --sp; stack[sp - 1] = A.compose(stack[sp - 1], stack[sp]); break;
        case TermOp::Complement: stack[sp - 1] = A.complement(stack[sp - 1]); break;
        case TermOp::Converse: stack[sp - 1] = A.converse(stack[sp - 1]); break;
        case TermOp::Dom: stack[sp - 1] = A.dom(stack[sp - 1]); break;
        case TermOp::Rng: stack[sp - 1] = A.rng(stack[sp - 1]); break;
      }
    }
    return stack[0];
  }

 private:
  struct Instr {
    TermOp op;
    std::size_t slot;
  };
  int emit(const Term& t, const std::vector<std::string>& slots) {
    int depth = 1;
    switch (t.op()) {
      case TermOp::Var: {
        auto it = std::find(slots.begin(), slots.end(), t.name());
        if (it == slots.end()) throw PreconditionError("unbound variable '" + t.name() + "'");
        code_.push_back({TermOp::Var, static_cast<std::size_t>(it - slots.begin())});
        break;
      }
      case TermOp::Join: case TermOp::Meet: case TermOp::Compose: {
        const int l = emit(t.lhs(), slots);
        const int r = emit(t.rhs(), slots);
        depth = std::max(l, r + 1);
        code_.push_back({t.op(), 0});
        break;
      }
      case TermOp::Complement: case TermOp::Converse: case TermOp::Dom: case TermOp::Rng:
        depth = emit(t.lhs(), slots);
        code_.push_back({t.op(), 0});
        break;
      default: code_.push_back({t.op(), 0}); break;
    }
    if (depth >= 64) throw PreconditionError("term nesting too deep");
    return depth;
  }
  std::vector<Instr> code_;
};

using Env = std::map<std::string, Element>;

inline Element eval_term(const AtomStructure& A, const Term& t, const Env& env) {
  std::vector<std::string> slots;
  std::vector<Element> values;
  for (const std::string& v : t.variables()) {
    auto it = env.find(v);
    if (it == env.end()) throw PreconditionError("unbound variable '" + v + "'");
    slots.push_back(v);
    values.push_back(it->second);
  }
  return CompiledTerm(t, slots).eval(A, values.data());
}

inline Element eval_term(const AtomStructure& A, std::string_view src, const Env& env = {}) {
  return eval_term(A, parse_term(src), env);
}

}  // namespace relalg
