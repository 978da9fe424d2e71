#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relalg/classify.hpp"

namespace relalg {

inline constexpr std::size_t kSubsetLawMaxAtoms = 12;

enum class PredKind { Eq, Le, NonZero, IsAtom };

struct Pred {
  PredKind kind;
  Term lhs;
  Term rhs;
};

// Accepts "s = t", "s <= t", "s >= t", "s != 0" and "atom s".
inline Pred parse_pred(const std::string& src) {
  if (src.rfind("atom ", 0) == 0) return {PredKind::IsAtom, parse_term(src.substr(5)), Term::zero()};
  auto split = [&](const std::string& op) {
    const std::size_t at = src.find(op);
    return std::pair{parse_term(src.substr(0, at)), parse_term(src.substr(at + op.size()))};
  };
  if (src.find("!=") != std::string::npos) {
    auto [l, r] = split("!=");
    if (r.op() != TermOp::Zero) throw ParseError(1, "only '!= 0' is supported: " + src);
    return {PredKind::NonZero, l, r};
  }
  if (src.find("<=") != std::string::npos) {
    auto [l, r] = split("<=");
    return {PredKind::Le, l, r};
  }
  if (src.find(">=") != std::string::npos) {
    auto [l, r] = split(">=");
    return {PredKind::Le, r, l};
  }
  auto [l, r] = split("=");
  return {PredKind::Eq, l, r};
}

struct LawResult {
  std::string name;
  bool holds = true;
  Assignment witness;
  // Set when the law was not evaluated (size guard).
  std::string skipped;
};

struct LawReport {
  std::vector<LawResult> laws;
  bool all_hold() const {
    for (const LawResult& l : laws)
      if (!l.holds) return false;
    return true;
  }
  const LawResult* find(const std::string& name) const {
    for (const LawResult& l : laws)
      if (l.name == name) return &l;
    return nullptr;
  }
};

// A universally quantified law: premises imply each conclusion, or, when `iff` is set,
// all conclusions are equivalent.
struct Law {
  std::string name;
  std::vector<std::string> vars;
  Quantify range = Quantify::Elements;
  std::vector<std::string> premises;
  std::vector<std::string> conclusions;
  bool iff = false;
  std::function<LawResult(const AtomStructure&)> custom{};
};

namespace detail {

class CompiledPred {
 public:
  CompiledPred(const Pred& p, const std::vector<std::string>& vars)
      : kind_(p.kind), l_(p.lhs, vars), r_(p.rhs, vars) {}
  bool eval(const AtomStructure& A, const Element* env) const {
    const Element a = l_.eval(A, env);
    switch (kind_) {
      case PredKind::Eq: return a == r_.eval(A, env);
      case PredKind::Le: return a.subset_of(r_.eval(A, env));
      case PredKind::NonZero: return !a.empty();
      case PredKind::IsAtom: return a.is_atom();
    }
    return false;
  }

 private:
  PredKind kind_;
  CompiledTerm l_, r_;
};

inline LawResult check_law(const AtomStructure& A, const Law& law) {
  if (law.custom) return law.custom(A);
  std::vector<CompiledPred> prem, concl;
  for (const std::string& s : law.premises) prem.emplace_back(parse_pred(s), law.vars);
  for (const std::string& s : law.conclusions) concl.emplace_back(parse_pred(s), law.vars);
  const std::vector<std::vector<Element>> ranges(law.vars.size(), quantifier_range(A, law.range));
  LawResult res{law.name, true, {}, {}};
  for_each_assignment(ranges, [&](const std::vector<Element>& vals) {
    for (const CompiledPred& p : prem)
      if (!p.eval(A, vals.data())) return true;
    bool ok = true;
    if (law.iff) {
      const bool first = concl.front().eval(A, vals.data());
      for (const CompiledPred& c : concl) ok = ok && c.eval(A, vals.data()) == first;
    } else {
      for (const CompiledPred& c : concl) ok = ok && c.eval(A, vals.data());
    }
    if (ok) return true;
    res.holds = false;
    for (std::size_t i = 0; i < law.vars.size(); ++i) res.witness.emplace_back(law.vars[i], vals[i]);
    return false;
  });
  return res;
}

// z ; (sum X) = sum { z;x : x in X } and (sum X)~ = sum { x~ : x in X } over sets X of atoms.
inline LawResult check_subset_law(const AtomStructure& A, const std::string& name, bool compose_law) {
  LawResult res{name, true, {}, {}};
  const std::size_t n = A.atom_count();
  if (n > kSubsetLawMaxAtoms) {
    res.skipped = "more than " + std::to_string(kSubsetLawMaxAtoms) + " atoms";
    return res;
  }
  const std::vector<Element> zs = compose_law ? quantifier_range(A, Quantify::Elements) : std::vector<Element>{Element{}};
  for (Element z : zs) {
    for (std::uint64_t bits = compose_law ? 0 : 1; bits < (std::uint64_t{1} << n); ++bits) {
      const Element X = Element::from_bits(bits);
      Element sum;
      X.for_each([&](AtomId a) {
        sum |= compose_law ? A.compose(z, Element::atom(a)) : A.converse(Element::atom(a));
      });
      const Element lhs = compose_law ? A.compose(z, X) : A.converse(X);
      if (lhs != sum) {
        res.holds = false;
        if (compose_law) res.witness.emplace_back("z", z);
        res.witness.emplace_back("sum X", X);
        return res;
      }
    }
  }
  return res;
}

}  // namespace detail

inline const std::vector<Law>& elementary_laws() {
  using Q = Quantify;
  static const std::vector<Law> laws = {
      {"1'sym", {}, Q::Elements, {}, {"1'~ = 1'"}},
      {"1sym", {}, Q::Elements, {}, {"1~ = 1"}},
      {"0sym", {}, Q::Elements, {}, {"0~ = 0"}},
      {"conmon", {"x", "y"}, Q::Elements, {"x <= y"}, {"x~ <= y~"}},
      {"rightmon", {"x", "y", "z"}, Q::Elements, {"x <= y"}, {"x;z <= y;z"}},
      {"dual5", {"x", "y", "z"}, Q::Elements, {}, {"z;(x + y) = z;x + z;y"}},
      {"leftmon", {"x", "y", "z"}, Q::Elements, {"x <= y"}, {"z;x <= z;y"}},
      {"x;0", {"x"}, Q::Elements, {}, {"x;0 = 0"}},
      {"0;x", {"x"}, Q::Elements, {}, {"0;x = 0"}},
      {"leftid", {"x"}, Q::Elements, {}, {"1';x = x"}},
      {"zx1766", {"x", "y", "z"}, Q::Elements, {}, {"x;y * z = x;(y * x~;z) * z", "x;y * z = (x * z;y~);y * z"}},
      {"zx1761", {"x", "y", "z"}, Q::Elements, {}, {"x;y * z <= x;(y * x~;z)"}},
      {"zx1762", {"x", "y", "z"}, Q::Elements, {}, {"y;x * z <= (y * z;x~);x"}},
      {"cycle1", {"x", "y", "z"}, Q::Elements, {"x;y * z != 0"}, {"y * x~;z != 0"}},
      {"cycle2", {"x", "y", "z"}, Q::Elements, {"y;x * z != 0"}, {"y * z;x~ != 0"}},
      {"zx1850", {"u", "v"}, Q::Elements, {"u <= 1'", "v <= 1'"}, {"u * v = u;v"}},
      {"zx1849a", {"u"}, Q::Elements, {"u <= 1'"}, {"u <= u~"}},
      {"zx1849", {"u"}, Q::Elements, {"u <= 1'"}, {"u~ = u"}},
      {"zx1861", {"u", "x"}, Q::Elements, {"u <= 1'"}, {"u;x = x * u;1"}},
      {"zx1699", {}, Q::Elements, {}, {}, false,
       [](const AtomStructure& A) { return detail::check_subset_law(A, "zx1699", false); }},
      {"ca", {}, Q::Elements, {}, {}, false,
       [](const AtomStructure& A) { return detail::check_subset_law(A, "ca", true); }},
      {"1(36)", {"x"}, Q::Atoms, {}, {"atom x~"}},
      {"cyclelaw", {"x", "y", "z"}, Q::Atoms, {},
       {"x;y >= z", "x~;z >= y", "y;z~ >= x~", "y~;x~ >= z~", "z~;x >= y~", "z;y~ >= x"}, true},
      {"domrng", {"x"}, Q::Elements, {}, {"dom x = x;x~ * 1'", "rng x = x~;x * 1'"}},
      {"condomrng", {"x"}, Q::Elements, {}, {"dom x~ = rng x", "rng x~ = dom x"}},
      {"zx1867", {"x"}, Q::Elements, {}, {"x = (dom x);x", "x = x;rng x"}},
      {"domid", {"u"}, Q::Elements, {"u <= 1'"}, {"dom u = u", "rng u = u"}},
      {"zx1880", {"u", "x", "y"}, Q::Elements, {"u <= 1'"}, {"(u;x);y = u;(x;y)"}},
      {"zx1882", {"u", "x", "y"}, Q::Elements, {"u <= 1'"}, {"(x;u);y <= x;(u;y)"}},
      {"zx1883", {"u", "v", "x", "y"}, Q::Elements, {"u <= 1'", "v <= 1'"}, {"(x;u);(v;y) <= x;((u * v);y)"}},
      {"zx1890", {"x"}, Q::Atoms, {}, {"atom dom x", "atom rng x"}},
      {"zx1891", {"x", "y"}, Q::Atoms, {"x;y != 0"}, {"rng x = dom y"}},
      {"1(39)", {"u", "x"}, Q::Atoms, {"u <= 1'", "u;x != 0"}, {"u = dom x"}},
  };
  return laws;
}

struct LawSuiteOptions {
  // Skip the precondition check; used to observe which laws fail outside WA.
  bool require_wa = true;
};

inline LawReport elementary_law_suite(const AtomStructure& A, const LawSuiteOptions& opt = {}) {
  if (opt.require_wa && !classify(A).isWA) throw PreconditionError("elementary law suite requires a WA");
  LawReport rep;
  for (const Law& law : elementary_laws()) rep.laws.push_back(detail::check_law(A, law));
  return rep;
}

}  // namespace relalg
