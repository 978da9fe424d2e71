#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relalg/atom_structure.hpp"
#include "relalg/term.hpp"

namespace relalg {

enum class Quantify { Atoms, Elements };

inline constexpr std::size_t kElementModeMaxAtoms = 16;

using Assignment = std::vector<std::pair<std::string, Element>>;

inline std::string format_assignment(const AtomStructure& A, const Assignment& w) {
  std::string s;
  for (const auto& [name, value] : w) {
    if (!s.empty()) s += ", ";
    s += name + "=" + A.format(value);
  }
  return s;
}

struct EquationResult {
  bool holds = true;
  Assignment witness;
  explicit operator bool() const { return holds; }
};

// Values a variable ranges over, ascending by bitmask.
inline std::vector<Element> quantifier_range(const AtomStructure& A, Quantify q) {
  std::vector<Element> out;
  const std::size_t n = A.atom_count();
  if (q == Quantify::Atoms) {
    for (AtomId a = 0; a < n; ++a) out.push_back(Element::atom(a));
  } else {
    if (n > kElementModeMaxAtoms)
      throw BudgetError("elements mode supports at most " + std::to_string(kElementModeMaxAtoms) + " atoms");
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) out.push_back(Element::from_bits(b));
  }
  return out;
}

// Calls f(values) for every assignment, first variable most significant; stops when f returns false.
template <class F>
bool for_each_assignment(const std::vector<std::vector<Element>>& ranges, F&& f) {
  std::vector<std::size_t> idx(ranges.size(), 0);
  std::vector<Element> vals(ranges.size());
  for (const auto& r : ranges)
    if (r.empty()) return true;
  for (;;) {
    for (std::size_t i = 0; i < ranges.size(); ++i) vals[i] = ranges[i][idx[i]];
    if (!f(vals)) return false;
    std::size_t k = ranges.size();
    while (k > 0) {
      --k;
      if (++idx[k] < ranges[k].size()) break;
      idx[k] = 0;
      if (k == 0) return true;
    }
    if (ranges.empty()) return true;
  }
}

inline EquationResult check_equation(const AtomStructure& A, const Term& lhs, const Term& rhs, Quantify mode) {
  std::vector<std::string> vars = lhs.variables();
  for (const std::string& v : rhs.variables())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  const CompiledTerm l(lhs, vars), r(rhs, vars);
  const std::vector<std::vector<Element>> ranges(vars.size(), quantifier_range(A, mode));
  EquationResult res;
  for_each_assignment(ranges, [&](const std::vector<Element>& vals) {
    if (l.eval(A, vals.data()) == r.eval(A, vals.data())) return true;
    res.holds = false;
    for (std::size_t i = 0; i < vars.size(); ++i) res.witness.emplace_back(vars[i], vals[i]);
    return false;
  });
  return res;
}

inline EquationResult check_equation(const AtomStructure& A, std::string_view lhs, std::string_view rhs, Quantify mode) {
  return check_equation(A, parse_term(lhs), parse_term(rhs), mode);
}

struct AxiomResult {
  std::string name;
  bool holds = true;
  // How the verdict was reached: "construction", "atoms", "identity-atoms", "elements".
  std::string method;
  Assignment witness;
};

struct ClassReport {
  bool isWA = false;
  bool isSA = false;
  bool isRA = false;
  std::vector<AxiomResult> axioms;

  std::vector<AxiomResult> failures() const {
    std::vector<AxiomResult> out;
    for (const AxiomResult& a : axioms)
      if (!a.holds) out.push_back(a);
    return out;
  }
  const AxiomResult* find(const std::string& name) const {
    for (const AxiomResult& a : axioms)
      if (a.name == name) return &a;
    return nullptr;
  }
  bool holds(const std::string& name) const {
    const AxiomResult* a = find(name);
    return a != nullptr && a->holds;
  }
};

struct ClassifyOptions {
  // Quantify ra4-ra10, the semi-associative law and associativity over all elements.
  bool elements_mode = false;
};

struct AxiomSpec {
  const char* name;
  const char* lhs;
  const char* rhs;
};

// ra5-ra10 plus the three variants of the associative law. Each side is additive in every
// variable except ra10, whose atom-mode check is still exact: a failure of
// x~;-(x;y) <= -y yields atoms a <= x, b <= y, c with b <= a~;c and c not below x;y,
// and then x={a}, y={b} already fail.
inline const std::vector<AxiomSpec>& ra_equations() {
  static const std::vector<AxiomSpec> eqs = {
      {"ra5", "(x + y);z", "x;z + y;z"},
      {"ra6", "x;1'", "x"},
      {"ra7", "x~~", "x"},
      {"ra8", "(x + y)~", "x~ + y~"},
      {"ra9", "(x;y)~", "y~;x~"},
      {"ra10", "x~;-(x;y) + -y", "-y"},
  };
  return eqs;
}

inline ClassReport classify(const AtomStructure& A, const ClassifyOptions& opt = {}) {
  ClassReport rep;
  for (const char* name : {"ra1", "ra2", "ra3"}) rep.axioms.push_back({name, true, "construction", {}});

  const Quantify mode = opt.elements_mode ? Quantify::Elements : Quantify::Atoms;
  const char* mode_name = opt.elements_mode ? "elements" : "atoms";

  AxiomResult ra4{"ra4", true, opt.elements_mode ? "elements" : "identity-atoms", {}};
  if (opt.elements_mode) {
    EquationResult r = check_equation(A, "((x * 1');1);1", "(x * 1');1", Quantify::Elements);
    ra4.holds = r.holds;
    ra4.witness = std::move(r.witness);
  } else {
    const Element one = A.top();
    for (AtomId u = 0; u < A.atom_count() && ra4.holds; ++u) {
      if (!A.is_identity(u)) continue;
      const Element u1 = A.compose(Element::atom(u), one);
      if (A.compose(u1, one) != u1) {
        ra4.holds = false;
        ra4.witness = {{"x", Element::atom(u)}};
      }
    }
  }
  rep.axioms.push_back(ra4);

  bool base = true;
  for (const AxiomSpec& ax : ra_equations()) {
    EquationResult r = check_equation(A, ax.lhs, ax.rhs, mode);
    base = base && r.holds;
    rep.axioms.push_back({ax.name, r.holds, mode_name, std::move(r.witness)});
  }

  EquationResult sa = check_equation(A, "(x;1);1", "x;1", mode);
  rep.axioms.push_back({"semi-assoc", sa.holds, mode_name, std::move(sa.witness)});
  EquationResult as = check_equation(A, "(x;y);z", "x;(y;z)", mode);
  rep.axioms.push_back({"assoc", as.holds, mode_name, std::move(as.witness)});

  rep.isWA = base && rep.holds("ra4");
  rep.isSA = base && rep.holds("semi-assoc");
  rep.isRA = base && rep.holds("assoc");
  return rep;
}

}  // namespace relalg
