#pragma once

#include <array>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relalg/check_report.hpp"
#include "relalg/classify.hpp"

namespace relalg {

// s = <s0,s1,s2> with s1 <= s2;s0.
struct STriple {
  std::array<AtomId, 3> s{};
  AtomId operator[](std::size_t k) const { return s[k]; }
  auto operator<=>(const STriple&) const = default;
};

// The only place where the two coordinate orders meet: s1 <= s2;s0 is the cycle fact (s2, s0, s1).
inline CycleTriple to_cycle(const STriple& t) { return {t[2], t[0], t[1]}; }
inline STriple from_cycle(const CycleTriple& c) { return {{c.y, c.z, c.x}}; }

using CylElement = boost::dynamic_bitset<>;

inline constexpr std::size_t other_index(std::size_t k, std::size_t l) { return 3 - k - l; }

class SuitableStructure {
 public:
  // B from the cycles of A, E from the lemma: E_kl = {s : s_m <= 1'} for k != l, E_kk = B.
  explicit SuitableStructure(const AtomStructure& A) : A_(A) {
    for (const CycleTriple& c : A.cycles()) B_.push_back(from_cycle(c));
    std::sort(B_.begin(), B_.end());
    index_b();
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = 0; l < 3; ++l) {
        E_[k][l] = empty();
        for (std::size_t i = 0; i < B_.size(); ++i)
          if (k == l || A_.is_identity(B_[i][other_index(k, l)])) E_[k][l].set(i);
      }
  }

  // Hand-built structure; E entries outside B are kept aside so check (i) can report them.
  SuitableStructure(const AtomStructure& A, std::vector<STriple> B, const std::array<std::array<std::vector<STriple>, 3>, 3>& E)
      : A_(A), B_(std::move(B)) {
    std::sort(B_.begin(), B_.end());
    B_.erase(std::unique(B_.begin(), B_.end()), B_.end());
    index_b();
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = 0; l < 3; ++l) {
        E_[k][l] = empty();
        for (const STriple& t : E[k][l]) {
          if (auto i = index(t)) E_[k][l].set(*i);
          else stray_.push_back({k, l, t});
        }
      }
  }

  const AtomStructure& algebra() const { return A_; }
  std::size_t size() const { return B_.size(); }
  const std::vector<STriple>& triples() const { return B_; }
  const STriple& triple(std::size_t i) const { return B_[i]; }
  std::optional<std::size_t> index(const STriple& t) const {
    auto it = std::lower_bound(B_.begin(), B_.end(), t);
    if (it == B_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - B_.begin());
  }
  bool contains(const STriple& t) const { return index(t).has_value(); }

  CylElement empty() const { return CylElement(B_.size()); }
  CylElement full() const { return ~empty(); }
  CylElement singleton(std::size_t i) const {
    CylElement x = empty();
    x.set(i);
    return x;
  }
  const CylElement& E(std::size_t k, std::size_t l) const { return E_[k][l]; }
  bool in_E(std::size_t i, std::size_t k, std::size_t l) const { return E_[k][l].test(i); }

  // T_k-class of triple i: all triples agreeing with it at coordinate k.
  const CylElement& t_class(std::size_t k, std::size_t i) const { return classes_[k][B_[i][k]]; }
  bool t_related(std::size_t k, std::size_t i, std::size_t j) const { return B_[i][k] == B_[j][k]; }

  // T*_k X = {y in B : y T_k x for some x in X}.
  CylElement cyl(std::size_t k, const CylElement& x) const {
    CylElement r = empty();
    std::vector<bool> used(A_.atom_count(), false);
    for (std::size_t i = x.find_first(); i != CylElement::npos; i = x.find_next(i)) {
      const AtomId a = B_[i][k];
      if (used[a]) continue;
      used[a] = true;
      r |= classes_[k][a];
    }
    return r;
  }

  struct Stray {
    std::size_t k, l;
    STriple t;
  };
  const std::vector<Stray>& stray() const { return stray_; }

  std::string format(const STriple& t) const {
    return "(" + A_.name(t[0]) + "," + A_.name(t[1]) + "," + A_.name(t[2]) + ")";
  }
  std::string format(const CylElement& x) const {
    std::string s = "{";
    for (std::size_t i = x.find_first(); i != CylElement::npos; i = x.find_next(i)) {
      if (s.size() > 1) s += ",";
      s += format(B_[i]);
    }
    return s + "}";
  }

 private:
  void index_b() {
    for (std::size_t k = 0; k < 3; ++k) {
      classes_[k].assign(A_.atom_count(), empty());
      for (std::size_t i = 0; i < B_.size(); ++i) classes_[k][B_[i][k]].set(i);
    }
  }

  AtomStructure A_;
  std::vector<STriple> B_;
  std::array<std::array<CylElement, 3>, 3> E_;
  std::array<std::vector<CylElement>, 3> classes_;
  std::vector<Stray> stray_;
};

inline SuitableStructure build_suitable(const AtomStructure& A) {
  if (!classify(A).isWA) throw PreconditionError("suitable structures are built only for WA");
  return SuitableStructure(A);
}

inline CheckReport check_suitable(const SuitableStructure& S) {
  CheckReport rep;
  CheckOutcome i{"i", true, {}, "E indexed by B; T implicit"};
  for (const auto& s : S.stray())
    i.fail("E" + std::to_string(s.k) + std::to_string(s.l) + " contains " + S.format(s.t) + " outside B");
  rep.add(i);

  // T_k is coordinate equality, hence reflexive, symmetric and transitive; verified literally anyway.
  CheckOutcome ii{"ii", true, {}, {}};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t x = 0; x < S.size(); ++x) {
      if (!S.t_related(k, x, x)) ii.fail("T" + std::to_string(k) + " not reflexive at " + S.format(S.triple(x)));
      for (std::size_t y = 0; y < S.size(); ++y) {
        if (S.t_related(k, x, y) != S.t_related(k, y, x)) ii.fail("T" + std::to_string(k) + " not symmetric");
        if (!S.t_related(k, x, y)) continue;
        const CylElement& cls = S.t_class(k, y);
        for (std::size_t z = cls.find_first(); z != CylElement::npos; z = cls.find_next(z))
          if (!S.t_related(k, x, z)) ii.fail("T" + std::to_string(k) + " not transitive");
      }
    }
  rep.add(ii);

  CheckOutcome iii{"iii", true, {}, {}};
  for (std::size_t k = 0; k < 3; ++k)
    if (S.E(k, k) != S.full()) iii.fail("E" + std::to_string(k) + std::to_string(k) + " = " + S.format(S.E(k, k)));
  rep.add(iii);

  CheckOutcome iv{"iv", true, {}, {}};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t m = 0; m < 3; ++m) {
        if (m == k || m == l) continue;
        const CylElement rhs = S.cyl(m, S.E(k, m) & S.E(m, l));
        if (rhs == S.E(k, l)) continue;
        const CylElement diff = rhs ^ S.E(k, l);
        iv.fail("E" + std::to_string(k) + std::to_string(l) + " != T*" + std::to_string(m) + "(E" + std::to_string(k) +
                std::to_string(m) + " & E" + std::to_string(m) + std::to_string(l) + ") at " + S.format(S.triple(diff.find_first())));
      }
  rep.add(iv);

  CheckOutcome v{"v", true, {}, {}};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) {
      if (k == l) continue;
      const CylElement& e = S.E(k, l);
      for (std::size_t x = e.find_first(); x != CylElement::npos; x = e.find_next(x)) {
        const CylElement both = S.t_class(k, x) & e;
        if (both.count() > 1) {
          std::size_t y = both.find_first();
          if (y == x) y = both.find_next(y);
          v.fail("T" + std::to_string(k) + " relates " + S.format(S.triple(x)) + " and " + S.format(S.triple(y)) + " in E" +
                 std::to_string(k) + std::to_string(l));
        }
      }
    }
  rep.add(v);
  return rep;
}

enum class TripleKind { Diversity, AIdentity, BIdentity, CIdentity, AllIdentity };

inline const char* to_string(TripleKind k) {
  switch (k) {
    case TripleKind::Diversity: return "diversity";
    case TripleKind::AIdentity: return "a-identity";
    case TripleKind::BIdentity: return "b-identity";
    case TripleKind::CIdentity: return "c-identity";
    case TripleKind::AllIdentity: return "all-identity";
  }
  return "?";
}

struct TripleClass {
  TripleKind kind;
  STriple normal_form;
};

// The atom dom x for an atom x of a WA.
inline AtomId dom_atom(const AtomStructure& A, AtomId x) { return A.dom(Element::atom(x)).lowest(); }
inline AtomId rng_atom(const AtomStructure& A, AtomId x) { return A.rng(Element::atom(x)).lowest(); }

// t = <b,c,a>: a <= 1' forces <b,b,dom b>, b <= 1' forces <rng a,a,a>, c <= 1' forces <a~,dom a,a>.
inline TripleClass classify_triple(const SuitableStructure& S, const STriple& t) {
  if (!S.contains(t)) throw PreconditionError("triple " + S.format(t) + " is not in B");
  const AtomStructure& A = S.algebra();
  const AtomId b = t[0], c = t[1], a = t[2];
  const int ids = A.is_identity(a) + A.is_identity(b) + A.is_identity(c);
  TripleClass out{TripleKind::Diversity, t};
  if (ids >= 2) {
    out.kind = TripleKind::AllIdentity;
    out.normal_form = {{b, b, b}};
  } else if (A.is_identity(a)) {
    out.kind = TripleKind::AIdentity;
    out.normal_form = {{b, b, dom_atom(A, b)}};
  } else if (A.is_identity(b)) {
    out.kind = TripleKind::BIdentity;
    out.normal_form = {{rng_atom(A, a), a, a}};
  } else if (A.is_identity(c)) {
    out.kind = TripleKind::CIdentity;
    out.normal_form = {{A.converse(a), dom_atom(A, a), a}};
  }
  if (out.normal_form != t) throw InternalError("triple " + S.format(t) + " differs from its forced form " + S.format(out.normal_form));
  return out;
}

// C(b,c,a): the six triples generated from <b,c,a>.
inline std::array<STriple, 6> cycle_of(const AtomStructure& A, const STriple& t) {
  const AtomId b = t[0], c = t[1], a = t[2];
  auto cv = [&](AtomId x) { return A.converse(x); };
  return {{{{b, c, a}}, {{c, b, cv(a)}}, {{cv(c), cv(a), b}}, {{cv(a), cv(c), cv(b)}}, {{a, cv(b), cv(c)}}, {{cv(b), a, c}}}};
}

}  // namespace relalg
