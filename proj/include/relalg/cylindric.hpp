#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "relalg/check_report.hpp"
#include "relalg/suitable.hpp"
#include "relalg/trails.hpp"

namespace relalg {

// Cm B: cylindrifications T*_k, diagonals E_kl, substitutions s^k_l x = c_k(d_kl . x).
inline CylElement cm_cyl(const SuitableStructure& S, std::size_t k, const CylElement& x) { return S.cyl(k, x); }
inline const CylElement& cm_diag(const SuitableStructure& S, std::size_t k, std::size_t l) { return S.E(k, l); }
inline CylElement cm_subst(const SuitableStructure& S, std::size_t k, std::size_t l, const CylElement& x) {
  if (k == l) return x;
  return S.cyl(k, S.E(k, l) & x);
}

inline constexpr std::size_t kDefaultRandomSubsets = 64;

// Singletons first, then seeded random subsets.
inline std::vector<CylElement> sample_subsets(const SuitableStructure& S, std::uint64_t seed, std::size_t random_count) {
  std::vector<CylElement> out;
  for (std::size_t i = 0; i < S.size(); ++i) out.push_back(S.singleton(i));
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < random_count && S.size() > 0; ++r) {
    CylElement x = S.empty();
    for (std::size_t i = 0; i < S.size(); ++i)
      if (rng() & 1) x.set(i);
    out.push_back(x);
  }
  return out;
}

struct Na3Report {
  CheckReport axioms;  // C1-C3, C4*, C5-C7
  CheckOutcome c4;     // full commutativity; recorded, not required
  std::size_t samples = 0;
};

inline Na3Report check_na3(const SuitableStructure& S, std::uint64_t seed = 1, std::size_t random_count = kDefaultRandomSubsets) {
  Na3Report rep;
  const auto xs = sample_subsets(S, seed, random_count);
  rep.samples = xs.size();
  auto k_str = [](std::size_t k) { return std::to_string(k); };

  CheckOutcome c1{"C1", true, {}, {}}, c2{"C2", true, {}, {}}, c3{"C3", true, {}, {}}, c4s{"C4*", true, {}, {}};
  CheckOutcome c5{"C5", true, {}, {}}, c6{"C6", true, {}, {}}, c7{"C7", true, {}, {}};
  rep.c4 = CheckOutcome{"C4", true, {}, "recorded only"};
  for (std::size_t k = 0; k < 3; ++k) {
    if (S.cyl(k, S.empty()).any()) c1.fail("c" + k_str(k) + "0 != 0");
    if (S.E(k, k) != S.full()) c5.fail("d" + k_str(k) + k_str(k) + " != 1");
  }
  for (const CylElement& x : xs)
    for (std::size_t k = 0; k < 3; ++k) {
      const CylElement ckx = S.cyl(k, x);
      if (!x.is_subset_of(ckx)) c2.fail("x not below c" + k_str(k) + "x at x = " + S.format(x));
      for (const CylElement& y : xs) {
        if (S.cyl(k, x & S.cyl(k, y)) != (ckx & S.cyl(k, y)))
          c3.fail("c" + k_str(k) + "(x.c" + k_str(k) + "y) at x = " + S.format(x) + ", y = " + S.format(y));
      }
      for (std::size_t l = 0; l < 3; ++l) {
        const CylElement kl = S.cyl(k, S.cyl(l, x)), lk = S.cyl(l, S.cyl(k, x));
        if (kl != lk) rep.c4.fail("c" + k_str(k) + "c" + k_str(l) + "x != c" + k_str(l) + "c" + k_str(k) + "x at x = " + S.format(x));
        for (std::size_t m = 0; m < 3; ++m) {
          if (m == k || m == l) continue;
          if (!(lk & S.E(l, m)).is_subset_of(kl))
            c4s.fail("c" + k_str(k) + "c" + k_str(l) + "x >= c" + k_str(l) + "c" + k_str(k) + "x.d" + k_str(l) + k_str(m) + " fails at x = " + S.format(x));
        }
        if (k != l) {
          const CylElement both = S.cyl(k, S.E(k, l) & x) & S.cyl(k, S.E(k, l) & ~x);
          if (both.any()) c7.fail("c" + k_str(k) + "(d" + k_str(k) + k_str(l) + ".x).c" + k_str(k) + "(d" + k_str(k) + k_str(l) + ".-x) != 0 at x = " + S.format(x));
        }
      }
    }
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t m = 0; m < 3; ++m) {
        if (l == k || l == m) continue;
        if (S.E(k, m) != S.cyl(l, S.E(k, l) & S.E(l, m)))
          c6.fail("d" + k_str(k) + k_str(m) + " != c" + k_str(l) + "(d" + k_str(k) + k_str(l) + ".d" + k_str(l) + k_str(m) + ")");
      }
  for (auto* c : {&c1, &c2, &c3, &c4s, &c5, &c6, &c7}) rep.axioms.add(*c);
  return rep;
}

// T*_k(E_kl n T*_l(E_lm n T*_m(E_mk n T*_k X))).
inline CylElement mgr_side(const SuitableStructure& S, std::size_t k, std::size_t l, std::size_t m, const CylElement& x) {
  return S.cyl(k, S.E(k, l) & S.cyl(l, S.E(l, m) & S.cyl(m, S.E(m, k) & S.cyl(k, x))));
}

// s^k_l s^l_m s^m_k c_k x through the substitution operators.
inline CylElement mgr_subst_side(const SuitableStructure& S, std::size_t k, std::size_t l, std::size_t m, const CylElement& x) {
  return cm_subst(S, k, l, cm_subst(S, l, m, cm_subst(S, m, k, S.cyl(k, x))));
}

inline CheckReport check_mgr2(const SuitableStructure& S, std::uint64_t seed = 1, std::size_t random_count = kDefaultRandomSubsets) {
  CheckReport rep;
  CheckOutcome eq{"MGR2", true, {}, {}}, subst{"MGR2.subst", true, {}, {}}, featured{"MGR2.featured", true, {}, {}};
  const auto xs = sample_subsets(S, seed, random_count);
  const std::array<std::array<std::size_t, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& [k, l, m] : perms)
    for (const CylElement& x : xs) {
      const CylElement lhs = mgr_side(S, k, l, m, x), rhs = mgr_side(S, k, m, l, x);
      if (lhs != rhs)
        eq.fail("(k,l,m) = (" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + ") at x = " + S.format(x) +
                ": " + S.format(lhs) + " vs " + S.format(rhs));
      if (mgr_subst_side(S, k, l, m, x) != lhs) subst.fail("substitution form differs at x = " + S.format(x));
    }
  const AtomStructure& A = S.algebra();
  for (std::size_t i = 0; i < S.size(); ++i) {
    CylElement want = S.empty();
    for (std::size_t j = 0; j < S.size(); ++j)
      if (S.triple(j)[2] == A.converse(S.triple(i)[2])) want.set(j);
    const CylElement x = S.singleton(i);
    if (mgr_side(S, 2, 0, 1, x) != want || mgr_side(S, 2, 1, 0, x) != want)
      featured.fail("t = " + S.format(S.triple(i)) + ": sides differ from {s : s2 = t2~}");
  }
  rep.add(eq);
  rep.add(subst);
  rep.add(featured);
  return rep;
}

// The six singleton identities E_kl n T*_m{t} = {forced triple}.
inline CheckOutcome check_functions(const SuitableStructure& S) {
  CheckOutcome c{"functions", true, {}, {}};
  const AtomStructure& A = S.algebra();
  for (std::size_t i = 0; i < S.size(); ++i) {
    const STriple& t = S.triple(i);
    const CylElement x = S.singleton(i);
    struct Item {
      const char* name;
      std::size_t k, l, m;
      STriple rhs;
    };
    const std::array<Item, 6> items{{
        {"i", 1, 0, 0, {{t[0], t[0], dom_atom(A, t[0])}}},
        {"ii", 0, 1, 1, {{t[1], t[1], dom_atom(A, t[1])}}},
        {"iii", 1, 2, 2, {{rng_atom(A, t[2]), t[2], t[2]}}},
        {"iv", 2, 1, 1, {{rng_atom(A, t[1]), t[1], t[1]}}},
        {"v", 0, 2, 2, {{A.converse(t[2]), dom_atom(A, t[2]), t[2]}}},
        {"vi", 2, 0, 0, {{t[0], rng_atom(A, t[0]), A.converse(t[0])}}},
    }};
    for (const Item& it : items) {
      const CylElement lhs = S.E(it.k, it.l) & S.cyl(it.m, x);
      const auto j = S.index(it.rhs);
      if (!j || lhs.count() != 1 || !lhs.test(*j))
        c.fail(std::string("(") + it.name + ") at t = " + S.format(t) + ": " + S.format(lhs) + " vs {" + S.format(it.rhs) + "}");
    }
  }
  return c;
}

using RcElement = boost::dynamic_bitset<>;

// Rc B on the bounded V: relativized cylindrifications and diagonals over triples of points.
class RcAlgebra {
 public:
  explicit RcAlgebra(BoundedUniverse&&) = delete;
  explicit RcAlgebra(const BoundedUniverse& U) : U_(&U) {
    const std::size_t nv = U.triple_count();
    for (std::size_t k = 0; k < 3; ++k) {
      group_of_[k].resize(nv);
      std::map<std::pair<PointId, PointId>, std::size_t> ids;
      for (std::size_t i = 0; i < nv; ++i) {
        const PointTriple& u = U.triple(i).u;
        std::pair<PointId, PointId> key = k == 0 ? std::pair{u[1], u[2]} : k == 1 ? std::pair{u[0], u[2]} : std::pair{u[0], u[1]};
        auto [it, fresh] = ids.try_emplace(key, groups_[k].size());
        if (fresh) groups_[k].emplace_back(nv);
        groups_[k][it->second].set(i);
        group_of_[k][i] = it->second;
      }
      for (std::size_t l = 0; l < 3; ++l) {
        diag_[k][l] = RcElement(nv);
        for (std::size_t i = 0; i < nv; ++i)
          if (U.triple(i).u[k] == U.triple(i).u[l]) diag_[k][l].set(i);
      }
    }
    atoms_.assign(U.structure().size(), RcElement(nv));
    for (std::size_t i = 0; i < nv; ++i) atoms_[U.triple(i).end].set(i);
  }

  const BoundedUniverse& universe() const { return *U_; }
  std::size_t size() const { return U_->triple_count(); }
  RcElement empty() const { return RcElement(size()); }
  RcElement full() const { return ~empty(); }
  // C_k X = {v in V : v agrees with some u in X off coordinate k}.
  RcElement cyl(std::size_t k, const RcElement& x) const {
    RcElement r = empty();
    std::vector<bool> used(groups_[k].size(), false);
    for (std::size_t i = x.find_first(); i != RcElement::npos; i = x.find_next(i)) {
      const std::size_t g = group_of_[k][i];
      if (used[g]) continue;
      used[g] = true;
      r |= groups_[k][g];
    }
    return r;
  }
  const RcElement& diag(std::size_t k, std::size_t l) const { return diag_[k][l]; }
  const RcElement& atom(std::uint32_t t) const { return atoms_[t]; }
  // R(X) = union of R_t over t in X.
  RcElement image(const CylElement& x) const {
    RcElement r = empty();
    for (std::size_t t = x.find_first(); t != CylElement::npos; t = x.find_next(t)) r |= atoms_[t];
    return r;
  }
  RcElement frontier() const {
    RcElement r = empty();
    for (std::size_t i = 0; i < size(); ++i)
      if (U_->frontier(i)) r.set(i);
    return r;
  }

 private:
  const BoundedUniverse* U_;
  std::array<std::vector<RcElement>, 3> groups_;
  std::array<std::vector<std::size_t>, 3> group_of_;
  std::array<std::array<RcElement, 3>, 3> diag_;
  std::vector<RcElement> atoms_;
};

inline RcAlgebra rc_build(const BoundedUniverse& U) { return RcAlgebra(U); }
RcAlgebra rc_build(BoundedUniverse&&) = delete;

inline CheckReport check_th4_bounded(const RcAlgebra& rc, std::uint64_t seed = 1, std::size_t random_count = kDefaultRandomSubsets) {
  CheckReport rep;
  const BoundedUniverse& U = rc.universe();
  const SuitableStructure& S = U.structure();
  const auto xs = sample_subsets(S, seed, random_count);

  CheckOutcome atoms{"th4.atoms", true, {}, {}};
  RcElement seen = rc.empty();
  for (std::uint32_t t = 0; t < S.size(); ++t) {
    if (rc.atom(t).none()) atoms.fail("R_t empty at t = " + S.format(S.triple(t)));
    if ((seen & rc.atom(t)).any()) atoms.fail("R_t overlaps an earlier atom at t = " + S.format(S.triple(t)));
    seen |= rc.atom(t);
  }
  if (seen != rc.full()) atoms.fail("union of R_t is not V");
  rep.add(atoms);

  CheckOutcome boolean{"th4.boolean", true, {}, {}};
  if (rc.image(S.empty()).any()) boolean.fail("R(0) != 0");
  if (rc.image(S.full()) != rc.full()) boolean.fail("R(B) != V");
  for (const CylElement& x : xs) {
    if (rc.image(~x) != (rc.full() - rc.image(x))) boolean.fail("R(-X) != V - R(X) at X = " + S.format(x));
    for (const CylElement& y : xs)
      if (rc.image(x | y) != (rc.image(x) | rc.image(y))) boolean.fail("R(X u Y) at X = " + S.format(x) + ", Y = " + S.format(y));
  }
  rep.add(boolean);

  CheckOutcome diag{"th4.diag", true, {}, {}};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l)
      if (rc.image(S.E(k, l)) != rc.diag(k, l)) diag.fail("R(E" + std::to_string(k) + std::to_string(l) + ") != D" + std::to_string(k) + std::to_string(l));
  rep.add(diag);

  // C_k R(X) <= R(T*_k X) holds exactly; the converse needs a one-step extension of a witness.
  CheckOutcome sub{"th4.cyl.sub", true, {}, {}}, sup{"th4.cyl.sup", true, {}, {}};
  const RcElement inner = ~rc.frontier();
  for (const CylElement& x : xs)
    for (std::size_t k = 0; k < 3; ++k) {
      const RcElement lhs = rc.cyl(k, rc.image(x)), rhs = rc.image(S.cyl(k, x));
      if (!lhs.is_subset_of(rhs)) sub.fail("C" + std::to_string(k) + "R(X) not below R(T*" + std::to_string(k) + "X) at X = " + S.format(x));
      if (!(rhs & inner).is_subset_of(lhs))
        sup.fail("R(T*" + std::to_string(k) + "X) not below C" + std::to_string(k) + "R(X) at X = " + S.format(x));
    }
  sup.note = "frontier triples excluded: " + std::to_string(rc.frontier().count());
  rep.add(sub);
  rep.add(sup);
  return rep;
}

}  // namespace relalg
