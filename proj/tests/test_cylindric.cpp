#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "relalg/cylindric.hpp"
#include "relalg/enumerate.hpp"

using namespace relalg;

namespace {

constexpr AtomId e = 0, d = 1;

std::vector<AtomStructure> small_wa(std::size_t max_atoms) {
  std::vector<AtomStructure> out;
  for (std::size_t n = 1; n <= max_atoms; ++n)
    for_each_structure(n, [&](const AtomStructure& A) {
      if (classify(A).isWA) out.push_back(A);
    });
  return out;
}

CylElement of(const SuitableStructure& S, std::initializer_list<STriple> ts) {
  CylElement x = S.empty();
  for (const STriple& t : ts) x.set(*S.index(t));
  return x;
}

SuitableStructure without_e10_entry() {
  const SuitableStructure good = build_suitable(fixtures::a2());
  std::array<std::array<std::vector<STriple>, 3>, 3> E;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) {
      const CylElement& x = good.E(k, l);
      for (std::size_t i = x.find_first(); i != CylElement::npos; i = x.find_next(i)) E[k][l].push_back(good.triple(i));
    }
  E[1][0].erase(std::find(E[1][0].begin(), E[1][0].end(), STriple{{d, d, e}}));
  return SuitableStructure(good.algebra(), good.triples(), E);
}

}  // namespace

TEST(Subst, IsCylindrifiedDiagonalMeet) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = 0; l < 3; ++l) {
        const CylElement x = S.singleton(i);
        EXPECT_EQ(cm_subst(S, k, l, x), k == l ? x : S.cyl(k, S.E(k, l) & x));
      }
}

TEST(Mgr, A2FeaturedInstance) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  const CylElement t = of(S, {{{d, d, d}}});
  const CylElement want = of(S, {{{e, d, d}}, {{d, e, d}}, {{d, d, d}}});
  EXPECT_EQ(mgr_side(S, 2, 0, 1, t), want);
  EXPECT_EQ(mgr_side(S, 2, 1, 0, t), want);
}

TEST(Functions, A2SingletonIdentities) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  const CylElement t = of(S, {{{d, e, d}}});
  EXPECT_EQ(S.E(1, 0) & S.cyl(0, t), of(S, {{{d, d, e}}}));
  EXPECT_EQ(S.E(2, 0) & S.cyl(0, t), of(S, {{{d, e, d}}}));
  EXPECT_TRUE(check_functions(S).pass);
}

TEST(Na3, BrokenDiagonalIsReported) {
  const SuitableStructure S = without_e10_entry();
  const Na3Report r = check_na3(S);
  EXPECT_FALSE(r.axioms.passed("C6"));
  EXPECT_TRUE(r.axioms.passed("C4*"));
  EXPECT_FALSE(check_mgr2(S).find("MGR2")->pass);
  const CheckOutcome f = check_functions(S);
  EXPECT_FALSE(f.pass);
  EXPECT_FALSE(f.witness.empty());
}

TEST(Na3, SamplesStartWithSingletons) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  const auto xs = sample_subsets(S, 3, 10);
  ASSERT_EQ(xs.size(), S.size() + 10);
  for (std::size_t i = 0; i < S.size(); ++i) EXPECT_EQ(xs[i], S.singleton(i));
  EXPECT_EQ(sample_subsets(S, 3, 10), xs);
}

TEST(Rc, A2DiagonalsAndAtoms) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  const BoundedUniverse U = build_universe(S, 2);
  const RcAlgebra rc = rc_build(U);
  RcElement seen = rc.empty();
  for (std::uint32_t t = 0; t < S.size(); ++t) {
    EXPECT_TRUE(rc.atom(t).any());
    EXPECT_TRUE((seen & rc.atom(t)).none());
    seen |= rc.atom(t);
  }
  EXPECT_EQ(seen, rc.full());
  const RcElement& d01 = rc.diag(0, 1);
  for (std::size_t i = 0; i < rc.size(); ++i) EXPECT_EQ(d01.test(i), U.triple(i).u[0] == U.triple(i).u[1]);
  EXPECT_EQ(rc.cyl(2, rc.empty()), rc.empty());
}

TEST(Property, Na3AndMgrOnEveryWA) {
  for (const AtomStructure& A : small_wa(3)) {
    const SuitableStructure S = build_suitable(A);
    const Na3Report r = check_na3(S);
    for (const auto& c : r.axioms.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
    for (const auto& c : check_mgr2(S).checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
    const CheckOutcome f = check_functions(S);
    EXPECT_TRUE(f.pass) << f.witness;
  }
}

// Observed oracle: full commutativity of cylindrifications holds exactly on the RA structures here.
TEST(Property, CommutativityTracksAssociativity) {
  std::size_t fails = 0;
  for (const AtomStructure& A : small_wa(3)) {
    const bool c4 = check_na3(build_suitable(A)).c4.pass;
    EXPECT_EQ(c4, classify(A).isRA);
    fails += !c4;
  }
  EXPECT_EQ(fails, 5u);
}

TEST(Property, BoundedRepresentationOfCmB) {
  for (const AtomStructure& A : small_wa(3)) {
    const SuitableStructure S = build_suitable(A);
    for (std::size_t L : {2u, 3u}) {
      const BoundedUniverse U = build_universe(S, L);
      const RcAlgebra rc = rc_build(U);
      for (const auto& c : check_th4_bounded(rc).checks) EXPECT_TRUE(c.pass) << c.name << " L=" << L << ": " << c.witness;
    }
  }
}
