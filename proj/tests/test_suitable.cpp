#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "relalg/enumerate.hpp"
#include "relalg/suitable.hpp"

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

std::set<STriple> members(const SuitableStructure& S, const CylElement& x) {
  std::set<STriple> out;
  for (std::size_t i = x.find_first(); i != CylElement::npos; i = x.find_next(i)) out.insert(S.triple(i));
  return out;
}

std::array<std::array<std::vector<STriple>, 3>, 3> e_table(const SuitableStructure& S) {
  std::array<std::array<std::vector<STriple>, 3>, 3> E;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) {
      const auto m = members(S, S.E(k, l));
      E[k][l].assign(m.begin(), m.end());
    }
  return E;
}

}  // namespace

TEST(Build, SmallestAlgebra) {
  const SuitableStructure S = build_suitable(fixtures::a1());
  ASSERT_EQ(S.size(), 1u);
  EXPECT_EQ(S.triple(0), (STriple{{0, 0, 0}}));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(S.E(k, l), S.full());
}

TEST(Build, A2Triples) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  const std::set<STriple> want{{{e, e, e}}, {{d, d, e}}, {{e, d, d}}, {{d, e, d}}, {{d, d, d}}};
  EXPECT_EQ(std::set<STriple>(S.triples().begin(), S.triples().end()), want);
  EXPECT_EQ(members(S, S.E(0, 1)), (std::set<STriple>{{{e, e, e}}, {{d, d, e}}}));
  EXPECT_EQ(S.E(0, 0), S.full());
  EXPECT_TRUE(check_suitable(S).all_pass());
}

TEST(Build, CoordinateOrderRoundTrips) {
  const AtomStructure A = fixtures::a2();
  for (const CycleTriple& c : A.cycles()) {
    const STriple s = from_cycle(c);
    EXPECT_EQ(to_cycle(s), c);
    // s1 <= s2;s0
    EXPECT_TRUE(A.product(s[2], s[0]).contains(s[1]));
  }
}

TEST(Build, RejectsNonWA) {
  EXPECT_THROW(build_suitable(fixtures::no_identity()), PreconditionError);
}

TEST(Check, AsymmetricDiagonalFailsIv) {
  const SuitableStructure good = build_suitable(fixtures::a2());
  auto E = e_table(good);
  E[1][0].erase(std::find(E[1][0].begin(), E[1][0].end(), STriple{{d, d, e}}));
  const SuitableStructure bad(good.algebra(), good.triples(), E);
  const CheckReport r = check_suitable(bad);
  EXPECT_TRUE(r.find("i")->pass);
  ASSERT_FALSE(r.find("iv")->pass);
  EXPECT_FALSE(r.find("iv")->witness.empty());
}

TEST(Check, StrayEntryFailsI) {
  const SuitableStructure good = build_suitable(fixtures::a2());
  auto E = e_table(good);
  std::vector<STriple> B = good.triples();
  B.erase(std::find(B.begin(), B.end(), STriple{{d, d, d}}));
  E[0][2].push_back({{d, d, d}});
  const SuitableStructure bad(good.algebra(), B, E);
  EXPECT_FALSE(check_suitable(bad).find("i")->pass);
}

TEST(Check, EmptyBase) {
  const SuitableStructure S(fixtures::a2(), {}, {});
  const CheckReport r = check_suitable(S);
  EXPECT_TRUE(r.all_pass());
}

TEST(Check, NonInjectiveDiagonalFailsV) {
  const SuitableStructure good = build_suitable(fixtures::a2());
  auto E = e_table(good);
  E[0][1].push_back({{d, e, d}});
  E[1][0].push_back({{d, e, d}});
  const SuitableStructure bad(good.algebra(), good.triples(), E);
  EXPECT_FALSE(check_suitable(bad).find("v")->pass);
}

TEST(Classify, A2Forms) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  const TripleClass c = classify_triple(S, {{d, d, e}});
  EXPECT_EQ(c.kind, TripleKind::AIdentity);
  EXPECT_EQ(c.normal_form, (STriple{{d, d, e}}));
  EXPECT_EQ(classify_triple(S, {{e, e, e}}).kind, TripleKind::AllIdentity);
  EXPECT_EQ(classify_triple(S, {{d, d, d}}).kind, TripleKind::Diversity);
  EXPECT_EQ(classify_triple(S, {{e, d, d}}).kind, TripleKind::BIdentity);
  EXPECT_EQ(classify_triple(S, {{d, e, d}}).kind, TripleKind::CIdentity);
}

TEST(Classify, RejectsTripleOutsideB) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  EXPECT_THROW(classify_triple(S, {{e, e, d}}), PreconditionError);
}

TEST(Cyl, A2CoordinateClasses) {
  const SuitableStructure S = build_suitable(fixtures::a2());
  EXPECT_TRUE(S.cyl(0, S.empty()).none());
  const CylElement c = S.cyl(2, S.singleton(*S.index({{d, d, d}})));
  EXPECT_EQ(members(S, c), (std::set<STriple>{{{e, d, d}}, {{d, e, d}}, {{d, d, d}}}));
}

TEST(Property, SuitableOnEveryWA) {
  for (const AtomStructure& A : small_wa(3)) {
    const CheckReport r = check_suitable(build_suitable(A));
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
  }
}

TEST(Property, BIsUnionOfCycles) {
  for (const AtomStructure& A : small_wa(3)) {
    const SuitableStructure S = build_suitable(A);
    for (const STriple& t : S.triples())
      for (const STriple& u : cycle_of(A, t)) EXPECT_TRUE(S.contains(u)) << S.format(t) << " -> " << S.format(u);
  }
}

TEST(Property, TwoIdentityCoordinatesForceEquality) {
  for (const AtomStructure& A : small_wa(3)) {
    const SuitableStructure S = build_suitable(A);
    for (const STriple& t : S.triples()) {
      const int ids = A.is_identity(t[0]) + A.is_identity(t[1]) + A.is_identity(t[2]);
      if (ids >= 2) {
        EXPECT_TRUE(t[0] == t[1] && t[1] == t[2]) << S.format(t);
      }
      EXPECT_NO_THROW(classify_triple(S, t));
    }
  }
}

TEST(Property, DiagonalWitnessesExist) {
  for (const AtomStructure& A : small_wa(3)) {
    const SuitableStructure S = build_suitable(A);
    for (const STriple& t : S.triples()) {
      const AtomId b = t[0], c = t[1], a = t[2];
      const std::array<std::tuple<std::size_t, STriple, std::size_t, std::size_t>, 6> table{{
          {0, {{b, b, dom_atom(A, b)}}, 0, 1},
          {0, {{b, rng_atom(A, b), A.converse(b)}}, 0, 2},
          {1, {{c, c, dom_atom(A, c)}}, 0, 1},
          {1, {{rng_atom(A, c), c, c}}, 1, 2},
          {2, {{A.converse(a), dom_atom(A, a), a}}, 0, 2},
          {2, {{rng_atom(A, a), a, a}}, 1, 2},
      }};
      for (const auto& [m, s, k, l] : table) {
        const auto i = S.index(s);
        ASSERT_TRUE(i.has_value()) << S.format(s);
        EXPECT_TRUE(S.in_E(*i, k, l));
        EXPECT_EQ(s[m], t[m]);
      }
    }
  }
}
