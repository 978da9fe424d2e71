#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "relalg/classify.hpp"
#include "relalg/enumerate.hpp"
#include "relalg/term.hpp"

using namespace relalg;
using fixtures::el;

TEST(Validate, SingleAtomIsValid) {
  const AtomStructure A = fixtures::a1();
  EXPECT_EQ(A.atom_count(), 1u);
  EXPECT_TRUE(A.has_cycle(0, 0, 0));
}

TEST(Validate, AutoCloseAddsPeirceanImages) {
  RawAtomStructure raw;
  raw.atom_count = 2;
  raw.identity = {0};
  raw.names = {"e", "d"};
  raw.cycles = {{1, 1, 0}, {1, 1, 1}};
  const AtomStructure A = validate_atom_structure(raw, true);
  // Hand closure: (d,d,e) yields (d,e,d) and (e,d,d); (d,d,d) is fixed by every transform.
  const std::vector<CycleTriple> expected = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
  EXPECT_EQ(A.cycles(), expected);
  EXPECT_FALSE(A.has_cycle(0, 0, 0));
}

TEST(Validate, A2HasFiveCycles) {
  const AtomStructure A = fixtures::a2();
  const std::vector<CycleTriple> expected = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
  EXPECT_EQ(A.cycles(), expected);
}

TEST(Validate, IdentityAtomMustBeSelfConverse) {
  RawAtomStructure raw;
  raw.atom_count = 2;
  raw.identity = {0};
  raw.converse = {1, 0};
  raw.cycles = {{0, 0, 0}};
  EXPECT_THROW(validate_atom_structure(raw, true), ValidationError);
}

TEST(Validate, ConverseMustBeInvolution) {
  RawAtomStructure raw;
  raw.atom_count = 3;
  raw.converse = {1, 2, 0};
  EXPECT_THROW(validate_atom_structure(raw, true), ValidationError);
}

TEST(Validate, NonClosedRejectedWithoutAutoClose) {
  RawAtomStructure raw;
  raw.atom_count = 2;
  raw.identity = {0};
  raw.cycles = {{0, 0, 0}, {1, 1, 0}};
  EXPECT_THROW(validate_atom_structure(raw, false), ValidationError);
}

TEST(Validate, ZeroAtomsRejected) {
  RawAtomStructure raw;
  EXPECT_THROW(validate_atom_structure(raw, true), ValidationError);
}

TEST(Validate, OutOfRangeIndexRejected) {
  RawAtomStructure raw;
  raw.atom_count = 1;
  raw.cycles = {{0, 0, 3}};
  EXPECT_THROW(validate_atom_structure(raw, true), ValidationError);
}

TEST(Term, ParseAndPrint) {
  const Term t = parse_term("x;y * z + -x~");
  EXPECT_EQ(t.str(), "x;y * z + -x~");
  EXPECT_EQ(parse_term("x;(y * x~;z) * z").str(), "x;(y * x~;z) * z");
  EXPECT_EQ(parse_term("dom x;x").op(), TermOp::Compose);
  EXPECT_EQ(parse_term("1'~").op(), TermOp::Converse);
  EXPECT_EQ(parse_term("x;y * z + y").variables(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_THROW(parse_term("x ;"), ParseError);
  EXPECT_THROW(parse_term("(x"), ParseError);
}

TEST(Eval, A2Products) {
  const AtomStructure A = fixtures::a2();
  const Env env{{"d", el(A, {"d"})}, {"e", el(A, {"e"})}};
  EXPECT_EQ(eval_term(A, "d;d", env), el(A, {"e", "d"}));
  EXPECT_EQ(eval_term(A, "dom d", env), el(A, {"e"}));
  EXPECT_EQ(eval_term(A, "rng d", env), el(A, {"e"}));
  EXPECT_EQ(eval_term(A, "e;d", env), el(A, {"d"}));
  EXPECT_EQ(eval_term(A, "0'", env), el(A, {"d"}));
  EXPECT_THROW(eval_term(A, "x", env), PreconditionError);
}

TEST(Eval, CompositionWithZero) {
  const AtomStructure A = fixtures::a2();
  for (std::uint64_t b = 0; b < 4; ++b)
    EXPECT_TRUE(eval_term(A, "x;0", {{"x", Element::from_bits(b)}}).empty());
}

TEST(Eval, MonotoneOutsideComplement) {
  std::mt19937_64 rng(7);
  const std::vector<Term> terms = {parse_term("x;y + x~"), parse_term("dom (x;y) * y~;x"),
                                   parse_term("(x + 1');(y;x)~")};
  for (int i = 0; i < 200; ++i) {
    const AtomStructure A = random_structure(3, rng);
    for (const Term& t : terms) {
      const Element x = Element::from_bits(rng() & 7), y = Element::from_bits(rng() & 7);
      const Element x2 = x | Element::from_bits(rng() & 7);
      EXPECT_TRUE(eval_term(A, t, {{"x", x}, {"y", y}}).subset_of(eval_term(A, t, {{"x", x2}, {"y", y}})));
    }
  }
}

TEST(CheckEquation, IdentityLawInA2) {
  EXPECT_TRUE(check_equation(fixtures::a2(), "x;1'", "x", Quantify::Elements).holds);
}

TEST(CheckEquation, EmptyIdentityWitness) {
  const AtomStructure A = fixtures::no_identity();
  const EquationResult r = check_equation(A, "x;1'", "x", Quantify::Atoms);
  ASSERT_FALSE(r.holds);
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_EQ(r.witness[0].second, el(A, {"d"}));
}

TEST(CheckEquation, ConverseOfProductAtoms) {
  EXPECT_TRUE(check_equation(fixtures::a2(), "(x;y)~", "y~;x~", Quantify::Atoms).holds);
}

TEST(CheckEquation, ElementModeGuard) {
  RawAtomStructure raw;
  raw.atom_count = 17;
  raw.identity = {0};
  const AtomStructure A = validate_atom_structure(raw, true);
  EXPECT_THROW(check_equation(A, "x", "x", Quantify::Elements), BudgetError);
}

TEST(CheckEquation, WitnessIsLexicographicallyFirst) {
  const AtomStructure A = fixtures::a2();
  const EquationResult r = check_equation(A, "x", "x;x", Quantify::Elements);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness[0].second, el(A, {"d"}));
}

TEST(Classify, SmallestAlgebraIsRA) {
  const ClassReport r = classify(fixtures::a1());
  EXPECT_TRUE(r.isRA && r.isSA && r.isWA);
  EXPECT_EQ(r.find("ra1")->method, "construction");
}

TEST(Classify, A2IsRAInBothModes) {
  EXPECT_TRUE(classify(fixtures::a2()).isRA);
  EXPECT_TRUE(classify(fixtures::a2(), {.elements_mode = true}).isRA);
}

TEST(Classify, EmptyIdentityFailsRa6) {
  const ClassReport r = classify(fixtures::no_identity());
  EXPECT_FALSE(r.isWA);
  EXPECT_FALSE(r.holds("ra6"));
}

TEST(Classify, ThreeAtomCountsAreConsistent) {
  std::size_t wa = 0, sa = 0, ra = 0, wa_not_sa = 0;
  for_each_structure(3, [&](const AtomStructure& A) {
    const ClassReport r = classify(A);
    EXPECT_TRUE(!r.isRA || r.isSA);
    EXPECT_TRUE(!r.isSA || r.isWA);
    wa += r.isWA;
    sa += r.isSA;
    ra += r.isRA;
    wa_not_sa += r.isWA && !r.isSA;
  });
  EXPECT_GE(wa, sa);
  EXPECT_GE(sa, ra);
  EXPECT_GT(ra, 0u);
  EXPECT_EQ(wa_not_sa, wa - sa);
}

TEST(Property, CyclesClosedUnderTransforms) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for_each_structure(n, [&](const AtomStructure& A) {
      for (const CycleTriple& t : A.cycles())
        for (const CycleTriple& u : peircean_transforms(t, [&](AtomId a) { return A.converse(a); }))
          ASSERT_TRUE(A.has_cycle(u.x, u.y, u.z));
    });
  }
}

TEST(Property, AtomAndElementModesAgree) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 2; ++n) {
    for_each_structure(n, [&](const AtomStructure& A) {
      const ClassReport a = classify(A), e = classify(A, {.elements_mode = true});
      for (const char* ax : {"ra4", "ra5", "ra6", "ra7", "ra8", "ra9", "ra10", "semi-assoc", "assoc"})
        EXPECT_EQ(a.holds(ax), e.holds(ax)) << ax;
    });
  }
  for (int i = 0; i < 300; ++i) {
    const AtomStructure A = random_structure(3, rng);
    const ClassReport a = classify(A), e = classify(A, {.elements_mode = true});
    for (const char* ax : {"ra4", "ra5", "ra6", "ra7", "ra8", "ra9", "ra10", "semi-assoc", "assoc"})
      EXPECT_EQ(a.holds(ax), e.holds(ax)) << ax;
  }
}

TEST(Enumerate, NoDuplicatesAndAllValid) {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::set<std::vector<CycleTriple>> seen;
    std::size_t count = 0;
    for (const EnumerationFrame& f : enumeration_frames(n)) {
      std::set<std::vector<CycleTriple>> local;
      for (std::uint64_t m = 0; m < f.family_count(); ++m) {
        EXPECT_TRUE(local.insert(f.build(m).cycles()).second);
        ++count;
      }
    }
    EXPECT_EQ(count, structure_count(n));
  }
}

TEST(Enumerate, CanonicalKeyIsInvariant) {
  RawAtomStructure raw;
  raw.atom_count = 3;
  raw.identity = {0};
  raw.converse = {0, 2, 1};
  raw.cycles = {{1, 2, 0}, {0, 0, 0}};
  RawAtomStructure swapped = raw;
  swapped.identity = {2};
  swapped.converse = {1, 0, 2};
  swapped.cycles = {{0, 1, 2}, {2, 2, 2}};
  EXPECT_EQ(canonical_key(validate_atom_structure(raw, true)), canonical_key(validate_atom_structure(swapped, true)));
}
