#include <gtest/gtest.h>

#include "relalg/relset.hpp"

using namespace relalg;

namespace {

std::vector<BinRel> symmetric_reflexive_units(std::size_t n) {
  std::vector<BinRel> out;
  for (const BinRel& e : all_relations_below(BinRel::square(n)))
    if (is_symmetric(e) && is_reflexive_on_field(e)) out.push_back(e);
  return out;
}

}  // namespace

TEST(BinRel, ProductOfSwaps) {
  const ConcreteAlgebra re = build_re({2});
  EXPECT_EQ(re.compose(BinRel{{0, 1}}, BinRel{{1, 0}}), (BinRel{{0, 0}}));
  EXPECT_EQ(re.converse(BinRel{{0, 1}}), (BinRel{{1, 0}}));
  EXPECT_EQ(re.identity(), (BinRel{{0, 0}, {1, 1}}));
  EXPECT_EQ(re.complement(BinRel{{0, 0}, {1, 1}}), (BinRel{{0, 1}, {1, 0}}));
}

TEST(BinRel, SetOperations) {
  const BinRel r{{0, 1}, {1, 2}}, s{{1, 2}, {2, 0}};
  EXPECT_EQ(r | s, (BinRel{{0, 1}, {1, 2}, {2, 0}}));
  EXPECT_EQ(r & s, (BinRel{{1, 2}}));
  EXPECT_EQ(r.minus(s), (BinRel{{0, 1}}));
  EXPECT_EQ(r.compose(s), (BinRel{{0, 2}, {1, 0}}));
  EXPECT_EQ(r.field(), (std::vector<PointId>{0, 1, 2}));
  EXPECT_TRUE((BinRel{{1, 2}}).subset_of(r));
}

TEST(Relativize, ProductLeavingUnitIsEmpty) {
  BinRel e = BinRel::square(3).minus(BinRel{{1, 2}, {2, 1}});
  const ConcreteAlgebra rl = relativize(build_re({3}), e);
  EXPECT_TRUE(rl.compose(BinRel{{1, 0}}, BinRel{{0, 2}}).empty());
  EXPECT_EQ(rl.identity(), BinRel::identity(3));
}

TEST(Relativize, UnitMustLieBelow) {
  const ConcreteAlgebra re = build_re({2});
  EXPECT_THROW(relativize(re, BinRel{{0, 5}}), PreconditionError);
}

TEST(Subalgebra, SingletonGeneratesAllOfRe2) {
  const ConcreteAlgebra re = build_re({2});
  EXPECT_EQ(generate_subalgebra(re, {BinRel{{0, 1}}}).size(), 16u);
}

TEST(Subalgebra, EmptyGeneratorsGiveClosureOfConstants) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const ConcreteAlgebra re = build_re({n});
    const auto sub = generate_subalgebra(re, {});
    const std::set<BinRel> s(sub.begin(), sub.end());
    EXPECT_TRUE(s.count(BinRel{}));
    EXPECT_TRUE(s.count(re.identity()));
    EXPECT_TRUE(s.count(re.unit()));
    EXPECT_TRUE(s.count(re.complement(re.identity())));
    for (const BinRel& a : sub)
      for (const BinRel& b : sub) ASSERT_TRUE(s.count(re.compose(a, b)));
  }
}

TEST(Subalgebra, ClosedUnderAllOperations) {
  const ConcreteAlgebra re = build_re({3});
  const auto sub = generate_subalgebra(re, {BinRel{{0, 1}, {1, 0}}});
  const std::set<BinRel> s(sub.begin(), sub.end());
  for (const BinRel& a : sub) {
    ASSERT_TRUE(s.count(re.complement(a)));
    ASSERT_TRUE(s.count(re.converse(a)));
    for (const BinRel& b : sub) {
      ASSERT_TRUE(s.count(re.join(a, b)));
      ASSERT_TRUE(s.count(re.compose(a, b)));
    }
  }
}

TEST(BuildRe, MaterializationGuard) {
  EXPECT_EQ(build_re({2}, Carrier::Materialize).carrier()->size(), 16u);
  EXPECT_THROW(build_re({5}, Carrier::Materialize), BudgetError);
  EXPECT_FALSE(build_re({5}).carrier().has_value());
}

TEST(Th1, FullSquaresAreRA) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const Th1Report r = check_th1({n}, BinRel::square(n));
    EXPECT_TRUE(r.isRA);
    EXPECT_EQ(r.atom_count, n * n);
  }
}

TEST(Th1, EmptyUnitIsDegenerate) {
  const Th1Report r = check_th1({2}, BinRel{});
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.isWA);
}

TEST(Th1, RejectsNonSymmetric) {
  EXPECT_THROW(check_th1({2}, BinRel{{0, 0}, {1, 1}, {0, 1}}), PreconditionError);
}

TEST(Th1, RejectsNonReflexive) {
  EXPECT_THROW(check_th1({2}, BinRel{{0, 1}, {1, 0}}), PreconditionError);
}

TEST(Th1, NonTransitiveUnitIsWAButNotSA) {
  // E relates 0-1 and 1-2 but not 0-2.
  const BinRel e = BinRel::square(3).minus(BinRel{{0, 2}, {2, 0}});
  const Th1Report r = check_th1({3}, e);
  EXPECT_TRUE(r.isWA);
  EXPECT_FALSE(r.isSA);
}

TEST(Property, EveryRelativizationIsWA) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const BinRel& e : symmetric_reflexive_units(n)) EXPECT_TRUE(check_th1({n}, e).isWA) << e.str();
}

TEST(Property, PairStructureMatchesConcreteOperations) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const ConcreteAlgebra re = build_re({n});
    for (const BinRel& e : symmetric_reflexive_units(n)) {
      const PairAtomStructure pas = pair_atom_structure(e);
      if (!pas.structure) continue;
      const AtomStructure& A = *pas.structure;
      const ConcreteAlgebra rl = relativize(re, e);
      auto to_rel = [&](Element x) {
        std::vector<BinRel::Pair> ps;
        x.for_each([&](AtomId a) { ps.push_back(pas.atoms[a]); });
        return BinRel(ps);
      };
      for (std::uint64_t xb = 0; xb < (1ULL << A.atom_count()); ++xb) {
        const Element x = Element::from_bits(xb);
        EXPECT_EQ(to_rel(A.converse(x)), rl.converse(to_rel(x)));
        EXPECT_EQ(to_rel(A.complement(x)), rl.complement(to_rel(x)));
        for (std::uint64_t yb = 0; yb < (1ULL << A.atom_count()); ++yb) {
          const Element y = Element::from_bits(yb);
          EXPECT_EQ(to_rel(A.compose(x, y)), rl.compose(to_rel(x), to_rel(y)));
        }
      }
      EXPECT_EQ(to_rel(A.identity()), rl.identity());
    }
  }
}

TEST(Property, OperationsStayBelowUnit) {
  const BinRel e = BinRel::square(3).minus(BinRel{{1, 2}, {2, 1}});
  const ConcreteAlgebra rl = relativize(build_re({3}), e);
  const auto sub = generate_subalgebra(rl, {BinRel{{0, 1}}, BinRel{{1, 1}}});
  for (const BinRel& a : sub) EXPECT_TRUE(a.subset_of(e));
}
