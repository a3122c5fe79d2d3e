#include <gtest/gtest.h>

#include <numeric>

#include "bipre/algebra.hpp"

namespace bipre {
namespace {

Elem el(const FinCommRing& r, const std::string& name) { return *r.find(name); }

TEST(Ring, ModularTablesMatchIntegerArithmetic) {
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto r = FinCommRing::modular(n);
    ASSERT_EQ(r.size(), n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Elem ea = el(r, std::to_string(a));
        const Elem eb = el(r, std::to_string(b));
        EXPECT_EQ(r.name(r.plus(ea, eb)), std::to_string((a + b) % n));
        EXPECT_EQ(r.name(r.times(ea, eb)), std::to_string((a * b) % n));
      }
    }
    EXPECT_TRUE(validate_ring(r).ok()) << n;
  }
}

TEST(Ring, TwoTimesThreeInZ4) {
  const auto r = FinCommRing::modular(4);
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(r.name(r.times(el(r, "2"), el(r, "3"))), "2");
}

TEST(Ring, TrivialRing) {
  const auto e = FinCommRing::trivial();
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e.plus(0, 0), 0u);
  EXPECT_EQ(e.times(0, 0), 0u);
  EXPECT_EQ(e.zero(), e.one());
  EXPECT_TRUE(e.is_trivial());
  EXPECT_TRUE(validate_ring(e).ok());
}

TEST(Ring, ProductIsComponentwise) {
  const auto z2 = FinCommRing::modular(2);
  const auto v = FinCommRing::product({z2, z2});
  ASSERT_EQ(v.size(), 4u);
  EXPECT_TRUE(validate_ring(v).ok());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          auto name = [](int p, int q) {
            return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
          };
          const Elem x = el(v, name(a, b));
          const Elem y = el(v, name(c, d));
          EXPECT_EQ(v.name(v.plus(x, y)), name((a + c) % 2, (b + d) % 2));
          EXPECT_EQ(v.name(v.times(x, y)), name(a * c, b * d));
        }
  EXPECT_EQ(v.name(v.one()), "(1,1)");
}

TEST(Ring, BooleanSemiringLacksInverses) {
  const auto r = build_ring_unchecked(
      {RingSpec::Table{{"0", "1"}, "0", "1", {{"0", "1"}, {"1", "1"}}, {{"0", "0"}, {"0", "1"}}}});
  const auto rep = validate_ring(r);
  EXPECT_EQ(rep.laws(), std::set<std::string>{"add-inverse"});
  for (const auto& v : rep.violations()) EXPECT_EQ(replay(r, v), v);
  EXPECT_THROW(build_ring({RingSpec::Table{{"0", "1"},
                                           "0",
                                           "1",
                                           {{"0", "1"}, {"1", "1"}},
                                           {{"0", "0"}, {"0", "1"}}}}),
               AxiomError);
}

TEST(Ring, NonCommutativeTableIsRejected) {
  // Z/2 addition with a lopsided product.
  const auto r = build_ring_unchecked(
      {RingSpec::Table{{"0", "1"}, "0", "1", {{"0", "1"}, {"1", "0"}}, {{"0", "1"}, {"0", "1"}}}});
  const auto rep = validate_ring(r);
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(rep.laws().count("mul-commutativity"));
}

TEST(RingHom, IdentityOnZ4) {
  EXPECT_TRUE(validate_ring_hom(RingHom::identity(FinCommRing::modular(4))).ok());
}

TEST(RingHom, Z2ToTrivial) {
  const RingHom h(FinCommRing::modular(2), FinCommRing::trivial(), {0, 0});
  EXPECT_TRUE(validate_ring_hom(h).ok());
}

TEST(RingHom, OneToTwoFailsUnit) {
  const auto z2 = FinCommRing::modular(2);
  const auto z4 = FinCommRing::modular(4);
  const RingHom h(z2, z4, {el(z4, "0"), el(z4, "2")});
  const auto rep = validate_ring_hom(h);
  EXPECT_TRUE(rep.laws().count("preserves-one"));
  for (const auto& v : rep.violations()) EXPECT_EQ(replay(h, v), v);
}

TEST(RingHom, NonTotalMapIsStructural) {
  EXPECT_THROW(RingHom(FinCommRing::modular(2), FinCommRing::modular(2), {0}), StructuralError);
  EXPECT_THROW(RingHom(FinCommRing::modular(2), FinCommRing::modular(2), {0, 5}),
               StructuralError);
}

TEST(RingHom, EnumerationSmallCases) {
  const auto e = FinCommRing::trivial();
  const auto z2 = FinCommRing::modular(2);
  const auto z4 = FinCommRing::modular(4);
  EXPECT_EQ(enumerate_ring_homs(e, e).size(), 1u);
  const auto z2z2 = enumerate_ring_homs(z2, z2);
  ASSERT_EQ(z2z2.size(), 1u);
  EXPECT_TRUE(z2z2.front().is_identity());
  EXPECT_EQ(enumerate_ring_homs(z4, e).size(), 1u);
}

// Unital homs Z/m -> Z/n exist (uniquely) iff n divides m; additive homs
// number gcd(m, n).
TEST(RingHom, EnumerationMatchesNumberTheory) {
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto a = FinCommRing::modular(m);
      const auto b = FinCommRing::modular(n);
      EXPECT_EQ(enumerate_ring_homs(a, b).size(), m % n == 0 ? 1u : 0u) << m << "," << n;
      EXPECT_EQ(enumerate_group_homs(a.additive(), b.additive()).size(), std::gcd(m, n))
          << m << "," << n;
      for (const auto& h : enumerate_ring_homs(a, b)) EXPECT_TRUE(validate_ring_hom(h).ok());
      for (const auto& h : enumerate_group_homs(a.additive(), b.additive())) {
        EXPECT_TRUE(validate_group_hom(h).ok());
      }
    }
  }
}

TEST(RingHom, EnumerationRespectsBudget) {
  const auto z8 = FinCommRing::modular(8);
  EXPECT_THROW(enumerate_group_homs(z8.additive(), z8.additive(), 10), ResourceError);
}

TEST(Group, CyclicAndProductAreValid) {
  EXPECT_TRUE(validate_group(FinAbGroup::cyclic(6)).ok());
  EXPECT_TRUE(validate_group(FinAbGroup::zero_group()).ok());
  const auto g = FinAbGroup::product({FinAbGroup::cyclic(2), FinAbGroup::cyclic(3)});
  EXPECT_EQ(g.size(), 6u);
  EXPECT_TRUE(validate_group(g).ok());
}

TEST(Group, AddHomsIsPointwise) {
  const auto z4 = FinAbGroup::cyclic(4);
  const auto id = GroupHom::identity(z4);
  const auto twice = add_homs(id, id);
  for (Elem a = 0; a < 4; ++a) EXPECT_EQ(twice(a), z4.plus(a, a));
  EXPECT_TRUE(add_homs(twice, twice).is_zero());
}

TEST(Hom, ComposeChecksEndpoints) {
  const auto z2 = FinCommRing::modular(2);
  const auto z4 = FinCommRing::modular(4);
  const auto id2 = RingHom::identity(z2);
  const auto id4 = RingHom::identity(z4);
  EXPECT_THROW(compose(id4, id2), StructuralError);
  EXPECT_EQ(compose(id2, id2), id2);
}

}  // namespace
}  // namespace bipre
