#include <gtest/gtest.h>

#include "bipre/audit.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace bipre {
namespace {

using test::arrow_category;

AbBipresheaf first_only(const FinAbGroup& g) {
  AbBipresheaf B;
  B.A1 = AbFunctor::constant(arrow_category(), Variance::Contravariant, g);
  B.A2 = AbFunctor::constant(arrow_category(), Variance::Covariant, FinAbGroup::zero_group());
  B.eta = {GroupHom::zero(g, FinAbGroup::zero_group()), GroupHom::zero(g, FinAbGroup::zero_group())};
  return B;
}

BipresheafMorphism reduction_mod_two() {
  const auto z4 = FinAbGroup::cyclic(4);
  const auto z2 = FinAbGroup::cyclic(2);
  BipresheafMorphism m;
  m.source = first_only(z4);
  m.target = first_only(z2);
  for (ObjId x = 0; x < 2; ++x) {
    m.phi1.emplace_back(z4, z2, std::vector<Elem>{0, 1, 0, 1});
    m.phi2.push_back(GroupHom::identity(FinAbGroup::zero_group()));
  }
  return m;
}

bool all_zero(const AbBipresheaf& B) {
  for (ObjId x = 0; x < B.base().object_count(); ++x) {
    if (!B.A1.at(x).is_zero_group() || !B.A2.at(x).is_zero_group()) return false;
  }
  return true;
}

TEST(Kernel, OfIdentityIsZero) {
  const auto K = compute_kernel(BipresheafMorphism::identity(first_only(FinAbGroup::cyclic(4))));
  EXPECT_TRUE(K.validity.ok());
  EXPECT_TRUE(all_zero(K.object));
}

TEST(Kernel, OfZeroEndomorphismIsEverything) {
  const auto A = first_only(FinAbGroup::cyclic(4));
  const auto K = compute_kernel(BipresheafMorphism::zero(A, A));
  EXPECT_TRUE(K.validity.ok());
  EXPECT_EQ(K.object, A);
  EXPECT_EQ(K.inclusion, BipresheafMorphism::identity(A));
}

TEST(Kernel, OfReductionIsTheEvenElements) {
  const auto m = reduction_mod_two();
  ASSERT_TRUE(validate_morphism(m).ok());
  const auto K = compute_kernel(m);
  ASSERT_TRUE(K.validity.ok());
  for (ObjId x = 0; x < 2; ++x) {
    const auto& g = K.object.A1.at(x);
    EXPECT_EQ(g.size(), 2u);
    EXPECT_TRUE(isomorphic_groups(g, FinAbGroup::cyclic(2)));
    EXPECT_EQ(K.inclusion.phi1[x].map(), (std::vector<Elem>{0, 2}));
  }
}

TEST(Cokernel, OfIdentityIsZero) {
  const auto Q = compute_cokernel(BipresheafMorphism::identity(first_only(FinAbGroup::cyclic(4))));
  EXPECT_TRUE(Q.validity.ok());
  EXPECT_TRUE(all_zero(Q.object));
}

TEST(Cokernel, OfZeroEndomorphismIsEverything) {
  const auto A = first_only(FinAbGroup::cyclic(4));
  const auto Q = compute_cokernel(BipresheafMorphism::zero(A, A));
  EXPECT_TRUE(Q.validity.ok());
  for (ObjId x = 0; x < 2; ++x) {
    EXPECT_TRUE(isomorphic_groups(Q.object.A1.at(x), A.A1.at(x)));
    EXPECT_TRUE(Q.projection.phi1[x].source() == A.A1.at(x));
  }
}

TEST(Cokernel, OfReductionIsZero) {
  const auto Q = compute_cokernel(reduction_mod_two());
  EXPECT_TRUE(Q.validity.ok());
  EXPECT_TRUE(all_zero(Q.object));
}

TEST(Groups, IsomorphismByOrderStatistics) {
  const auto v = FinAbGroup::product({FinAbGroup::cyclic(2), FinAbGroup::cyclic(2)});
  EXPECT_FALSE(isomorphic_groups(v, FinAbGroup::cyclic(4)));
  EXPECT_TRUE(isomorphic_groups(
      FinAbGroup::product({FinAbGroup::cyclic(2), FinAbGroup::cyclic(3)}), FinAbGroup::cyclic(6)));
  const auto q = quotient(FinAbGroup::cyclic(6), {0, 3});
  EXPECT_TRUE(isomorphic_groups(q.group, FinAbGroup::cyclic(3)));
  EXPECT_TRUE(validate_group(subgroup(FinAbGroup::cyclic(6), {0, 2, 4})).ok());
}

Universe universe(std::vector<FinAbGroup> groups) {
  return Universe{arrow_category(), std::move(groups)};
}

TEST(Classify, IdentityIsEverything) {
  const auto cat =
      UniverseCatalog::enumerate(universe({FinAbGroup::zero_group(), FinAbGroup::cyclic(2)}));
  for (std::size_t o = 0; o < cat.objects().size(); ++o) {
    const auto id = cat.find(BipresheafMorphism::identity(cat.objects()[o]));
    ASSERT_TRUE(id.has_value());
    const auto c = classify_morphism(cat, *id);
    EXPECT_TRUE(c.mono && c.epi && c.iso && c.normal && c.conormal && c.comparison_iso);
  }
}

TEST(Classify, ZeroBetweenNonzeroObjects) {
  const auto cat = UniverseCatalog::enumerate(universe({FinAbGroup::cyclic(2)}));
  for (std::size_t s = 0; s < cat.objects().size(); ++s) {
    for (std::size_t t = 0; t < cat.objects().size(); ++t) {
      const auto z = cat.find(BipresheafMorphism::zero(cat.objects()[s], cat.objects()[t]));
      ASSERT_TRUE(z.has_value());
      const auto c = classify_morphism(cat, *z);
      EXPECT_FALSE(c.mono);
      EXPECT_FALSE(c.epi);
    }
  }
}

TEST(Classify, InjectiveImpliesMono) {
  const auto cat =
      UniverseCatalog::enumerate(universe({FinAbGroup::zero_group(), FinAbGroup::cyclic(2)}));
  for (std::size_t i = 0; i < cat.arrows().size(); ++i) {
    const auto c = classify_morphism(cat, i);
    if (c.injective) EXPECT_TRUE(c.mono) << cat.describe_arrow(i);
    if (c.surjective) EXPECT_TRUE(c.epi) << cat.describe_arrow(i);
    if (!c.mono) {
      ASSERT_TRUE(c.non_mono_witness.has_value());
    }
  }
}

TEST(Audit, TerminalZeroUniverse) {
  Universe u{test::terminal_category(), {FinAbGroup::zero_group()}};
  const auto rep = find_nonabelian_witness(u);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_TRUE(rep.findings.empty());
  EXPECT_EQ(rep.objects, 1u);
  EXPECT_EQ(rep.morphisms, 1u);
}

TEST(Audit, ArrowOrderAtMostTwoMatchesOracle) {
  const auto u = universe({FinAbGroup::zero_group(), FinAbGroup::cyclic(2)});
  const auto expected = oracle::scalar_universe({0, 1});
  const auto cat = UniverseCatalog::enumerate(u);
  EXPECT_EQ(cat.objects().size(), expected.objects.size());
  EXPECT_EQ(cat.arrows().size(), expected.arrows.size());
  const auto rep = find_nonabelian_witness(cat);
  ASSERT_TRUE(rep.exhaustive) << rep.incomplete_reason;
  const std::size_t n = expected.arrows.size();
  for (const auto* probe : {"kernel", "cokernel", "comparison", "injective-implies-mono",
                            "surjective-implies-epi"}) {
    EXPECT_EQ(rep.checked.at(probe), n) << probe;
  }
  EXPECT_EQ(rep.checked.at("normal"), expected.monos);
  EXPECT_EQ(rep.checked.at("conormal"), expected.epis);
  EXPECT_EQ(rep.checked.at("bimorphism"), expected.bimorphisms);
  for (const auto& f : rep.findings) EXPECT_EQ(replay(cat, f), f);
}

TEST(Audit, DeterministicAcrossRunsAndWorkers) {
  const auto u = universe({FinAbGroup::zero_group(), FinAbGroup::cyclic(2)});
  const auto a = find_nonabelian_witness(u, 1);
  const auto b = find_nonabelian_witness(u, 1);
  const auto c = find_nonabelian_witness(u, 4);
  for (const auto* other : {&b, &c}) {
    EXPECT_EQ(a.findings, other->findings);
    EXPECT_EQ(a.observations, other->observations);
    EXPECT_EQ(a.checked, other->checked);
    EXPECT_EQ(a.exhaustive, other->exhaustive);
  }
}

// With only Z/2 available, any injective component has kernel 0, which the
// universe does not contain; dually for surjective components and cokernels.
TEST(Audit, ClosureFindingsMatchOracle) {
  const auto u = universe({FinAbGroup::cyclic(2)});
  const auto expected = oracle::scalar_universe({1});
  const auto cat = UniverseCatalog::enumerate(u);
  EXPECT_EQ(cat.objects().size(), expected.objects.size());
  EXPECT_EQ(cat.arrows().size(), expected.arrows.size());
  const auto rep = find_nonabelian_witness(cat, 2);
  std::size_t kernels = 0, cokernels = 0;
  for (const auto& f : rep.findings) {
    kernels += f.axiom == "kernel-outside-universe";
    cokernels += f.axiom == "cokernel-outside-universe";
    EXPECT_EQ(replay(cat, f), f);
  }
  EXPECT_EQ(kernels, expected.kernel_outside);
  EXPECT_EQ(cokernels, expected.cokernel_outside);
  EXPECT_GT(kernels, 0u);
}

TEST(Audit, SmallBudgetIsNotExhaustive) {
  auto u = universe({FinAbGroup::zero_group(), FinAbGroup::cyclic(2)});
  u.budget = 100;
  const auto rep = find_nonabelian_witness(u);
  EXPECT_FALSE(rep.exhaustive);
  EXPECT_FALSE(rep.incomplete_reason.empty());
}

TEST(Audit, UniverseValidation) {
  EXPECT_TRUE(validate_universe(universe({FinAbGroup::cyclic(2)})).ok());
  EXPECT_FALSE(validate_universe(universe({})).ok());
}

}  // namespace
}  // namespace bipre
