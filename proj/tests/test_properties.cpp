// Exhaustive property checks over small generated instances.

#include <gtest/gtest.h>

#include "bipre/audit.hpp"
#include "bipre/equivalence.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace bipre {
namespace {

// One-object categories on morphisms {0 = identity, 1, 2}, every table.
TEST(Property, CategoryValidationAgreesWithDirectLaws) {
  const std::vector<std::string> ids = {"1", "a", "b"};
  std::size_t valid = 0;
  for (std::size_t code = 0; code < 19683; ++code) {
    std::vector<std::size_t> table(9);
    std::size_t c = code;
    for (auto& t : table) {
      t = c % 3;
      c /= 3;
    }
    CategoryData d{{"*"}, {}, {{"*", "1"}}, {}};
    for (const auto& id : ids) d.morphisms.push_back({id, "*", "*"});
    for (std::size_t g = 0; g < 3; ++g)
      for (std::size_t f = 0; f < 3; ++f) d.compositions.push_back({ids[g], ids[f], ids[table[g * 3 + f]]});
    const auto cat = FinCategory::build(d);
    auto comp = [&](std::size_t g, std::size_t f) { return table[g * 3 + f]; };
    bool laws = true;
    for (std::size_t f = 0; f < 3; ++f) laws = laws && comp(0, f) == f && comp(f, 0) == f;
    for (std::size_t f = 0; f < 3; ++f)
      for (std::size_t g = 0; g < 3; ++g)
        for (std::size_t h = 0; h < 3; ++h) laws = laws && comp(h, comp(g, f)) == comp(comp(h, g), f);
    const auto rep = validate_category(cat);
    ASSERT_EQ(rep.ok(), laws) << code;
    for (const auto& v : rep.violations()) ASSERT_EQ(replay(cat, v), v);
    valid += laws;
  }
  // The seven monoids of order three give eleven labelled tables.
  EXPECT_EQ(valid, 11u);
}

TEST(Property, FactorizationsDualizeInTheOpposite) {
  for (const auto* file : {"squares.json", "corrupted.json", "universes.json"}) {
    const auto model = test::load_model(file);
    for (const auto& [name, c] : model.categories) {
      if (!validate_category(c).ok()) continue;
      const auto op = opposite(c);
      for (MorId h = 0; h < c.morphism_count(); ++h) {
        auto swapped = factorizations(op, *op.find_morphism(c.morphism_name(h)));
        std::vector<std::pair<std::string, std::string>> got, want;
        for (auto [f, g] : factorizations(c, h)) {
          want.emplace_back(c.morphism_name(g), c.morphism_name(f));
        }
        for (auto [f, g] : swapped) got.emplace_back(op.morphism_name(f), op.morphism_name(g));
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want) << name << " " << c.morphism_name(h);
      }
    }
  }
}

std::vector<FinCommRing> small_rings() {
  std::vector<FinCommRing> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back(FinCommRing::modular(n));
  out.push_back(FinCommRing::product({FinCommRing::modular(2), FinCommRing::modular(2)}));
  out.push_back(FinCommRing::product({FinCommRing::modular(2), FinCommRing::modular(3)}));
  return out;
}

TEST(Property, RingHomsFixZeroAndReductsAreGroups) {
  const auto rings = small_rings();
  for (const auto& r : rings) {
    EXPECT_TRUE(validate_ring(r).ok());
    EXPECT_TRUE(validate_group(r.additive()).ok());
    for (const auto& s : rings) {
      for (const auto& h : enumerate_ring_homs(r, s)) {
        EXPECT_TRUE(validate_ring_hom(h).ok());
        EXPECT_EQ(h(r.zero()), s.zero());
      }
    }
  }
}

// A2(f) . eta_x = eta_y . A1(f), read as if A1 were covariant. This is the
// wrong condition; the tests below show it disagrees with the triangle both ways.
bool naive_square(const AbBipresheaf& B, MorId f) {
  const auto& a1 = B.A1.on(f);
  const auto& a2 = B.A2.on(f);
  const ObjId x = B.base().dom(f), y = B.base().cod(f);
  for (Elem a = 0; a < B.A1.at(x).size(); ++a) {
    if (a2(B.eta[x](a)) != B.eta[y](a1(a))) return false;
  }
  return true;
}

AbBipresheaf constant_z2(Elem a1f, Elem a2f, Elem ex, Elem ey) {
  const auto z2 = FinAbGroup::cyclic(2);
  auto scalar = [&](Elem k) { return GroupHom(z2, z2, {0, k}); };
  AbBipresheaf B;
  B.A1 = AbFunctor::constant(test::arrow_category(), Variance::Contravariant, z2);
  B.A2 = AbFunctor::constant(test::arrow_category(), Variance::Covariant, z2);
  const MorId f = *B.base().find_morphism("f");
  B.A1.morphisms[f] = scalar(a1f);
  B.A2.morphisms[f] = scalar(a2f);
  B.eta = {scalar(ex), scalar(ey)};
  return B;
}

TEST(Property, CoherenceIsTheTriangleNotTheSquare) {
  const auto holds = constant_z2(0, 1, 1, 0);
  const MorId f = *holds.base().find_morphism("f");
  EXPECT_TRUE(validate_bipresheaf(holds).ok());
  EXPECT_FALSE(naive_square(holds, f));

  const auto fails = constant_z2(0, 0, 1, 1);
  EXPECT_EQ(validate_bipresheaf(fails).laws(), std::set<std::string>{"coherence"});
  EXPECT_TRUE(naive_square(fails, f));
}

TEST(Property, StrictEqualityIsACongruence) {
  const auto model = test::load_model("arrow_z4_reduction.json");
  const auto G = GrCategory::build(model.ring_bipresheaves.at("arrow_z4_reduction"));
  for (const auto& phi : enumerate_pure_morphisms(G, 0, 1)) {
    for (const auto& psi : enumerate_pure_morphisms(G, 1, 1)) {
      auto phi_copy = G.parse(G.describe(phi));
      ASSERT_TRUE(gr_equal(G, phi, phi_copy, EqualityMode::Strict));
      EXPECT_TRUE(gr_equal(G, gr_compose(G, psi, phi), gr_compose(G, psi, phi_copy),
                           EqualityMode::Strict));
    }
  }
}

struct SumIdBase {
  std::string file, name;
  std::vector<FinAbGroup> groups;
};

// Every module over a sum-id base, within small carriers: Psi lands in valid,
// coherent Gr-bipresheaves and Phi inverts it.
TEST(Property, PsiPhiOverEveryEnumeratedModule) {
  const std::vector<SumIdBase> bases = {
      {"terminal_z4.json", "terminal_z4",
       {FinAbGroup::zero_group(), FinAbGroup::cyclic(2), FinAbGroup::cyclic(4)}},
      {"arrow_z2_trivial.json", "arrow_z2_trivial",
       {FinAbGroup::zero_group(), FinAbGroup::cyclic(2)}},
      {"squares.json", "parallel_square_z2", {FinAbGroup::zero_group(), FinAbGroup::cyclic(2)}},
  };
  for (const auto& base : bases) {
    const auto model = test::load_model(base.file);
    const auto G = GrCategory::build(model.ring_bipresheaves.at(base.name));
    ASSERT_TRUE(check_sum_id(G, SumIdMode::ExcludeZero).pass);
    const auto modules = enumerate_module_bipresheaves(G.rings(), base.groups);
    EXPECT_GT(modules.size(), 1u) << base.name;
    for (const auto& M : modules) {
      ASSERT_TRUE(validate_bipresheaf(M).ok());
      const auto F = psi(M, G);
      ASSERT_TRUE(validate_gr_bipresheaf(F).ok()) << base.name;
      ASSERT_TRUE(check_gr_coherence(F).ok()) << base.name;
      ASSERT_TRUE(phi_action_laws(F).ok()) << base.name;
      const auto back = phi(F);
      ASSERT_TRUE(std::holds_alternative<ModuleBipresheaf>(back)) << base.name;
      ASSERT_EQ(std::get<ModuleBipresheaf>(back), M) << base.name;
      const auto rt = roundtrip_check(M, G);
      ASSERT_TRUE(rt.ok()) << base.name << " " << rt.backward_discrepancy;
    }
  }
}

TEST(Property, NonSumIdBaseHasIncoherentModules) {
  const auto model = test::load_model("arrow_z2_identity.json");
  const auto G = GrCategory::build(model.ring_bipresheaves.at("arrow_z2_identity"));
  std::size_t incoherent = 0;
  for (const auto& M :
       enumerate_module_bipresheaves(G.rings(), {FinAbGroup::zero_group(), FinAbGroup::cyclic(2)})) {
    const auto F = psi(M, G);
    EXPECT_TRUE(validate_gr_bipresheaf(F).laws().count("functoriality-first") == 0);
    incoherent += !check_gr_coherence(F).ok();
  }
  EXPECT_GT(incoherent, 0u);
}

TEST(Property, KernelsAndCokernelsAreUniversal) {
  const auto rep = find_nonabelian_witness(
      Universe{test::arrow_category(), {FinAbGroup::zero_group(), FinAbGroup::cyclic(2)}});
  ASSERT_TRUE(rep.exhaustive);
  for (const auto& f : rep.findings) {
    EXPECT_NE(f.axiom, "kernel-universal") << f.subject;
    EXPECT_NE(f.axiom, "cokernel-universal") << f.subject;
    EXPECT_NE(f.axiom, "injective-not-mono") << f.subject;
    EXPECT_NE(f.axiom, "surjective-not-epi") << f.subject;
  }
}

}  // namespace
}  // namespace bipre
