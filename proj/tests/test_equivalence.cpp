#include <gtest/gtest.h>

#include "bipre/equivalence.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace bipre {
namespace {

struct Over {
  spec::Model model;
  GrCategory G;
};

Over over(const std::string& file, const std::string& rings) {
  auto model = test::load_model(file);
  auto G = GrCategory::build(model.ring_bipresheaves.at(rings));
  return {std::move(model), std::move(G)};
}

// F1(phi)(m) = sum n (M1(f)(m) . r1), straight from the definition.
Elem naive_first(const ModuleBipresheaf& M, const GrMorphism& phi, Elem m) {
  const auto& C = M.M1.carrier.at(phi.source);
  Elem acc = C.zero();
  for (const auto& [f, sum] : phi.components) {
    const Elem restricted = M.M1.carrier.on(f).map()[m];
    for (const auto& [p, n] : sum) {
      for (std::uint64_t k = 0; k < n; ++k) acc = C.plus(acc, M.M1.act(phi.source, restricted, p.r1));
    }
  }
  return acc;
}

Elem naive_second(const ModuleBipresheaf& M, const GrMorphism& phi, Elem m) {
  const auto& C = M.M2.carrier.at(phi.target);
  Elem acc = C.zero();
  for (const auto& [f, sum] : phi.components) {
    const Elem pushed = M.M2.carrier.on(f).map()[m];
    for (const auto& [p, n] : sum) {
      for (std::uint64_t k = 0; k < n; ++k) acc = C.plus(acc, M.M2.act(phi.target, pushed, p.r2));
    }
  }
  return acc;
}

TEST(Psi, ArrowModuleOnUnitFamilyAlongF) {
  auto [model, G] = over("arrow_z2_trivial.json", "arrow_z2_trivial");
  const auto& M = model.modules.at("arrow_z2_module");
  const auto phi = G.parse("x->y {f: (1,e)}");
  EXPECT_TRUE(psi_first(M, G, phi).is_identity());
  EXPECT_TRUE(psi_second(M, G, phi).is_zero());
}

TEST(Psi, RegularZ4MultipliesByTwo) {
  auto [model, G] = over("terminal_z4_modules.json", "terminal_z4");
  const auto& M = model.modules.at("terminal_regular");
  const auto h = psi_first(M, G, G.parse("*->* {1*: (2,e)}"));
  const auto& C = h.source();
  for (Elem m = 0; m < C.size(); ++m) EXPECT_EQ(h(m), C.plus(m, m));
}

TEST(Psi, MatchesDefinitionOnAllPureFamilies) {
  for (const auto& [file, rings, module] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {"arrow_z2_trivial.json", "arrow_z2_trivial", "arrow_z2_module"},
           {"arrow_z2_identity.json", "arrow_z2_identity", "arrow_z2_both"},
           {"terminal_z4_modules.json", "terminal_z4", "terminal_regular"}}) {
    auto [model, G] = over(file, rings);
    const auto& M = model.modules.at(module);
    for (ObjId x = 0; x < G.base().object_count(); ++x)
      for (ObjId y = 0; y < G.base().object_count(); ++y)
        for (const auto& phi : enumerate_pure_morphisms(G, x, y)) {
          const auto a = psi_first(M, G, phi);
          for (Elem m = 0; m < a.source().size(); ++m) {
            ASSERT_EQ(a(m), naive_first(M, phi, m)) << module << " " << G.describe(phi);
          }
          const auto b = psi_second(M, G, phi);
          for (Elem m = 0; m < b.source().size(); ++m) {
            ASSERT_EQ(b(m), naive_second(M, phi, m)) << module << " " << G.describe(phi);
          }
        }
  }
}

TEST(Psi, SumIdBaseGivesCoherentOutput) {
  auto [model, G] = over("arrow_z2_trivial.json", "arrow_z2_trivial");
  const auto F = psi(model.modules.at("arrow_z2_module"), G);
  EXPECT_TRUE(validate_gr_bipresheaf(F).ok());
  EXPECT_TRUE(check_gr_coherence(F).ok());
}

TEST(Psi, NonSumIdBaseBreaksCoherence) {
  auto [model, G] = over("arrow_z2_identity.json", "arrow_z2_identity");
  const auto F = psi(model.modules.at("arrow_z2_both"), G);
  const auto rep = check_gr_coherence(F);
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.laws(), std::set<std::string>{"gr-coherence"});
  for (const auto& v : rep.violations()) EXPECT_EQ(replay(F, v), v);
}

TEST(Psi, ZeroModuleIsAlwaysCoherent) {
  for (const auto& [file, rings] : std::vector<std::pair<std::string, std::string>>{
           {"terminal_z4.json", "terminal_z4"},
           {"arrow_z2_trivial.json", "arrow_z2_trivial"},
           {"arrow_z2_identity.json", "arrow_z2_identity"},
           {"arrow_theta_swap.json", "arrow_theta_swap"},
           {"squares.json", "parallel_square_z2"}}) {
    auto [model, G] = over(file, rings);
    const auto F = psi(ModuleBipresheaf::zero(G.rings()), G);
    EXPECT_TRUE(validate_gr_bipresheaf(F).ok()) << rings;
  }
}

TEST(Psi, BrokenActionNaturalityBreaksFunctoriality) {
  const auto model = test::load_model("corrupted.json");
  const auto& M = model.modules.at("bad_action_naturality");
  const auto G = GrCategory::build(M.over);
  const auto rep = validate_gr_bipresheaf(psi(M, G));
  EXPECT_TRUE(rep.laws().count("functoriality-first"));
}

TEST(Phi, RecoversArrowModule) {
  auto [model, G] = over("arrow_z2_trivial.json", "arrow_z2_trivial");
  const auto& M = model.modules.at("arrow_z2_module");
  const auto F = psi(M, G);
  const auto back = phi(F);
  ASSERT_TRUE(std::holds_alternative<ModuleBipresheaf>(back));
  EXPECT_EQ(std::get<ModuleBipresheaf>(back), M);
  EXPECT_TRUE(phi_action_laws(F).ok());
  for (ObjId x = 0; x < 2; ++x) {
    EXPECT_TRUE(F.first.at(G.identity(x)).is_identity());
  }
}

TEST(Phi, TrivialRingWithNonzeroSecondGroupFails) {
  const auto model = test::load_model("terminal_z4_modules.json");
  const auto& F = model.gr_bipresheaves.at("terminal_collapse");
  const auto out = phi(F);
  ASSERT_TRUE(std::holds_alternative<StructureFailureReport>(out));
  const auto& failure = std::get<StructureFailureReport>(out);
  bool replayed = false;
  for (const auto& v : failure.report.violations()) {
    if (v.law != "identity-equals-zero") continue;
    EXPECT_EQ(replay(failure.candidate, v), v);
    replayed = true;
  }
  EXPECT_TRUE(replayed);
}

TEST(Roundtrip, ArrowModule) {
  auto [model, G] = over("arrow_z2_trivial.json", "arrow_z2_trivial");
  const auto rep = roundtrip_check(model.modules.at("arrow_z2_module"), G);
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.forward_exact);
  EXPECT_TRUE(rep.backward_exact);
}

TEST(Roundtrip, TerminalModules) {
  auto [model, G] = over("terminal_z4_modules.json", "terminal_z4");
  for (const auto* name : {"terminal_zero", "terminal_regular"}) {
    const auto rep = roundtrip_check(model.modules.at(name), G);
    EXPECT_TRUE(rep.forward_exact) << name;
    EXPECT_TRUE(rep.backward_exact) << name;
  }
}

TEST(Roundtrip, NonSumIdIsVacuous) {
  auto [model, G] = over("arrow_z2_identity.json", "arrow_z2_identity");
  const auto rep = roundtrip_check(model.modules.at("arrow_z2_both"), G);
  EXPECT_TRUE(rep.vacuous);
  EXPECT_FALSE(rep.ok());
}

TEST(Roundtrip, GrBipresheafFromModule) {
  const auto model = test::load_model("terminal_z4_modules.json");
  EXPECT_TRUE(roundtrip_gr(model.gr_bipresheaves.at("terminal_regular_gr")).ok());
}

TEST(Morphisms, PsiAndPhiOnIdentity) {
  auto [model, G] = over("arrow_z2_trivial.json", "arrow_z2_trivial");
  const auto h = ModuleMorphism::identity(model.modules.at("arrow_z2_module"));
  const auto image = psi_on_morphism(h, G);
  EXPECT_TRUE(validate_gr_morphism(image).ok());
  const auto back = phi_on_morphism(image);
  ASSERT_TRUE(std::holds_alternative<ModuleMorphism>(back));
  EXPECT_EQ(std::get<ModuleMorphism>(back), h);
}

TEST(Morphisms, ZeroEndomorphismOfRegularModule) {
  auto [model, G] = over("terminal_z4_modules.json", "terminal_z4");
  const auto& M = model.modules.at("terminal_regular");
  auto h = ModuleMorphism::identity(M);
  h.phi1[0] = GroupHom::zero(M.M1.carrier.at(0), M.M1.carrier.at(0));
  EXPECT_TRUE(validate_morphism(h).ok());
  EXPECT_TRUE(validate_gr_morphism(psi_on_morphism(h, G)).ok());
  // m -> 3m commutes with multiplication.
  h.phi1[0] = GroupHom(M.M1.carrier.at(0), M.M1.carrier.at(0), {0, 3, 2, 1});
  EXPECT_TRUE(validate_morphism(h).ok());
}

}  // namespace
}  // namespace bipre
