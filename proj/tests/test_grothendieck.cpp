#include <gtest/gtest.h>

#include "bipre/grothendieck.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace bipre {
namespace {

struct Named {
  std::string file, name;
};

const std::vector<Named>& valid_rings() {
  static const std::vector<Named> all = {
      {"terminal_z4.json", "terminal_z4"},
      {"arrow_z2_trivial.json", "arrow_z2_trivial"},
      {"arrow_z2_identity.json", "arrow_z2_identity"},
      {"arrow_z4_reduction.json", "arrow_z4_reduction"},
      {"squares.json", "commuting_square_z2"},
      {"squares.json", "parallel_square_z2"},
  };
  return all;
}

GrCategory gr(const std::string& file, const std::string& name) {
  return GrCategory::build(test::load_model(file).ring_bipresheaves.at(name));
}

TEST(Gr, TerminalIdentity) {
  const auto G = gr("terminal_z4.json", "terminal_z4");
  EXPECT_EQ(G.describe(G.identity(0)), "*->* {1*: (1,e)}");
}

TEST(Gr, UnitLawsOnArrowOverTrivial) {
  const auto G = gr("arrow_z2_trivial.json", "arrow_z2_trivial");
  for (ObjId x = 0; x < 2; ++x) {
    for (ObjId y = 0; y < 2; ++y) {
      for (const auto& phi : enumerate_pure_morphisms(G, x, y)) {
        EXPECT_EQ(gr_compose(G, gr_identity(G, y), phi), phi) << G.describe(phi);
        EXPECT_EQ(gr_compose(G, phi, gr_identity(G, x)), phi) << G.describe(phi);
      }
    }
  }
}

TEST(Gr, ComposeInZ4) {
  const auto G = gr("terminal_z4.json", "terminal_z4");
  const auto out = G.compose(G.parse("*->* {1*: (3,e)}"), G.parse("*->* {1*: (2,e)}"));
  EXPECT_EQ(G.describe(out), "*->* {1*: (2,e)}");
}

TEST(Gr, ComposeWithIdentityComponent) {
  const auto G = gr("arrow_z2_trivial.json", "arrow_z2_trivial");
  const auto out = G.compose(G.parse("x->y {f: (1,e)}"), G.parse("x->x {1x: (1,e)}"));
  EXPECT_EQ(G.describe(out), "x->y {f: (1,e)}");
}

TEST(Gr, ParallelSquareGivesTwoTermDiagonals) {
  const auto G = gr("squares.json", "parallel_square_z2");
  const auto phi = G.parse("x->y {f1: (1,e); f2: (1,e)}");
  const auto psi = G.parse("y->z {g1: (1,e); g2: (1,e)}");
  EXPECT_EQ(G.describe(G.compose(psi, phi)), "x->z {d: (1,e)x2; d': (1,e)x2}");
  const auto chi = G.parse("y->z {g1: (1,e); g2: (0,e)}");
  EXPECT_EQ(G.describe(G.compose(chi, phi)), "x->z {d: (0,e), (1,e); d': (0,e), (1,e)}");
}

TEST(Gr, CompositionMatchesFormulaOnAllPureFamilies) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    const std::size_t n = G.base().object_count();
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (ObjId z = 0; z < n; ++z) {
          const auto left = enumerate_pure_morphisms(G, x, y);
          const auto right = enumerate_pure_morphisms(G, y, z);
          for (const auto& phi : left) {
            for (const auto& psi : right) {
              const auto got = gr_compose(G, psi, phi);
              ASSERT_EQ(oracle::raw(got), oracle::compose(G.rings(), psi, phi))
                  << name << " " << G.describe(psi) << " . " << G.describe(phi);
              ASSERT_EQ(normalize(got), got);
            }
          }
        }
  }
}

TEST(Gr, EqualityModes) {
  const auto G3 = gr("arrow_z2_identity.json", "arrow_z2_identity");
  const auto a = G3.parse("x->y {f: (1,0)}");
  EXPECT_TRUE(gr_equal(G3, a, a, EqualityMode::Strict));
  EXPECT_TRUE(gr_equal(G3, a, G3.parse("x->y {f: (1,0)}"), EqualityMode::Tensor));

  const auto G = gr("arrow_z4_reduction.json", "arrow_z4_reduction");
  const auto p = G.parse("x->y {f: (2,0)}");
  const auto q = G.parse("x->y {f: (2,1)}");
  EXPECT_TRUE(gr_equal(G, p, q, EqualityMode::Tensor));
  EXPECT_FALSE(gr_equal(G, p, q, EqualityMode::Strict));
}

TEST(Gr, EqualityIsReflexiveEverywhere) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    for (ObjId x = 0; x < G.base().object_count(); ++x)
      for (ObjId y = 0; y < G.base().object_count(); ++y)
        for (const auto& phi : enumerate_pure_morphisms(G, x, y)) {
          EXPECT_TRUE(gr_equal(G, phi, phi, EqualityMode::Strict));
          EXPECT_TRUE(gr_equal(G, phi, phi, EqualityMode::Tensor));
        }
  }
}

TEST(Gr, NormalizeIsIdempotent) {
  const auto G = gr("squares.json", "parallel_square_z2");
  GrMorphism m{0, 2, {}};
  const MorId d = *G.base().find_morphism("d");
  m.components[d][{1, 0}] = 2;
  m.components[d][{0, 0}] = 0;
  m.components[*G.base().find_morphism("d'")];
  const auto once = normalize(m);
  EXPECT_EQ(normalize(once), once);
  EXPECT_EQ(once.components.size(), 1u);
  EXPECT_EQ(once.components.at(d).size(), 1u);
}

TEST(Gr, DescribeParseRoundTrip) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    for (ObjId x = 0; x < G.base().object_count(); ++x)
      for (ObjId y = 0; y < G.base().object_count(); ++y)
        for (const auto& phi : enumerate_pure_morphisms(G, x, y)) {
          EXPECT_EQ(G.parse(G.describe(phi)), phi);
        }
  }
  const auto G = gr("terminal_z4.json", "terminal_z4");
  EXPECT_THROW(G.parse("*->* {1*: (7,e)}"), std::invalid_argument);
  EXPECT_THROW(G.parse("*->* {g: (1,e)}"), std::invalid_argument);
}

TEST(Gr, PureCounts) {
  const auto G1 = gr("terminal_z4.json", "terminal_z4");
  EXPECT_EQ(G1.pure_count(0, 0, kDefaultBudget), 5u);
  const auto G2 = gr("arrow_z2_trivial.json", "arrow_z2_trivial");
  EXPECT_EQ(G2.pure_count(0, 1, kDefaultBudget), 3u);
  EXPECT_EQ(G2.pure_count(1, 0, kDefaultBudget), 1u);
  EXPECT_EQ(enumerate_pure_morphisms(G2, 1, 0).size(), 1u);
  EXPECT_TRUE(enumerate_pure_morphisms(G2, 1, 0).front().components.empty());
}

TEST(Gr, PureCountsMatchFormulaAndEnumeration) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    for (ObjId x = 0; x < G.base().object_count(); ++x)
      for (ObjId y = 0; y < G.base().object_count(); ++y) {
        const auto expected = oracle::pure_count(G.rings(), x, y);
        EXPECT_EQ(G.pure_count(x, y, kDefaultBudget), expected);
        auto all = enumerate_pure_morphisms(G, x, y);
        EXPECT_EQ(all.size(), expected);
        std::sort(all.begin(), all.end());
        EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
      }
  }
}

TEST(Gr, EnumerationRespectsBudget) {
  const auto G = gr("squares.json", "parallel_square_z2");
  EXPECT_THROW(enumerate_pure_morphisms(G, 0, 2, 4), ResourceError);
}

TEST(SumId, TerminalPassesBothModes) {
  const auto G = gr("terminal_z4.json", "terminal_z4");
  EXPECT_TRUE(check_sum_id(G, SumIdMode::ExcludeZero).pass);
  EXPECT_TRUE(check_sum_id(G, SumIdMode::IncludeZero).pass);
}

TEST(SumId, ArrowOverTrivialPassesBothModes) {
  const auto G = gr("arrow_z2_trivial.json", "arrow_z2_trivial");
  EXPECT_TRUE(check_sum_id(G, SumIdMode::ExcludeZero).pass);
  EXPECT_TRUE(check_sum_id(G, SumIdMode::IncludeZero).pass);
}

TEST(SumId, IdentityStructureFailsWithSingletonWitness) {
  const auto G = gr("arrow_z2_identity.json", "arrow_z2_identity");
  const auto rep = check_sum_id(G, SumIdMode::ExcludeZero);
  EXPECT_FALSE(rep.pass);
  const auto w = G.parse("x->y {f: (1,0)}");
  EXPECT_NE(std::find(rep.witnesses.begin(), rep.witnesses.end(), w), rep.witnesses.end());
  EXPECT_TRUE(sum_id_fails(G, w));
  EXPECT_EQ(G.rings().R2.at(1).name(sum_of_derived(G, w)), "0");
}

TEST(SumId, CountsMatchOracle) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    for (auto mode : {SumIdMode::ExcludeZero, SumIdMode::IncludeZero}) {
      const auto rep = check_sum_id(G, mode);
      const auto expected = oracle::sum_id(G.rings(), mode == SumIdMode::IncludeZero);
      EXPECT_EQ(rep.families_checked, expected.families) << name;
      EXPECT_EQ(rep.failures, expected.failures) << name;
      EXPECT_EQ(rep.pass, expected.failures == 0) << name;
      EXPECT_EQ(rep.witnesses.size(), std::min(expected.failures, SumIdReport::kMaxWitnesses));
      for (const auto& w : rep.witnesses) EXPECT_TRUE(sum_id_fails(G, w));
    }
  }
}

// With the zero family included, any nonzero R2(y) reachable from some x
// makes the empty sum 0 differ from 1.
TEST(SumId, IncludeZeroCatchesNontrivialSecondRing) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    bool nontrivial = false;
    for (ObjId y = 0; y < G.base().object_count(); ++y) {
      nontrivial = nontrivial || !G.rings().R2.at(y).is_trivial();
    }
    const auto rep = check_sum_id(G, SumIdMode::IncludeZero);
    EXPECT_EQ(rep.pass, !nontrivial) << name;
    if (nontrivial) {
      bool empty_witness = false;
      for (const auto& w : rep.witnesses) empty_witness = empty_witness || w.components.empty();
      EXPECT_TRUE(empty_witness) << name;
    }
  }
}

TEST(WellDefinedness, TerminalHasSixteenTuples) {
  const auto G = gr("terminal_z4.json", "terminal_z4");
  EXPECT_EQ(oracle::well_definedness(G.rings()).tuples, 16u);
  EXPECT_TRUE(check_well_definedness(G).ok());
}

TEST(WellDefinedness, HoldsOnValidFixtures) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    EXPECT_EQ(oracle::well_definedness(G.rings()).failures, 0u) << name;
    EXPECT_TRUE(check_well_definedness(G).ok()) << name;
  }
}

TEST(WellDefinedness, BrokenCoherenceIsDetected) {
  const auto G = gr("arrow_theta_swap.json", "arrow_theta_swap");
  const auto rep = check_well_definedness(G);
  const auto expected = oracle::well_definedness(G.rings());
  EXPECT_GT(expected.failures, 0u);
  EXPECT_EQ(rep.size(), expected.failures);
  for (const auto& v : rep.violations()) EXPECT_EQ(replay(G, v), v);
}

TEST(GrLaws, UnitAndAssociativityOnCorpus) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    EXPECT_TRUE(check_gr_category_laws(G).ok()) << name;
  }
}

TEST(GrLaws, TensorCongruenceFindingsReplay) {
  for (const auto& [file, name] : valid_rings()) {
    const auto G = gr(file, name);
    const auto rep = check_tensor_congruence(G);
    for (const auto& v : rep.violations()) ASSERT_EQ(replay(G, v), v) << name;
  }
}

TEST(Gr, ContextErrors) {
  const auto G = gr("arrow_z2_trivial.json", "arrow_z2_trivial");
  GrMorphism bad{1, 0, {}};
  bad.components[*G.base().find_morphism("f")][{1, 0}] = 1;
  EXPECT_THROW(G.check_context(bad), StructuralError);
  EXPECT_THROW(G.compose(G.identity(0), G.identity(1)), StructuralError);
}

}  // namespace
}  // namespace bipre
