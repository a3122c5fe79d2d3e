#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bipre/grothendieck.hpp"

namespace bipre {

/// Pure families for every object pair plus every composite of two
/// composable pure families; sorted, no duplicates. This is the finite
/// stand-in for "all morphisms of Gr" used by the checks below.
std::vector<GrMorphism> gr_domain(const GrCategory& G, std::size_t budget = kDefaultBudget);

/// A bipresheaf of abelian groups over Gr: F1 contravariant, F2 covariant,
/// given on the finite domain of Gr morphisms it was built for.
struct GrAbBipresheaf {
  GrCategory gr;
  std::vector<FinAbGroup> first_objects;   // F1(x)
  std::vector<FinAbGroup> second_objects;  // F2(x)
  std::map<GrMorphism, GroupHom> first;    // F1(phi): F1(y) -> F1(x)
  std::map<GrMorphism, GroupHom> second;   // F2(phi): F2(x) -> F2(y)
  std::vector<GroupHom> eta;

  bool operator==(const GrAbBipresheaf& o) const {
    return gr.rings() == o.gr.rings() && first_objects == o.first_objects &&
           second_objects == o.second_objects && first == o.first && second == o.second &&
           eta == o.eta;
  }
};

/// Typing and coverage of the domain, hom validity, identities,
/// functoriality on every composable pair of pure families, and
/// coherence on every pure family.
ValidationReport validate_gr_bipresheaf(const GrAbBipresheaf& F,
                                        std::size_t budget = kDefaultBudget);
/// eta_y = F2(phi) . eta_x . F1(phi) for every pure phi: x -> y.
ValidationReport check_gr_coherence(const GrAbBipresheaf& F, std::size_t budget = kDefaultBudget);
std::optional<Violation> replay(const GrAbBipresheaf& F, const Violation& v);

/// F1(phi)(m) = sum n (M1(f)(m) * r1), read directly off M for any phi.
GroupHom psi_first(const ModuleBipresheaf& M, const GrCategory& G, const GrMorphism& phi);
/// F2(phi)(m) = sum n (r2 * M2(f)(m)).
GroupHom psi_second(const ModuleBipresheaf& M, const GrCategory& G, const GrMorphism& phi);

/// Throws StructuralError when M is not over the rings of G.
GrAbBipresheaf psi(const ModuleBipresheaf& M, const GrCategory& G,
                   std::size_t budget = kDefaultBudget);

/// The module bipresheaf Phi would produce, with every law failure found.
struct StructureFailureReport {
  ModuleBipresheaf candidate;
  ValidationReport report;
};

using PhiResult = std::variant<ModuleBipresheaf, StructureFailureReport>;

/// Restricts F along unit families and reads the actions off families at
/// identities. Throws StructuralError if F lacks one of those families.
ModuleBipresheaf phi_candidate(const GrAbBipresheaf& F);
PhiResult phi(const GrAbBipresheaf& F);
/// Only the unit and scalar-associativity laws of both induced actions.
ValidationReport phi_action_laws(const GrAbBipresheaf& F);

struct RoundtripReport {
  SumIdReport sum_id;
  bool vacuous = false;  // sum-id fails, so the equivalence makes no promise
  bool forward_checked = false;
  bool forward_exact = false;  // phi(psi(M)) == M
  std::string forward_discrepancy;
  bool backward_exact = false;  // psi(phi(F)) == F
  std::string backward_discrepancy;
  std::size_t morphisms_compared = 0;

  [[nodiscard]] bool ok() const {
    return !vacuous && (!forward_checked || forward_exact) && backward_exact;
  }
};

RoundtripReport roundtrip_check(const ModuleBipresheaf& M, const GrCategory& G,
                                std::size_t budget = kDefaultBudget);
/// Only the psi(phi(F)) direction, for an F given directly.
RoundtripReport roundtrip_gr(const GrAbBipresheaf& F, std::size_t budget = kDefaultBudget);

struct GrBipresheafMorphism {
  GrAbBipresheaf source;
  GrAbBipresheaf target;
  std::vector<GroupHom> phi1;
  std::vector<GroupHom> phi2;
};

/// Componentwise naturality over the domain of the source, and eta-compatibility.
ValidationReport validate_gr_morphism(const GrBipresheafMorphism& m);
GrBipresheafMorphism psi_on_morphism(const ModuleMorphism& h, const GrCategory& G,
                                     std::size_t budget = kDefaultBudget);

struct MorphismFailureReport {
  ModuleMorphism candidate;
  ValidationReport report;
};

/// Needs phi to succeed on both endpoints; otherwise their failures are
/// reported under "source"/"target".
std::variant<ModuleMorphism, MorphismFailureReport> phi_on_morphism(
    const GrBipresheafMorphism& m);

/// Every valid module bipresheaf over R whose carriers are drawn from
/// `groups`, in lexicographic order of (carrier choice, tables).
std::vector<ModuleBipresheaf> enumerate_module_bipresheaves(const RingBipresheaf& R,
                                                            const std::vector<FinAbGroup>& groups,
                                                            std::size_t budget = kDefaultBudget);

}  // namespace bipre
