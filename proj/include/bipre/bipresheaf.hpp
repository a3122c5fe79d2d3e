#pragma once

#include <optional>
#include <vector>

#include "bipre/functors.hpp"

namespace bipre {

/// (R1, R2, theta): R1 contravariant, R2 covariant, theta_x: R1(x) -> R2(x)
/// with theta_y = R2(f) . theta_x . R1(f) for every f: x -> y.
struct RingBipresheaf {
  RingFunctor R1;
  RingFunctor R2;
  std::vector<RingHom> theta;  // indexed by ObjId

  [[nodiscard]] const FinCategory& base() const { return R1.base; }
  bool operator==(const RingBipresheaf&) const = default;
};

/// Same shape as RingBipresheaf, valued in abelian groups.
struct AbBipresheaf {
  AbFunctor A1;
  AbFunctor A2;
  std::vector<GroupHom> eta;

  [[nodiscard]] const FinCategory& base() const { return A1.base; }
  /// All components zero groups, eta = 0.
  static AbBipresheaf zero(const FinCategory& base);
  bool operator==(const AbBipresheaf&) const = default;
};

struct ModuleBipresheaf {
  RingBipresheaf over;
  ModuleStructure M1;  // contravariant, scalars R1, right action
  ModuleStructure M2;  // covariant, scalars R2, left action
  std::vector<GroupHom> eta;

  [[nodiscard]] const FinCategory& base() const { return over.base(); }
  [[nodiscard]] AbBipresheaf underlying() const { return {M1.carrier, M2.carrier, eta}; }
  static ModuleBipresheaf zero(const RingBipresheaf& over);
  bool operator==(const ModuleBipresheaf&) const = default;
};

/// Componentwise natural transformations phi1: A1 => A1', phi2: A2 => A2'
/// with phi2_x . eta_x = eta'_x . phi1_x.
struct BipresheafMorphism {
  AbBipresheaf source;
  AbBipresheaf target;
  std::vector<GroupHom> phi1;
  std::vector<GroupHom> phi2;

  static BipresheafMorphism identity(const AbBipresheaf& b);
  static BipresheafMorphism zero(const AbBipresheaf& source, const AbBipresheaf& target);
  bool operator==(const BipresheafMorphism&) const = default;
};

/// A BipresheafMorphism between module bipresheaves over the same ring
/// bipresheaf that also commutes with both actions.
struct ModuleMorphism {
  ModuleBipresheaf source;
  ModuleBipresheaf target;
  std::vector<GroupHom> phi1;
  std::vector<GroupHom> phi2;

  [[nodiscard]] BipresheafMorphism underlying() const {
    return {source.underlying(), target.underlying(), phi1, phi2};
  }
  static ModuleMorphism identity(const ModuleBipresheaf& m);
  bool operator==(const ModuleMorphism&) const = default;
};

/// Component validity, variance and endpoint checks, then the coherence
/// triangle for every (f, a). The module case adds eta/theta compatibility
/// for every (x, r, m).
ValidationReport validate_bipresheaf(const RingBipresheaf& B);
ValidationReport validate_bipresheaf(const AbBipresheaf& B);
ValidationReport validate_bipresheaf(const ModuleBipresheaf& B);
std::optional<Violation> replay(const RingBipresheaf& B, const Violation& v);
std::optional<Violation> replay(const AbBipresheaf& B, const Violation& v);
std::optional<Violation> replay(const ModuleBipresheaf& B, const Violation& v);

/// Endpoints are assumed valid; checks component typing, both naturality
/// squares and eta-compatibility (plus the actions in the module case).
ValidationReport validate_morphism(const BipresheafMorphism& m);
ValidationReport validate_morphism(const ModuleMorphism& m);
std::optional<Violation> replay(const BipresheafMorphism& m, const Violation& v);
std::optional<Violation> replay(const ModuleMorphism& m, const Violation& v);

/// g . f, componentwise. Throws StructuralError when target(f) != source(g).
BipresheafMorphism compose_bipresheaf_morphisms(const BipresheafMorphism& g,
                                                const BipresheafMorphism& f);
ModuleMorphism compose_module_morphisms(const ModuleMorphism& g, const ModuleMorphism& f);

}  // namespace bipre
