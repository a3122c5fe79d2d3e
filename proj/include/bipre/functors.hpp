#pragma once

#include <optional>
#include <vector>

#include "bipre/algebra.hpp"
#include "bipre/fincat.hpp"

namespace bipre {

enum class Variance { Contravariant, Covariant };

const char* to_string(Variance v);

/// A functor from a finite category (or its opposite, per `variance`) into
/// finite rings or finite abelian groups.
///
/// For f: x -> y, a covariant functor stores a map F(x) -> F(y) and a
/// contravariant one stores F(y) -> F(x).
template <class Obj>
struct Functor {
  FinCategory base;
  Variance variance = Variance::Covariant;
  std::vector<Obj> objects;           // indexed by ObjId
  std::vector<Hom<Obj>> morphisms;    // indexed by MorId

  [[nodiscard]] const Obj& at(ObjId x) const { return objects.at(x); }
  [[nodiscard]] const Hom<Obj>& on(MorId f) const { return morphisms.at(f); }

  /// Same value at every object, identity maps everywhere.
  static Functor constant(const FinCategory& base, Variance variance, const Obj& value);

  bool operator==(const Functor&) const = default;
};

using RingFunctor = Functor<FinCommRing>;
using AbFunctor = Functor<FinAbGroup>;

/// Object/hom validity, direction of every map, identities, and composition
/// in the variance-appropriate order. Functoriality is only examined once
/// every component map is a valid homomorphism.
ValidationReport validate_functor(const RingFunctor& F);
ValidationReport validate_functor(const AbFunctor& F);
std::optional<Violation> replay(const RingFunctor& F, const Violation& v);
std::optional<Violation> replay(const AbFunctor& F, const Violation& v);

/// Paper notation writes the presheaf action on the right (m·r) and the
/// copresheaf action on the left (r·m); tables are the same either way.
enum class ActionSide { Right, Left };

/// A module structure on an abelian-group valued functor over a ring valued
/// functor of the same base and variance.
struct ModuleStructure {
  RingFunctor scalars;
  AbFunctor carrier;
  ActionSide side = ActionSide::Right;
  /// Per object x, `action[x][m * |scalars(x)| + r]` is the action of r on m.
  std::vector<std::vector<Elem>> action;

  [[nodiscard]] Elem act(ObjId x, Elem m, Elem r) const {
    return action[x][m * scalars.at(x).size() + r];
  }

  /// Carrier = additive groups of `ring`, action = ring multiplication.
  static ModuleStructure regular(const RingFunctor& ring, ActionSide side);
  /// Carrier = zero group everywhere.
  static ModuleStructure zero(const RingFunctor& ring, ActionSide side);

  bool operator==(const ModuleStructure&) const = default;
};

/// Per-object module axioms (additivity in both slots, unit, zero scalar,
/// scalar associativity, zero carrier over the trivial ring) and naturality
/// of the action along every base morphism.
ValidationReport validate_module_structure(const ModuleStructure& M);
std::optional<Violation> replay(const ModuleStructure& M, const Violation& v);

/// Every functor with the given object values: identities map to
/// identities, other morphisms run through all group homs, and only
/// functorial assignments are kept. Lexicographic in morphism order.
std::vector<AbFunctor> enumerate_ab_functors(const FinCategory& base, Variance variance,
                                             const std::vector<FinAbGroup>& objects,
                                             BudgetMeter& meter);

/// Every action table making `carrier` a unital module over `ring`.
std::vector<std::vector<Elem>> enumerate_actions(const FinCommRing& ring,
                                                 const FinAbGroup& carrier, BudgetMeter& meter);

/// Every module structure over `scalars` whose carrier takes the given
/// values, i.e. all functors times all per-object actions, filtered by
/// action naturality.
std::vector<ModuleStructure> enumerate_module_structures(const RingFunctor& scalars,
                                                         const std::vector<FinAbGroup>& carriers,
                                                         ActionSide side, BudgetMeter& meter);

/// The additive-group functor underlying a ring valued functor.
AbFunctor additive_functor(const RingFunctor& F);

}  // namespace bipre
