#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipre/bipresheaf.hpp"

namespace bipre {

/// A raw pair (r1, r2) with r1 in R1(x), r2 in R2(y); the x, y and base
/// morphism come from the component that holds it.
struct TensorPair {
  Elem r1 = 0;
  Elem r2 = 0;
  auto operator<=>(const TensorPair&) const = default;
};

/// Pair -> positive multiplicity.
using FormalSum = std::map<TensorPair, std::uint64_t>;

/// A morphism x -> y of the Grothendieck construction: for each base
/// morphism f: x -> y a formal sum of pairs. Absent components are zero.
///
/// Normal form: no empty components, no zero multiplicities. Pairs with
/// r1 = 0 are kept as ordinary terms (only identical pairs merge).
struct GrMorphism {
  ObjId source = 0;
  ObjId target = 0;
  std::map<MorId, FormalSum> components;

  auto operator<=>(const GrMorphism&) const = default;
};

GrMorphism normalize(GrMorphism m);

enum class EqualityMode { Strict, Tensor };
enum class SumIdMode { ExcludeZero, IncludeZero };

const char* to_string(EqualityMode m);
const char* to_string(SumIdMode m);

/// Gr of a ring bipresheaf. Objects are the base objects.
class GrCategory {
 public:
  /// Throws StructuralError if the bipresheaf has typing defects. Law
  /// violations (e.g. broken coherence) are accepted so that they can be
  /// probed; validate() reports them.
  static GrCategory build(RingBipresheaf rings);

  [[nodiscard]] const FinCategory& base() const { return rings_.base(); }
  [[nodiscard]] const RingBipresheaf& rings() const { return rings_; }
  [[nodiscard]] ValidationReport validate() const { return validate_bipresheaf(rings_); }

  /// r1^theta along f: R2(f)(theta_x(r1)), in R2(cod f).
  [[nodiscard]] Elem theta_along(MorId f, Elem r1) const;
  /// The derived second slot r1^theta(f) * r2.
  [[nodiscard]] Elem derived(MorId f, const TensorPair& p) const;

  [[nodiscard]] GrMorphism identity(ObjId x) const;
  /// psi . phi. Throws StructuralError on endpoint or context mismatch.
  [[nodiscard]] GrMorphism compose(const GrMorphism& psi, const GrMorphism& phi) const;
  [[nodiscard]] bool equal(const GrMorphism& a, const GrMorphism& b, EqualityMode mode) const;
  /// Each (r1, r2) at f becomes (r1, r1^theta r2); r1 = 0 terms vanish.
  [[nodiscard]] GrMorphism tensor_form(const GrMorphism& m) const;

  /// Throws StructuralError unless every component sits in Hom(source,
  /// target) and every element is in range.
  void check_context(const GrMorphism& m) const;

  /// (f, g) with g . f = h, sorted.
  [[nodiscard]] const std::vector<std::pair<MorId, MorId>>& factorizations_of(MorId h) const {
    return factorizations_.at(h);
  }

  /// Number of pure families x -> y, saturating above `cap`.
  [[nodiscard]] std::size_t pure_count(ObjId x, ObjId y, std::size_t cap) const;
  /// Calls `fn` on every pure family x -> y in lexicographic order: slots
  /// follow Hom(x, y) declaration order, each slot runs through "zero" then
  /// (r1, r2) lexicographically. Stops early when `fn` returns false.
  /// Throws ResourceError when the count exceeds `budget`.
  void for_each_pure(ObjId x, ObjId y, std::size_t budget,
                     const std::function<bool(const GrMorphism&)>& fn) const;

  /// Canonical text, e.g. `x->y {f: (1,0); g: (0,1), (1,1)x2}`.
  [[nodiscard]] std::string describe(const GrMorphism& m) const;
  /// Inverse of describe(); throws std::invalid_argument on bad text.
  [[nodiscard]] GrMorphism parse(const std::string& text) const;

 private:
  RingBipresheaf rings_;
  std::vector<std::vector<std::pair<MorId, MorId>>> factorizations_;
};

GrMorphism gr_identity(const GrCategory& G, ObjId x);
GrMorphism gr_compose(const GrCategory& G, const GrMorphism& psi, const GrMorphism& phi);
bool gr_equal(const GrCategory& G, const GrMorphism& a, const GrMorphism& b, EqualityMode mode);
std::vector<GrMorphism> enumerate_pure_morphisms(const GrCategory& G, ObjId x, ObjId y,
                                                 std::size_t budget = kDefaultBudget);

struct SumIdReport {
  SumIdMode mode = SumIdMode::ExcludeZero;
  bool pass = true;
  std::size_t families_checked = 0;
  std::size_t failures = 0;
  /// Failing families in enumeration order, at most kMaxWitnesses.
  std::vector<GrMorphism> witnesses;

  static constexpr std::size_t kMaxWitnesses = 256;
  [[nodiscard]] std::optional<GrMorphism> first_witness() const {
    if (witnesses.empty()) return std::nullopt;
    return witnesses.front();
  }
};

/// Sum of r1^theta r2 over all terms (with multiplicity), in R2(target).
Elem sum_of_derived(const GrCategory& G, const GrMorphism& m);
/// True iff `m` violates the sum-id equation.
bool sum_id_fails(const GrCategory& G, const GrMorphism& m);

/// Throws ResourceError when the total number of families exceeds `budget`.
SumIdReport check_sum_id(const GrCategory& G, SumIdMode mode,
                         std::size_t budget = kDefaultBudget);

/// R2(g)(r1^theta(f) r2) (s1^theta(g) s2) = (R1(f)(s1) r1)^theta(gf) (R2(g)(r2) s2)
/// for every composable f, g and every r1, r2, s1, s2.
ValidationReport check_well_definedness(const GrCategory& G,
                                        std::size_t budget = kDefaultBudget);

/// Unit laws on every pure family and associativity on every composable
/// triple of pure families.
ValidationReport check_gr_category_laws(const GrCategory& G,
                                        std::size_t budget = kDefaultBudget);

/// Whether tensor-equal pure families stay tensor-equal after composing
/// with a pure family on either side. Findings are reported, not errors.
ValidationReport check_tensor_congruence(const GrCategory& G,
                                         std::size_t budget = kDefaultBudget);

/// Re-evaluates one finding of the three checks above.
std::optional<Violation> replay(const GrCategory& G, const Violation& v);

}  // namespace bipre
