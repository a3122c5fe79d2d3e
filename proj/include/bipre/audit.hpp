#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipre/bipresheaf.hpp"

namespace bipre {

/// A finite slice of the category of bipresheaves of abelian groups: all
/// bipresheaves over `base` whose component groups come from `groups`, and
/// all morphisms between them.
struct Universe {
  FinCategory base;
  std::vector<FinAbGroup> groups;
  std::size_t budget = kDefaultBudget;
};

ValidationReport validate_universe(const Universe& u);

/// Abelian groups are isomorphic iff they have the same number of elements
/// of each order.
bool isomorphic_groups(const FinAbGroup& a, const FinAbGroup& b);

/// Subgroup of `g` on the given (sorted) elements, keeping their names.
FinAbGroup subgroup(const FinAbGroup& g, const std::vector<Elem>& elements);

/// Quotient data: the group of cosets plus the projection.
struct Quotient {
  FinAbGroup group;           // cosets named "[a]" after their least element
  std::vector<Elem> project;  // element of g -> coset index
};
/// `sub` must be a subgroup of `g`.
Quotient quotient(const FinAbGroup& g, const std::vector<Elem>& sub);

struct KernelResult {
  AbBipresheaf object;
  BipresheafMorphism inclusion;
  ValidationReport validity;  // object as a bipresheaf, inclusion as a morphism
};

struct CokernelResult {
  AbBipresheaf object;
  BipresheafMorphism projection;
  ValidationReport validity;  // includes well-definedness of induced maps
};

KernelResult compute_kernel(const BipresheafMorphism& m);
CokernelResult compute_cokernel(const BipresheafMorphism& m);

/// Everything enumerated in a universe, in deterministic order. Morphisms are
/// kept as raw component tables; materialize() rebuilds a full value.
class UniverseCatalog {
 public:
  struct Arrow {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::vector<Elem>> phi1;  // per object, element map
    std::vector<std::vector<Elem>> phi2;
    bool operator==(const Arrow&) const = default;
  };

  /// Throws ResourceError when the universe budget is exceeded.
  static UniverseCatalog enumerate(const Universe& u);

  [[nodiscard]] const Universe& universe() const { return universe_; }
  [[nodiscard]] const std::vector<AbBipresheaf>& objects() const { return objects_; }
  [[nodiscard]] const std::vector<Arrow>& arrows() const { return arrows_; }
  [[nodiscard]] const std::vector<std::size_t>& into(std::size_t object) const {
    return into_.at(object);
  }
  [[nodiscard]] const std::vector<std::size_t>& out_of(std::size_t object) const {
    return out_of_.at(object);
  }
  [[nodiscard]] BipresheafMorphism materialize(std::size_t arrow) const;
  /// Index of an arrow equal to `m` (endpoints compared by value), if any.
  [[nodiscard]] std::optional<std::size_t> find(const BipresheafMorphism& m) const;
  /// Index of a universe object isomorphic to `b` in every component group.
  [[nodiscard]] bool has_isomorphic_groups(const AbBipresheaf& b) const;

  /// Short readable description, e.g. `#12: B3 -> B7 phi1{x:[0,1]...}`.
  [[nodiscard]] std::string describe_arrow(std::size_t arrow) const;
  [[nodiscard]] std::string describe_object(std::size_t object) const;

 private:
  Universe universe_;
  std::vector<AbBipresheaf> objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> into_;
  std::vector<std::vector<std::size_t>> out_of_;
};

struct Classification {
  bool injective = false;  // every component
  bool surjective = false;
  bool mono = false;
  bool epi = false;
  bool iso = false;
  bool normal = false;
  bool conormal = false;
  bool comparison_iso = false;
  std::optional<std::size_t> non_mono_witness;  // u != 0 with m . u = 0
  std::optional<std::size_t> non_epi_witness;   // u != 0 with u . m = 0
  std::optional<std::size_t> normal_witness;    // n with m = ker n
  std::optional<std::size_t> conormal_witness;  // n with m = coker n
};

/// Mono/epi/normal/conormal are relative to the universe's morphisms.
Classification classify_morphism(const UniverseCatalog& cat, std::size_t arrow);

struct Finding {
  std::string axiom;
  std::size_t arrow = 0;
  std::string subject;
  std::string detail;
  bool operator==(const Finding&) const = default;
};

struct WitnessReport {
  std::size_t objects = 0;
  std::size_t morphisms = 0;
  std::map<std::string, std::size_t> checked;
  std::vector<Finding> findings;
  /// Converse implications (mono => injective, epi => surjective) that fail.
  std::vector<Finding> observations;
  bool exhaustive = true;
  std::string incomplete_reason;

  static constexpr const char* kLimitation =
      "mono, epi, normal and conormal are decided against the morphisms of this "
      "finite universe only";
};

/// Runs every probe on every morphism of the universe. A budget overflow
/// yields a partial report with `exhaustive = false`. With jobs > 1 the
/// arrows are split across workers; the merged report is identical.
WitnessReport find_nonabelian_witness(const Universe& u, unsigned jobs = 1);
WitnessReport find_nonabelian_witness(const UniverseCatalog& cat, unsigned jobs = 1);

/// Re-runs the probe named by `f.axiom` on `f.arrow`; returns the finding it
/// produces now (equal to `f` when the finding reproduces).
std::optional<Finding> replay(const UniverseCatalog& cat, const Finding& f);

}  // namespace bipre
