#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bipre/report.hpp"

namespace bipre {

/// A finite abelian group given by its full addition table.
///
/// Element names are opaque; every bit of structure lives in the table.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  /// `add` is row-major, `add[a * n + b] = a + b`. Throws StructuralError
  /// for duplicate names or entries out of range; group laws are not checked.
  static FinAbGroup from_tables(std::vector<std::string> names, std::vector<Elem> add, Elem zero);
  static FinAbGroup cyclic(std::size_t n);
  static FinAbGroup zero_group();
  static FinAbGroup product(const std::vector<FinAbGroup>& factors);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(Elem a) const { return names_.at(a); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] std::optional<Elem> find(const std::string& name) const;
  [[nodiscard]] Elem plus(Elem a, Elem b) const { return add_[a * names_.size() + b]; }
  [[nodiscard]] std::optional<Elem> negate(Elem a) const;
  [[nodiscard]] Elem zero() const { return zero_; }
  [[nodiscard]] bool is_zero_group() const { return names_.size() == 1; }
  /// n * a for n >= 0.
  [[nodiscard]] Elem multiple(std::uint64_t n, Elem a) const;

  bool operator==(const FinAbGroup&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<Elem> add_;
  Elem zero_ = 0;
};

/// A finite unital commutative ring. zero == one marks the trivial ring.
class FinCommRing {
 public:
  FinCommRing() = default;

  static FinCommRing from_tables(std::vector<std::string> names, std::vector<Elem> add,
                                 std::vector<Elem> mul, Elem zero, Elem one);
  static FinCommRing modular(std::size_t n);
  static FinCommRing trivial();
  static FinCommRing product(const std::vector<FinCommRing>& factors);

  [[nodiscard]] const FinAbGroup& additive() const { return additive_; }
  [[nodiscard]] std::size_t size() const { return additive_.size(); }
  [[nodiscard]] const std::string& name(Elem a) const { return additive_.name(a); }
  [[nodiscard]] const std::vector<std::string>& names() const { return additive_.names(); }
  [[nodiscard]] std::optional<Elem> find(const std::string& name) const {
    return additive_.find(name);
  }
  [[nodiscard]] Elem plus(Elem a, Elem b) const { return additive_.plus(a, b); }
  [[nodiscard]] Elem times(Elem a, Elem b) const { return mul_[a * size() + b]; }
  [[nodiscard]] Elem zero() const { return additive_.zero(); }
  [[nodiscard]] Elem one() const { return one_; }
  [[nodiscard]] bool is_trivial() const { return one_ == additive_.zero(); }

  bool operator==(const FinCommRing&) const = default;

 private:
  FinAbGroup additive_;
  std::vector<Elem> mul_;
  Elem one_ = 0;
};

ValidationReport validate_group(const FinAbGroup& g);
ValidationReport validate_ring(const FinCommRing& r);
std::optional<Violation> replay(const FinAbGroup& g, const Violation& v);
std::optional<Violation> replay(const FinCommRing& r, const Violation& v);

/// Recipe for a ring; product factors and table entries are nested specs or names.
struct RingSpec {
  struct Modular {
    std::size_t n = 1;
    bool operator==(const Modular&) const = default;
  };
  struct Trivial {
    bool operator==(const Trivial&) const = default;
  };
  struct Product {
    std::vector<RingSpec> factors;
    bool operator==(const Product&) const = default;
  };
  struct Table {
    std::vector<std::string> elements;
    std::string zero, one;
    std::vector<std::vector<std::string>> add, mul;  // rows in element order
    bool operator==(const Table&) const = default;
  };

  std::variant<Modular, Trivial, Product, Table> recipe;

  bool operator==(const RingSpec&) const = default;
};

/// Builds the ring without checking axioms (table specs still need
/// resolvable names); throws StructuralError on malformed tables.
FinCommRing build_ring_unchecked(const RingSpec& spec);
/// Builds and validates; throws AxiomError naming the failing axiom.
FinCommRing build_ring(const RingSpec& spec);

/// A map of underlying sets between two structures of the same kind.
template <class Obj>
class Hom {
 public:
  Hom() = default;
  /// Throws StructuralError if `map` is not a total function source -> target.
  Hom(Obj source, Obj target, std::vector<Elem> map);

  static Hom identity(const Obj& obj);
  /// The constant-zero map (a group hom; for rings, not unital unless the target is trivial).
  static Hom zero(const Obj& source, const Obj& target);

  [[nodiscard]] const Obj& source() const { return source_; }
  [[nodiscard]] const Obj& target() const { return target_; }
  [[nodiscard]] const std::vector<Elem>& map() const { return map_; }
  [[nodiscard]] Elem operator()(Elem a) const { return map_[a]; }
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] bool is_zero() const;

  bool operator==(const Hom&) const = default;

 private:
  Obj source_;
  Obj target_;
  std::vector<Elem> map_;
};

using GroupHom = Hom<FinAbGroup>;
using RingHom = Hom<FinCommRing>;

/// g ∘ f. Throws StructuralError when target(f) != source(g).
template <class Obj>
Hom<Obj> compose(const Hom<Obj>& g, const Hom<Obj>& f);

/// Pointwise sum of two group homs with the same endpoints.
GroupHom add_homs(const GroupHom& a, const GroupHom& b);

ValidationReport validate_group_hom(const GroupHom& h);
ValidationReport validate_ring_hom(const RingHom& h);
std::optional<Violation> replay(const GroupHom& h, const Violation& v);
std::optional<Violation> replay(const RingHom& h, const Violation& v);

/// Every unital ring hom, in lexicographic order of the element map.
std::vector<RingHom> enumerate_ring_homs(const FinCommRing& source, const FinCommRing& target,
                                         std::size_t budget = kDefaultBudget);
/// Every group hom, in lexicographic order of the element map.
std::vector<GroupHom> enumerate_group_homs(const FinAbGroup& source, const FinAbGroup& target,
                                           std::size_t budget = kDefaultBudget);

/// Short description of a map as `a->b, ...`, used in reports.
std::string describe_map(const std::vector<std::string>& source_names,
                         const std::vector<std::string>& target_names,
                         const std::vector<Elem>& map);

}  // namespace bipre
