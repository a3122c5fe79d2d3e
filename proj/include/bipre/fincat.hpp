#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bipre/report.hpp"

namespace bipre {

using ObjId = std::size_t;
using MorId = std::size_t;

/// Identifier-level description of a finite category, as written in fixtures.
struct CategoryData {
  struct Arrow {
    std::string id, dom, cod;
    bool operator==(const Arrow&) const = default;
  };
  /// `second ∘ first = result`.
  struct Composite {
    std::string second, first, result;
    bool operator==(const Composite&) const = default;
  };

  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // object -> morphism
  std::vector<Composite> compositions;

  bool operator==(const CategoryData&) const = default;
};

/// A finite category with explicit identities and a dense composition table.
///
/// Construction only guarantees that the tables are well formed: every id
/// resolves and every composable pair has exactly one table entry. Whether
/// the tables satisfy the category laws is the job of validate_category().
class FinCategory {
 public:
  FinCategory() = default;

  /// Throws StructuralError listing every defect found.
  static FinCategory build(const CategoryData& data);

  [[nodiscard]] std::size_t object_count() const { return objects_.size(); }
  [[nodiscard]] std::size_t morphism_count() const { return morphisms_.size(); }
  [[nodiscard]] const std::string& object_name(ObjId x) const { return objects_.at(x); }
  [[nodiscard]] const std::string& morphism_name(MorId f) const { return morphisms_.at(f).id; }
  [[nodiscard]] ObjId dom(MorId f) const { return morphisms_.at(f).dom; }
  [[nodiscard]] ObjId cod(MorId f) const { return morphisms_.at(f).cod; }
  [[nodiscard]] MorId identity(ObjId x) const { return identities_.at(x); }
  [[nodiscard]] bool is_identity(MorId f) const;

  [[nodiscard]] std::optional<ObjId> find_object(const std::string& name) const;
  [[nodiscard]] std::optional<MorId> find_morphism(const std::string& name) const;

  /// Table entry for `g ∘ f`; empty when cod f != dom g.
  [[nodiscard]] std::optional<MorId> try_compose(MorId g, MorId f) const;
  /// Table entry for `g ∘ f`; throws std::out_of_range when not composable.
  [[nodiscard]] MorId compose(MorId g, MorId f) const;

  /// Morphisms x -> y in declaration order.
  [[nodiscard]] const std::vector<MorId>& hom(ObjId x, ObjId y) const {
    return hom_.at(x * objects_.size() + y);
  }

  [[nodiscard]] CategoryData data() const;

  bool operator==(const FinCategory&) const = default;

 private:
  struct Arrow {
    std::string id;
    ObjId dom = 0;
    ObjId cod = 0;
    bool operator==(const Arrow&) const = default;
  };

  std::vector<std::string> objects_;
  std::vector<Arrow> morphisms_;
  std::vector<MorId> identities_;
  std::vector<std::optional<MorId>> table_;  // index g * |mor| + f
  std::vector<std::vector<MorId>> hom_;
};

/// Checks identity typing, composition typing, both unit laws and
/// associativity by exhaustive enumeration.
ValidationReport validate_category(const FinCategory& cat);

/// Re-evaluates the single law instance named by `v`; returns the
/// violation again if it still fails.
std::optional<Violation> replay(const FinCategory& cat, const Violation& v);

FinCategory opposite(const FinCategory& cat);

/// All (f, g) with cod f = dom g and g ∘ f = h, ordered by (f, g).
std::vector<std::pair<MorId, MorId>> factorizations(const FinCategory& cat, MorId h);
std::vector<std::pair<MorId, MorId>> factorizations(const FinCategory& cat, const std::string& h);

}  // namespace bipre
