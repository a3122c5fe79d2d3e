#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bipre/algebra.hpp"
#include "bipre/fincat.hpp"
#include "bipre/functors.hpp"
#include "bipre/located_json.hpp"

namespace bipre::spec {

using json::Location;
using json::ParseError;

/// A value plus where it was written. Locations never take part in equality,
/// so a parsed document equals its re-parsed serialization.
template <class T>
struct Located {
  T value{};
  Location where{};
  bool operator==(const Located& o) const { return value == o.value; }
};

using Ref = Located<std::string>;

/// Element-to-element table, or the shorthand "identity" / "zero".
struct MapDecl {
  std::variant<std::string, std::map<std::string, std::string>> body;
  bool operator==(const MapDecl&) const = default;
};

/// One map for every object, or an explicit map per object.
struct ConnectingDecl {
  std::variant<MapDecl, std::map<std::string, MapDecl>> body;
  bool operator==(const ConnectingDecl&) const = default;
};

struct CategoryDecl {
  /// Composites with a declared identity on either side may be omitted.
  CategoryData data;
  Location where;
  bool operator==(const CategoryDecl& o) const { return data == o.data; }
};

struct ProductDecl {
  std::vector<Ref> factors;
  bool operator==(const ProductDecl&) const = default;
};

struct RingDecl {
  std::variant<RingSpec::Modular, RingSpec::Trivial, ProductDecl, RingSpec::Table> body =
      RingSpec::Trivial{};
  Location where;
  bool operator==(const RingDecl& o) const { return body == o.body; }
};

struct GroupDecl {
  struct Cyclic {
    std::size_t n = 1;
    bool operator==(const Cyclic&) const = default;
  };
  struct Zero {
    bool operator==(const Zero&) const = default;
  };
  struct Additive {
    Ref ring;
    bool operator==(const Additive&) const = default;
  };
  struct Table {
    std::vector<std::string> elements;
    std::string zero;
    std::vector<std::vector<std::string>> add;
    bool operator==(const Table&) const = default;
  };

  std::variant<Cyclic, Zero, ProductDecl, Additive, Table> body = Zero{};
  Location where;
  bool operator==(const GroupDecl& o) const { return body == o.body; }
};

enum class ValueKind { Ring, Group };
const char* to_string(ValueKind k);

struct FunctorDecl {
  Ref base;
  Variance variance = Variance::Covariant;
  ValueKind kind = ValueKind::Group;
  /// Either `constant` (identity maps everywhere) or per-object values plus
  /// per-morphism maps; maps of identity morphisms default to identities.
  std::optional<Ref> constant;
  std::map<std::string, Ref> objects;
  std::optional<MapDecl> all_morphisms;  // "morphisms": "identity" | "zero"
  std::map<std::string, MapDecl> morphisms;
  Location where;
  bool operator==(const FunctorDecl& o) const {
    return base == o.base && variance == o.variance && kind == o.kind &&
           constant == o.constant && objects == o.objects && all_morphisms == o.all_morphisms &&
           morphisms == o.morphisms;
  }
};

struct BipresheafDecl {
  ValueKind kind = ValueKind::Ring;
  Ref first;
  Ref second;
  ConnectingDecl connecting;
  Location where;
  bool operator==(const BipresheafDecl& o) const {
    return kind == o.kind && first == o.first && second == o.second &&
           connecting == o.connecting;
  }
};

struct ActionDecl {
  /// "multiplication" | "zero", or object -> element -> scalar -> element.
  std::variant<std::string,
               std::map<std::string, std::map<std::string, std::map<std::string, std::string>>>>
      body;
  bool operator==(const ActionDecl&) const = default;
};

struct ModuleSideDecl {
  Ref carrier;
  ActionDecl action;
  bool operator==(const ModuleSideDecl&) const = default;
};

struct ModuleDecl {
  Ref over;
  ModuleSideDecl first;
  ModuleSideDecl second;
  ConnectingDecl connecting;
  Location where;
  bool operator==(const ModuleDecl& o) const {
    return over == o.over && first == o.first && second == o.second &&
           connecting == o.connecting;
  }
};

struct GrMapEntry {
  std::string family;  // Gr morphism in its canonical text form
  MapDecl map;
  bool operator==(const GrMapEntry&) const = default;
};

/// A bipresheaf of abelian groups over Gr of a ring bipresheaf: either the
/// image of a module, or explicit values with per-family overrides.
struct GrBipresheafDecl {
  Ref over;
  std::optional<Ref> from_module;
  std::map<std::string, Ref> first_objects;
  std::map<std::string, Ref> second_objects;
  std::optional<ConnectingDecl> connecting;
  std::string first_default = "zero";
  std::string second_default = "zero";
  std::vector<GrMapEntry> first;
  std::vector<GrMapEntry> second;
  Location where;
  bool operator==(const GrBipresheafDecl& o) const {
    return over == o.over && from_module == o.from_module && first_objects == o.first_objects &&
           second_objects == o.second_objects && connecting == o.connecting &&
           first_default == o.first_default && second_default == o.second_default &&
           first == o.first && second == o.second;
  }
};

struct UniverseDecl {
  Ref base;
  std::vector<Ref> groups;
  std::optional<std::size_t> budget;
  Location where;
  bool operator==(const UniverseDecl& o) const {
    return base == o.base && groups == o.groups && budget == o.budget;
  }
};

/// A parsed fixture file. Every section maps names to declarations; names
/// are unique across the whole document.
struct SpecDocument {
  std::map<std::string, CategoryDecl> categories;
  std::map<std::string, RingDecl> rings;
  std::map<std::string, GroupDecl> groups;
  std::map<std::string, FunctorDecl> functors;
  std::map<std::string, BipresheafDecl> bipresheaves;
  std::map<std::string, ModuleDecl> modules;
  std::map<std::string, GrBipresheafDecl> gr_bipresheaves;
  std::map<std::string, UniverseDecl> universes;

  bool operator==(const SpecDocument&) const = default;

  [[nodiscard]] bool empty() const;
  /// Section holding `name`, e.g. "rings"; empty if undeclared.
  [[nodiscard]] std::string section_of(const std::string& name) const;
};

struct SpecParse {
  std::optional<SpecDocument> document;  // set iff errors is empty
  std::vector<ParseError> errors;        // sorted by location
  [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Syntax, schema and reference checks. Reports every problem it can find
/// rather than stopping at the first.
SpecParse parse_spec(std::string_view text);

/// Canonical text: fixed section order, names sorted, two-space indent,
/// trailing newline.
std::string serialize(const SpecDocument& doc);

std::string format_errors(const std::vector<ParseError>& errors, const std::string& file = {});

}  // namespace bipre::spec
