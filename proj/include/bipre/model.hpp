#pragma once

#include <map>
#include <string>
#include <vector>

#include "bipre/audit.hpp"
#include "bipre/equivalence.hpp"
#include "bipre/spec_format.hpp"

namespace bipre::spec {

/// Every declaration of a document, built into library values. Objects are
/// built without checking their laws, so that `validate` can report them.
struct Model {
  std::map<std::string, FinCategory> categories;
  std::map<std::string, FinCommRing> rings;
  std::map<std::string, FinAbGroup> groups;
  std::map<std::string, RingFunctor> ring_functors;
  std::map<std::string, AbFunctor> ab_functors;
  std::map<std::string, RingBipresheaf> ring_bipresheaves;
  std::map<std::string, AbBipresheaf> ab_bipresheaves;
  std::map<std::string, ModuleBipresheaf> modules;
  std::map<std::string, GrAbBipresheaf> gr_bipresheaves;
  std::map<std::string, Universe> universes;
};

struct ModelBuild {
  Model model;
  std::vector<ParseError> errors;  // unusable declarations, located
  [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Adds `f . id = f` and `id . f = f` for every declared identity where the
/// table leaves them out. Written entries always win.
CategoryData complete_units(const CategoryData& data);

/// Declarations that depend on a failed one are skipped silently; only the
/// root cause is reported.
ModelBuild build_model(const SpecDocument& doc, std::size_t budget = kDefaultBudget);

}  // namespace bipre::spec
