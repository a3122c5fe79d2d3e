#include "bipre/fincat.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bipre {

namespace {

Violation structural(std::string law, std::vector<std::string> witness, std::string detail) {
  return Violation{std::move(law), "", std::move(witness), std::move(detail), true};
}

}  // namespace

FinCategory FinCategory::build(const CategoryData& data) {
  ValidationReport errors;
  FinCategory cat;

  std::map<std::string, ObjId> obj_index;
  for (const auto& name : data.objects) {
    if (!obj_index.emplace(name, cat.objects_.size()).second) {
      errors.add(structural("duplicate-object", {name}, "object declared twice"));
      continue;
    }
    cat.objects_.push_back(name);
  }

  std::map<std::string, MorId> mor_index;
  for (const auto& arrow : data.morphisms) {
    auto d = obj_index.find(arrow.dom);
    auto c = obj_index.find(arrow.cod);
    if (d == obj_index.end() || c == obj_index.end()) {
      errors.add(structural("dangling-object", {arrow.id},
                            "morphism endpoints " + arrow.dom + " -> " + arrow.cod +
                                " do not name objects"));
      continue;
    }
    if (!mor_index.emplace(arrow.id, cat.morphisms_.size()).second) {
      errors.add(structural("duplicate-morphism", {arrow.id}, "morphism declared twice"));
      continue;
    }
    cat.morphisms_.push_back({arrow.id, d->second, c->second});
  }

  const std::size_t n_obj = cat.objects_.size();
  const std::size_t n_mor = cat.morphisms_.size();

  std::vector<std::optional<MorId>> ids(n_obj);
  for (const auto& [obj, mor] : data.identities) {
    auto x = obj_index.find(obj);
    auto m = mor_index.find(mor);
    if (x == obj_index.end() || m == mor_index.end()) {
      errors.add(structural("dangling-identity", {obj, mor}, "identity refers to unknown id"));
      continue;
    }
    if (ids[x->second]) {
      errors.add(structural("duplicate-identity", {obj}, "identity given twice"));
      continue;
    }
    ids[x->second] = m->second;
  }
  for (ObjId x = 0; x < n_obj; ++x) {
    if (!ids[x]) {
      errors.add(structural("missing-identity", {cat.objects_[x]}, "no identity declared"));
    } else {
      cat.identities_.push_back(*ids[x]);
    }
  }

  cat.table_.assign(n_mor * n_mor, std::nullopt);
  for (const auto& entry : data.compositions) {
    auto g = mor_index.find(entry.second);
    auto f = mor_index.find(entry.first);
    auto h = mor_index.find(entry.result);
    if (g == mor_index.end() || f == mor_index.end() || h == mor_index.end()) {
      errors.add(structural("dangling-composite", {entry.second, entry.first, entry.result},
                            "composition entry refers to unknown morphism"));
      continue;
    }
    if (cat.morphisms_[f->second].cod != cat.morphisms_[g->second].dom) {
      errors.add(structural("non-composable-entry", {entry.second, entry.first},
                            "table entry for a pair with cod f != dom g"));
      continue;
    }
    auto& slot = cat.table_[g->second * n_mor + f->second];
    if (slot) {
      errors.add(structural("duplicate-composite", {entry.second, entry.first},
                            "composite given twice"));
      continue;
    }
    slot = h->second;
  }
  for (MorId g = 0; g < n_mor; ++g) {
    for (MorId f = 0; f < n_mor; ++f) {
      if (cat.morphisms_[f].cod == cat.morphisms_[g].dom && !cat.table_[g * n_mor + f]) {
        errors.add(structural("missing-composite", {cat.morphisms_[g].id, cat.morphisms_[f].id},
                              "composable pair has no table entry"));
      }
    }
  }

  if (!errors.ok()) {
    throw StructuralError("malformed category tables", std::move(errors));
  }

  cat.hom_.assign(n_obj * n_obj, {});
  for (MorId f = 0; f < n_mor; ++f) {
    cat.hom_[cat.morphisms_[f].dom * n_obj + cat.morphisms_[f].cod].push_back(f);
  }
  return cat;
}

bool FinCategory::is_identity(MorId f) const {
  for (MorId id : identities_) {
    if (id == f) return true;
  }
  return false;
}

std::optional<ObjId> FinCategory::find_object(const std::string& name) const {
  for (ObjId x = 0; x < objects_.size(); ++x) {
    if (objects_[x] == name) return x;
  }
  return std::nullopt;
}

std::optional<MorId> FinCategory::find_morphism(const std::string& name) const {
  for (MorId f = 0; f < morphisms_.size(); ++f) {
    if (morphisms_[f].id == name) return f;
  }
  return std::nullopt;
}

std::optional<MorId> FinCategory::try_compose(MorId g, MorId f) const {
  if (morphisms_.at(f).cod != morphisms_.at(g).dom) return std::nullopt;
  return table_[g * morphisms_.size() + f];
}

MorId FinCategory::compose(MorId g, MorId f) const {
  auto h = try_compose(g, f);
  if (!h) {
    throw std::out_of_range("morphisms " + morphisms_.at(g).id + " and " + morphisms_.at(f).id +
                            " are not composable");
  }
  return *h;
}

CategoryData FinCategory::data() const {
  CategoryData out;
  out.objects = objects_;
  for (const auto& m : morphisms_) {
    out.morphisms.push_back({m.id, objects_[m.dom], objects_[m.cod]});
  }
  for (ObjId x = 0; x < objects_.size(); ++x) {
    out.identities.emplace_back(objects_[x], morphisms_[identities_[x]].id);
  }
  const std::size_t n = morphisms_.size();
  for (MorId g = 0; g < n; ++g) {
    for (MorId f = 0; f < n; ++f) {
      if (auto h = table_[g * n + f]) {
        out.compositions.push_back({morphisms_[g].id, morphisms_[f].id, morphisms_[*h].id});
      }
    }
  }
  return out;
}

namespace {

std::optional<Violation> check_identity_typing(const FinCategory& c, ObjId x) {
  const MorId id = c.identity(x);
  if (c.dom(id) == x && c.cod(id) == x) return std::nullopt;
  return Violation{"identity-typing", "", {c.object_name(x)},
                   c.morphism_name(id) + " is " + c.object_name(c.dom(id)) + " -> " +
                       c.object_name(c.cod(id))};
}

std::optional<Violation> check_composition_typing(const FinCategory& c, MorId g, MorId f) {
  const auto h = c.try_compose(g, f);
  if (!h) return std::nullopt;
  if (c.dom(*h) == c.dom(f) && c.cod(*h) == c.cod(g)) return std::nullopt;
  return Violation{"composition-typing", "", {c.morphism_name(g), c.morphism_name(f)},
                   c.morphism_name(g) + " . " + c.morphism_name(f) + " = " + c.morphism_name(*h) +
                       " has the wrong endpoints"};
}

std::optional<Violation> check_left_unit(const FinCategory& c, MorId f) {
  const MorId id = c.identity(c.cod(f));
  const auto h = c.try_compose(id, f);
  if (h && *h == f) return std::nullopt;
  return Violation{"left-unit", "", {c.morphism_name(id), c.morphism_name(f)},
                   c.morphism_name(id) + " . " + c.morphism_name(f) + " = " +
                       (h ? c.morphism_name(*h) : std::string("<undefined>"))};
}

std::optional<Violation> check_right_unit(const FinCategory& c, MorId f) {
  const MorId id = c.identity(c.dom(f));
  const auto h = c.try_compose(f, id);
  if (h && *h == f) return std::nullopt;
  return Violation{"right-unit", "", {c.morphism_name(f), c.morphism_name(id)},
                   c.morphism_name(f) + " . " + c.morphism_name(id) + " = " +
                       (h ? c.morphism_name(*h) : std::string("<undefined>"))};
}

// Instances whose intermediate composite is ill-typed are not reported here;
// composition-typing already covers them.
std::optional<Violation> check_associativity(const FinCategory& c, MorId h, MorId g, MorId f) {
  const auto gf = c.try_compose(g, f);
  const auto hg = c.try_compose(h, g);
  if (!gf || !hg) return std::nullopt;
  const auto left = c.try_compose(h, *gf);
  const auto right = c.try_compose(*hg, f);
  if (!left || !right || *left == *right) return std::nullopt;
  return Violation{"associativity", "",
                   {c.morphism_name(h), c.morphism_name(g), c.morphism_name(f)},
                   "h.(g.f) = " + c.morphism_name(*left) + " but (h.g).f = " +
                       c.morphism_name(*right)};
}

}  // namespace

ValidationReport validate_category(const FinCategory& cat) {
  ValidationReport report;
  auto note = [&](std::optional<Violation> v) {
    if (v) report.add(std::move(*v));
  };
  const std::size_t n = cat.morphism_count();
  for (ObjId x = 0; x < cat.object_count(); ++x) note(check_identity_typing(cat, x));
  for (MorId g = 0; g < n; ++g) {
    for (MorId f = 0; f < n; ++f) note(check_composition_typing(cat, g, f));
  }
  for (MorId f = 0; f < n; ++f) {
    note(check_left_unit(cat, f));
    note(check_right_unit(cat, f));
  }
  for (MorId h = 0; h < n; ++h) {
    for (MorId g = 0; g < n; ++g) {
      for (MorId f = 0; f < n; ++f) note(check_associativity(cat, h, g, f));
    }
  }
  return report;
}

std::optional<Violation> replay(const FinCategory& cat, const Violation& v) {
  auto mor = [&](std::size_t i) { return cat.find_morphism(v.witness.at(i)); };
  if (v.law == "identity-typing" && v.witness.size() == 1) {
    if (auto x = cat.find_object(v.witness[0])) return check_identity_typing(cat, *x);
  } else if (v.law == "composition-typing" && v.witness.size() == 2) {
    if (auto g = mor(0), f = mor(1); g && f) return check_composition_typing(cat, *g, *f);
  } else if (v.law == "left-unit" && v.witness.size() == 2) {
    if (auto f = mor(1)) return check_left_unit(cat, *f);
  } else if (v.law == "right-unit" && v.witness.size() == 2) {
    if (auto f = mor(0)) return check_right_unit(cat, *f);
  } else if (v.law == "associativity" && v.witness.size() == 3) {
    if (auto h = mor(0), g = mor(1), f = mor(2); h && g && f) {
      return check_associativity(cat, *h, *g, *f);
    }
  }
  return std::nullopt;
}

FinCategory opposite(const FinCategory& cat) {
  CategoryData d = cat.data();
  for (auto& arrow : d.morphisms) std::swap(arrow.dom, arrow.cod);
  for (auto& entry : d.compositions) std::swap(entry.first, entry.second);
  return FinCategory::build(d);
}

std::vector<std::pair<MorId, MorId>> factorizations(const FinCategory& cat, MorId h) {
  if (h >= cat.morphism_count()) throw std::out_of_range("unknown morphism index");
  std::vector<std::pair<MorId, MorId>> out;
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    for (MorId g = 0; g < cat.morphism_count(); ++g) {
      if (cat.try_compose(g, f) == h) out.emplace_back(f, g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<MorId, MorId>> factorizations(const FinCategory& cat, const std::string& h) {
  auto id = cat.find_morphism(h);
  if (!id) throw std::out_of_range("unknown morphism " + h);
  return factorizations(cat, *id);
}

}  // namespace bipre
