#include "bipre/model.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace bipre::spec {

namespace {

// A declaration cannot be built; the message goes to the user.
struct Failure {
  std::string message;
};
// A dependency already failed and was reported.
struct Skip {};

std::string summarize(const ReportedError& e) {
  std::ostringstream out;
  out << e.what();
  std::size_t shown = 0;
  for (const auto& v : e.report().violations()) {
    if (shown++ == 3) {
      out << "; ...";
      break;
    }
    out << "; " << v.law;
    if (!v.where.empty()) out << " at " << v.where;
    if (!v.witness.empty()) {
      out << " [";
      for (std::size_t i = 0; i < v.witness.size(); ++i) out << (i ? ", " : "") << v.witness[i];
      out << "]";
    }
    if (!v.detail.empty()) out << ": " << v.detail;
  }
  return out.str();
}

template <class Obj>
Elem element(const Obj& obj, const std::string& name, const std::string& what) {
  auto e = obj.find(name);
  if (!e) throw Failure{"unknown element \"" + name + "\" in " + what};
  return *e;
}

/// Resolves a map between two structures with named elements.
template <class Obj>
Hom<Obj> resolve_map(const MapDecl& d, const Obj& source, const Obj& target,
                     const std::string& what) {
  std::vector<Elem> map(source.size());
  if (auto* s = std::get_if<std::string>(&d.body)) {
    for (Elem a = 0; a < source.size(); ++a) {
      if (*s == "zero") {
        map[a] = target.zero();
      } else {
        auto b = target.find(source.name(a));
        if (!b) {
          throw Failure{what + ": \"identity\" needs element \"" + source.name(a) +
                        "\" in the target"};
        }
        map[a] = *b;
      }
    }
  } else {
    const auto& table = std::get<std::map<std::string, std::string>>(d.body);
    for (const auto& [k, v] : table) {
      if (!source.find(k)) throw Failure{what + ": \"" + k + "\" is not a source element"};
    }
    for (Elem a = 0; a < source.size(); ++a) {
      auto it = table.find(source.name(a));
      if (it == table.end()) throw Failure{what + ": no image for \"" + source.name(a) + "\""};
      map[a] = element(target, it->second, what);
    }
  }
  return Hom<Obj>(source, target, std::move(map));
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw Skip{};
  return it->second;
}

class Builder {
 public:
  Builder(const SpecDocument& doc, std::size_t budget) : doc_(doc), budget_(budget) {}

  ModelBuild run() {
    for (const auto& [name, d] : doc_.categories) attempt(name, d.where, [&] { category(name, d); });
    for (const auto& [name, d] : doc_.rings) attempt(name, d.where, [&] { ring(name); });
    for (const auto& [name, d] : doc_.groups) attempt(name, d.where, [&] { group(name); });
    for (const auto& [name, d] : doc_.functors) attempt(name, d.where, [&] { functor(name, d); });
    for (const auto& [name, d] : doc_.bipresheaves) {
      attempt(name, d.where, [&] { bipresheaf(name, d); });
    }
    for (const auto& [name, d] : doc_.modules) attempt(name, d.where, [&] { module(name, d); });
    for (const auto& [name, d] : doc_.gr_bipresheaves) {
      attempt(name, d.where, [&] { gr(name, d); });
    }
    for (const auto& [name, d] : doc_.universes) attempt(name, d.where, [&] { universe(name, d); });
    return std::move(out_);
  }

 private:
  const SpecDocument& doc_;
  std::size_t budget_;
  ModelBuild out_;
  std::set<std::string> failed_;
  std::set<std::string> building_;

  template <class Fn>
  void attempt(const std::string& name, Location where, Fn&& fn) {
    if (failed_.count(name)) return;
    try {
      fn();
    } catch (const Failure& f) {
      fail(name, where, f.message);
    } catch (const Skip&) {
      failed_.insert(name);
    } catch (const ReportedError& e) {
      fail(name, where, summarize(e));
    } catch (const ResourceError& e) {
      fail(name, where, std::string("budget exceeded: ") + e.what());
    } catch (const std::exception& e) {
      fail(name, where, e.what());
    }
  }

  void fail(const std::string& name, Location where, const std::string& message) {
    failed_.insert(name);
    out_.errors.push_back({where, doc_.section_of(name) + " \"" + name + "\": " + message});
  }

  void category(const std::string& name, const CategoryDecl& d) {
    out_.model.categories[name] = FinCategory::build(complete_units(d.data));
  }

  const FinCommRing& ring(const std::string& name) {
    if (auto it = out_.model.rings.find(name); it != out_.model.rings.end()) return it->second;
    if (failed_.count(name)) throw Skip{};
    if (!building_.insert(name).second) throw Failure{"ring product refers to itself"};
    const auto& d = doc_.rings.at(name);
    FinCommRing r;
    try {
      std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, RingSpec::Modular>) {
              r = FinCommRing::modular(b.n);
            } else if constexpr (std::is_same_v<T, RingSpec::Trivial>) {
              r = FinCommRing::trivial();
            } else if constexpr (std::is_same_v<T, ProductDecl>) {
              std::vector<FinCommRing> factors;
              for (const auto& f : b.factors) factors.push_back(dependency_ring(f.value));
              r = FinCommRing::product(factors);
            } else {
              r = build_ring_unchecked(RingSpec{b});
            }
          },
          d.body);
    } catch (...) {
      building_.erase(name);
      throw;
    }
    building_.erase(name);
    return out_.model.rings[name] = r;
  }

  const FinCommRing& dependency_ring(const std::string& name) {
    if (!building_.count(name) && !out_.model.rings.count(name) && !failed_.count(name)) {
      attempt(name, doc_.rings.at(name).where, [&] { ring(name); });
    }
    if (building_.count(name)) throw Failure{"ring product refers to itself"};
    return lookup(out_.model.rings, name);
  }

  const FinAbGroup& group(const std::string& name) {
    if (auto it = out_.model.groups.find(name); it != out_.model.groups.end()) return it->second;
    if (failed_.count(name)) throw Skip{};
    if (!building_.insert(name).second) throw Failure{"group product refers to itself"};
    const auto& d = doc_.groups.at(name);
    FinAbGroup g;
    try {
      std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, GroupDecl::Cyclic>) {
              g = FinAbGroup::cyclic(b.n);
            } else if constexpr (std::is_same_v<T, GroupDecl::Zero>) {
              g = FinAbGroup::zero_group();
            } else if constexpr (std::is_same_v<T, ProductDecl>) {
              std::vector<FinAbGroup> factors;
              for (const auto& f : b.factors) factors.push_back(dependency_group(f.value));
              g = FinAbGroup::product(factors);
            } else if constexpr (std::is_same_v<T, GroupDecl::Additive>) {
              g = dependency_ring(b.ring.value).additive();
            } else {
              g = group_table(b);
            }
          },
          d.body);
    } catch (...) {
      building_.erase(name);
      throw;
    }
    building_.erase(name);
    return out_.model.groups[name] = g;
  }

  const FinAbGroup& dependency_group(const std::string& name) {
    if (!building_.count(name) && !out_.model.groups.count(name) && !failed_.count(name)) {
      attempt(name, doc_.groups.at(name).where, [&] { group(name); });
    }
    if (building_.count(name)) throw Failure{"group product refers to itself"};
    return lookup(out_.model.groups, name);
  }

  static FinAbGroup group_table(const GroupDecl::Table& t) {
    const std::size_t n = t.elements.size();
    std::map<std::string, Elem> index;
    for (Elem i = 0; i < n; ++i) {
      if (!index.emplace(t.elements[i], i).second) {
        throw Failure{"duplicate element \"" + t.elements[i] + "\""};
      }
    }
    auto at = [&](const std::string& s) {
      auto it = index.find(s);
      if (it == index.end()) throw Failure{"unknown element \"" + s + "\" in group table"};
      return it->second;
    };
    if (t.add.size() != n) throw Failure{"add table needs one row per element"};
    std::vector<Elem> add;
    for (const auto& row : t.add) {
      if (row.size() != n) throw Failure{"add table rows need one entry per element"};
      for (const auto& s : row) add.push_back(at(s));
    }
    return FinAbGroup::from_tables(t.elements, std::move(add), at(t.zero));
  }

  template <class Obj>
  Functor<Obj> functor_of(const FunctorDecl& d,
                          const std::function<const Obj&(const std::string&)>& get) {
    const FinCategory& base = lookup(out_.model.categories, d.base.value);
    Functor<Obj> F;
    F.base = base;
    F.variance = d.variance;
    if (d.constant) return Functor<Obj>::constant(base, d.variance, get(d.constant->value));
    for (const auto& [obj, v] : d.objects) {
      if (!base.find_object(obj)) throw Failure{"\"" + obj + "\" is not an object of the base"};
    }
    for (ObjId x = 0; x < base.object_count(); ++x) {
      auto it = d.objects.find(base.object_name(x));
      if (it == d.objects.end()) throw Failure{"no value for object \"" + base.object_name(x) + "\""};
      F.objects.push_back(get(it->second.value));
    }
    for (const auto& [mor, m] : d.morphisms) {
      if (!base.find_morphism(mor)) throw Failure{"\"" + mor + "\" is not a morphism of the base"};
    }
    for (MorId f = 0; f < base.morphism_count(); ++f) {
      const Obj& dom = F.objects[base.dom(f)];
      const Obj& cod = F.objects[base.cod(f)];
      const Obj& src = d.variance == Variance::Covariant ? dom : cod;
      const Obj& tgt = d.variance == Variance::Covariant ? cod : dom;
      const std::string what = "map of \"" + base.morphism_name(f) + "\"";
      const MapDecl* decl = nullptr;
      if (d.all_morphisms) {
        decl = &*d.all_morphisms;
      } else if (auto it = d.morphisms.find(base.morphism_name(f)); it != d.morphisms.end()) {
        decl = &it->second;
      }
      if (decl != nullptr) {
        F.morphisms.push_back(resolve_map(*decl, src, tgt, what));
      } else if (base.is_identity(f)) {
        F.morphisms.push_back(resolve_map(MapDecl{std::string("identity")}, src, tgt, what));
      } else {
        throw Failure{"no map for morphism \"" + base.morphism_name(f) + "\""};
      }
    }
    return F;
  }

  void functor(const std::string& name, const FunctorDecl& d) {
    if (d.kind == ValueKind::Ring) {
      out_.model.ring_functors[name] = functor_of<FinCommRing>(
          d, [&](const std::string& n) -> const FinCommRing& {
            return dependency_ring(n);
          });
    } else {
      out_.model.ab_functors[name] = functor_of<FinAbGroup>(
          d, [&](const std::string& n) -> const FinAbGroup& {
            return dependency_group(n);
          });
    }
  }

  template <class Obj>
  std::vector<Hom<Obj>> connecting(const ConnectingDecl& d, const Functor<Obj>& first,
                                   const Functor<Obj>& second) {
    const FinCategory& base = first.base;
    if (!(base == second.base)) throw Failure{"first and second functors have different bases"};
    std::vector<Hom<Obj>> out;
    const auto* per = std::get_if<std::map<std::string, MapDecl>>(&d.body);
    if (per != nullptr) {
      for (const auto& [obj, m] : *per) {
        if (!base.find_object(obj)) throw Failure{"\"" + obj + "\" is not an object of the base"};
      }
    }
    for (ObjId x = 0; x < base.object_count(); ++x) {
      const std::string what = "connecting map at \"" + base.object_name(x) + "\"";
      if (per == nullptr) {
        out.push_back(resolve_map(std::get<MapDecl>(d.body), first.at(x), second.at(x), what));
        continue;
      }
      auto it = per->find(base.object_name(x));
      if (it == per->end()) throw Failure{"no " + what};
      out.push_back(resolve_map(it->second, first.at(x), second.at(x), what));
    }
    return out;
  }

  void bipresheaf(const std::string& name, const BipresheafDecl& d) {
    if (d.kind == ValueKind::Ring) {
      RingBipresheaf B;
      B.R1 = lookup(out_.model.ring_functors, d.first.value);
      B.R2 = lookup(out_.model.ring_functors, d.second.value);
      B.theta = connecting(d.connecting, B.R1, B.R2);
      out_.model.ring_bipresheaves[name] = B;
    } else {
      AbBipresheaf B;
      B.A1 = lookup(out_.model.ab_functors, d.first.value);
      B.A2 = lookup(out_.model.ab_functors, d.second.value);
      B.eta = connecting(d.connecting, B.A1, B.A2);
      out_.model.ab_bipresheaves[name] = B;
    }
  }

  static ModuleStructure module_side(const ModuleSideDecl& d, const RingFunctor& scalars,
                                     const AbFunctor& carrier, ActionSide side,
                                     const std::string& label) {
    ModuleStructure M;
    M.scalars = scalars;
    M.carrier = carrier;
    M.side = side;
    const FinCategory& base = scalars.base;
    if (!(base == carrier.base)) throw Failure{label + " carrier is over a different base"};
    using Table = std::map<std::string, std::map<std::string, std::map<std::string, std::string>>>;
    const auto* table = std::get_if<Table>(&d.action.body);
    if (table != nullptr) {
      for (const auto& [obj, rows] : *table) {
        if (!base.find_object(obj)) {
          throw Failure{label + " action: \"" + obj + "\" is not an object of the base"};
        }
      }
    }
    for (ObjId x = 0; x < base.object_count(); ++x) {
      const FinCommRing& R = scalars.at(x);
      const FinAbGroup& A = carrier.at(x);
      const std::string what = label + " action at \"" + base.object_name(x) + "\"";
      std::vector<Elem> act(A.size() * R.size());
      for (Elem m = 0; m < A.size(); ++m) {
        for (Elem r = 0; r < R.size(); ++r) {
          Elem& slot = act[m * R.size() + r];
          if (table == nullptr) {
            const auto& mode = std::get<std::string>(d.action.body);
            if (mode == "zero") {
              slot = A.zero();
            } else {
              auto as_scalar = R.find(A.name(m));
              if (!as_scalar) {
                throw Failure{what + ": \"multiplication\" needs the carrier to share the "
                                     "ring's element names"};
              }
              slot = element(A, R.name(R.times(r, *as_scalar)), what);
            }
            continue;
          }
          auto obj = table->find(base.object_name(x));
          if (obj == table->end()) throw Failure{"no " + what};
          auto row = obj->second.find(A.name(m));
          if (row == obj->second.end()) throw Failure{what + ": no row for \"" + A.name(m) + "\""};
          auto cell = row->second.find(R.name(r));
          if (cell == row->second.end()) {
            throw Failure{what + ": no entry for \"" + A.name(m) + "\" and scalar \"" +
                          R.name(r) + "\""};
          }
          slot = element(A, cell->second, what);
        }
      }
      if (table != nullptr) {
        const auto& rows = table->at(base.object_name(x));
        for (const auto& [m, row] : rows) {
          if (!A.find(m)) throw Failure{what + ": \"" + m + "\" is not a carrier element"};
          for (const auto& [r, v] : row) {
            if (!R.find(r)) throw Failure{what + ": \"" + r + "\" is not a scalar"};
          }
        }
      }
      M.action.push_back(std::move(act));
    }
    return M;
  }

  void module(const std::string& name, const ModuleDecl& d) {
    const RingBipresheaf& R = lookup(out_.model.ring_bipresheaves, d.over.value);
    const AbFunctor& A1 = lookup(out_.model.ab_functors, d.first.carrier.value);
    const AbFunctor& A2 = lookup(out_.model.ab_functors, d.second.carrier.value);
    ModuleBipresheaf M;
    M.over = R;
    M.M1 = module_side(d.first, R.R1, A1, ActionSide::Right, "first");
    M.M2 = module_side(d.second, R.R2, A2, ActionSide::Left, "second");
    M.eta = connecting(d.connecting, A1, A2);
    out_.model.modules[name] = M;
  }

  std::vector<FinAbGroup> gr_values(const FinCategory& base, const std::map<std::string, Ref>& m,
                                    const std::string& label) {
    for (const auto& [obj, v] : m) {
      if (!base.find_object(obj)) {
        throw Failure{label + ": \"" + obj + "\" is not an object of the base"};
      }
    }
    std::vector<FinAbGroup> out;
    for (ObjId x = 0; x < base.object_count(); ++x) {
      auto it = m.find(base.object_name(x));
      if (it == m.end()) throw Failure{label + ": no value for \"" + base.object_name(x) + "\""};
      out.push_back(dependency_group(it->second.value));
    }
    return out;
  }

  void gr(const std::string& name, const GrBipresheafDecl& d) {
    const RingBipresheaf& R = lookup(out_.model.ring_bipresheaves, d.over.value);
    const GrCategory G = GrCategory::build(R);
    if (d.from_module) {
      const ModuleBipresheaf& M = lookup(out_.model.modules, d.from_module->value);
      if (!(M.over == R)) {
        throw Failure{"module \"" + d.from_module->value + "\" is not over \"" + d.over.value +
                      "\""};
      }
      out_.model.gr_bipresheaves[name] = psi(M, G, budget_);
      return;
    }
    const FinCategory& base = G.base();
    GrAbBipresheaf F;
    F.gr = G;
    F.first_objects = gr_values(base, d.first_objects, "first_objects");
    F.second_objects = gr_values(base, d.second_objects, "second_objects");
    AbFunctor first_values;
    first_values.base = base;
    first_values.objects = F.first_objects;
    AbFunctor second_values;
    second_values.base = base;
    second_values.objects = F.second_objects;
    F.eta = connecting(*d.connecting, first_values, second_values);

    const auto domain = gr_domain(G, budget_);
    const std::set<GrMorphism> in_domain(domain.begin(), domain.end());
    auto overrides = [&](const std::vector<GrMapEntry>& entries, const std::string& label) {
      std::map<GrMorphism, const MapDecl*> out;
      for (const auto& e : entries) {
        GrMorphism phi;
        try {
          phi = normalize(G.parse(e.family));
        } catch (const std::exception& ex) {
          throw Failure{label + ": bad family \"" + e.family + "\": " + ex.what()};
        }
        if (!in_domain.count(phi)) {
          throw Failure{label + ": family \"" + e.family +
                        "\" is not a pure family or a composite of two"};
        }
        if (!out.emplace(phi, &e.map).second) {
          throw Failure{label + ": family \"" + e.family + "\" given twice"};
        }
      }
      return out;
    };
    const auto first = overrides(d.first, "first");
    const auto second = overrides(d.second, "second");
    const MapDecl first_default{d.first_default};
    const MapDecl second_default{d.second_default};
    for (const auto& phi : domain) {
      const std::string what = G.describe(phi);
      auto f = first.find(phi);
      F.first.emplace(phi, resolve_map(f == first.end() ? first_default : *f->second,
                                       F.first_objects[phi.target],
                                       F.first_objects[phi.source], "first map of " + what));
      auto s = second.find(phi);
      F.second.emplace(phi, resolve_map(s == second.end() ? second_default : *s->second,
                                        F.second_objects[phi.source],
                                        F.second_objects[phi.target], "second map of " + what));
    }
    out_.model.gr_bipresheaves[name] = std::move(F);
  }

  void universe(const std::string& name, const UniverseDecl& d) {
    Universe u;
    u.base = lookup(out_.model.categories, d.base.value);
    for (const auto& g : d.groups) u.groups.push_back(dependency_group(g.value));
    u.budget = d.budget.value_or(budget_);
    out_.model.universes[name] = std::move(u);
  }
};

}  // namespace

CategoryData complete_units(const CategoryData& data) {
  CategoryData out = data;
  std::set<std::pair<std::string, std::string>> given;
  for (const auto& c : data.compositions) given.emplace(c.second, c.first);
  std::map<std::string, std::string> id_of;
  for (const auto& [obj, mor] : data.identities) id_of.emplace(obj, mor);
  auto add = [&](const std::string& second, const std::string& first, const std::string& result) {
    if (given.emplace(second, first).second) out.compositions.push_back({second, first, result});
  };
  for (const auto& a : data.morphisms) {
    auto dom_id = id_of.find(a.dom);
    if (dom_id != id_of.end()) add(a.id, dom_id->second, a.id);
    auto cod_id = id_of.find(a.cod);
    if (cod_id != id_of.end()) add(cod_id->second, a.id, a.id);
  }
  return out;
}

ModelBuild build_model(const SpecDocument& doc, std::size_t budget) {
  auto out = Builder(doc, budget).run();
  std::stable_sort(out.errors.begin(), out.errors.end(), [](const auto& a, const auto& b) {
    return std::pair(a.where.line, a.where.column) < std::pair(b.where.line, b.where.column);
  });
  return out;
}

}  // namespace bipre::spec
