#include "bipre/audit.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <limits>

namespace bipre {

namespace {

using Maps = std::vector<std::vector<Elem>>;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::size_t element_order(const FinAbGroup& g, Elem a) {
  std::size_t k = 1;
  Elem acc = a;
  while (acc != g.zero()) {
    acc = g.plus(acc, a);
    ++k;
  }
  return k;
}

}  // namespace

ValidationReport validate_universe(const Universe& u) {
  ValidationReport rep;
  if (u.groups.empty()) rep.add({"empty-universe", "", {}, "universe lists no groups", true});
  if (u.budget == 0) rep.add({"budget", "", {}, "budget must be positive", true});
  rep.merge(validate_category(u.base), "base");
  for (std::size_t i = 0; i < u.groups.size(); ++i) {
    rep.merge(validate_group(u.groups[i]), "group " + std::to_string(i));
  }
  return rep;
}

bool isomorphic_groups(const FinAbGroup& a, const FinAbGroup& b) {
  if (a.size() != b.size()) return false;
  std::map<std::size_t, std::size_t> oa, ob;
  for (Elem x = 0; x < a.size(); ++x) ++oa[element_order(a, x)];
  for (Elem x = 0; x < b.size(); ++x) ++ob[element_order(b, x)];
  return oa == ob;
}

FinAbGroup subgroup(const FinAbGroup& g, const std::vector<Elem>& elements) {
  std::vector<std::size_t> pos(g.size(), kNone);
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = i;
  std::vector<std::string> names;
  for (Elem a : elements) names.push_back(g.name(a));
  std::vector<Elem> add(elements.size() * elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const std::size_t s = pos[g.plus(elements[i], elements[j])];
      if (s == kNone) throw StructuralError("element set is not closed under addition");
      add[i * elements.size() + j] = s;
    }
  }
  if (pos[g.zero()] == kNone) throw StructuralError("element set does not contain zero");
  return FinAbGroup::from_tables(std::move(names), std::move(add), pos[g.zero()]);
}

Quotient quotient(const FinAbGroup& g, const std::vector<Elem>& sub) {
  std::vector<std::size_t> coset(g.size(), kNone);
  std::vector<Elem> reps;
  for (Elem a = 0; a < g.size(); ++a) {
    if (coset[a] != kNone) continue;
    for (Elem s : sub) coset[g.plus(a, s)] = reps.size();
    reps.push_back(a);
  }
  std::vector<std::string> names;
  for (Elem r : reps) names.push_back("[" + g.name(r) + "]");
  std::vector<Elem> add(reps.size() * reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      add[i * reps.size() + j] = coset[g.plus(reps[i], reps[j])];
    }
  }
  return {FinAbGroup::from_tables(std::move(names), std::move(add), coset[g.zero()]),
          std::move(coset)};
}

// ---- kernels and cokernels ------------------------------------------------------

namespace {

std::vector<Elem> kernel_elements(const GroupHom& h) {
  std::vector<Elem> out;
  for (Elem a = 0; a < h.source().size(); ++a) {
    if (h(a) == h.target().zero()) out.push_back(a);
  }
  return out;
}

std::vector<Elem> image_elements(const GroupHom& h) {
  std::vector<bool> hit(h.target().size(), false);
  for (Elem a = 0; a < h.source().size(); ++a) hit[h(a)] = true;
  std::vector<Elem> out;
  for (Elem b = 0; b < hit.size(); ++b) {
    if (hit[b]) out.push_back(b);
  }
  return out;
}

struct Sub {
  FinAbGroup group;
  std::vector<Elem> elements;     // sub index -> parent element
  std::vector<std::size_t> pos;   // parent element -> sub index or kNone
};

Sub make_sub(const FinAbGroup& g, std::vector<Elem> elements) {
  Sub s{subgroup(g, elements), elements, std::vector<std::size_t>(g.size(), kNone)};
  for (std::size_t i = 0; i < elements.size(); ++i) s.pos[elements[i]] = i;
  return s;
}

// h restricted to subobjects; elements leaving `to` are sent to zero and reported.
GroupHom restrict(const GroupHom& h, const Sub& from, const Sub& to, const std::string& where,
                  ValidationReport& rep) {
  std::vector<Elem> map;
  for (Elem a : from.elements) {
    const std::size_t i = to.pos[h(a)];
    if (i == kNone) {
      rep.add({"restriction-escapes", where, {h.source().name(a)},
               "image of a kernel element lies outside the kernel", true});
      map.push_back(to.group.zero());
    } else {
      map.push_back(i);
    }
  }
  return {from.group, to.group, std::move(map)};
}

GroupHom induce(const GroupHom& h, const FinAbGroup& from_parent, const Quotient& from,
                const Quotient& to, const std::string& where, ValidationReport& rep) {
  std::vector<Elem> map(from.group.size(), kNone);
  for (Elem b = 0; b < from_parent.size(); ++b) {
    const Elem target = to.project[h(b)];
    Elem& slot = map[from.project[b]];
    if (slot == kNone) {
      slot = target;
    } else if (slot != target) {
      rep.add({"induced-map-ill-defined", where, {from_parent.name(b)},
               "two representatives of one coset have different images", true});
    }
  }
  return {from.group, to.group, std::move(map)};
}

}  // namespace

KernelResult compute_kernel(const BipresheafMorphism& m) {
  const auto& S = m.source;
  const auto& c = S.base();
  const std::size_t n = c.object_count();
  ValidationReport rep;
  std::vector<Sub> k1, k2;
  for (ObjId x = 0; x < n; ++x) {
    k1.push_back(make_sub(S.A1.at(x), kernel_elements(m.phi1[x])));
    k2.push_back(make_sub(S.A2.at(x), kernel_elements(m.phi2[x])));
  }
  AbBipresheaf K;
  K.A1.base = K.A2.base = c;
  K.A1.variance = Variance::Contravariant;
  K.A2.variance = Variance::Covariant;
  for (ObjId x = 0; x < n; ++x) {
    K.A1.objects.push_back(k1[x].group);
    K.A2.objects.push_back(k2[x].group);
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const std::string name = c.morphism_name(f);
    K.A1.morphisms.push_back(
        restrict(S.A1.on(f), k1[c.cod(f)], k1[c.dom(f)], "A1(" + name + ")", rep));
    K.A2.morphisms.push_back(
        restrict(S.A2.on(f), k2[c.dom(f)], k2[c.cod(f)], "A2(" + name + ")", rep));
  }
  BipresheafMorphism inc{K, S, {}, {}};
  for (ObjId x = 0; x < n; ++x) {
    K.eta.push_back(restrict(S.eta[x], k1[x], k2[x], "eta(" + c.object_name(x) + ")", rep));
    inc.phi1.emplace_back(k1[x].group, S.A1.at(x), k1[x].elements);
    inc.phi2.emplace_back(k2[x].group, S.A2.at(x), k2[x].elements);
  }
  inc.source = K;
  rep.merge(validate_bipresheaf(K), "kernel");
  rep.merge(validate_morphism(inc), "inclusion");
  return {std::move(K), std::move(inc), std::move(rep)};
}

CokernelResult compute_cokernel(const BipresheafMorphism& m) {
  const auto& T = m.target;
  const auto& c = T.base();
  const std::size_t n = c.object_count();
  ValidationReport rep;
  std::vector<Quotient> q1, q2;
  for (ObjId x = 0; x < n; ++x) {
    q1.push_back(quotient(T.A1.at(x), image_elements(m.phi1[x])));
    q2.push_back(quotient(T.A2.at(x), image_elements(m.phi2[x])));
  }
  AbBipresheaf Q;
  Q.A1.base = Q.A2.base = c;
  Q.A1.variance = Variance::Contravariant;
  Q.A2.variance = Variance::Covariant;
  for (ObjId x = 0; x < n; ++x) {
    Q.A1.objects.push_back(q1[x].group);
    Q.A2.objects.push_back(q2[x].group);
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const std::string name = c.morphism_name(f);
    Q.A1.morphisms.push_back(induce(T.A1.on(f), T.A1.at(c.cod(f)), q1[c.cod(f)], q1[c.dom(f)],
                                    "A1(" + name + ")", rep));
    Q.A2.morphisms.push_back(induce(T.A2.on(f), T.A2.at(c.dom(f)), q2[c.dom(f)], q2[c.cod(f)],
                                    "A2(" + name + ")", rep));
  }
  BipresheafMorphism proj{T, Q, {}, {}};
  for (ObjId x = 0; x < n; ++x) {
    Q.eta.push_back(
        induce(T.eta[x], T.A1.at(x), q1[x], q2[x], "eta(" + c.object_name(x) + ")", rep));
    proj.phi1.emplace_back(T.A1.at(x), q1[x].group, q1[x].project);
    proj.phi2.emplace_back(T.A2.at(x), q2[x].group, q2[x].project);
  }
  proj.target = Q;
  rep.merge(validate_bipresheaf(Q), "cokernel");
  rep.merge(validate_morphism(proj), "projection");
  return {std::move(Q), std::move(proj), std::move(rep)};
}

// ---- catalog --------------------------------------------------------------------

namespace {

// Naturality of both families and eta-compatibility on raw tables.
bool natural(const AbBipresheaf& S, const AbBipresheaf& T, const Maps& phi1, const Maps& phi2) {
  const auto& c = S.base();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const ObjId x = c.dom(f), y = c.cod(f);
    for (Elem a = 0; a < S.A1.at(y).size(); ++a) {
      if (phi1[x][S.A1.on(f)(a)] != T.A1.on(f)(phi1[y][a])) return false;
    }
    for (Elem a = 0; a < S.A2.at(x).size(); ++a) {
      if (phi2[y][S.A2.on(f)(a)] != T.A2.on(f)(phi2[x][a])) return false;
    }
  }
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (Elem a = 0; a < S.A1.at(x).size(); ++a) {
      if (phi2[x][S.eta[x](a)] != T.eta[x](phi1[x][a])) return false;
    }
  }
  return true;
}

bool coherent(const AbBipresheaf& B) {
  const auto& c = B.base();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const ObjId x = c.dom(f), y = c.cod(f);
    for (Elem a = 0; a < B.A1.at(y).size(); ++a) {
      if (B.eta[y](a) != B.A2.on(f)(B.eta[x](B.A1.on(f)(a)))) return false;
    }
  }
  return true;
}

// Calls fn on every tuple picking one entry from each list, last list fastest.
template <class T>
void for_each_product(const std::vector<std::vector<T>>& lists,
                      const std::function<void(const std::vector<const T*>&)>& fn) {
  for (const auto& l : lists) {
    if (l.empty()) return;
  }
  std::vector<std::size_t> pick(lists.size(), 0);
  std::vector<const T*> cur(lists.size());
  while (true) {
    for (std::size_t i = 0; i < lists.size(); ++i) cur[i] = &lists[i][pick[i]];
    fn(cur);
    std::size_t i = lists.size();
    while (i > 0 && ++pick[i - 1] == lists[i - 1].size()) pick[--i] = 0;
    if (i == 0) return;
  }
}

std::vector<std::vector<FinAbGroup>> assignments(const std::vector<FinAbGroup>& groups,
                                                 std::size_t n, BudgetMeter& meter) {
  std::vector<std::vector<FinAbGroup>> lists(n, groups);
  std::vector<std::vector<FinAbGroup>> out;
  for_each_product<FinAbGroup>(lists, [&](const std::vector<const FinAbGroup*>& pick) {
    meter.charge();
    std::vector<FinAbGroup> a;
    for (const auto* g : pick) a.push_back(*g);
    out.push_back(std::move(a));
  });
  if (n == 0) out.emplace_back();
  return out;
}

}  // namespace

UniverseCatalog UniverseCatalog::enumerate(const Universe& u) {
  auto problems = validate_universe(u);
  if (!problems.ok()) throw StructuralError("invalid universe", problems);
  BudgetMeter meter(u.budget, "universe enumeration");
  UniverseCatalog cat;
  cat.universe_ = u;
  const auto& c = u.base;
  const std::size_t n = c.object_count();
  const auto assigns = assignments(u.groups, n, meter);
  for (const auto& a1 : assigns) {
    const auto firsts = enumerate_ab_functors(c, Variance::Contravariant, a1, meter);
    for (const auto& a2 : assigns) {
      const auto seconds = enumerate_ab_functors(c, Variance::Covariant, a2, meter);
      std::vector<std::vector<GroupHom>> etas(n);
      for (ObjId x = 0; x < n; ++x) etas[x] = enumerate_group_homs(a1[x], a2[x], u.budget);
      for (const auto& F1 : firsts) {
        for (const auto& F2 : seconds) {
          for_each_product<GroupHom>(etas, [&](const std::vector<const GroupHom*>& eta) {
            meter.charge();
            AbBipresheaf B{F1, F2, {}};
            for (const auto* e : eta) B.eta.push_back(*e);
            if (coherent(B)) cat.objects_.push_back(std::move(B));
          });
        }
      }
    }
  }

  const std::size_t N = cat.objects_.size();
  cat.into_.assign(N, {});
  cat.out_of_.assign(N, {});
  for (std::size_t s = 0; s < N; ++s) {
    for (std::size_t t = 0; t < N; ++t) {
      const auto& S = cat.objects_[s];
      const auto& T = cat.objects_[t];
      std::vector<std::vector<std::vector<Elem>>> options;
      for (ObjId x = 0; x < n; ++x) {
        std::vector<std::vector<Elem>> maps;
        for (const auto& h : enumerate_group_homs(S.A1.at(x), T.A1.at(x), u.budget)) {
          maps.push_back(h.map());
        }
        options.push_back(std::move(maps));
      }
      for (ObjId x = 0; x < n; ++x) {
        std::vector<std::vector<Elem>> maps;
        for (const auto& h : enumerate_group_homs(S.A2.at(x), T.A2.at(x), u.budget)) {
          maps.push_back(h.map());
        }
        options.push_back(std::move(maps));
      }
      for_each_product<std::vector<Elem>>(
          options, [&](const std::vector<const std::vector<Elem>*>& pick) {
            meter.charge();
            Arrow a{s, t, {}, {}};
            for (ObjId x = 0; x < n; ++x) {
              a.phi1.push_back(*pick[x]);
              a.phi2.push_back(*pick[n + x]);
            }
            if (!natural(S, T, a.phi1, a.phi2)) return;
            cat.out_of_[s].push_back(cat.arrows_.size());
            cat.into_[t].push_back(cat.arrows_.size());
            cat.arrows_.push_back(std::move(a));
          });
    }
  }
  return cat;
}

BipresheafMorphism UniverseCatalog::materialize(std::size_t arrow) const {
  const auto& a = arrows_.at(arrow);
  const auto& S = objects_[a.source];
  const auto& T = objects_[a.target];
  BipresheafMorphism m{S, T, {}, {}};
  for (ObjId x = 0; x < a.phi1.size(); ++x) {
    m.phi1.emplace_back(S.A1.at(x), T.A1.at(x), a.phi1[x]);
    m.phi2.emplace_back(S.A2.at(x), T.A2.at(x), a.phi2[x]);
  }
  return m;
}

std::optional<std::size_t> UniverseCatalog::find(const BipresheafMorphism& m) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const auto& a = arrows_[i];
    if (!(objects_[a.source] == m.source) || !(objects_[a.target] == m.target)) continue;
    bool same = true;
    for (ObjId x = 0; x < a.phi1.size() && same; ++x) {
      same = a.phi1[x] == m.phi1[x].map() && a.phi2[x] == m.phi2[x].map();
    }
    if (same) return i;
  }
  return std::nullopt;
}

bool UniverseCatalog::has_isomorphic_groups(const AbBipresheaf& b) const {
  auto in_universe = [&](const FinAbGroup& g) {
    return std::any_of(universe_.groups.begin(), universe_.groups.end(),
                       [&](const FinAbGroup& h) { return isomorphic_groups(g, h); });
  };
  return std::all_of(b.A1.objects.begin(), b.A1.objects.end(), in_universe) &&
         std::all_of(b.A2.objects.begin(), b.A2.objects.end(), in_universe);
}

std::string UniverseCatalog::describe_object(std::size_t object) const {
  const auto& B = objects_.at(object);
  const auto& c = B.base();
  std::string out = "B" + std::to_string(object) + " [";
  for (ObjId x = 0; x < c.object_count(); ++x) {
    if (x) out += ", ";
    out += c.object_name(x) + ": " + std::to_string(B.A1.at(x).size()) + "/" +
           std::to_string(B.A2.at(x).size());
  }
  out += "; A1 ";
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    const auto& h = B.A1.on(f);
    out += c.morphism_name(f) + "{" + describe_map(h.source().names(), h.target().names(), h.map()) + "} ";
  }
  out += "A2 ";
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    const auto& h = B.A2.on(f);
    out += c.morphism_name(f) + "{" + describe_map(h.source().names(), h.target().names(), h.map()) + "} ";
  }
  out += "eta";
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const auto& h = B.eta[x];
    out += " " + c.object_name(x) + "{" +
           describe_map(h.source().names(), h.target().names(), h.map()) + "}";
  }
  return out + "]";
}

std::string UniverseCatalog::describe_arrow(std::size_t arrow) const {
  const auto& a = arrows_.at(arrow);
  const auto& S = objects_[a.source];
  const auto& T = objects_[a.target];
  const auto& c = S.base();
  std::string out = "#" + std::to_string(arrow) + " B" + std::to_string(a.source) + " -> B" +
                    std::to_string(a.target) + " phi1";
  for (ObjId x = 0; x < c.object_count(); ++x) {
    out += " " + c.object_name(x) + "{" +
           describe_map(S.A1.at(x).names(), T.A1.at(x).names(), a.phi1[x]) + "}";
  }
  out += " phi2";
  for (ObjId x = 0; x < c.object_count(); ++x) {
    out += " " + c.object_name(x) + "{" +
           describe_map(S.A2.at(x).names(), T.A2.at(x).names(), a.phi2[x]) + "}";
  }
  return out;
}

// ---- classification ---------------------------------------------------------------

namespace {

using Arrow = UniverseCatalog::Arrow;

bool all_components(const Arrow& a, const std::function<bool(bool, ObjId)>& pred) {
  for (ObjId x = 0; x < a.phi1.size(); ++x) {
    if (!pred(true, x) || !pred(false, x)) return false;
  }
  return true;
}

const FinAbGroup& group_of(const AbBipresheaf& B, bool first, ObjId x) {
  return first ? B.A1.at(x) : B.A2.at(x);
}

const std::vector<Elem>& map_of(const Arrow& a, bool first, ObjId x) {
  return first ? a.phi1[x] : a.phi2[x];
}

bool is_zero_arrow(const UniverseCatalog& cat, const Arrow& a) {
  const auto& T = cat.objects()[a.target];
  return all_components(a, [&](bool first, ObjId x) {
    const Elem z = group_of(T, first, x).zero();
    const auto& m = map_of(a, first, x);
    return std::all_of(m.begin(), m.end(), [&](Elem v) { return v == z; });
  });
}

// (g . f) is zero in every component.
bool composite_zero(const UniverseCatalog& cat, const Arrow& g, const Arrow& f) {
  const auto& T = cat.objects()[g.target];
  return all_components(f, [&](bool first, ObjId x) {
    const Elem z = group_of(T, first, x).zero();
    const auto& fm = map_of(f, first, x);
    const auto& gm = map_of(g, first, x);
    return std::all_of(fm.begin(), fm.end(), [&](Elem v) { return gm[v] == z; });
  });
}

bool composite_identity(const Arrow& g, const Arrow& f) {
  return all_components(f, [&](bool first, ObjId x) {
    const auto& fm = map_of(f, first, x);
    const auto& gm = map_of(g, first, x);
    for (Elem a = 0; a < fm.size(); ++a) {
      if (gm[fm[a]] != a) return false;
    }
    return true;
  });
}

bool injective_map(const std::vector<Elem>& m, std::size_t target_size) {
  std::vector<bool> hit(target_size, false);
  for (Elem v : m) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool surjective_map(const std::vector<Elem>& m, std::size_t target_size) {
  std::vector<bool> hit(target_size, false);
  for (Elem v : m) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::size_t kernel_size(const std::vector<Elem>& m, Elem zero) {
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), zero));
}

std::size_t image_size(const std::vector<Elem>& m, std::size_t target_size) {
  std::vector<bool> hit(target_size, false);
  for (Elem v : m) hit[v] = true;
  return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
}

// ker(n) = im(m), given n . m = 0 (so only sizes need comparing).
bool exact_at(const UniverseCatalog& cat, const Arrow& m, const Arrow& n) {
  const auto& mid = cat.objects()[m.target];
  const auto& end = cat.objects()[n.target];
  return all_components(m, [&](bool first, ObjId x) {
    return kernel_size(map_of(n, first, x), group_of(end, first, x).zero()) ==
           image_size(map_of(m, first, x), group_of(mid, first, x).size());
  });
}

bool comparison_is_iso(const BipresheafMorphism& m) {
  // coim = coker(ker m -> S), im = ker(T -> coker m); c([a]) = m(a).
  const auto K = compute_kernel(m);
  const auto coim = compute_cokernel(K.inclusion);
  const auto C = compute_cokernel(m);
  const auto im = compute_kernel(C.projection);
  if (!K.validity.ok() || !coim.validity.ok() || !C.validity.ok() || !im.validity.ok()) {
    return false;
  }
  const auto& c = m.source.base();
  BipresheafMorphism cmp{coim.object, im.object, {}, {}};
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (bool first : {true, false}) {
      const auto& proj = (first ? coim.projection.phi1 : coim.projection.phi2)[x];
      const auto& inc = (first ? im.inclusion.phi1 : im.inclusion.phi2)[x];
      const auto& mx = (first ? m.phi1 : m.phi2)[x];
      std::vector<std::size_t> pos(inc.target().size(), kNone);
      for (Elem i = 0; i < inc.source().size(); ++i) pos[inc(i)] = i;
      std::vector<Elem> map(proj.target().size(), kNone);
      for (Elem a = 0; a < proj.source().size(); ++a) {
        const std::size_t v = pos[mx(a)];
        if (v == kNone) return false;
        if (map[proj(a)] != kNone && map[proj(a)] != v) return false;
        map[proj(a)] = v;
      }
      if (!injective_map(map, inc.source().size()) || !surjective_map(map, inc.source().size())) {
        return false;
      }
      (first ? cmp.phi1 : cmp.phi2).emplace_back(proj.target(), inc.source(), std::move(map));
    }
  }
  return validate_morphism(cmp).ok();
}

}  // namespace

Classification classify_morphism(const UniverseCatalog& cat, std::size_t index) {
  const auto& m = cat.arrows().at(index);
  const auto& T = cat.objects()[m.target];
  Classification out;
  out.injective = all_components(m, [&](bool first, ObjId x) {
    return injective_map(map_of(m, first, x), group_of(T, first, x).size());
  });
  out.surjective = all_components(m, [&](bool first, ObjId x) {
    return surjective_map(map_of(m, first, x), group_of(T, first, x).size());
  });
  const auto& arrows = cat.arrows();
  for (std::size_t u : cat.into(m.source)) {
    if (!is_zero_arrow(cat, arrows[u]) && composite_zero(cat, m, arrows[u])) {
      out.non_mono_witness = u;
      break;
    }
  }
  for (std::size_t u : cat.out_of(m.target)) {
    if (!is_zero_arrow(cat, arrows[u]) && composite_zero(cat, arrows[u], m)) {
      out.non_epi_witness = u;
      break;
    }
  }
  out.mono = !out.non_mono_witness;
  out.epi = !out.non_epi_witness;
  for (std::size_t v : cat.out_of(m.target)) {
    if (arrows[v].target == m.source && composite_identity(arrows[v], m) &&
        composite_identity(m, arrows[v])) {
      out.iso = true;
      break;
    }
  }
  if (out.injective) {
    for (std::size_t n : cat.out_of(m.target)) {
      if (composite_zero(cat, arrows[n], m) && exact_at(cat, m, arrows[n])) {
        out.normal_witness = n;
        break;
      }
    }
  }
  if (out.surjective) {
    for (std::size_t n : cat.into(m.source)) {
      if (composite_zero(cat, m, arrows[n]) && exact_at(cat, arrows[n], m)) {
        out.conormal_witness = n;
        break;
      }
    }
  }
  out.normal = out.normal_witness.has_value();
  out.conormal = out.conormal_witness.has_value();
  out.comparison_iso = comparison_is_iso(cat.materialize(index));
  return out;
}

// ---- witness search -------------------------------------------------------------

namespace {

const std::vector<std::string> kProbeOrder = {
    "kernel-invalid",    "kernel-outside-universe", "kernel-universal",
    "cokernel-invalid",  "cokernel-outside-universe", "cokernel-universal",
    "mono-not-normal",   "epi-not-conormal",        "bimorphism-not-iso",
    "comparison-not-iso", "injective-not-mono",     "surjective-not-epi"};

std::size_t probe_rank(const std::string& axiom) {
  auto it = std::find(kProbeOrder.begin(), kProbeOrder.end(), axiom);
  return static_cast<std::size_t>(it - kProbeOrder.begin());
}

std::string first_violation(const ValidationReport& r) {
  const auto& v = r.violations().front();
  return v.law + (v.where.empty() ? "" : " at " + v.where) + ": " + v.detail;
}

struct ProbeResult {
  std::vector<Finding> findings;
  std::vector<Finding> observations;
  std::map<std::string, std::size_t> checked;
};

// Universal property of the kernel against every u into the source with m.u = 0.
std::optional<std::size_t> kernel_universal_failure(const UniverseCatalog& cat, const Arrow& m,
                                                    const KernelResult& K) {
  const auto& arrows = cat.arrows();
  const std::size_t n = m.phi1.size();
  for (std::size_t ui : cat.into(m.source)) {
    const auto& u = arrows[ui];
    if (!composite_zero(cat, m, u)) continue;
    Maps v1(n), v2(n);
    for (ObjId x = 0; x < n; ++x) {
      for (bool first : {true, false}) {
        const auto& inc = (first ? K.inclusion.phi1 : K.inclusion.phi2)[x];
        std::vector<std::size_t> pos(inc.target().size(), kNone);
        for (Elem i = 0; i < inc.source().size(); ++i) pos[inc(i)] = i;
        auto& v = first ? v1[x] : v2[x];
        for (Elem a : map_of(u, first, x)) {
          if (pos[a] == kNone) return ui;
          v.push_back(pos[a]);
        }
      }
    }
    if (!natural(cat.objects()[u.source], K.object, v1, v2)) return ui;
  }
  return std::nullopt;
}

std::optional<std::size_t> cokernel_universal_failure(const UniverseCatalog& cat,
                                                      const Arrow& m, const CokernelResult& Q) {
  const auto& arrows = cat.arrows();
  const std::size_t n = m.phi1.size();
  for (std::size_t ui : cat.out_of(m.target)) {
    const auto& u = arrows[ui];
    if (!composite_zero(cat, u, m)) continue;
    Maps v1(n), v2(n);
    for (ObjId x = 0; x < n; ++x) {
      for (bool first : {true, false}) {
        const auto& proj = (first ? Q.projection.phi1 : Q.projection.phi2)[x];
        const auto& um = map_of(u, first, x);
        auto& v = first ? v1[x] : v2[x];
        v.assign(proj.target().size(), kNone);
        for (Elem b = 0; b < proj.source().size(); ++b) {
          Elem& slot = v[proj(b)];
          if (slot != kNone && slot != um[b]) return ui;
          slot = um[b];
        }
      }
    }
    if (!natural(Q.object, cat.objects()[u.target], v1, v2)) return ui;
  }
  return std::nullopt;
}

ProbeResult probe_arrow(const UniverseCatalog& cat, std::size_t index) {
  ProbeResult out;
  const auto& m = cat.arrows()[index];
  const std::string subject = cat.describe_arrow(index);
  auto find = [&](const std::string& axiom, std::string detail) {
    out.findings.push_back({axiom, index, subject, std::move(detail)});
  };
  auto observe = [&](const std::string& axiom, std::string detail) {
    out.observations.push_back({axiom, index, subject, std::move(detail)});
  };
  const auto mat = cat.materialize(index);

  ++out.checked["kernel"];
  const auto K = compute_kernel(mat);
  if (!K.validity.ok()) {
    find("kernel-invalid", first_violation(K.validity));
  } else {
    if (!cat.has_isomorphic_groups(K.object)) {
      find("kernel-outside-universe", "a component of the kernel is not a universe group");
    }
    if (auto u = kernel_universal_failure(cat, m, K)) {
      find("kernel-universal", "no valid factorization of " + cat.describe_arrow(*u));
    }
  }

  ++out.checked["cokernel"];
  const auto Q = compute_cokernel(mat);
  if (!Q.validity.ok()) {
    find("cokernel-invalid", first_violation(Q.validity));
  } else {
    if (!cat.has_isomorphic_groups(Q.object)) {
      find("cokernel-outside-universe", "a component of the cokernel is not a universe group");
    }
    if (auto u = cokernel_universal_failure(cat, m, Q)) {
      find("cokernel-universal", "no valid factorization of " + cat.describe_arrow(*u));
    }
  }

  const auto cls = classify_morphism(cat, index);
  if (cls.mono) {
    ++out.checked["normal"];
    if (!cls.normal) find("mono-not-normal", "no universe morphism has this mono as its kernel");
  }
  if (cls.epi) {
    ++out.checked["conormal"];
    if (!cls.conormal) {
      find("epi-not-conormal", "no universe morphism has this epi as its cokernel");
    }
  }
  if (cls.mono && cls.epi) {
    ++out.checked["bimorphism"];
    if (!cls.iso) find("bimorphism-not-iso", "mono and epi without a two-sided inverse");
  }
  ++out.checked["comparison"];
  if (!cls.comparison_iso) find("comparison-not-iso", "coimage -> image is not an isomorphism");

  ++out.checked["injective-implies-mono"];
  if (cls.injective && !cls.mono) {
    find("injective-not-mono", "killed by " + cat.describe_arrow(*cls.non_mono_witness));
  }
  ++out.checked["surjective-implies-epi"];
  if (cls.surjective && !cls.epi) {
    find("surjective-not-epi", "killed by " + cat.describe_arrow(*cls.non_epi_witness));
  }
  if (cls.mono && !cls.injective) observe("mono-not-injective", "left-cancellable in the universe");
  if (cls.epi && !cls.surjective) observe("epi-not-surjective", "right-cancellable in the universe");
  return out;
}

// Work estimate for one arrow: the loops over morphisms into its source and out of its target.
std::size_t probe_cost(const UniverseCatalog& cat, std::size_t index) {
  const auto& m = cat.arrows()[index];
  return 1 + 3 * (cat.into(m.source).size() + cat.out_of(m.target).size());
}

}  // namespace

WitnessReport find_nonabelian_witness(const Universe& u, unsigned jobs) {
  try {
    return find_nonabelian_witness(UniverseCatalog::enumerate(u), jobs);
  } catch (const ResourceError& e) {
    WitnessReport rep;
    rep.exhaustive = false;
    rep.incomplete_reason = e.what();
    return rep;
  }
}

WitnessReport find_nonabelian_witness(const UniverseCatalog& cat, unsigned jobs) {
  WitnessReport rep;
  rep.objects = cat.objects().size();
  rep.morphisms = cat.arrows().size();
  // The budget bounds each probe; arrows whose probe would exceed it are skipped.
  const std::size_t budget = cat.universe().budget;
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < cat.arrows().size(); ++i) {
    if (probe_cost(cat, i) <= budget) selected.push_back(i);
  }
  if (selected.size() < cat.arrows().size()) {
    rep.exhaustive = false;
    rep.incomplete_reason = std::to_string(cat.arrows().size() - selected.size()) + " of " +
                            std::to_string(cat.arrows().size()) +
                            " morphisms skipped, their probes exceed the budget of " +
                            std::to_string(budget);
  }
  const std::size_t limit = selected.size();

  jobs = std::max(1u, jobs);
  const std::size_t chunk = (limit + jobs - 1) / jobs;
  auto run = [&cat, &selected](std::size_t begin, std::size_t end) {
    std::vector<ProbeResult> results;
    for (std::size_t i = begin; i < end; ++i) results.push_back(probe_arrow(cat, selected[i]));
    return results;
  };
  std::vector<std::future<std::vector<ProbeResult>>> parts;
  for (std::size_t begin = 0; begin < limit; begin += std::max<std::size_t>(chunk, 1)) {
    const std::size_t end = std::min(limit, begin + std::max<std::size_t>(chunk, 1));
    parts.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run,
                               begin, end));
  }
  for (auto& part : parts) {
    for (auto& r : part.get()) {
      for (auto& f : r.findings) rep.findings.push_back(std::move(f));
      for (auto& f : r.observations) rep.observations.push_back(std::move(f));
      for (const auto& [k, v] : r.checked) rep.checked[k] += v;
    }
  }
  std::stable_sort(rep.findings.begin(), rep.findings.end(), [](const Finding& a, const Finding& b) {
    return probe_rank(a.axiom) < probe_rank(b.axiom);
  });
  return rep;
}

std::optional<Finding> replay(const UniverseCatalog& cat, const Finding& f) {
  if (f.arrow >= cat.arrows().size()) return std::nullopt;
  auto r = probe_arrow(cat, f.arrow);
  for (auto* list : {&r.findings, &r.observations}) {
    for (auto& g : *list) {
      if (g.axiom == f.axiom) return g;
    }
  }
  return std::nullopt;
}

}  // namespace bipre
