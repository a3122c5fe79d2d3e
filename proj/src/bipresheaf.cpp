#include "bipre/bipresheaf.hpp"

#include <string>
#include <utility>

namespace bipre {

namespace {

using MaybeViolation = std::optional<Violation>;

std::pair<std::string, std::string> split_where(const std::string& where) {
  auto slash = where.find('/');
  if (slash == std::string::npos) return {where, ""};
  return {where.substr(0, slash), where.substr(slash + 1)};
}

Violation with_where(Violation v, std::string where) {
  v.where = std::move(where);
  return v;
}

ValidationReport validate_map(const RingHom& h) { return validate_ring_hom(h); }
ValidationReport validate_map(const GroupHom& h) { return validate_group_hom(h); }

struct Labels {
  const char* first;
  const char* second;
  const char* connecting;
};

// conn_y(a) against F2(f)(conn_x(F1(f)(a))), a in F1(y).
template <class Obj>
MaybeViolation check_triangle(const Functor<Obj>& F1, const Functor<Obj>& F2,
                              const std::vector<Hom<Obj>>& conn, MorId f, Elem a,
                              const Labels& l) {
  const auto& c = F1.base;
  const ObjId x = c.dom(f);
  const ObjId y = c.cod(f);
  const Elem lhs = conn[y](a);
  const Elem rhs = F2.on(f)(conn[x](F1.on(f)(a)));
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = F2.at(y);
  return Violation{"coherence", "", {c.morphism_name(f), F1.at(y).name(a)},
                   std::string(l.connecting) + "_y(a) = " + tgt.name(lhs) + ", " + l.second +
                       "(f)." + l.connecting + "_x." + l.first + "(f)(a) = " + tgt.name(rhs)};
}

template <class Obj>
ValidationReport shape_checks(const Functor<Obj>& F1, const Functor<Obj>& F2,
                              const std::vector<Hom<Obj>>& conn, const Labels& l) {
  ValidationReport rep;
  if (F1.variance != Variance::Contravariant) {
    rep.add({"variance", l.first, {}, "first functor must be contravariant", true});
  }
  if (F2.variance != Variance::Covariant) {
    rep.add({"variance", l.second, {}, "second functor must be covariant", true});
  }
  if (!(F1.base == F2.base)) {
    rep.add({"base-mismatch", "", {}, "the two functors have different base categories", true});
  }
  if (conn.size() != F1.base.object_count()) {
    rep.add({"coverage", l.connecting, {}, "connecting map missing for some object", true});
  }
  return rep;
}

// The shape checks passed and every functor map is well typed; the maps
// need not satisfy their own laws for the triangle to be evaluated.
template <class Obj>
void connecting_checks(const Functor<Obj>& F1, const Functor<Obj>& F2,
                       const std::vector<Hom<Obj>>& conn, const Labels& l,
                       ValidationReport& rep) {
  const auto& c = F1.base;
  bool typed = true;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const std::string where = std::string(l.connecting) + "(" + c.object_name(x) + ")";
    if (!(conn[x].source() == F1.at(x)) || !(conn[x].target() == F2.at(x))) {
      rep.add({"connecting-typing", where, {c.object_name(x)},
               std::string("map does not run ") + l.first + "(x) -> " + l.second + "(x)", true});
      typed = false;
      continue;
    }
    auto h = validate_map(conn[x]);
    if (!h.ok()) typed = false;
    rep.merge(h, where);
  }
  if (!typed) return;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (Elem a = 0; a < F1.at(c.cod(f)).size(); ++a) {
      if (auto v = check_triangle(F1, F2, conn, f, a, l)) rep.add(std::move(*v));
    }
  }
}

template <class Obj>
MaybeViolation replay_triangle(const Functor<Obj>& F1, const Functor<Obj>& F2,
                               const std::vector<Hom<Obj>>& conn, const Violation& v,
                               const Labels& l) {
  if (v.witness.size() != 2) return std::nullopt;
  auto f = F1.base.find_morphism(v.witness[0]);
  if (!f) return std::nullopt;
  auto a = F1.at(F1.base.cod(*f)).find(v.witness[1]);
  if (!a) return std::nullopt;
  return check_triangle(F1, F2, conn, *f, *a, l);
}

// "label(x)" -> x
std::optional<ObjId> component_object(const FinCategory& c, const std::string& head,
                                      const std::string& label) {
  if (head.size() < label.size() + 2 || head.rfind(label + "(", 0) != 0 || head.back() != ')') {
    return std::nullopt;
  }
  return c.find_object(head.substr(label.size() + 1, head.size() - label.size() - 2));
}

template <class Obj>
MaybeViolation replay_triple(const Functor<Obj>& F1, const Functor<Obj>& F2,
                             const std::vector<Hom<Obj>>& conn, const Violation& v,
                             const Labels& l) {
  if (v.law == "coherence" && v.where.empty()) return replay_triangle(F1, F2, conn, v, l);
  auto [head, rest] = split_where(v.where);
  Violation sub = with_where(v, rest);
  MaybeViolation out;
  if (head == l.first) {
    out = replay(F1, sub);
  } else if (head == l.second) {
    out = replay(F2, sub);
  } else if (auto x = component_object(F1.base, head, l.connecting)) {
    out = replay(conn[*x], sub);
  }
  if (out) out->where = out->where.empty() ? head : head + "/" + out->where;
  return out;
}

constexpr Labels kRingLabels{"R1", "R2", "theta"};
constexpr Labels kAbLabels{"A1", "A2", "eta"};
constexpr Labels kModuleLabels{"M1", "M2", "eta"};

}  // namespace

AbBipresheaf AbBipresheaf::zero(const FinCategory& base) {
  const auto z = FinAbGroup::zero_group();
  return {AbFunctor::constant(base, Variance::Contravariant, z),
          AbFunctor::constant(base, Variance::Covariant, z),
          std::vector<GroupHom>(base.object_count(), GroupHom::identity(z))};
}

ModuleBipresheaf ModuleBipresheaf::zero(const RingBipresheaf& over) {
  ModuleBipresheaf M;
  M.over = over;
  M.M1 = ModuleStructure::zero(over.R1, ActionSide::Right);
  M.M2 = ModuleStructure::zero(over.R2, ActionSide::Left);
  M.eta.assign(over.base().object_count(), GroupHom::identity(FinAbGroup::zero_group()));
  return M;
}

BipresheafMorphism BipresheafMorphism::identity(const AbBipresheaf& b) {
  BipresheafMorphism m{b, b, {}, {}};
  for (const auto& g : b.A1.objects) m.phi1.push_back(GroupHom::identity(g));
  for (const auto& g : b.A2.objects) m.phi2.push_back(GroupHom::identity(g));
  return m;
}

BipresheafMorphism BipresheafMorphism::zero(const AbBipresheaf& source,
                                            const AbBipresheaf& target) {
  BipresheafMorphism m{source, target, {}, {}};
  for (ObjId x = 0; x < source.base().object_count(); ++x) {
    m.phi1.push_back(GroupHom::zero(source.A1.at(x), target.A1.at(x)));
    m.phi2.push_back(GroupHom::zero(source.A2.at(x), target.A2.at(x)));
  }
  return m;
}

ModuleMorphism ModuleMorphism::identity(const ModuleBipresheaf& m) {
  auto u = BipresheafMorphism::identity(m.underlying());
  return {m, m, u.phi1, u.phi2};
}

// ---- bipresheaf validation ------------------------------------------------------

ValidationReport validate_bipresheaf(const RingBipresheaf& B) {
  auto rep = shape_checks(B.R1, B.R2, B.theta, kRingLabels);
  if (!rep.ok()) return rep;
  rep.merge(validate_functor(B.R1), "R1");
  rep.merge(validate_functor(B.R2), "R2");
  if (rep.has_structural()) return rep;
  connecting_checks(B.R1, B.R2, B.theta, kRingLabels, rep);
  return rep;
}

ValidationReport validate_bipresheaf(const AbBipresheaf& B) {
  auto rep = shape_checks(B.A1, B.A2, B.eta, kAbLabels);
  if (!rep.ok()) return rep;
  rep.merge(validate_functor(B.A1), "A1");
  rep.merge(validate_functor(B.A2), "A2");
  if (rep.has_structural()) return rep;
  connecting_checks(B.A1, B.A2, B.eta, kAbLabels, rep);
  return rep;
}

namespace {

MaybeViolation check_compatibility(const ModuleBipresheaf& B, ObjId x, Elem r, Elem m) {
  const auto& eta = B.eta[x];
  const Elem lhs = eta(B.M1.act(x, m, r));
  const Elem rhs = B.M2.act(x, eta(m), B.over.theta[x](r));
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = B.M2.carrier.at(x);
  return Violation{"compatibility", "",
                   {B.base().object_name(x), B.over.R1.at(x).name(r), B.M1.carrier.at(x).name(m)},
                   "eta_x(m*r) = " + tgt.name(lhs) + ", theta_x(r)*eta_x(m) = " + tgt.name(rhs)};
}

}  // namespace

ValidationReport validate_bipresheaf(const ModuleBipresheaf& B) {
  ValidationReport rep;
  rep.merge(validate_bipresheaf(B.over), "over");
  if (!rep.ok()) return rep;
  if (!(B.M1.scalars == B.over.R1)) {
    rep.add({"scalar-mismatch", "M1", {}, "M1 is not a module over R1", true});
  }
  if (!(B.M2.scalars == B.over.R2)) {
    rep.add({"scalar-mismatch", "M2", {}, "M2 is not a module over R2", true});
  }
  rep.merge(shape_checks(B.M1.carrier, B.M2.carrier, B.eta, kModuleLabels));
  if (!rep.ok()) return rep;
  rep.merge(validate_module_structure(B.M1), "M1");
  rep.merge(validate_module_structure(B.M2), "M2");
  if (!rep.ok()) return rep;
  connecting_checks(B.M1.carrier, B.M2.carrier, B.eta, kModuleLabels, rep);
  // Compatibility reads eta as a group hom, so it needs the typing above.
  if (rep.has_structural()) return rep;
  const auto& c = B.base();
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (Elem r = 0; r < B.over.R1.at(x).size(); ++r) {
      for (Elem m = 0; m < B.M1.carrier.at(x).size(); ++m) {
        if (auto v = check_compatibility(B, x, r, m)) rep.add(std::move(*v));
      }
    }
  }
  return rep;
}

std::optional<Violation> replay(const RingBipresheaf& B, const Violation& v) {
  return replay_triple(B.R1, B.R2, B.theta, v, kRingLabels);
}

std::optional<Violation> replay(const AbBipresheaf& B, const Violation& v) {
  return replay_triple(B.A1, B.A2, B.eta, v, kAbLabels);
}

std::optional<Violation> replay(const ModuleBipresheaf& B, const Violation& v) {
  if (v.law == "compatibility" && v.where.empty()) {
    if (v.witness.size() != 3) return std::nullopt;
    auto x = B.base().find_object(v.witness[0]);
    if (!x) return std::nullopt;
    auto r = B.over.R1.at(*x).find(v.witness[1]);
    auto m = B.M1.carrier.at(*x).find(v.witness[2]);
    if (!r || !m) return std::nullopt;
    return check_compatibility(B, *x, *r, *m);
  }
  auto [head, rest] = split_where(v.where);
  MaybeViolation out;
  if (head == "over") {
    out = replay(B.over, with_where(v, rest));
  } else if (head == "M1" && v.law != "variance") {
    out = replay(B.M1, with_where(v, rest));
  } else if (head == "M2" && v.law != "variance") {
    out = replay(B.M2, with_where(v, rest));
  } else {
    return replay_triple(B.M1.carrier, B.M2.carrier, B.eta, v, kModuleLabels);
  }
  if (out) out->where = out->where.empty() ? head : head + "/" + out->where;
  return out;
}

// ---- morphisms ------------------------------------------------------------------

namespace {

MaybeViolation check_natural_first(const BipresheafMorphism& m, MorId f, Elem a) {
  const auto& c = m.source.base();
  const ObjId x = c.dom(f);
  const ObjId y = c.cod(f);
  const Elem lhs = m.phi1[x](m.source.A1.on(f)(a));
  const Elem rhs = m.target.A1.on(f)(m.phi1[y](a));
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = m.target.A1.at(x);
  return Violation{"naturality-first", "", {c.morphism_name(f), m.source.A1.at(y).name(a)},
                   "phi1_x(A1(f)(a)) = " + tgt.name(lhs) + ", A1'(f)(phi1_y(a)) = " +
                       tgt.name(rhs)};
}

MaybeViolation check_natural_second(const BipresheafMorphism& m, MorId f, Elem a) {
  const auto& c = m.source.base();
  const ObjId x = c.dom(f);
  const ObjId y = c.cod(f);
  const Elem lhs = m.phi2[y](m.source.A2.on(f)(a));
  const Elem rhs = m.target.A2.on(f)(m.phi2[x](a));
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = m.target.A2.at(y);
  return Violation{"naturality-second", "", {c.morphism_name(f), m.source.A2.at(x).name(a)},
                   "phi2_y(A2(f)(a)) = " + tgt.name(lhs) + ", A2'(f)(phi2_x(a)) = " +
                       tgt.name(rhs)};
}

MaybeViolation check_eta_compat(const BipresheafMorphism& m, ObjId x, Elem a) {
  const Elem lhs = m.phi2[x](m.source.eta[x](a));
  const Elem rhs = m.target.eta[x](m.phi1[x](a));
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = m.target.A2.at(x);
  return Violation{"eta-compatibility", "",
                   {m.source.base().object_name(x), m.source.A1.at(x).name(a)},
                   "phi2_x(eta_x(a)) = " + tgt.name(lhs) + ", eta'_x(phi1_x(a)) = " +
                       tgt.name(rhs)};
}

void check_components(const std::vector<GroupHom>& phi, const AbFunctor& S, const AbFunctor& T,
                      const char* label, ValidationReport& rep) {
  const auto& c = S.base;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const std::string where = std::string(label) + "(" + c.object_name(x) + ")";
    if (!(phi[x].source() == S.at(x)) || !(phi[x].target() == T.at(x))) {
      rep.add({"component-typing", where, {c.object_name(x)},
               "component does not run between the matching groups", true});
      continue;
    }
    rep.merge(validate_group_hom(phi[x]), where);
  }
}

}  // namespace

ValidationReport validate_morphism(const BipresheafMorphism& m) {
  ValidationReport rep;
  const auto& c = m.source.base();
  if (!(c == m.target.base())) {
    rep.add({"base-mismatch", "", {}, "source and target have different bases", true});
    return rep;
  }
  if (m.phi1.size() != c.object_count() || m.phi2.size() != c.object_count()) {
    rep.add({"coverage", "", {}, "component missing for some object", true});
    return rep;
  }
  check_components(m.phi1, m.source.A1, m.target.A1, "phi1", rep);
  check_components(m.phi2, m.source.A2, m.target.A2, "phi2", rep);
  if (!rep.ok()) return rep;
  auto note = [&](MaybeViolation v) {
    if (v) rep.add(std::move(*v));
  };
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (Elem a = 0; a < m.source.A1.at(c.cod(f)).size(); ++a) note(check_natural_first(m, f, a));
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (Elem a = 0; a < m.source.A2.at(c.dom(f)).size(); ++a) {
      note(check_natural_second(m, f, a));
    }
  }
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (Elem a = 0; a < m.source.A1.at(x).size(); ++a) note(check_eta_compat(m, x, a));
  }
  return rep;
}

std::optional<Violation> replay(const BipresheafMorphism& m, const Violation& v) {
  const auto& c = m.source.base();
  if (v.witness.size() != 2) return std::nullopt;
  if (v.law == "eta-compatibility") {
    auto x = c.find_object(v.witness[0]);
    if (!x) return std::nullopt;
    auto a = m.source.A1.at(*x).find(v.witness[1]);
    return a ? check_eta_compat(m, *x, *a) : std::nullopt;
  }
  auto f = c.find_morphism(v.witness[0]);
  if (!f) return std::nullopt;
  if (v.law == "naturality-first") {
    auto a = m.source.A1.at(c.cod(*f)).find(v.witness[1]);
    return a ? check_natural_first(m, *f, *a) : std::nullopt;
  }
  if (v.law == "naturality-second") {
    auto a = m.source.A2.at(c.dom(*f)).find(v.witness[1]);
    return a ? check_natural_second(m, *f, *a) : std::nullopt;
  }
  return std::nullopt;
}

namespace {

MaybeViolation check_action_first(const ModuleMorphism& h, ObjId x, Elem m, Elem r) {
  const Elem lhs = h.phi1[x](h.source.M1.act(x, m, r));
  const Elem rhs = h.target.M1.act(x, h.phi1[x](m), r);
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = h.target.M1.carrier.at(x);
  return Violation{"action-first", "",
                   {h.source.base().object_name(x), h.source.M1.carrier.at(x).name(m),
                    h.source.over.R1.at(x).name(r)},
                   "phi1_x(m*r) = " + tgt.name(lhs) + ", phi1_x(m)*r = " + tgt.name(rhs)};
}

MaybeViolation check_action_second(const ModuleMorphism& h, ObjId x, Elem m, Elem r) {
  const Elem lhs = h.phi2[x](h.source.M2.act(x, m, r));
  const Elem rhs = h.target.M2.act(x, h.phi2[x](m), r);
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = h.target.M2.carrier.at(x);
  return Violation{"action-second", "",
                   {h.source.base().object_name(x), h.source.M2.carrier.at(x).name(m),
                    h.source.over.R2.at(x).name(r)},
                   "phi2_x(r*m) = " + tgt.name(lhs) + ", r*phi2_x(m) = " + tgt.name(rhs)};
}

}  // namespace

ValidationReport validate_morphism(const ModuleMorphism& h) {
  ValidationReport rep;
  if (!(h.source.over == h.target.over)) {
    rep.add({"ring-mismatch", "", {}, "source and target are modules over different rings",
             true});
    return rep;
  }
  rep = validate_morphism(h.underlying());
  if (rep.has_structural()) return rep;
  const auto& c = h.source.base();
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (Elem m = 0; m < h.source.M1.carrier.at(x).size(); ++m) {
      for (Elem r = 0; r < h.source.over.R1.at(x).size(); ++r) {
        if (auto v = check_action_first(h, x, m, r)) rep.add(std::move(*v));
      }
    }
    for (Elem m = 0; m < h.source.M2.carrier.at(x).size(); ++m) {
      for (Elem r = 0; r < h.source.over.R2.at(x).size(); ++r) {
        if (auto v = check_action_second(h, x, m, r)) rep.add(std::move(*v));
      }
    }
  }
  return rep;
}

std::optional<Violation> replay(const ModuleMorphism& h, const Violation& v) {
  const bool first = v.law == "action-first";
  if (!first && v.law != "action-second") return replay(h.underlying(), v);
  if (v.witness.size() != 3) return std::nullopt;
  auto x = h.source.base().find_object(v.witness[0]);
  if (!x) return std::nullopt;
  const auto& M = first ? h.source.M1 : h.source.M2;
  auto m = M.carrier.at(*x).find(v.witness[1]);
  auto r = M.scalars.at(*x).find(v.witness[2]);
  if (!m || !r) return std::nullopt;
  return first ? check_action_first(h, *x, *m, *r) : check_action_second(h, *x, *m, *r);
}

BipresheafMorphism compose_bipresheaf_morphisms(const BipresheafMorphism& g,
                                                const BipresheafMorphism& f) {
  if (!(f.target == g.source)) {
    throw StructuralError("cannot compose: target of the first morphism is not the source of "
                          "the second");
  }
  BipresheafMorphism out{f.source, g.target, {}, {}};
  for (std::size_t x = 0; x < f.phi1.size(); ++x) {
    out.phi1.push_back(compose(g.phi1[x], f.phi1[x]));
    out.phi2.push_back(compose(g.phi2[x], f.phi2[x]));
  }
  return out;
}

ModuleMorphism compose_module_morphisms(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (!(f.target == g.source)) {
    throw StructuralError("cannot compose: target of the first morphism is not the source of "
                          "the second");
  }
  auto u = compose_bipresheaf_morphisms(g.underlying(), f.underlying());
  return {f.source, g.target, u.phi1, u.phi2};
}

}  // namespace bipre
