#include "bipre/functors.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace bipre {

const char* to_string(Variance v) {
  return v == Variance::Covariant ? "covariant" : "contravariant";
}

template <class Obj>
Functor<Obj> Functor<Obj>::constant(const FinCategory& base, Variance variance, const Obj& value) {
  Functor F;
  F.base = base;
  F.variance = variance;
  F.objects.assign(base.object_count(), value);
  F.morphisms.assign(base.morphism_count(), Hom<Obj>::identity(value));
  return F;
}

template struct Functor<FinCommRing>;
template struct Functor<FinAbGroup>;

namespace {

using MaybeViolation = std::optional<Violation>;

ValidationReport validate_object(const FinCommRing& r) { return validate_ring(r); }
ValidationReport validate_object(const FinAbGroup& g) { return validate_group(g); }
ValidationReport validate_map(const RingHom& h) { return validate_ring_hom(h); }
ValidationReport validate_map(const GroupHom& h) { return validate_group_hom(h); }

template <class Obj>
MaybeViolation check_direction(const Functor<Obj>& F, MorId f) {
  const auto& c = F.base;
  const ObjId x = c.dom(f);
  const ObjId y = c.cod(f);
  const bool co = F.variance == Variance::Covariant;
  const Obj& want_src = F.at(co ? x : y);
  const Obj& want_tgt = F.at(co ? y : x);
  if (F.on(f).source() == want_src && F.on(f).target() == want_tgt) return std::nullopt;
  return Violation{"direction", "", {c.morphism_name(f)},
                   std::string("map does not run ") +
                       (co ? "F(dom) -> F(cod)" : "F(cod) -> F(dom)"),
                   true};
}

template <class Obj>
MaybeViolation check_identity(const Functor<Obj>& F, ObjId x) {
  const MorId id = F.base.identity(x);
  if (F.on(id).is_identity()) return std::nullopt;
  const auto& h = F.on(id);
  return Violation{"identity", "", {F.base.morphism_name(id)},
                   "F(id) = {" + describe_map(h.source().names(), h.target().names(), h.map()) +
                       "}"};
}

template <class Obj>
MaybeViolation check_composition(const Functor<Obj>& F, MorId g, MorId f) {
  const auto gf = F.base.try_compose(g, f);
  if (!gf) return std::nullopt;
  const auto& Fgf = F.on(*gf);
  const Hom<Obj> expected =
      F.variance == Variance::Covariant ? compose(F.on(g), F.on(f)) : compose(F.on(f), F.on(g));
  if (Fgf.map() == expected.map()) return std::nullopt;
  const auto& names = Fgf.source().names();
  Elem a = 0;
  while (Fgf(a) == expected(a)) ++a;
  return Violation{"composition", "",
                   {F.base.morphism_name(g), F.base.morphism_name(f)},
                   "at " + names[a] + ": F(g.f) gives " + Fgf.target().name(Fgf(a)) +
                       ", composite of images gives " + expected.target().name(expected(a))};
}

template <class Obj>
ValidationReport validate_functor_impl(const Functor<Obj>& F) {
  ValidationReport rep;
  const auto& c = F.base;
  if (F.objects.size() != c.object_count() || F.morphisms.size() != c.morphism_count()) {
    rep.add({"coverage", "", {}, "functor does not assign every object and morphism", true});
    return rep;
  }
  for (ObjId x = 0; x < c.object_count(); ++x) {
    rep.merge(validate_object(F.at(x)), "F(" + c.object_name(x) + ")");
  }
  bool maps_ok = rep.ok();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (auto v = check_direction(F, f)) {
      rep.add(std::move(*v));
      maps_ok = false;
      continue;
    }
    auto hom_rep = validate_map(F.on(f));
    if (!hom_rep.ok()) maps_ok = false;
    rep.merge(hom_rep, "F(" + c.morphism_name(f) + ")");
  }
  if (!maps_ok) return rep;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    if (auto v = check_identity(F, x)) rep.add(std::move(*v));
  }
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      if (auto v = check_composition(F, g, f)) rep.add(std::move(*v));
    }
  }
  return rep;
}

// "F(name)" -> name
std::optional<std::string> unwrap_where(const std::string& where) {
  if (where.size() < 3 || where.rfind("F(", 0) != 0) return std::nullopt;
  auto slash = where.find('/');
  std::string head = where.substr(0, slash);
  if (head.back() != ')') return std::nullopt;
  return head.substr(2, head.size() - 3);
}

template <class Obj>
MaybeViolation replay_functor_impl(const Functor<Obj>& F, const Violation& v) {
  const auto& c = F.base;
  if (!v.where.empty()) {
    auto inner = unwrap_where(v.where);
    if (!inner) return std::nullopt;
    Violation sub = v;
    auto slash = v.where.find('/');
    sub.where = slash == std::string::npos ? "" : v.where.substr(slash + 1);
    MaybeViolation out;
    if (auto x = c.find_object(*inner)) {
      out = replay(F.at(*x), sub);
    } else if (auto f = c.find_morphism(*inner)) {
      out = replay(F.on(*f), sub);
    }
    if (out) out->where = v.where.substr(0, slash) + (out->where.empty() ? "" : "/" + out->where);
    return out;
  }
  auto mor = [&](std::size_t i) { return c.find_morphism(v.witness.at(i)); };
  if (v.law == "direction" && v.witness.size() == 1) {
    if (auto f = mor(0)) return check_direction(F, *f);
  } else if (v.law == "identity" && v.witness.size() == 1) {
    if (auto id = mor(0)) {
      for (ObjId x = 0; x < c.object_count(); ++x) {
        if (c.identity(x) == *id) return check_identity(F, x);
      }
    }
  } else if (v.law == "composition" && v.witness.size() == 2) {
    if (auto g = mor(0), f = mor(1); g && f) return check_composition(F, *g, *f);
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_functor(const RingFunctor& F) { return validate_functor_impl(F); }
ValidationReport validate_functor(const AbFunctor& F) { return validate_functor_impl(F); }
std::optional<Violation> replay(const RingFunctor& F, const Violation& v) {
  return replay_functor_impl(F, v);
}
std::optional<Violation> replay(const AbFunctor& F, const Violation& v) {
  return replay_functor_impl(F, v);
}

AbFunctor additive_functor(const RingFunctor& F) {
  AbFunctor A;
  A.base = F.base;
  A.variance = F.variance;
  for (const auto& r : F.objects) A.objects.push_back(r.additive());
  for (const auto& h : F.morphisms) {
    A.morphisms.emplace_back(h.source().additive(), h.target().additive(), h.map());
  }
  return A;
}

ModuleStructure ModuleStructure::regular(const RingFunctor& ring, ActionSide side) {
  ModuleStructure M;
  M.scalars = ring;
  M.carrier = additive_functor(ring);
  M.side = side;
  for (const auto& r : ring.objects) {
    std::vector<Elem> table(r.size() * r.size());
    for (Elem m = 0; m < r.size(); ++m) {
      for (Elem s = 0; s < r.size(); ++s) table[m * r.size() + s] = r.times(m, s);
    }
    M.action.push_back(std::move(table));
  }
  return M;
}

ModuleStructure ModuleStructure::zero(const RingFunctor& ring, ActionSide side) {
  ModuleStructure M;
  M.scalars = ring;
  M.carrier = AbFunctor::constant(ring.base, ring.variance, FinAbGroup::zero_group());
  M.side = side;
  for (const auto& r : ring.objects) M.action.emplace_back(r.size(), 0);
  return M;
}

// ---- module axioms ------------------------------------------------------------

namespace {

std::string act_text(const ModuleStructure& M, const std::string& m, const std::string& r) {
  return M.side == ActionSide::Right ? m + "*" + r : r + "*" + m;
}

MaybeViolation mod_add_element(const ModuleStructure& M, ObjId x, Elem m, Elem n, Elem r) {
  const auto& C = M.carrier.at(x);
  const auto& R = M.scalars.at(x);
  const Elem l = M.act(x, C.plus(m, n), r);
  const Elem rr = C.plus(M.act(x, m, r), M.act(x, n, r));
  if (l == rr) return std::nullopt;
  return Violation{"action-additive-element", M.carrier.base.object_name(x),
                   {C.name(m), C.name(n), R.name(r)},
                   act_text(M, "(m+n)", "r") + " = " + C.name(l) + ", " + act_text(M, "m", "r") +
                       "+" + act_text(M, "n", "r") + " = " + C.name(rr)};
}

MaybeViolation mod_add_scalar(const ModuleStructure& M, ObjId x, Elem m, Elem r, Elem s) {
  const auto& C = M.carrier.at(x);
  const auto& R = M.scalars.at(x);
  const Elem l = M.act(x, m, R.plus(r, s));
  const Elem rr = C.plus(M.act(x, m, r), M.act(x, m, s));
  if (l == rr) return std::nullopt;
  return Violation{"action-additive-scalar", M.carrier.base.object_name(x),
                   {C.name(m), R.name(r), R.name(s)},
                   act_text(M, "m", "(r+s)") + " = " + C.name(l) + ", " + act_text(M, "m", "r") +
                       "+" + act_text(M, "m", "s") + " = " + C.name(rr)};
}

MaybeViolation mod_unit(const ModuleStructure& M, ObjId x, Elem m) {
  const auto& C = M.carrier.at(x);
  const Elem l = M.act(x, m, M.scalars.at(x).one());
  if (l == m) return std::nullopt;
  return Violation{"action-unit", M.carrier.base.object_name(x), {C.name(m)},
                   act_text(M, "m", "1") + " = " + C.name(l) + ", m = " + C.name(m)};
}

MaybeViolation mod_zero_scalar(const ModuleStructure& M, ObjId x, Elem m) {
  const auto& C = M.carrier.at(x);
  const Elem l = M.act(x, m, M.scalars.at(x).zero());
  if (l == C.zero()) return std::nullopt;
  return Violation{"action-zero-scalar", M.carrier.base.object_name(x), {C.name(m)},
                   act_text(M, "m", "0") + " = " + C.name(l) + ", 0 = " + C.name(C.zero())};
}

MaybeViolation mod_trivial_ring(const ModuleStructure& M, ObjId x, Elem m) {
  const auto& R = M.scalars.at(x);
  const auto& C = M.carrier.at(x);
  if (!R.is_trivial() || m == C.zero()) return std::nullopt;
  return Violation{"identity-equals-zero", M.carrier.base.object_name(x), {C.name(m)},
                   "scalars form the trivial ring, so m = 1*m = 0*m = 0, yet m = " + C.name(m)};
}

MaybeViolation mod_assoc(const ModuleStructure& M, ObjId x, Elem m, Elem r, Elem s) {
  const auto& C = M.carrier.at(x);
  const auto& R = M.scalars.at(x);
  const Elem l = M.act(x, M.act(x, m, r), s);
  const Elem rr = M.act(x, m, R.times(r, s));
  if (l == rr) return std::nullopt;
  return Violation{"action-associativity", M.carrier.base.object_name(x),
                   {C.name(m), R.name(r), R.name(s)},
                   "acting by r then s gives " + C.name(l) + ", acting by rs gives " + C.name(rr)};
}

MaybeViolation mod_naturality(const ModuleStructure& M, MorId f, Elem m, Elem r) {
  const auto& cat = M.carrier.base;
  const bool co = M.carrier.variance == Variance::Covariant;
  const ObjId from = co ? cat.dom(f) : cat.cod(f);
  const ObjId to = co ? cat.cod(f) : cat.dom(f);
  const auto& Cf = M.carrier.on(f);
  const auto& Rf = M.scalars.on(f);
  const Elem l = Cf(M.act(from, m, r));
  const Elem rr = M.act(to, Cf(m), Rf(r));
  if (l == rr) return std::nullopt;
  const auto& Cto = M.carrier.at(to);
  return Violation{"action-naturality", "",
                   {cat.morphism_name(f), M.carrier.at(from).name(m), M.scalars.at(from).name(r)},
                   "C(f)(" + act_text(M, "m", "r") + ") = " + Cto.name(l) + ", " +
                       act_text(M, "C(f)(m)", "R(f)(r)") + " = " + Cto.name(rr)};
}

}  // namespace

ValidationReport validate_module_structure(const ModuleStructure& M) {
  ValidationReport rep;
  const auto& cat = M.carrier.base;
  if (!(M.scalars.base == cat) || M.scalars.variance != M.carrier.variance) {
    rep.add({"base-mismatch", "", {}, "scalars and carrier differ in base or variance", true});
    return rep;
  }
  rep.merge(validate_functor(M.scalars), "scalars");
  rep.merge(validate_functor(M.carrier), "carrier");
  if (!rep.ok()) return rep;
  if (M.action.size() != cat.object_count()) {
    rep.add({"action-coverage", "", {}, "action table missing for some object", true});
    return rep;
  }
  for (ObjId x = 0; x < cat.object_count(); ++x) {
    const auto& C = M.carrier.at(x);
    const auto& R = M.scalars.at(x);
    bool total = M.action[x].size() == C.size() * R.size();
    for (Elem v : M.action[x]) total = total && v < C.size();
    if (!total) {
      rep.add({"action-coverage", cat.object_name(x), {cat.object_name(x)},
               "action table is not a total map C(x) x R(x) -> C(x)", true});
    }
  }
  if (!rep.ok()) return rep;

  auto note = [&](MaybeViolation v) {
    if (v) rep.add(std::move(*v));
  };
  for (ObjId x = 0; x < cat.object_count(); ++x) {
    const std::size_t nc = M.carrier.at(x).size();
    const std::size_t nr = M.scalars.at(x).size();
    for (Elem m = 0; m < nc; ++m) {
      note(mod_trivial_ring(M, x, m));
      note(mod_unit(M, x, m));
      note(mod_zero_scalar(M, x, m));
    }
    for (Elem m = 0; m < nc; ++m) {
      for (Elem n = 0; n < nc; ++n) {
        for (Elem r = 0; r < nr; ++r) note(mod_add_element(M, x, m, n, r));
      }
      for (Elem r = 0; r < nr; ++r) {
        for (Elem s = 0; s < nr; ++s) {
          note(mod_add_scalar(M, x, m, r, s));
          note(mod_assoc(M, x, m, r, s));
        }
      }
    }
  }
  const bool co = M.carrier.variance == Variance::Covariant;
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const ObjId from = co ? cat.dom(f) : cat.cod(f);
    for (Elem m = 0; m < M.carrier.at(from).size(); ++m) {
      for (Elem r = 0; r < M.scalars.at(from).size(); ++r) note(mod_naturality(M, f, m, r));
    }
  }
  return rep;
}

std::optional<Violation> replay(const ModuleStructure& M, const Violation& v) {
  const auto& cat = M.carrier.base;
  if (v.where.rfind("scalars", 0) == 0 || v.where.rfind("carrier", 0) == 0) {
    Violation sub = v;
    auto slash = v.where.find('/');
    sub.where = slash == std::string::npos ? "" : v.where.substr(slash + 1);
    auto out = v.where[0] == 's' ? replay(M.scalars, sub) : replay(M.carrier, sub);
    if (out) out->where = v.where.substr(0, slash) + (out->where.empty() ? "" : "/" + out->where);
    return out;
  }
  if (v.law == "action-naturality") {
    if (v.witness.size() != 3) return std::nullopt;
    auto f = cat.find_morphism(v.witness[0]);
    if (!f) return std::nullopt;
    const ObjId from = M.carrier.variance == Variance::Covariant ? cat.dom(*f) : cat.cod(*f);
    auto m = M.carrier.at(from).find(v.witness[1]);
    auto r = M.scalars.at(from).find(v.witness[2]);
    if (!m || !r) return std::nullopt;
    return mod_naturality(M, *f, *m, *r);
  }
  auto x = cat.find_object(v.where);
  if (!x || v.witness.empty()) return std::nullopt;
  const auto& C = M.carrier.at(*x);
  const auto& R = M.scalars.at(*x);
  auto m = C.find(v.witness[0]);
  if (!m) return std::nullopt;
  if (v.law == "action-unit") return mod_unit(M, *x, *m);
  if (v.law == "action-zero-scalar") return mod_zero_scalar(M, *x, *m);
  if (v.law == "identity-equals-zero") return mod_trivial_ring(M, *x, *m);
  if (v.witness.size() != 3) return std::nullopt;
  if (v.law == "action-additive-element") {
    auto n = C.find(v.witness[1]);
    auto r = R.find(v.witness[2]);
    if (n && r) return mod_add_element(M, *x, *m, *n, *r);
    return std::nullopt;
  }
  auto r = R.find(v.witness[1]);
  auto s = R.find(v.witness[2]);
  if (!r || !s) return std::nullopt;
  if (v.law == "action-additive-scalar") return mod_add_scalar(M, *x, *m, *r, *s);
  if (v.law == "action-associativity") return mod_assoc(M, *x, *m, *r, *s);
  return std::nullopt;
}

}  // namespace bipre

// ---- enumeration ----------------------------------------------------------------

namespace bipre {

namespace {

struct Triple {
  MorId g, f, gf;
};

}  // namespace

std::vector<AbFunctor> enumerate_ab_functors(const FinCategory& base, Variance variance,
                                             const std::vector<FinAbGroup>& objects,
                                             BudgetMeter& meter) {
  const std::size_t n = base.morphism_count();
  const bool co = variance == Variance::Covariant;
  std::vector<std::vector<GroupHom>> options(n);
  for (MorId f = 0; f < n; ++f) {
    const auto& src = objects.at(co ? base.dom(f) : base.cod(f));
    const auto& tgt = objects.at(co ? base.cod(f) : base.dom(f));
    if (base.is_identity(f) && base.dom(f) == base.cod(f)) {
      options[f].push_back(GroupHom::identity(src));
    } else {
      options[f] = enumerate_group_homs(src, tgt, meter.limit());
    }
    meter.charge(options[f].size());
  }
  // Each composable triple is checked as soon as its last member is assigned.
  std::vector<std::vector<Triple>> due(n);
  for (MorId g = 0; g < n; ++g) {
    for (MorId f = 0; f < n; ++f) {
      if (auto gf = base.try_compose(g, f)) due[std::max({g, f, *gf})].push_back({g, f, *gf});
    }
  }
  std::vector<AbFunctor> out;
  std::vector<const GroupHom*> chosen(n, nullptr);
  auto consistent = [&](MorId i) {
    for (const auto& t : due[i]) {
      const auto& G = *chosen[t.g];
      const auto& F = *chosen[t.f];
      const auto& H = *chosen[t.gf];
      for (Elem a = 0; a < H.source().size(); ++a) {
        if (H(a) != (co ? G(F(a)) : F(G(a)))) return false;
      }
    }
    return true;
  };
  std::function<void(MorId)> dfs = [&](MorId i) {
    if (i == n) {
      AbFunctor F;
      F.base = base;
      F.variance = variance;
      F.objects = objects;
      for (MorId f = 0; f < n; ++f) F.morphisms.push_back(*chosen[f]);
      out.push_back(std::move(F));
      return;
    }
    for (const auto& h : options[i]) {
      meter.charge();
      chosen[i] = &h;
      if (consistent(i)) dfs(i + 1);
    }
  };
  dfs(0);
  return out;
}

std::vector<std::vector<Elem>> enumerate_actions(const FinCommRing& ring,
                                                 const FinAbGroup& carrier, BudgetMeter& meter) {
  const auto endos = enumerate_group_homs(carrier, carrier, meter.limit());
  meter.charge(endos.size());
  const std::size_t nr = ring.size();
  std::vector<const GroupHom*> a(nr, nullptr);
  std::vector<std::vector<Elem>> out;
  auto same = [](const GroupHom& x, const std::vector<Elem>& y) { return x.map() == y; };
  auto consistent = [&](Elem r) {
    const auto& ar = *a[r];
    if (r == ring.zero() && !ar.is_zero()) return false;
    if (r == ring.one() && !ar.is_identity()) return false;
    // Relations whose largest index is r become checkable now.
    for (Elem u = 0; u <= r; ++u) {
      for (Elem s = 0; s <= r; ++s) {
        const Elem sum = ring.plus(u, s);
        const Elem prod = ring.times(u, s);
        if (sum <= r && std::max({u, s, sum}) == r &&
            !same(*a[sum], add_homs(*a[u], *a[s]).map())) {
          return false;
        }
        if (prod <= r && std::max({u, s, prod}) == r &&
            !same(*a[prod], compose(*a[s], *a[u]).map())) {
          return false;
        }
      }
    }
    return true;
  };
  std::function<void(Elem)> dfs = [&](Elem r) {
    if (r == nr) {
      std::vector<Elem> table(carrier.size() * nr);
      for (Elem m = 0; m < carrier.size(); ++m) {
        for (Elem s = 0; s < nr; ++s) table[m * nr + s] = (*a[s])(m);
      }
      out.push_back(std::move(table));
      return;
    }
    for (const auto& e : endos) {
      meter.charge();
      a[r] = &e;
      if (consistent(r)) dfs(r + 1);
    }
  };
  dfs(0);
  return out;
}

std::vector<ModuleStructure> enumerate_module_structures(const RingFunctor& scalars,
                                                         const std::vector<FinAbGroup>& carriers,
                                                         ActionSide side, BudgetMeter& meter) {
  const auto& base = scalars.base;
  const std::size_t n = base.object_count();
  std::vector<std::vector<std::vector<Elem>>> actions(n);
  for (ObjId x = 0; x < n; ++x) actions[x] = enumerate_actions(scalars.at(x), carriers.at(x), meter);
  const auto functors = enumerate_ab_functors(base, scalars.variance, carriers, meter);
  std::vector<ModuleStructure> out;
  ModuleStructure M;
  M.scalars = scalars;
  M.side = side;
  M.action.assign(n, {});
  for (const auto& C : functors) {
    M.carrier = C;
    std::function<void(ObjId)> dfs = [&](ObjId x) {
      if (x == n) {
        meter.charge();
        if (validate_module_structure(M).ok()) out.push_back(M);
        return;
      }
      for (const auto& t : actions[x]) {
        M.action[x] = t;
        dfs(x + 1);
      }
    };
    dfs(0);
  }
  return out;
}

}  // namespace bipre
