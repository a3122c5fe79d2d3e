#include "bipre/equivalence.hpp"

#include <functional>
#include <set>

namespace bipre {

namespace {

using MaybeViolation = std::optional<Violation>;

GrMorphism unit_family(const FinCategory& c, MorId f, const TensorPair& p) {
  GrMorphism m{c.dom(f), c.cod(f), {}};
  m.components[f][p] = 1;
  return m;
}

// Pure families per object pair, indexed x * n + y.
std::vector<std::vector<GrMorphism>> pure_table(const GrCategory& G, BudgetMeter& meter) {
  const std::size_t n = G.base().object_count();
  std::vector<std::vector<GrMorphism>> table(n * n);
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      meter.charge(G.pure_count(x, y, meter.limit()));
      table[x * n + y] = enumerate_pure_morphisms(G, x, y, meter.limit());
    }
  }
  return table;
}

}  // namespace

std::vector<GrMorphism> gr_domain(const GrCategory& G, std::size_t budget) {
  BudgetMeter meter(budget, "Gr morphism domain");
  const std::size_t n = G.base().object_count();
  const auto pure = pure_table(G, meter);
  std::set<GrMorphism> out;
  for (const auto& family : pure) out.insert(family.begin(), family.end());
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      for (ObjId z = 0; z < n; ++z) {
        for (const auto& phi : pure[x * n + y]) {
          for (const auto& psi : pure[y * n + z]) {
            meter.charge();
            out.insert(G.compose(psi, phi));
          }
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

// ---- validation of Gr-valued bipresheaves -------------------------------------------

namespace {

const GroupHom* lookup(const std::map<GrMorphism, GroupHom>& table, const GrMorphism& m) {
  auto it = table.find(m);
  return it == table.end() ? nullptr : &it->second;
}

MaybeViolation check_coherence_at(const GrAbBipresheaf& F, const GrMorphism& phi, Elem m) {
  const auto* F1 = lookup(F.first, phi);
  const auto* F2 = lookup(F.second, phi);
  if (!F1 || !F2) return std::nullopt;
  const Elem lhs = F.eta[phi.target](m);
  const Elem rhs = (*F2)(F.eta[phi.source]((*F1)(m)));
  if (lhs == rhs) return std::nullopt;
  const auto& tgt = F.second_objects[phi.target];
  return Violation{"gr-coherence", "", {F.gr.describe(phi), F.first_objects[phi.target].name(m)},
                   "eta_y(m) = " + tgt.name(lhs) + ", F2(phi).eta_x.F1(phi)(m) = " +
                       tgt.name(rhs)};
}

MaybeViolation check_identity_at(const GrAbBipresheaf& F, ObjId x, bool first) {
  const auto id = F.gr.identity(x);
  const auto* h = lookup(first ? F.first : F.second, id);
  if (!h || h->is_identity()) return std::nullopt;
  return Violation{first ? "identity-first" : "identity-second", "",
                   {F.gr.base().object_name(x)},
                   std::string(first ? "F1" : "F2") + "(1_x) is not the identity"};
}

MaybeViolation check_functorial_at(const GrAbBipresheaf& F, const GrMorphism& psi,
                                   const GrMorphism& phi, bool first) {
  const auto chi = F.gr.compose(psi, phi);
  const auto& table = first ? F.first : F.second;
  const auto* Hchi = lookup(table, chi);
  const auto* Hpsi = lookup(table, psi);
  const auto* Hphi = lookup(table, phi);
  if (!Hchi || !Hpsi || !Hphi) return std::nullopt;
  const GroupHom expected = first ? compose(*Hphi, *Hpsi) : compose(*Hpsi, *Hphi);
  if (expected.map() == Hchi->map()) return std::nullopt;
  Elem a = 0;
  while (expected(a) == (*Hchi)(a)) ++a;
  const auto& names = Hchi->source().names();
  return Violation{first ? "functoriality-first" : "functoriality-second", "",
                   {F.gr.describe(psi), F.gr.describe(phi), names[a]},
                   "at " + names[a] + ": F(psi.phi) gives " + Hchi->target().name((*Hchi)(a)) +
                       ", composite of images gives " + expected.target().name(expected(a))};
}

ValidationReport shape_report(const GrAbBipresheaf& F, const std::vector<GrMorphism>& domain) {
  ValidationReport rep;
  const auto& c = F.gr.base();
  const std::size_t n = c.object_count();
  if (F.first_objects.size() != n || F.second_objects.size() != n || F.eta.size() != n) {
    rep.add({"coverage", "", {}, "objects or eta missing for some base object", true});
    return rep;
  }
  for (ObjId x = 0; x < n; ++x) {
    rep.merge(validate_group(F.first_objects[x]), "F1(" + c.object_name(x) + ")");
    rep.merge(validate_group(F.second_objects[x]), "F2(" + c.object_name(x) + ")");
    const std::string where = "eta(" + c.object_name(x) + ")";
    if (!(F.eta[x].source() == F.first_objects[x]) ||
        !(F.eta[x].target() == F.second_objects[x])) {
      rep.add({"connecting-typing", where, {c.object_name(x)}, "eta_x does not run F1(x) -> F2(x)",
               true});
    } else {
      rep.merge(validate_group_hom(F.eta[x]), where);
    }
  }
  for (const auto& phi : domain) {
    const std::string name = F.gr.describe(phi);
    for (bool first : {true, false}) {
      const char* label = first ? "F1" : "F2";
      const auto* h = lookup(first ? F.first : F.second, phi);
      if (!h) {
        rep.add({"coverage", label, {name}, "no map given for this Gr morphism", true});
        continue;
      }
      const auto& src = first ? F.first_objects[phi.target] : F.second_objects[phi.source];
      const auto& tgt = first ? F.first_objects[phi.source] : F.second_objects[phi.target];
      if (!(h->source() == src) || !(h->target() == tgt)) {
        rep.add({"component-typing", label, {name}, "map has the wrong endpoints", true});
        continue;
      }
      rep.merge(validate_group_hom(*h), std::string(label) + "[" + name + "]");
    }
  }
  return rep;
}

}  // namespace

ValidationReport check_gr_coherence(const GrAbBipresheaf& F, std::size_t budget) {
  BudgetMeter meter(budget, "Gr coherence check");
  const auto& c = F.gr.base();
  ValidationReport rep;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (ObjId y = 0; y < c.object_count(); ++y) {
      meter.charge(F.gr.pure_count(x, y, budget));
      F.gr.for_each_pure(x, y, budget, [&](const GrMorphism& phi) {
        if (!lookup(F.first, phi) || !lookup(F.second, phi)) {
          rep.add({"coverage", "", {F.gr.describe(phi)}, "no map given for this Gr morphism",
                   true});
          return true;
        }
        for (Elem m = 0; m < F.first_objects[y].size(); ++m) {
          if (auto v = check_coherence_at(F, phi, m)) rep.add(std::move(*v));
        }
        return true;
      });
    }
  }
  return rep;
}

ValidationReport validate_gr_bipresheaf(const GrAbBipresheaf& F, std::size_t budget) {
  const auto domain = gr_domain(F.gr, budget);
  ValidationReport rep = shape_report(F, domain);
  if (!rep.ok()) return rep;
  const auto& c = F.gr.base();
  const std::size_t n = c.object_count();
  for (ObjId x = 0; x < n; ++x) {
    for (bool first : {true, false}) {
      if (auto v = check_identity_at(F, x, first)) rep.add(std::move(*v));
    }
  }
  BudgetMeter meter(budget, "Gr functoriality check");
  const auto pure = pure_table(F.gr, meter);
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      for (ObjId z = 0; z < n; ++z) {
        for (const auto& phi : pure[x * n + y]) {
          for (const auto& psi : pure[y * n + z]) {
            meter.charge();
            for (bool first : {true, false}) {
              if (auto v = check_functorial_at(F, psi, phi, first)) rep.add(std::move(*v));
            }
          }
        }
      }
    }
  }
  rep.merge(check_gr_coherence(F, budget));
  return rep;
}

std::optional<Violation> replay(const GrAbBipresheaf& F, const Violation& v) {
  const auto& c = F.gr.base();
  try {
    if (v.law == "gr-coherence" && v.witness.size() == 2) {
      const auto phi = F.gr.parse(v.witness[0]);
      auto m = F.first_objects.at(phi.target).find(v.witness[1]);
      return m ? check_coherence_at(F, phi, *m) : std::nullopt;
    }
    if ((v.law == "identity-first" || v.law == "identity-second") && v.witness.size() == 1) {
      auto x = c.find_object(v.witness[0]);
      return x ? check_identity_at(F, *x, v.law == "identity-first") : std::nullopt;
    }
    if ((v.law == "functoriality-first" || v.law == "functoriality-second") &&
        v.witness.size() == 3) {
      return check_functorial_at(F, F.gr.parse(v.witness[0]), F.gr.parse(v.witness[1]),
                                 v.law == "functoriality-first");
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  } catch (const StructuralError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

// ---- psi ------------------------------------------------------------------------

GroupHom psi_first(const ModuleBipresheaf& M, const GrCategory& G, const GrMorphism& phi) {
  G.check_context(phi);
  const auto& src = M.M1.carrier.at(phi.target);
  const auto& tgt = M.M1.carrier.at(phi.source);
  std::vector<Elem> map(src.size(), tgt.zero());
  for (Elem m = 0; m < src.size(); ++m) {
    for (const auto& [f, sum] : phi.components) {
      const Elem restricted = M.M1.carrier.on(f)(m);
      for (const auto& [p, n] : sum) {
        map[m] = tgt.plus(map[m], tgt.multiple(n, M.M1.act(phi.source, restricted, p.r1)));
      }
    }
  }
  return {src, tgt, std::move(map)};
}

GroupHom psi_second(const ModuleBipresheaf& M, const GrCategory& G, const GrMorphism& phi) {
  G.check_context(phi);
  const auto& src = M.M2.carrier.at(phi.source);
  const auto& tgt = M.M2.carrier.at(phi.target);
  std::vector<Elem> map(src.size(), tgt.zero());
  for (Elem m = 0; m < src.size(); ++m) {
    for (const auto& [f, sum] : phi.components) {
      const Elem pushed = M.M2.carrier.on(f)(m);
      for (const auto& [p, n] : sum) {
        map[m] = tgt.plus(map[m], tgt.multiple(n, M.M2.act(phi.target, pushed, p.r2)));
      }
    }
  }
  return {src, tgt, std::move(map)};
}

GrAbBipresheaf psi(const ModuleBipresheaf& M, const GrCategory& G, std::size_t budget) {
  if (!(M.over == G.rings())) {
    ValidationReport rep;
    rep.add({"base-mismatch", "", {}, "module is not over the rings of this Gr", true});
    throw StructuralError("module and Gr category have different ring bipresheaves", rep);
  }
  GrAbBipresheaf F;
  F.gr = G;
  F.first_objects = M.M1.carrier.objects;
  F.second_objects = M.M2.carrier.objects;
  F.eta = M.eta;
  for (const auto& phi : gr_domain(G, budget)) {
    F.first.emplace(phi, psi_first(M, G, phi));
    F.second.emplace(phi, psi_second(M, G, phi));
  }
  return F;
}

// ---- phi ------------------------------------------------------------------------

namespace {

const GroupHom& require(const GrAbBipresheaf& F, bool first, const GrMorphism& m) {
  const auto* h = lookup(first ? F.first : F.second, m);
  if (!h) {
    ValidationReport rep;
    rep.add({"coverage", first ? "F1" : "F2", {F.gr.describe(m)},
             "no map given for this Gr morphism", true});
    throw StructuralError("Gr bipresheaf has no map for " + F.gr.describe(m), rep);
  }
  return *h;
}

}  // namespace

ModuleBipresheaf phi_candidate(const GrAbBipresheaf& F) {
  const auto& c = F.gr.base();
  const auto& R = F.gr.rings();
  const std::size_t n = c.object_count();
  ModuleBipresheaf M;
  M.over = R;
  M.eta = F.eta;
  M.M1.scalars = R.R1;
  M.M1.side = ActionSide::Right;
  M.M1.carrier.base = c;
  M.M1.carrier.variance = Variance::Contravariant;
  M.M1.carrier.objects = F.first_objects;
  M.M2.scalars = R.R2;
  M.M2.side = ActionSide::Left;
  M.M2.carrier.base = c;
  M.M2.carrier.variance = Variance::Covariant;
  M.M2.carrier.objects = F.second_objects;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const TensorPair unit{R.R1.at(c.dom(f)).one(), R.R2.at(c.cod(f)).one()};
    const auto fam = unit_family(c, f, unit);
    M.M1.carrier.morphisms.push_back(require(F, true, fam));
    M.M2.carrier.morphisms.push_back(require(F, false, fam));
  }
  for (ObjId x = 0; x < n; ++x) {
    const MorId id = c.identity(x);
    const auto& R1 = R.R1.at(x);
    const auto& R2 = R.R2.at(x);
    std::vector<Elem> first(F.first_objects[x].size() * R1.size());
    for (Elem r = 0; r < R1.size(); ++r) {
      const auto& h = require(F, true, unit_family(c, id, {r, R2.one()}));
      for (Elem m = 0; m < F.first_objects[x].size(); ++m) first[m * R1.size() + r] = h(m);
    }
    std::vector<Elem> second(F.second_objects[x].size() * R2.size());
    for (Elem s = 0; s < R2.size(); ++s) {
      const auto& h = require(F, false, unit_family(c, id, {R1.one(), s}));
      for (Elem m = 0; m < F.second_objects[x].size(); ++m) second[m * R2.size() + s] = h(m);
    }
    M.M1.action.push_back(std::move(first));
    M.M2.action.push_back(std::move(second));
  }
  return M;
}

PhiResult phi(const GrAbBipresheaf& F) {
  auto M = phi_candidate(F);
  auto rep = validate_bipresheaf(M);
  if (rep.ok()) return M;
  return StructureFailureReport{std::move(M), std::move(rep)};
}

ValidationReport phi_action_laws(const GrAbBipresheaf& F) {
  const auto M = phi_candidate(F);
  ValidationReport rep;
  const auto& c = F.gr.base();
  auto check = [&](const ModuleStructure& S, const char* label) {
    for (ObjId x = 0; x < c.object_count(); ++x) {
      const auto& C = S.carrier.at(x);
      const auto& R = S.scalars.at(x);
      const std::string where = std::string(label) + "/" + c.object_name(x);
      for (Elem m = 0; m < C.size(); ++m) {
        if (S.act(x, m, R.one()) != m) {
          rep.add({"action-unit", where, {C.name(m)},
                   "acting by 1 gives " + C.name(S.act(x, m, R.one()))});
        }
        for (Elem r = 0; r < R.size(); ++r) {
          for (Elem s = 0; s < R.size(); ++s) {
            const Elem l = S.act(x, S.act(x, m, r), s);
            const Elem rr = S.act(x, m, R.times(r, s));
            if (l != rr) {
              rep.add({"action-associativity", where, {C.name(m), R.name(r), R.name(s)},
                       "acting by r then s gives " + C.name(l) + ", acting by rs gives " +
                           C.name(rr)});
            }
          }
        }
      }
    }
  };
  check(M.M1, "M1");
  check(M.M2, "M2");
  return rep;
}

// ---- round trips ----------------------------------------------------------------

namespace {

template <class T>
std::string first_index_mismatch(const std::vector<T>& a, const std::vector<T>& b,
                                 const std::function<std::string(std::size_t)>& label) {
  if (a.size() != b.size()) return "different number of entries";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return label(i);
  }
  return "";
}

std::string module_difference(const ModuleBipresheaf& got, const ModuleBipresheaf& want) {
  const auto& c = want.base();
  auto obj = [&](const std::string& what) {
    return [&c, what](std::size_t i) { return what + " at " + c.object_name(i); };
  };
  auto mor = [&](const std::string& what) {
    return [&c, what](std::size_t i) { return what + " at " + c.morphism_name(i); };
  };
  const std::vector<std::pair<std::string, std::string>> checks = {
      {"M1 carrier", first_index_mismatch(got.M1.carrier.objects, want.M1.carrier.objects,
                                          obj("M1 object"))},
      {"M1 maps", first_index_mismatch(got.M1.carrier.morphisms, want.M1.carrier.morphisms,
                                       mor("M1 structure map"))},
      {"M1 action", first_index_mismatch(got.M1.action, want.M1.action, obj("M1 action"))},
      {"M2 carrier", first_index_mismatch(got.M2.carrier.objects, want.M2.carrier.objects,
                                          obj("M2 object"))},
      {"M2 maps", first_index_mismatch(got.M2.carrier.morphisms, want.M2.carrier.morphisms,
                                       mor("M2 structure map"))},
      {"M2 action", first_index_mismatch(got.M2.action, want.M2.action, obj("M2 action"))},
      {"eta", first_index_mismatch(got.eta, want.eta, obj("eta"))},
  };
  for (const auto& [_, diff] : checks) {
    if (!diff.empty()) return diff;
  }
  if (!(got == want)) return "module bipresheaves differ outside their tables";
  return "";
}

void run_backward(const GrAbBipresheaf& F, std::size_t budget, RoundtripReport& out) {
  auto result = phi(F);
  if (auto* failure = std::get_if<StructureFailureReport>(&result)) {
    const auto& v = failure->report.violations().front();
    out.backward_discrepancy = "phi does not produce a module bipresheaf: " + v.law +
                               (v.where.empty() ? "" : " at " + v.where);
    return;
  }
  const auto back = psi(std::get<ModuleBipresheaf>(result), F.gr, budget);
  if (back.first_objects != F.first_objects || back.second_objects != F.second_objects) {
    out.backward_discrepancy = "groups on objects differ";
    return;
  }
  if (back.eta != F.eta) {
    out.backward_discrepancy = "eta differs";
    return;
  }
  for (const auto& [m, h] : F.first) {
    ++out.morphisms_compared;
    const auto* got = lookup(back.first, m);
    if (!got || !(*got == h)) {
      out.backward_discrepancy = "F1 differs on " + F.gr.describe(m);
      return;
    }
    const auto* want2 = lookup(F.second, m);
    const auto* got2 = lookup(back.second, m);
    if (!want2 || !got2 || !(*got2 == *want2)) {
      out.backward_discrepancy = "F2 differs on " + F.gr.describe(m);
      return;
    }
  }
  out.backward_exact = true;
}

}  // namespace

RoundtripReport roundtrip_check(const ModuleBipresheaf& M, const GrCategory& G,
                                std::size_t budget) {
  RoundtripReport out;
  out.sum_id = check_sum_id(G, SumIdMode::ExcludeZero, budget);
  out.vacuous = !out.sum_id.pass;
  const auto F = psi(M, G, budget);
  out.forward_checked = true;
  auto result = phi(F);
  if (auto* failure = std::get_if<StructureFailureReport>(&result)) {
    const auto& v = failure->report.violations().front();
    out.forward_discrepancy = "phi does not produce a module bipresheaf: " + v.law +
                              (v.where.empty() ? "" : " at " + v.where);
  } else {
    out.forward_discrepancy = module_difference(std::get<ModuleBipresheaf>(result), M);
    out.forward_exact = out.forward_discrepancy.empty();
  }
  run_backward(F, budget, out);
  return out;
}

RoundtripReport roundtrip_gr(const GrAbBipresheaf& F, std::size_t budget) {
  RoundtripReport out;
  out.sum_id = check_sum_id(F.gr, SumIdMode::ExcludeZero, budget);
  out.vacuous = !out.sum_id.pass;
  run_backward(F, budget, out);
  return out;
}

// ---- morphisms ------------------------------------------------------------------

ValidationReport validate_gr_morphism(const GrBipresheafMorphism& m) {
  ValidationReport rep;
  const auto& S = m.source;
  const auto& T = m.target;
  const auto& c = S.gr.base();
  const std::size_t n = c.object_count();
  if (!(S.gr.rings() == T.gr.rings())) {
    rep.add({"base-mismatch", "", {}, "source and target live over different Gr categories",
             true});
    return rep;
  }
  if (m.phi1.size() != n || m.phi2.size() != n) {
    rep.add({"coverage", "", {}, "component missing for some object", true});
    return rep;
  }
  for (ObjId x = 0; x < n; ++x) {
    const auto& p1 = m.phi1[x];
    const auto& p2 = m.phi2[x];
    if (!(p1.source() == S.first_objects[x]) || !(p1.target() == T.first_objects[x]) ||
        !(p2.source() == S.second_objects[x]) || !(p2.target() == T.second_objects[x])) {
      rep.add({"component-typing", c.object_name(x), {c.object_name(x)},
               "component does not run between the matching groups", true});
      continue;
    }
    rep.merge(validate_group_hom(p1), "phi1(" + c.object_name(x) + ")");
    rep.merge(validate_group_hom(p2), "phi2(" + c.object_name(x) + ")");
  }
  if (!rep.ok()) return rep;
  for (const auto& [g, S1] : S.first) {
    const auto* T1 = lookup(T.first, g);
    const auto* S2 = lookup(S.second, g);
    const auto* T2 = lookup(T.second, g);
    if (!T1 || !S2 || !T2) {
      rep.add({"coverage", "", {S.gr.describe(g)}, "endpoints disagree on the Gr domain", true});
      continue;
    }
    for (Elem a = 0; a < S1.source().size(); ++a) {
      if (m.phi1[g.source](S1(a)) != (*T1)(m.phi1[g.target](a))) {
        rep.add({"naturality-first", "", {S.gr.describe(g), S1.source().name(a)},
                 "phi1_x.F1(g) and F1'(g).phi1_y disagree"});
      }
    }
    for (Elem a = 0; a < S2->source().size(); ++a) {
      if (m.phi2[g.target]((*S2)(a)) != (*T2)(m.phi2[g.source](a))) {
        rep.add({"naturality-second", "", {S.gr.describe(g), S2->source().name(a)},
                 "phi2_y.F2(g) and F2'(g).phi2_x disagree"});
      }
    }
  }
  for (ObjId x = 0; x < n; ++x) {
    for (Elem a = 0; a < S.first_objects[x].size(); ++a) {
      if (m.phi2[x](S.eta[x](a)) != T.eta[x](m.phi1[x](a))) {
        rep.add({"eta-compatibility", "", {c.object_name(x), S.first_objects[x].name(a)},
                 "phi2_x.eta_x and eta'_x.phi1_x disagree"});
      }
    }
  }
  return rep;
}

GrBipresheafMorphism psi_on_morphism(const ModuleMorphism& h, const GrCategory& G,
                                     std::size_t budget) {
  return {psi(h.source, G, budget), psi(h.target, G, budget), h.phi1, h.phi2};
}

std::variant<ModuleMorphism, MorphismFailureReport> phi_on_morphism(
    const GrBipresheafMorphism& m) {
  ModuleMorphism cand{phi_candidate(m.source), phi_candidate(m.target), m.phi1, m.phi2};
  ValidationReport rep;
  rep.merge(validate_bipresheaf(cand.source), "source");
  rep.merge(validate_bipresheaf(cand.target), "target");
  if (rep.ok()) rep = validate_morphism(cand);
  if (rep.ok()) return cand;
  return MorphismFailureReport{std::move(cand), std::move(rep)};
}

// ---- enumeration ----------------------------------------------------------------

std::vector<ModuleBipresheaf> enumerate_module_bipresheaves(const RingBipresheaf& R,
                                                            const std::vector<FinAbGroup>& groups,
                                                            std::size_t budget) {
  BudgetMeter meter(budget, "module bipresheaf enumeration");
  const auto& c = R.base();
  const std::size_t n = c.object_count();
  std::vector<ModuleBipresheaf> out;
  if (groups.empty()) return out;

  // Every assignment object -> group, lexicographic in group order.
  std::vector<std::vector<FinAbGroup>> assignments;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    meter.charge();
    std::vector<FinAbGroup> a;
    for (std::size_t i : pick) a.push_back(groups[i]);
    assignments.push_back(std::move(a));
    std::size_t i = n;
    while (i > 0 && ++pick[i - 1] == groups.size()) pick[--i] = 0;
    if (i == 0) break;
  }

  for (const auto& c1 : assignments) {
    const auto firsts = enumerate_module_structures(R.R1, c1, ActionSide::Right, meter);
    if (firsts.empty()) continue;
    for (const auto& c2 : assignments) {
      const auto seconds = enumerate_module_structures(R.R2, c2, ActionSide::Left, meter);
      std::vector<std::vector<GroupHom>> etas(n);
      for (ObjId x = 0; x < n; ++x) etas[x] = enumerate_group_homs(c1[x], c2[x], budget);
      for (const auto& M1 : firsts) {
        for (const auto& M2 : seconds) {
          ModuleBipresheaf M{R, M1, M2, std::vector<GroupHom>(n)};
          std::function<void(ObjId)> dfs = [&](ObjId x) {
            if (x == n) {
              meter.charge();
              if (validate_bipresheaf(M).ok()) out.push_back(M);
              return;
            }
            for (const auto& e : etas[x]) {
              M.eta[x] = e;
              dfs(x + 1);
            }
          };
          dfs(0);
        }
      }
    }
  }
  return out;
}

}  // namespace bipre
