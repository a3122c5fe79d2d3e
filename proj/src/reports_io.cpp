#include "bipre/reports_io.hpp"

#include <sstream>

namespace bipre::io {

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

Json map_json(const std::vector<std::string>& src, const std::vector<std::string>& tgt,
              const std::vector<Elem>& map) {
  Json out = Json::object();
  for (Elem a = 0; a < map.size(); ++a) out[src[a]] = tgt[map[a]];
  return out;
}

Json side_json(const ModuleStructure& M) {
  const FinCategory& c = M.carrier.base;
  Json out = Json::object();
  Json objects = Json::object();
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const FinAbGroup& A = M.carrier.at(x);
    const FinCommRing& R = M.scalars.at(x);
    Json obj = Json::object();
    obj["group"] = to_json(A);
    Json action = Json::object();
    for (Elem m = 0; m < A.size(); ++m) {
      Json row = Json::object();
      for (Elem r = 0; r < R.size(); ++r) row[R.name(r)] = A.name(M.act(x, m, r));
      action[A.name(m)] = row;
    }
    obj["action"] = action;
    objects[c.object_name(x)] = obj;
  }
  out["objects"] = objects;
  Json maps = Json::object();
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const GroupHom& h = M.carrier.on(f);
    maps[c.morphism_name(f)] = map_json(h.source().names(), h.target().names(), h.map());
  }
  out["maps"] = maps;
  return out;
}

void side_text(std::ostringstream& out, const std::string& label, const ModuleStructure& M) {
  const FinCategory& c = M.carrier.base;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const FinAbGroup& A = M.carrier.at(x);
    const FinCommRing& R = M.scalars.at(x);
    out << "  " << label << "(" << c.object_name(x) << ") = {" << join(A.names(), ", ") << "}\n";
    for (Elem m = 0; m < A.size(); ++m) {
      std::vector<std::string> cells;
      for (Elem r = 0; r < R.size(); ++r) cells.push_back(R.name(r) + ":" + A.name(M.act(x, m, r)));
      out << "    " << A.name(m) << " acted on by " << join(cells, " ") << "\n";
    }
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    const GroupHom& h = M.carrier.on(f);
    out << "  " << label << "(" << c.morphism_name(f)
        << ") = " << describe_map(h.source().names(), h.target().names(), h.map()) << "\n";
  }
}

}  // namespace

Json to_json(const Violation& v) {
  Json out = Json::object();
  out["law"] = v.law;
  out["where"] = v.where;
  out["witness"] = v.witness;
  out["detail"] = v.detail;
  out["structural"] = v.structural;
  return out;
}

Json to_json(const ValidationReport& r) {
  Json out = Json::object();
  out["ok"] = r.ok();
  out["violation_count"] = r.size();
  Json vs = Json::array();
  for (const auto& v : r.violations()) vs.push_back(to_json(v));
  out["violations"] = vs;
  return out;
}

Json to_json(const SumIdReport& r, const GrCategory& G) {
  Json out = Json::object();
  out["mode"] = to_string(r.mode);
  out["pass"] = r.pass;
  out["families_checked"] = r.families_checked;
  out["failures"] = r.failures;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json item = Json::object();
    item["family"] = G.describe(w);
    const auto& R2 = G.rings().R2.at(w.target);
    item["sum"] = R2.name(sum_of_derived(G, w));
    item["expected"] = R2.name(R2.one());
    ws.push_back(item);
  }
  out["witnesses"] = ws;
  out["witnesses_truncated"] = r.failures > r.witnesses.size();
  return out;
}

Json to_json(const RoundtripReport& r, const GrCategory& G) {
  Json out = Json::object();
  out["ok"] = r.ok();
  out["sum_id"] = to_json(r.sum_id, G);
  out["vacuous"] = r.vacuous;
  out["forward_checked"] = r.forward_checked;
  out["forward_exact"] = r.forward_exact;
  out["forward_discrepancy"] = r.forward_discrepancy;
  out["backward_exact"] = r.backward_exact;
  out["backward_discrepancy"] = r.backward_discrepancy;
  out["morphisms_compared"] = r.morphisms_compared;
  return out;
}

Json to_json(const Finding& f) {
  Json out = Json::object();
  out["axiom"] = f.axiom;
  out["arrow"] = f.arrow;
  out["subject"] = f.subject;
  out["detail"] = f.detail;
  return out;
}

Json to_json(const WitnessReport& r) {
  Json out = Json::object();
  out["objects"] = r.objects;
  out["morphisms"] = r.morphisms;
  Json checked = Json::object();
  for (const auto& [k, v] : r.checked) checked[k] = v;
  out["checked"] = checked;
  Json fs = Json::array();
  for (const auto& f : r.findings) fs.push_back(to_json(f));
  out["findings"] = fs;
  Json os = Json::array();
  for (const auto& f : r.observations) os.push_back(to_json(f));
  out["observations"] = os;
  out["exhaustive"] = r.exhaustive;
  out["incomplete_reason"] = r.incomplete_reason;
  out["limitation"] = WitnessReport::kLimitation;
  return out;
}

Json to_json(const FinAbGroup& g) {
  Json out = Json::object();
  out["elements"] = g.names();
  out["zero"] = g.name(g.zero());
  return out;
}

Json to_json(const ModuleBipresheaf& M) {
  Json out = Json::object();
  out["first"] = side_json(M.M1);
  out["second"] = side_json(M.M2);
  Json eta = Json::object();
  const FinCategory& c = M.base();
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const GroupHom& h = M.eta[x];
    eta[c.object_name(x)] = map_json(h.source().names(), h.target().names(), h.map());
  }
  out["connecting"] = eta;
  return out;
}

Json describe_gr(const GrCategory& G, std::size_t budget) {
  const FinCategory& c = G.base();
  Json out = Json::object();
  Json objects = Json::array();
  for (ObjId x = 0; x < c.object_count(); ++x) objects.push_back(c.object_name(x));
  out["objects"] = objects;
  Json homs = Json::array();
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (ObjId y = 0; y < c.object_count(); ++y) {
      const auto& hom = c.hom(x, y);
      if (hom.empty()) continue;
      Json h = Json::object();
      h["source"] = c.object_name(x);
      h["target"] = c.object_name(y);
      std::vector<std::string> names;
      for (MorId f : hom) names.push_back(c.morphism_name(f));
      h["base_morphisms"] = names;
      h["pairs_per_slot"] = G.rings().R1.at(x).size() * G.rings().R2.at(y).size();
      const std::size_t n = G.pure_count(x, y, budget);
      if (n > budget) {
        h["pure_families"] = nullptr;
      } else {
        h["pure_families"] = n;
      }
      homs.push_back(h);
    }
  }
  out["hom_sets"] = homs;
  Json ids = Json::object();
  for (ObjId x = 0; x < c.object_count(); ++x) ids[c.object_name(x)] = G.describe(G.identity(x));
  out["identities"] = ids;
  Json fact = Json::object();
  for (MorId h = 0; h < c.morphism_count(); ++h) {
    Json list = Json::array();
    for (const auto& [f, g] : G.factorizations_of(h)) {
      list.push_back(Json::array({c.morphism_name(g), c.morphism_name(f)}));
    }
    fact[c.morphism_name(h)] = list;
  }
  out["factorizations"] = fact;
  return out;
}

std::string to_text(const Violation& v) {
  std::string out = v.law;
  if (!v.where.empty()) out += " at " + v.where;
  if (!v.witness.empty()) out += " [" + join(v.witness, ", ") + "]";
  if (!v.detail.empty()) out += ": " + v.detail;
  if (v.structural) out += " (structural)";
  return out;
}

std::string to_text(const ValidationReport& r, const std::string& indent) {
  std::ostringstream out;
  for (const auto& v : r.violations()) out << indent << to_text(v) << "\n";
  return out.str();
}

std::string to_text(const SumIdReport& r, const GrCategory& G) {
  std::ostringstream out;
  out << (r.pass ? "pass" : "fail") << ", " << r.families_checked << " families checked ("
      << to_string(r.mode) << ")";
  if (!r.pass) out << ", " << r.failures << " failing";
  out << "\n";
  for (const auto& w : r.witnesses) {
    const auto& R2 = G.rings().R2.at(w.target);
    out << "  witness " << G.describe(w) << " sums to " << R2.name(sum_of_derived(G, w))
        << ", not " << R2.name(R2.one()) << "\n";
  }
  if (r.failures > r.witnesses.size()) {
    out << "  ... " << (r.failures - r.witnesses.size()) << " more not listed\n";
  }
  return out.str();
}

std::string to_text(const RoundtripReport& r, const GrCategory& G) {
  std::ostringstream out;
  out << (r.ok() ? "pass" : "fail") << "\n";
  out << "  sum-id: " << to_text(r.sum_id, G);
  if (r.vacuous) out << "  sum-id fails, so the round trip is not expected to hold\n";
  if (r.forward_checked) {
    out << "  phi(psi(M)) = M: " << (r.forward_exact ? "exact" : "differs");
    if (!r.forward_discrepancy.empty()) out << " (" << r.forward_discrepancy << ")";
    out << "\n";
  }
  out << "  psi(phi(F)) = F: " << (r.backward_exact ? "exact" : "differs");
  if (!r.backward_discrepancy.empty()) out << " (" << r.backward_discrepancy << ")";
  out << ", " << r.morphisms_compared << " morphisms compared\n";
  return out.str();
}

std::string to_text(const WitnessReport& r) {
  std::ostringstream out;
  out << r.objects << " bipresheaves, " << r.morphisms << " morphisms"
      << (r.exhaustive ? ", exhaustive" : ", NOT exhaustive") << "\n";
  if (!r.exhaustive) out << "  stopped: " << r.incomplete_reason << "\n";
  for (const auto& [k, v] : r.checked) out << "  checked " << k << ": " << v << "\n";
  if (r.findings.empty()) out << "  no findings\n";
  for (const auto& f : r.findings) {
    out << "  finding " << f.axiom << " on #" << f.arrow << ": " << f.subject;
    if (!f.detail.empty()) out << " (" << f.detail << ")";
    out << "\n";
  }
  for (const auto& f : r.observations) {
    out << "  observation " << f.axiom << " on #" << f.arrow << ": " << f.subject;
    if (!f.detail.empty()) out << " (" << f.detail << ")";
    out << "\n";
  }
  out << "  note: " << WitnessReport::kLimitation << "\n";
  return out.str();
}

std::string to_text(const ModuleBipresheaf& M) {
  std::ostringstream out;
  side_text(out, "M1", M.M1);
  side_text(out, "M2", M.M2);
  const FinCategory& c = M.base();
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const GroupHom& h = M.eta[x];
    out << "  eta(" << c.object_name(x)
        << ") = " << describe_map(h.source().names(), h.target().names(), h.map()) << "\n";
  }
  return out.str();
}

std::string describe_gr_text(const GrCategory& G, std::size_t budget) {
  const FinCategory& c = G.base();
  std::ostringstream out;
  std::vector<std::string> objs;
  for (ObjId x = 0; x < c.object_count(); ++x) objs.push_back(c.object_name(x));
  out << "objects: " << join(objs, ", ") << "\n";
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (ObjId y = 0; y < c.object_count(); ++y) {
      const auto& hom = c.hom(x, y);
      if (hom.empty()) continue;
      std::vector<std::string> names;
      for (MorId f : hom) names.push_back(c.morphism_name(f));
      const std::size_t n = G.pure_count(x, y, budget);
      out << "  " << c.object_name(x) << " -> " << c.object_name(y) << ": over {"
          << join(names, ", ") << "}, "
          << (n > budget ? "more than " + std::to_string(budget) : std::to_string(n))
          << " pure families\n";
    }
  }
  for (ObjId x = 0; x < c.object_count(); ++x) {
    out << "  identity " << G.describe(G.identity(x)) << "\n";
  }
  for (MorId h = 0; h < c.morphism_count(); ++h) {
    std::vector<std::string> fs;
    for (const auto& [f, g] : G.factorizations_of(h)) {
      fs.push_back(c.morphism_name(g) + "." + c.morphism_name(f));
    }
    out << "  " << c.morphism_name(h) << " = " << join(fs, " = ") << "\n";
  }
  return out.str();
}

}  // namespace bipre::io
