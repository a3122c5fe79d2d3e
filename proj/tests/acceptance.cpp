// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <filesystem>
#include <functional>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include "bipre/cli.hpp"
#include "support.hpp"

namespace bipre {
namespace {

namespace fs = std::filesystem;

/// Collects the first few failures of a criterion.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    ++total_;
    if (cond) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  [[nodiscard]] bool ok() const { return failed_ == 0; }
  [[nodiscard]] std::string summary() const {
    std::ostringstream s;
    s << total_ << " checks";
    if (failed_ != 0) {
      s << ", " << failed_ << " failed";
      for (const auto& f : failures_) s << "\n    " << f;
    }
    return s.str();
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string join(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? ", " : "") + x;
  return out + "}";
}

std::vector<std::string> corpus() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(BIPRE_FIXTURE_DIR)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path().filename());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
void expect_labelled(Check& c, const std::string& key, const T& value, const ValidationReport& rep,
                     const std::map<std::string, std::set<std::string>>& labels) {
  const auto it = labels.find(key);
  const std::set<std::string> want = it == labels.end() ? std::set<std::string>{} : it->second;
  c.expect(rep.laws() == want, key + ": got " + join(rep.laws()) + ", labelled " + join(want));
  for (const auto& v : rep.violations()) {
    c.expect(replay(value, v) == v, key + ": witness of " + v.law + " does not replay");
  }
}

// Everything not listed here must validate cleanly.
const std::map<std::string, std::set<std::string>> kLabels = {
    {"corrupted.json/monoid_bad_unit", {"right-unit"}},
    {"corrupted.json/monoid_bad_assoc", {"associativity"}},
    {"corrupted.json/no_inverse", {"add-inverse"}},
    {"corrupted.json/bad_hom", {"preserves-one"}},
    {"corrupted.json/bad_functoriality", {"composition"}},
    {"corrupted.json/bad_action_naturality", {"action-naturality"}},
    // Over the trivial ring a nonzero carrier cannot satisfy both the unit
    // law and 0 . m = 0, so this one necessarily breaks a group of laws.
    {"corrupted.json/trivial_ring_module",
     {"identity-equals-zero", "action-zero-scalar", "action-additive-scalar"}},
    {"arrow_theta_swap.json/arrow_theta_swap", {"coherence"}},
};

Check axiom_suites() {
  Check c;
  std::size_t labelled_seen = 0;
  for (const auto& file : corpus()) {
    const auto m = test::load_model(file);
    auto key = [&](const std::string& name) {
      labelled_seen += kLabels.count(file + "/" + name);
      return file + "/" + name;
    };
    for (const auto& [n, v] : m.categories) expect_labelled(c, key(n), v, validate_category(v), kLabels);
    for (const auto& [n, v] : m.rings) expect_labelled(c, key(n), v, validate_ring(v), kLabels);
    for (const auto& [n, v] : m.groups) expect_labelled(c, key(n), v, validate_group(v), kLabels);
    for (const auto& [n, v] : m.ring_functors) expect_labelled(c, key(n), v, validate_functor(v), kLabels);
    for (const auto& [n, v] : m.ab_functors) expect_labelled(c, key(n), v, validate_functor(v), kLabels);
    for (const auto& [n, v] : m.ring_bipresheaves)
      expect_labelled(c, key(n), v, validate_bipresheaf(v), kLabels);
    for (const auto& [n, v] : m.ab_bipresheaves)
      expect_labelled(c, key(n), v, validate_bipresheaf(v), kLabels);
    for (const auto& [n, v] : m.modules) expect_labelled(c, key(n), v, validate_bipresheaf(v), kLabels);
    for (const auto& [n, v] : m.gr_bipresheaves)
      expect_labelled(c, key(n), v, validate_gr_bipresheaf(v), kLabels);
    for (const auto& [n, v] : m.universes) {
      c.expect(validate_universe(v).ok(), key(n) + ": universe invalid");
    }
  }
  c.expect(labelled_seen == kLabels.size(), "some labelled declaration is missing from the corpus");
  return c;
}

struct Base {
  std::string file, name;
};

const std::vector<Base> kValidRings = {
    {"terminal_z4.json", "terminal_z4"},         {"arrow_z2_trivial.json", "arrow_z2_trivial"},
    {"arrow_z2_identity.json", "arrow_z2_identity"}, {"arrow_z4_reduction.json", "arrow_z4_reduction"},
    {"squares.json", "commuting_square_z2"},     {"squares.json", "parallel_square_z2"},
};

GrCategory gr_of(const Base& b) {
  return GrCategory::build(test::load_model(b.file).ring_bipresheaves.at(b.name));
}

Check gr_category_laws() {
  Check c;
  for (const auto& b : kValidRings) {
    const auto rep = check_gr_category_laws(gr_of(b));
    c.expect(rep.ok(), b.name + ": " + std::to_string(rep.size()) + " violations");
  }
  return c;
}

Check well_definedness() {
  Check c;
  for (const auto& b : kValidRings) {
    const auto rep = check_well_definedness(gr_of(b));
    c.expect(rep.ok(), b.name + ": " + std::to_string(rep.size()) + " violations");
  }
  const auto G = GrCategory::build(
      test::load_model("arrow_theta_swap.json").ring_bipresheaves.at("arrow_theta_swap"));
  const auto rep = check_well_definedness(G);
  c.expect(!rep.ok(), "theta swap: no violation found");
  for (const auto& v : rep.violations()) c.expect(replay(G, v) == v, "theta swap: replay differs");
  return c;
}

Check sum_id() {
  Check c;
  for (const auto* name : {"terminal_z4", "arrow_z2_trivial"}) {
    const auto G = gr_of({std::string(name) + ".json", name});
    for (auto mode : {SumIdMode::ExcludeZero, SumIdMode::IncludeZero}) {
      c.expect(check_sum_id(G, mode).pass, std::string(name) + " fails sum-id");
    }
  }
  const auto G = gr_of({"arrow_z2_identity.json", "arrow_z2_identity"});
  const auto rep = check_sum_id(G, SumIdMode::ExcludeZero);
  c.expect(!rep.pass, "arrow_z2_identity passes sum-id");
  bool found = false;
  for (const auto& w : rep.witnesses) found |= G.describe(w) == "x->y {f: (1,0)}";
  c.expect(found, "no witness x->y {f: (1,0)}");
  for (const auto& w : rep.witnesses) c.expect(sum_id_fails(G, w), G.describe(w) + " does not fail");
  for (const auto& b : kValidRings) {
    const auto H = gr_of(b);
    const auto& R = H.rings();
    bool nontrivial = false;
    for (ObjId x = 0; x < R.base().object_count(); ++x) nontrivial |= R.R2.at(x).size() > 1;
    if (!nontrivial) continue;
    const auto z = check_sum_id(H, SumIdMode::IncludeZero);
    bool empty_witness = false;
    for (const auto& m : z.witnesses) empty_witness |= m.components.empty();
    c.expect(!z.pass && empty_witness, b.name + ": include-zero has no empty-sum witness");
  }
  return c;
}

struct ModuleBase {
  Base base;
  std::vector<FinAbGroup> groups;
};

std::vector<ModuleBase> sum_id_bases() {
  const std::vector<FinAbGroup> small = {FinAbGroup::zero_group(), FinAbGroup::cyclic(2)};
  std::vector<ModuleBase> out;
  for (const auto& b : kValidRings) {
    if (!check_sum_id(gr_of(b), SumIdMode::ExcludeZero).pass) continue;
    auto groups = small;
    if (b.name == "terminal_z4") groups.push_back(FinAbGroup::cyclic(4));
    out.push_back({b, groups});
  }
  return out;
}

Check psi_validity(std::size_t& modules_seen) {
  Check c;
  const auto bases = sum_id_bases();
  c.expect(bases.size() >= 2, "fewer than two sum-id bases");
  for (const auto& [b, groups] : bases) {
    const auto G = gr_of(b);
    for (const auto& M : enumerate_module_bipresheaves(G.rings(), groups)) {
      ++modules_seen;
      const auto F = psi(M, G);
      c.expect(validate_gr_bipresheaf(F).ok(), b.name + ": psi output not functorial");
      c.expect(check_gr_coherence(F).ok(), b.name + ": psi output incoherent");
    }
  }
  const auto model = test::load_model("arrow_z2_identity.json");
  const auto G = GrCategory::build(model.ring_bipresheaves.at("arrow_z2_identity"));
  const auto F = psi(model.modules.at("arrow_z2_both"), G);
  const auto rep = check_gr_coherence(F);
  c.expect(!rep.ok(), "non-sum-id base: coherence holds");
  for (const auto& v : rep.violations()) c.expect(replay(F, v) == v, "coherence replay differs");
  return c;
}

Check round_trips() {
  Check c;
  for (const auto& [b, groups] : sum_id_bases()) {
    const auto G = gr_of(b);
    for (const auto& M : enumerate_module_bipresheaves(G.rings(), groups)) {
      const auto rt = roundtrip_check(M, G);
      c.expect(rt.ok(), b.name + ": " + rt.forward_discrepancy + rt.backward_discrepancy);
      c.expect(phi_action_laws(psi(M, G)).ok(), b.name + ": action laws fail on psi(M)");
    }
  }
  for (const auto& file : corpus()) {
    const auto m = test::load_model(file);
    for (const auto& [n, M] : m.modules) {
      if (!validate_bipresheaf(M).ok()) continue;
      const auto G = GrCategory::build(M.over);
      if (!check_sum_id(G, SumIdMode::ExcludeZero).pass) continue;
      c.expect(roundtrip_check(M, G).ok(), file + "/" + n + ": round trip inexact");
    }
    for (const auto& [n, F] : m.gr_bipresheaves) {
      if (!std::holds_alternative<ModuleBipresheaf>(phi(F))) continue;
      c.expect(phi_action_laws(F).ok(), file + "/" + n + ": action laws fail");
      c.expect(roundtrip_gr(F).backward_exact, file + "/" + n + ": psi(phi(F)) != F");
    }
  }
  return c;
}

Check trivial_collapse() {
  Check c;
  const auto model = test::load_model("terminal_z4_modules.json");
  const auto out = phi(model.gr_bipresheaves.at("terminal_collapse"));
  const auto* failure = std::get_if<StructureFailureReport>(&out);
  c.expect(failure != nullptr, "phi succeeded");
  if (failure == nullptr) return c;
  bool seen = false;
  for (const auto& v : failure->report.violations()) {
    if (v.law != "identity-equals-zero") continue;
    seen = true;
    c.expect(replay(failure->candidate, v) == v, "identity-equals-zero does not replay");
  }
  c.expect(seen, "no identity-equals-zero violation");
  return c;
}

Check audit() {
  Check c;
  const auto u = test::load_model("universes.json").universes.at("arrow_order_le_2");
  const auto cat = UniverseCatalog::enumerate(u);
  const auto a = find_nonabelian_witness(cat, 1);
  c.expect(a.exhaustive, "not exhaustive: " + a.incomplete_reason);
  for (unsigned jobs : {1u, 4u}) {
    const auto b = find_nonabelian_witness(cat, jobs);
    c.expect(a.findings == b.findings && a.observations == b.observations &&
                 a.checked == b.checked && a.exhaustive == b.exhaustive,
             "run with " + std::to_string(jobs) + " workers differs");
  }
  for (const auto& f : a.findings) c.expect(replay(cat, f) == f, "finding does not replay");
  // A universe that does produce findings, so replay is actually exercised.
  const auto closure = UniverseCatalog::enumerate(
      test::load_model("universes.json").universes.at("arrow_z2_only"));
  const auto r = find_nonabelian_witness(closure, 2);
  c.expect(!r.findings.empty(), "closure universe has no findings");
  for (const auto& f : r.findings) c.expect(replay(closure, f) == f, "finding does not replay");
  return c;
}

int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err) {
  std::ostringstream o, e;
  const int status = cli::run(args, o, e);
  out = o.str();
  err = e.str();
  return status;
}

Check parser() {
  Check c;
  for (const auto& file : corpus()) {
    const auto doc = test::load_document(file);
    const auto text = spec::serialize(doc);
    const auto again = spec::parse_spec(text);
    c.expect(again.ok() && *again.document == doc, file + ": reparse differs");
    c.expect(again.ok() && spec::serialize(*again.document) == text, file + ": reserialize differs");
  }
  const std::regex located(R"((^|\n)[^\n:]+\.json:\d+:\d+: error: )");
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(test::fixture_path("malformed"))) {
    ++n;
    std::string out, err;
    const int status = run_cli({"--spec", e.path().string(), "validate", "Z4"}, out, err);
    const auto name = e.path().filename().string();
    c.expect(status == cli::kInputError, name + ": status " + std::to_string(status));
    c.expect(out.empty(), name + ": produced output");
    c.expect(std::regex_search(err, located), name + ": error not located: " + err);
  }
  c.expect(n >= 10, "malformed suite too small");
  return c;
}

}  // namespace
}  // namespace bipre

int main() {
  using namespace bipre;
  std::size_t modules = 0;
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"AC1 axiom suites match their labels", axiom_suites},
      {"AC2 Gr category laws", gr_category_laws},
      {"AC3 well-definedness", well_definedness},
      {"AC4 sum-id", sum_id},
      {"AC5 psi validity", [&] { return psi_validity(modules); }},
      {"AC6 phi action laws and round trips", round_trips},
      {"AC7 trivial-ring collapse", trivial_collapse},
      {"AC8 audit determinism and replay", audit},
      {"AC9 parser round trip and malformed inputs", parser},
  };
  int failed = 0;
  for (const auto& [title, fn] : criteria) {
    Check c;
    std::string detail;
    try {
      c = fn();
      detail = c.summary();
    } catch (const std::exception& e) {
      c.expect(false, e.what());
      detail = c.summary();
    }
    if (title.rfind("AC5", 0) == 0) detail += ", " + std::to_string(modules) + " modules";
    std::cout << (c.ok() ? "[PASS] " : "[FAIL] ") << title << " (" << detail << ")\n";
    failed += !c.ok();
  }
  return failed == 0 ? 0 : 1;
}
