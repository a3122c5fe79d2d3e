#include "bipre/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bipre/model.hpp"
#include "bipre/reports_io.hpp"

namespace bipre::cli {

namespace {

using io::Json;

// Bad input of any kind: unknown names, invalid prerequisites, budgets.
struct InputError {
  std::string message;
};

struct Options {
  std::string spec_file;
  std::string format = "text";
  std::size_t budget = kDefaultBudget;
  unsigned jobs = 1;
  std::string command;
  std::string name;
  std::string over;
  std::string universe;
  bool include_zero = false;
};

class Session {
 public:
  Session(const Options& opt, const spec::SpecDocument& doc, const spec::Model& model)
      : opt_(opt), doc_(doc), model_(model) {}

  int dispatch(std::ostream& out) {
    const std::string& c = opt_.command;
    if (c == "validate") return validate(out);
    if (c == "gr") return gr(out);
    if (c == "sum-id") return sum_id(out);
    if (c == "well-defined") return well_defined(out);
    if (c == "laws") return laws(out);
    if (c == "psi") return psi_cmd(out);
    if (c == "phi") return phi_cmd(out);
    if (c == "roundtrip") return roundtrip(out);
    if (c == "audit") return audit(out);
    throw InputError{"unknown command \"" + c + "\""};
  }

 private:
  const Options& opt_;
  const spec::SpecDocument& doc_;
  const spec::Model& model_;

  [[nodiscard]] bool json() const { return opt_.format == "json"; }

  int emit(std::ostream& out, const std::string& target, int status, Json result,
           const std::string& text) const {
    if (json()) {
      Json doc = Json::object();
      doc["command"] = opt_.command;
      doc["target"] = target;
      doc["status"] = status;
      doc["result"] = std::move(result);
      out << doc.dump(2) << "\n";
    } else {
      out << opt_.command << " " << target << ": " << text;
    }
    return status;
  }

  template <class T>
  const T& find(const std::map<std::string, T>& m, const std::string& name,
                const std::string& what) const {
    auto it = m.find(name);
    if (it != m.end()) return it->second;
    const std::string sec = doc_.section_of(name);
    if (sec.empty()) throw InputError{"unknown name \"" + name + "\""};
    throw InputError{"\"" + name + "\" is declared in " + sec + ", expected " + what};
  }

  static void require(const ValidationReport& rep, const std::string& name,
                      const std::string& what) {
    if (rep.ok()) return;
    throw InputError{name + " is not a valid " + what + " (run `validate " + name +
                     "`):\n" + io::to_text(rep)};
  }

  static ValidationReport check(const RingBipresheaf& R) {
    ValidationReport rep;
    rep.merge(validate_category(R.base()), "base");
    rep.merge(validate_bipresheaf(R));
    return rep;
  }

  static ValidationReport check(const ModuleBipresheaf& M) {
    ValidationReport rep;
    rep.merge(validate_category(M.base()), "base");
    rep.merge(validate_bipresheaf(M));
    return rep;
  }

  const RingBipresheaf& ring_bipresheaf(const std::string& name) const {
    return find(model_.ring_bipresheaves, name, "a ring bipresheaf");
  }

  GrCategory valid_gr(const std::string& name) const {
    const RingBipresheaf& R = ring_bipresheaf(name);
    require(check(R), name, "ring bipresheaf");
    return GrCategory::build(R);
  }

  int validate(std::ostream& out) {
    const std::string& name = opt_.name;
    const std::string sec = doc_.section_of(name);
    ValidationReport rep;
    if (sec == "categories") {
      rep = validate_category(model_.categories.at(name));
    } else if (sec == "rings") {
      rep = validate_ring(model_.rings.at(name));
    } else if (sec == "groups") {
      rep = validate_group(model_.groups.at(name));
    } else if (sec == "functors") {
      if (auto it = model_.ring_functors.find(name); it != model_.ring_functors.end()) {
        rep.merge(validate_category(it->second.base), "base");
        rep.merge(validate_functor(it->second));
      } else {
        const auto& F = model_.ab_functors.at(name);
        rep.merge(validate_category(F.base), "base");
        rep.merge(validate_functor(F));
      }
    } else if (sec == "bipresheaves") {
      if (auto it = model_.ring_bipresheaves.find(name); it != model_.ring_bipresheaves.end()) {
        rep = check(it->second);
      } else {
        const auto& B = model_.ab_bipresheaves.at(name);
        rep.merge(validate_category(B.base()), "base");
        rep.merge(validate_bipresheaf(B));
      }
    } else if (sec == "modules") {
      rep = check(model_.modules.at(name));
    } else if (sec == "gr_bipresheaves") {
      rep = validate_gr_bipresheaf(model_.gr_bipresheaves.at(name), opt_.budget);
    } else if (sec == "universes") {
      rep = validate_universe(model_.universes.at(name));
    } else {
      throw InputError{"unknown name \"" + name + "\""};
    }
    const int status = rep.ok() ? kPass : kFindings;
    Json result = io::to_json(rep);
    result["kind"] = sec;
    std::string text = rep.ok() ? "ok\n"
                                : std::to_string(rep.size()) + " violation" +
                                      (rep.size() == 1 ? "" : "s") + "\n" + io::to_text(rep);
    return emit(out, name, status, result, text);
  }

  int gr(std::ostream& out) {
    const GrCategory G = valid_gr(opt_.name);
    return emit(out, opt_.name, kPass, io::describe_gr(G, opt_.budget),
                "\n" + io::describe_gr_text(G, opt_.budget));
  }

  int sum_id(std::ostream& out) {
    const GrCategory G = valid_gr(opt_.name);
    const auto mode = opt_.include_zero ? SumIdMode::IncludeZero : SumIdMode::ExcludeZero;
    const SumIdReport r = check_sum_id(G, mode, opt_.budget);
    return emit(out, opt_.name, r.pass ? kPass : kFindings, io::to_json(r, G), io::to_text(r, G));
  }

  int well_defined(std::ostream& out) {
    // Coherence failures are allowed here: they are what this check probes.
    const RingBipresheaf& R = ring_bipresheaf(opt_.name);
    const ValidationReport pre = check(R);
    ValidationReport blocking;
    bool coherent = true;
    for (const auto& v : pre.violations()) {
      if (v.law == "coherence") {
        coherent = false;
      } else {
        blocking.add(v);
      }
    }
    require(blocking, opt_.name, "ring bipresheaf");
    const GrCategory G = GrCategory::build(R);
    const ValidationReport rep = check_well_definedness(G, opt_.budget);
    Json result = io::to_json(rep);
    result["coherent"] = coherent;
    std::string text = rep.ok() ? "ok" : std::to_string(rep.size()) + " violations";
    if (!coherent) text += " (the ring bipresheaf is not coherent)";
    text += "\n" + io::to_text(rep);
    return emit(out, opt_.name, rep.ok() ? kPass : kFindings, result, text);
  }

  int laws(std::ostream& out) {
    const GrCategory G = valid_gr(opt_.name);
    const ValidationReport rep = check_gr_category_laws(G, opt_.budget);
    // Informational only: tensor-mode equality is not claimed to be a congruence.
    const ValidationReport tensor = check_tensor_congruence(G, opt_.budget);
    Json result = io::to_json(rep);
    result["tensor_congruence"] = io::to_json(tensor);
    std::string text = rep.ok() ? "ok\n" : std::to_string(rep.size()) + " violations\n";
    text += io::to_text(rep);
    text += "tensor-mode congruence: " +
            (tensor.ok() ? std::string("holds") : std::to_string(tensor.size()) + " failures") +
            "\n" + io::to_text(tensor);
    return emit(out, opt_.name, rep.ok() ? kPass : kFindings, result, text);
  }

  const ModuleBipresheaf& module_over(const GrCategory& G) const {
    const ModuleBipresheaf& M = find(model_.modules, opt_.name, "a module bipresheaf");
    require(check(M), opt_.name, "module bipresheaf");
    if (!(M.over == G.rings())) {
      throw InputError{"module \"" + opt_.name + "\" is not over \"" + opt_.over + "\""};
    }
    return M;
  }

  int psi_cmd(std::ostream& out) {
    if (opt_.over.empty()) throw InputError{"psi needs --over <bipresheaf>"};
    const GrCategory G = valid_gr(opt_.over);
    const ModuleBipresheaf& M = module_over(G);
    const GrAbBipresheaf F = psi(M, G, opt_.budget);
    const ValidationReport rep = validate_gr_bipresheaf(F, opt_.budget);
    const SumIdReport s = check_sum_id(G, SumIdMode::ExcludeZero, opt_.budget);
    Json result = io::to_json(rep);
    result["families"] = F.first.size();
    result["sum_id"] = s.pass;
    std::string text = rep.ok() ? "ok" : std::to_string(rep.size()) + " violations";
    text += ", " + std::to_string(F.first.size()) + " Gr morphisms, over a " +
            (s.pass ? "sum-id" : "non-sum-id") + " bipresheaf\n" + io::to_text(rep);
    return emit(out, opt_.name, rep.ok() ? kPass : kFindings, result, text);
  }

  int phi_cmd(std::ostream& out) {
    const GrAbBipresheaf& F = find(model_.gr_bipresheaves, opt_.name, "a gr bipresheaf");
    require(validate_gr_bipresheaf(F, opt_.budget), opt_.name, "gr bipresheaf");
    const PhiResult r = phi(F);
    if (const auto* M = std::get_if<ModuleBipresheaf>(&r)) {
      Json result = Json::object();
      result["module"] = io::to_json(*M);
      return emit(out, opt_.name, kPass, result, "module bipresheaf\n" + io::to_text(*M));
    }
    const auto& failure = std::get<StructureFailureReport>(r);
    Json result = Json::object();
    result["structure_failure"] = io::to_json(failure.report);
    return emit(out, opt_.name, kFindings, result,
                "no module bipresheaf, " + std::to_string(failure.report.size()) +
                    " violations\n" + io::to_text(failure.report));
  }

  int roundtrip(std::ostream& out) {
    if (opt_.over.empty()) {
      const GrAbBipresheaf& F = find(model_.gr_bipresheaves, opt_.name,
                                     "a gr bipresheaf (or pass --over for a module)");
      require(validate_gr_bipresheaf(F, opt_.budget), opt_.name, "gr bipresheaf");
      const RoundtripReport r = roundtrip_gr(F, opt_.budget);
      return emit(out, opt_.name, r.ok() ? kPass : kFindings, io::to_json(r, F.gr),
                  io::to_text(r, F.gr));
    }
    const GrCategory G = valid_gr(opt_.over);
    const ModuleBipresheaf& M = module_over(G);
    const RoundtripReport r = roundtrip_check(M, G, opt_.budget);
    return emit(out, opt_.name, r.ok() ? kPass : kFindings, io::to_json(r, G), io::to_text(r, G));
  }

  int audit(std::ostream& out) {
    const std::string& name = opt_.universe.empty() ? opt_.name : opt_.universe;
    if (name.empty()) throw InputError{"audit needs --universe <name>"};
    const Universe& u = find(model_.universes, name, "a universe");
    require(validate_universe(u), name, "universe");
    const WitnessReport r = find_nonabelian_witness(u, opt_.jobs);
    const int status = !r.exhaustive ? kInputError : r.findings.empty() ? kPass : kFindings;
    return emit(out, name, status, io::to_json(r), io::to_text(r));
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void report_errors(std::ostream& err, const Options& opt,
                   const std::vector<spec::ParseError>& errors) {
  if (opt.format == "json") {
    Json doc = Json::object();
    doc["status"] = kInputError;
    Json list = Json::array();
    for (const auto& e : errors) {
      Json item = Json::object();
      item["file"] = opt.spec_file;
      item["line"] = e.where.line;
      item["column"] = e.where.column;
      item["message"] = e.message;
      list.push_back(item);
    }
    doc["errors"] = list;
    err << doc.dump(2) << "\n";
  } else {
    err << spec::format_errors(errors, opt.spec_file);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exhaustive checks for finite bipresheaves and their Grothendieck construction",
               "bipre"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--spec", opt.spec_file, "Fixture file")->required();
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", opt.budget, "Maximum items enumerated per check")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", opt.jobs, "Worker threads for the audit")->check(CLI::Range(1u, 256u));

  auto named = [&](const char* cmd, const char* help) {
    auto* sub = app.add_subcommand(cmd, help);
    sub->add_option("name", opt.name, "Declaration name")->required();
    return sub;
  };
  named("validate", "Check the laws of any declaration");
  named("gr", "Describe the Grothendieck construction of a ring bipresheaf");
  named("sum-id", "Check the sum-id condition")
      ->add_flag("--include-zero", opt.include_zero, "Also check the empty family");
  named("well-defined", "Check that composition respects the tensor relations");
  named("laws", "Check unit and associativity laws of the Grothendieck construction");
  named("psi", "Turn a module bipresheaf into a bipresheaf over Gr and check it")
      ->add_option("--over", opt.over, "Ring bipresheaf")
      ->required();
  named("phi", "Turn a bipresheaf over Gr back into a module bipresheaf");
  named("roundtrip", "Compare phi(psi(M)) with M and psi(phi(F)) with F")
      ->add_option("--over", opt.over, "Ring bipresheaf");
  app.add_subcommand("audit", "Search a finite universe for abelian-category failures")
      ->add_option("--universe", opt.universe, "Universe name")
      ->required();
  app.add_subcommand("normalize", "Print the fixture file in canonical form");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "bipre: " << e.what() << "\n";
    return kInputError;
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    const std::string text = read_file(opt.spec_file);
    const spec::SpecParse parsed = spec::parse_spec(text);
    if (!parsed.ok()) {
      report_errors(err, opt, parsed.errors);
      return kInputError;
    }
    const spec::SpecDocument& doc = *parsed.document;
    if (opt.command == "normalize") {
      out << spec::serialize(doc);
      return kPass;
    }
    const spec::ModelBuild built = spec::build_model(doc, opt.budget);
    if (!built.ok()) {
      report_errors(err, opt, built.errors);
      return kInputError;
    }
    // Reports are buffered so that a failure midway prints nothing.
    std::ostringstream buffer;
    const int status = Session(opt, doc, built.model).dispatch(buffer);
    out << buffer.str();
    return status;
  } catch (const InputError& e) {
    err << "bipre: " << e.message << (e.message.empty() || e.message.back() == '\n' ? "" : "\n");
  } catch (const ResourceError& e) {
    err << "bipre: budget exceeded: " << e.what() << "\n";
  } catch (const ReportedError& e) {
    err << "bipre: " << e.what() << "\n" << io::to_text(e.report());
  } catch (const std::exception& e) {
    err << "bipre: internal error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace bipre::cli
