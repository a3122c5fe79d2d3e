#include "bipre/spec_format.hpp"

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bipre::spec {

using json::Value;
using Kind = json::Value::Kind;

const char* to_string(ValueKind k) { return k == ValueKind::Ring ? "ring" : "group"; }

bool SpecDocument::empty() const {
  return categories.empty() && rings.empty() && groups.empty() && functors.empty() &&
         bipresheaves.empty() && modules.empty() && gr_bipresheaves.empty() &&
         universes.empty();
}

std::string SpecDocument::section_of(const std::string& name) const {
  if (categories.count(name)) return "categories";
  if (rings.count(name)) return "rings";
  if (groups.count(name)) return "groups";
  if (functors.count(name)) return "functors";
  if (bipresheaves.count(name)) return "bipresheaves";
  if (modules.count(name)) return "modules";
  if (gr_bipresheaves.count(name)) return "gr_bipresheaves";
  if (universes.count(name)) return "universes";
  return {};
}

namespace {

class Reader {
 public:
  std::vector<ParseError> errors;

  void err(Location where, std::string message) {
    errors.push_back({where, std::move(message)});
  }

  bool expect(const Value& v, Kind k, std::string_view what) {
    if (v.is(k)) return true;
    err(v.where, std::string(what) + ": expected " + json::kind_name(k) + ", found " +
                     json::kind_name(v.kind));
    return false;
  }

  void allow_keys(const Value& obj, std::initializer_list<std::string_view> allowed,
                  std::string_view what) {
    for (const auto& m : obj.members) {
      if (std::find(allowed.begin(), allowed.end(), m.key) == allowed.end()) {
        err(m.key_where, std::string(what) + ": unknown key \"" + m.key + "\"");
      }
    }
  }

  const Value* need(const Value& obj, std::string_view key, std::string_view what) {
    const Value* v = obj.get(key);
    if (v == nullptr) {
      err(obj.where, std::string(what) + ": missing key \"" + std::string(key) + "\"");
    }
    return v;
  }

  std::optional<std::string> str(const Value& v, std::string_view what) {
    if (!expect(v, Kind::String, what)) return std::nullopt;
    return v.text;
  }

  std::optional<Ref> ref(const Value& v, std::string_view what) {
    auto s = str(v, what);
    if (!s) return std::nullopt;
    return Ref{*s, v.where};
  }

  std::optional<std::size_t> count(const Value& v, std::string_view what) {
    if (!v.is(Kind::Integer) || v.integer < 1) {
      err(v.where, std::string(what) + ": expected a positive integer");
      return std::nullopt;
    }
    return static_cast<std::size_t>(v.integer);
  }

  std::optional<std::vector<std::string>> strings(const Value& v, std::string_view what) {
    if (!expect(v, Kind::Array, what)) return std::nullopt;
    std::vector<std::string> out;
    bool ok = true;
    for (const auto& item : v.items) {
      if (auto s = str(item, what)) {
        out.push_back(*s);
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::vector<Ref>> refs(const Value& v, std::string_view what) {
    if (!expect(v, Kind::Array, what)) return std::nullopt;
    std::vector<Ref> out;
    bool ok = true;
    for (const auto& item : v.items) {
      if (auto r = ref(item, what)) {
        out.push_back(*r);
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::map<std::string, std::string>> string_map(const Value& v,
                                                               std::string_view what) {
    if (!expect(v, Kind::Object, what)) return std::nullopt;
    std::map<std::string, std::string> out;
    bool ok = true;
    for (const auto& m : v.members) {
      if (auto s = str(m.value, what)) {
        out[m.key] = *s;
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::map<std::string, Ref>> ref_map(const Value& v, std::string_view what) {
    if (!expect(v, Kind::Object, what)) return std::nullopt;
    std::map<std::string, Ref> out;
    bool ok = true;
    for (const auto& m : v.members) {
      if (auto r = ref(m.value, what)) {
        out[m.key] = *r;
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::vector<std::vector<std::string>>> square(const Value& v,
                                                              std::string_view what) {
    if (!expect(v, Kind::Array, what)) return std::nullopt;
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
    for (const auto& row : v.items) {
      if (auto r = strings(row, what)) {
        rows.push_back(*r);
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return rows;
  }

  std::optional<MapDecl> map_decl(const Value& v, std::string_view what) {
    if (v.is(Kind::String)) {
      if (v.text != "identity" && v.text != "zero") {
        err(v.where, std::string(what) + ": unknown map shorthand \"" + v.text +
                         "\" (use \"identity\", \"zero\" or an element table)");
        return std::nullopt;
      }
      return MapDecl{v.text};
    }
    if (v.is(Kind::Object)) {
      auto m = string_map(v, what);
      if (!m) return std::nullopt;
      return MapDecl{*m};
    }
    err(v.where, std::string(what) + ": expected a map (element table or shorthand)");
    return std::nullopt;
  }

  std::optional<ConnectingDecl> connecting(const Value& v, std::string_view what) {
    if (v.is(Kind::String)) {
      auto m = map_decl(v, what);
      if (!m) return std::nullopt;
      return ConnectingDecl{*m};
    }
    if (!expect(v, Kind::Object, what)) return std::nullopt;
    std::map<std::string, MapDecl> per;
    bool ok = true;
    for (const auto& m : v.members) {
      if (auto d = map_decl(m.value, what)) {
        per[m.key] = *d;
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return ConnectingDecl{per};
  }

  std::optional<Variance> variance(const Value& v) {
    auto s = str(v, "variance");
    if (!s) return std::nullopt;
    if (*s == "contravariant") return Variance::Contravariant;
    if (*s == "covariant") return Variance::Covariant;
    err(v.where, "variance: expected \"contravariant\" or \"covariant\"");
    return std::nullopt;
  }

  std::optional<ValueKind> value_kind(const Value& v) {
    auto s = str(v, "kind");
    if (!s) return std::nullopt;
    if (*s == "ring") return ValueKind::Ring;
    if (*s == "group" || *s == "ab") return ValueKind::Group;
    err(v.where, "kind: expected \"ring\" or \"group\"");
    return std::nullopt;
  }

  // Exactly one of the listed keys must be present.
  const json::Value::Member* one_of(const Value& obj, std::initializer_list<std::string_view> keys,
                                    std::string_view what) {
    const json::Value::Member* found = nullptr;
    for (const auto& m : obj.members) {
      if (std::find(keys.begin(), keys.end(), m.key) == keys.end()) continue;
      if (found != nullptr) {
        err(m.key_where, std::string(what) + ": \"" + found->key + "\" and \"" + m.key +
                             "\" are mutually exclusive");
        return nullptr;
      }
      found = &m;
    }
    if (found == nullptr) {
      std::string list;
      for (auto k : keys) list += (list.empty() ? "" : ", ") + std::string(k);
      err(obj.where, std::string(what) + ": expected one of " + list);
    }
    return found;
  }

  // ----- sections -----

  std::optional<CategoryDecl> category(const Value& v) {
    if (!expect(v, Kind::Object, "category")) return std::nullopt;
    allow_keys(v, {"objects", "morphisms", "identities", "compose"}, "category");
    CategoryDecl d;
    d.where = v.where;
    bool ok = true;
    if (const Value* o = need(v, "objects", "category")) {
      if (auto s = strings(*o, "category objects")) {
        d.data.objects = *s;
      } else {
        ok = false;
      }
    } else {
      ok = false;
    }
    if (const Value* m = v.get("morphisms")) {
      if (expect(*m, Kind::Object, "category morphisms")) {
        for (const auto& mem : m->members) {
          auto ends = strings(mem.value, "morphism endpoints");
          if (!ends || ends->size() != 2) {
            if (ends) err(mem.value.where, "morphism endpoints: expected [domain, codomain]");
            ok = false;
            continue;
          }
          d.data.morphisms.push_back({mem.key, (*ends)[0], (*ends)[1]});
        }
      } else {
        ok = false;
      }
    }
    if (const Value* ids = v.get("identities")) {
      if (expect(*ids, Kind::Object, "category identities")) {
        for (const auto& mem : ids->members) {
          if (auto s = str(mem.value, "identity")) {
            d.data.identities.emplace_back(mem.key, *s);
          } else {
            ok = false;
          }
        }
      } else {
        ok = false;
      }
    }
    if (const Value* c = v.get("compose")) {
      if (expect(*c, Kind::Array, "category compose")) {
        for (const auto& row : c->items) {
          auto t = strings(row, "composite");
          if (!t || t->size() != 3) {
            if (t) err(row.where, "composite: expected [second, first, result]");
            ok = false;
            continue;
          }
          d.data.compositions.push_back({(*t)[0], (*t)[1], (*t)[2]});
        }
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return d;
  }

  std::optional<RingDecl> ring(const Value& v) {
    if (!expect(v, Kind::Object, "ring")) return std::nullopt;
    allow_keys(v, {"modular", "trivial", "product", "table"}, "ring");
    const auto* m = one_of(v, {"modular", "trivial", "product", "table"}, "ring");
    if (m == nullptr) return std::nullopt;
    RingDecl d;
    d.where = v.where;
    if (m->key == "modular") {
      auto n = count(m->value, "ring modulus");
      if (!n) return std::nullopt;
      d.body = RingSpec::Modular{*n};
    } else if (m->key == "trivial") {
      if (!m->value.is(Kind::Bool) || !m->value.boolean) {
        err(m->value.where, "ring: \"trivial\" must be true");
        return std::nullopt;
      }
      d.body = RingSpec::Trivial{};
    } else if (m->key == "product") {
      auto f = refs(m->value, "ring product");
      if (!f) return std::nullopt;
      d.body = ProductDecl{*f};
    } else {
      const Value& t = m->value;
      if (!expect(t, Kind::Object, "ring table")) return std::nullopt;
      allow_keys(t, {"elements", "zero", "one", "add", "mul"}, "ring table");
      RingSpec::Table table;
      const Value* e = need(t, "elements", "ring table");
      const Value* z = need(t, "zero", "ring table");
      const Value* o = need(t, "one", "ring table");
      const Value* a = need(t, "add", "ring table");
      const Value* mu = need(t, "mul", "ring table");
      if (!e || !z || !o || !a || !mu) return std::nullopt;
      auto es = strings(*e, "ring elements");
      auto zs = str(*z, "ring zero");
      auto os = str(*o, "ring one");
      auto as = square(*a, "ring add");
      auto ms = square(*mu, "ring mul");
      if (!es || !zs || !os || !as || !ms) return std::nullopt;
      table.elements = *es;
      table.zero = *zs;
      table.one = *os;
      table.add = *as;
      table.mul = *ms;
      d.body = table;
    }
    return d;
  }

  std::optional<GroupDecl> group(const Value& v) {
    if (!expect(v, Kind::Object, "group")) return std::nullopt;
    allow_keys(v, {"cyclic", "zero", "product", "additive", "table"}, "group");
    const auto* m = one_of(v, {"cyclic", "zero", "product", "additive", "table"}, "group");
    if (m == nullptr) return std::nullopt;
    GroupDecl d;
    d.where = v.where;
    if (m->key == "cyclic") {
      auto n = count(m->value, "group order");
      if (!n) return std::nullopt;
      d.body = GroupDecl::Cyclic{*n};
    } else if (m->key == "zero") {
      if (!m->value.is(Kind::Bool) || !m->value.boolean) {
        err(m->value.where, "group: \"zero\" must be true");
        return std::nullopt;
      }
      d.body = GroupDecl::Zero{};
    } else if (m->key == "product") {
      auto f = refs(m->value, "group product");
      if (!f) return std::nullopt;
      d.body = ProductDecl{*f};
    } else if (m->key == "additive") {
      auto r = ref(m->value, "group additive");
      if (!r) return std::nullopt;
      d.body = GroupDecl::Additive{*r};
    } else {
      const Value& t = m->value;
      if (!expect(t, Kind::Object, "group table")) return std::nullopt;
      allow_keys(t, {"elements", "zero", "add"}, "group table");
      const Value* e = need(t, "elements", "group table");
      const Value* z = need(t, "zero", "group table");
      const Value* a = need(t, "add", "group table");
      if (!e || !z || !a) return std::nullopt;
      auto es = strings(*e, "group elements");
      auto zs = str(*z, "group zero");
      auto as = square(*a, "group add");
      if (!es || !zs || !as) return std::nullopt;
      d.body = GroupDecl::Table{*es, *zs, *as};
    }
    return d;
  }

  std::optional<FunctorDecl> functor(const Value& v) {
    if (!expect(v, Kind::Object, "functor")) return std::nullopt;
    allow_keys(v, {"base", "variance", "kind", "constant", "objects", "morphisms"}, "functor");
    FunctorDecl d;
    d.where = v.where;
    bool ok = true;
    const Value* b = need(v, "base", "functor");
    const Value* var = need(v, "variance", "functor");
    const Value* k = need(v, "kind", "functor");
    if (!b || !var || !k) return std::nullopt;
    if (auto r = ref(*b, "functor base")) d.base = *r; else ok = false;
    if (auto x = variance(*var)) d.variance = *x; else ok = false;
    if (auto x = value_kind(*k)) d.kind = *x; else ok = false;
    const Value* c = v.get("constant");
    const Value* objs = v.get("objects");
    const Value* mors = v.get("morphisms");
    if (c != nullptr) {
      if (objs || mors) {
        err(c->where, "functor: \"constant\" excludes \"objects\" and \"morphisms\"");
        return std::nullopt;
      }
      if (auto r = ref(*c, "functor constant")) d.constant = *r; else ok = false;
    } else {
      if (!objs) {
        err(v.where, "functor: needs \"constant\" or \"objects\"");
        return std::nullopt;
      }
      if (auto r = ref_map(*objs, "functor objects")) d.objects = *r; else ok = false;
      if (mors) {
        if (mors->is(Kind::String)) {
          if (auto m = map_decl(*mors, "functor morphisms")) d.all_morphisms = *m; else ok = false;
        } else if (expect(*mors, Kind::Object, "functor morphisms")) {
          for (const auto& m : mors->members) {
            if (auto md = map_decl(m.value, "functor map")) {
              d.morphisms[m.key] = *md;
            } else {
              ok = false;
            }
          }
        } else {
          ok = false;
        }
      }
    }
    if (!ok) return std::nullopt;
    return d;
  }

  std::optional<BipresheafDecl> bipresheaf(const Value& v) {
    if (!expect(v, Kind::Object, "bipresheaf")) return std::nullopt;
    allow_keys(v, {"kind", "first", "second", "connecting"}, "bipresheaf");
    const Value* k = need(v, "kind", "bipresheaf");
    const Value* f = need(v, "first", "bipresheaf");
    const Value* s = need(v, "second", "bipresheaf");
    const Value* c = need(v, "connecting", "bipresheaf");
    if (!k || !f || !s || !c) return std::nullopt;
    BipresheafDecl d;
    d.where = v.where;
    auto kind = value_kind(*k);
    auto first = ref(*f, "bipresheaf first");
    auto second = ref(*s, "bipresheaf second");
    auto conn = connecting(*c, "bipresheaf connecting");
    if (!kind || !first || !second || !conn) return std::nullopt;
    d.kind = *kind;
    d.first = *first;
    d.second = *second;
    d.connecting = *conn;
    return d;
  }

  std::optional<ActionDecl> action(const Value& v) {
    if (v.is(Kind::String)) {
      if (v.text != "multiplication" && v.text != "zero") {
        err(v.where, "action: expected \"multiplication\", \"zero\" or a per-object table");
        return std::nullopt;
      }
      return ActionDecl{v.text};
    }
    if (!expect(v, Kind::Object, "action")) return std::nullopt;
    std::map<std::string, std::map<std::string, std::map<std::string, std::string>>> table;
    bool ok = true;
    for (const auto& obj : v.members) {
      if (!expect(obj.value, Kind::Object, "action table")) {
        ok = false;
        continue;
      }
      auto& per = table[obj.key];
      for (const auto& elem : obj.value.members) {
        if (auto row = string_map(elem.value, "action row")) {
          per[elem.key] = *row;
        } else {
          ok = false;
        }
      }
    }
    if (!ok) return std::nullopt;
    return ActionDecl{table};
  }

  std::optional<ModuleSideDecl> module_side(const Value& v, std::string_view what) {
    if (!expect(v, Kind::Object, what)) return std::nullopt;
    allow_keys(v, {"carrier", "action"}, what);
    const Value* c = need(v, "carrier", what);
    const Value* a = need(v, "action", what);
    if (!c || !a) return std::nullopt;
    auto carrier = ref(*c, "module carrier");
    auto act = action(*a);
    if (!carrier || !act) return std::nullopt;
    return ModuleSideDecl{*carrier, *act};
  }

  std::optional<ModuleDecl> module(const Value& v) {
    if (!expect(v, Kind::Object, "module")) return std::nullopt;
    allow_keys(v, {"over", "first", "second", "connecting"}, "module");
    const Value* o = need(v, "over", "module");
    const Value* f = need(v, "first", "module");
    const Value* s = need(v, "second", "module");
    const Value* c = need(v, "connecting", "module");
    if (!o || !f || !s || !c) return std::nullopt;
    auto over = ref(*o, "module over");
    auto first = module_side(*f, "module first");
    auto second = module_side(*s, "module second");
    auto conn = connecting(*c, "module connecting");
    if (!over || !first || !second || !conn) return std::nullopt;
    ModuleDecl d;
    d.where = v.where;
    d.over = *over;
    d.first = *first;
    d.second = *second;
    d.connecting = *conn;
    return d;
  }

  std::optional<std::vector<GrMapEntry>> gr_entries(const Value& v, std::string_view what) {
    if (!expect(v, Kind::Array, what)) return std::nullopt;
    std::vector<GrMapEntry> out;
    bool ok = true;
    for (const auto& item : v.items) {
      if (!expect(item, Kind::Object, what)) {
        ok = false;
        continue;
      }
      allow_keys(item, {"family", "map"}, what);
      const Value* fam = need(item, "family", what);
      const Value* map = need(item, "map", what);
      if (!fam || !map) {
        ok = false;
        continue;
      }
      auto f = str(*fam, "family");
      auto m = map_decl(*map, "family map");
      if (!f || !m) {
        ok = false;
        continue;
      }
      out.push_back({*f, *m});
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::string> gr_default(const Value& v, std::string_view what) {
    auto s = str(v, what);
    if (!s) return std::nullopt;
    if (*s != "zero" && *s != "identity") {
      err(v.where, std::string(what) + ": expected \"zero\" or \"identity\"");
      return std::nullopt;
    }
    return s;
  }

  std::optional<GrBipresheafDecl> gr_bipresheaf(const Value& v) {
    if (!expect(v, Kind::Object, "gr bipresheaf")) return std::nullopt;
    allow_keys(v,
               {"over", "from_module", "first_objects", "second_objects", "connecting",
                "first_default", "second_default", "first", "second"},
               "gr bipresheaf");
    const Value* o = need(v, "over", "gr bipresheaf");
    if (!o) return std::nullopt;
    GrBipresheafDecl d;
    d.where = v.where;
    bool ok = true;
    if (auto r = ref(*o, "gr bipresheaf over")) d.over = *r; else ok = false;
    if (const Value* fm = v.get("from_module")) {
      for (const auto& m : v.members) {
        if (m.key != "over" && m.key != "from_module") {
          err(m.key_where, "gr bipresheaf: \"" + m.key + "\" cannot be combined with \"from_module\"");
          ok = false;
        }
      }
      if (auto r = ref(*fm, "gr bipresheaf from_module")) d.from_module = *r; else ok = false;
      if (!ok) return std::nullopt;
      return d;
    }
    const Value* fo = need(v, "first_objects", "gr bipresheaf");
    const Value* so = need(v, "second_objects", "gr bipresheaf");
    const Value* c = need(v, "connecting", "gr bipresheaf");
    if (!fo || !so || !c) return std::nullopt;
    if (auto r = ref_map(*fo, "first_objects")) d.first_objects = *r; else ok = false;
    if (auto r = ref_map(*so, "second_objects")) d.second_objects = *r; else ok = false;
    if (auto r = connecting(*c, "gr bipresheaf connecting")) d.connecting = *r; else ok = false;
    if (const Value* x = v.get("first_default")) {
      if (auto s = gr_default(*x, "first_default")) d.first_default = *s; else ok = false;
    }
    if (const Value* x = v.get("second_default")) {
      if (auto s = gr_default(*x, "second_default")) d.second_default = *s; else ok = false;
    }
    if (const Value* x = v.get("first")) {
      if (auto e = gr_entries(*x, "first")) d.first = *e; else ok = false;
    }
    if (const Value* x = v.get("second")) {
      if (auto e = gr_entries(*x, "second")) d.second = *e; else ok = false;
    }
    if (!ok) return std::nullopt;
    return d;
  }

  std::optional<UniverseDecl> universe(const Value& v) {
    if (!expect(v, Kind::Object, "universe")) return std::nullopt;
    allow_keys(v, {"base", "groups", "budget"}, "universe");
    const Value* b = need(v, "base", "universe");
    const Value* g = need(v, "groups", "universe");
    if (!b || !g) return std::nullopt;
    UniverseDecl d;
    d.where = v.where;
    auto base = ref(*b, "universe base");
    auto groups = refs(*g, "universe groups");
    if (!base || !groups) return std::nullopt;
    d.base = *base;
    d.groups = *groups;
    if (const Value* bu = v.get("budget")) {
      auto n = count(*bu, "universe budget");
      if (!n) return std::nullopt;
      d.budget = *n;
    }
    return d;
  }
};

template <class Decl, class Fn>
void read_section(Reader& r, const Value& root, const char* key, std::map<std::string, Decl>& out,
                  std::map<std::string, std::pair<std::string, Location>>& names, Fn&& fn) {
  const Value* sec = root.get(key);
  if (sec == nullptr) return;
  if (!r.expect(*sec, Kind::Object, key)) return;
  for (const auto& m : sec->members) {
    auto [it, fresh] = names.try_emplace(m.key, key, m.key_where);
    if (!fresh) {
      r.err(m.key_where, "duplicate name \"" + m.key + "\" (already declared in " +
                             it->second.first + " at " + json::to_string(it->second.second) +
                             ")");
      continue;
    }
    if (auto d = fn(m.value)) {
      d->where = m.key_where;
      out.emplace(m.key, std::move(*d));
    }
  }
}

class RefChecker {
 public:
  RefChecker(const SpecDocument& names, const SpecDocument& doc, Reader& r)
      : names_(names), doc_(doc), r_(r) {}

  void check(const Ref& ref, std::initializer_list<std::string_view> sections,
             std::string_view role) {
    const std::string sec = names_.section_of(ref.value);
    if (sec.empty()) {
      if (!dangling_.count(ref.value)) {
        dangling_.insert(ref.value);
        r_.err(ref.where, "unresolved reference \"" + ref.value + "\" (" + std::string(role) + ")");
      }
      return;
    }
    if (std::find(sections.begin(), sections.end(), sec) == sections.end()) {
      r_.err(ref.where, "\"" + ref.value + "\" is declared in " + sec + ", but " +
                            std::string(role) + " must name one of: " + join(sections));
    }
  }

  void functor_kind(const Ref& ref, ValueKind want, std::string_view role) {
    auto it = doc_.functors.find(ref.value);
    if (it != doc_.functors.end() && it->second.kind != want) {
      r_.err(ref.where, std::string(role) + " \"" + ref.value + "\" is a " +
                            to_string(it->second.kind) + " functor, expected " + to_string(want));
    }
  }

  void bipresheaf_kind(const Ref& ref, ValueKind want, std::string_view role) {
    auto it = doc_.bipresheaves.find(ref.value);
    if (it != doc_.bipresheaves.end() && it->second.kind != want) {
      r_.err(ref.where, std::string(role) + " \"" + ref.value + "\" is a " +
                            to_string(it->second.kind) + " bipresheaf, expected " +
                            to_string(want));
    }
  }

 private:
  static std::string join(std::initializer_list<std::string_view> xs) {
    std::string out;
    for (auto x : xs) out += (out.empty() ? "" : ", ") + std::string(x);
    return out;
  }

  const SpecDocument& names_;
  const SpecDocument& doc_;
  Reader& r_;
  std::set<std::string> dangling_;
};

// `names` also holds placeholders for declarations that failed to parse, so
// they still resolve; kinds are only compared against real declarations.
void check_references(const SpecDocument& names, const SpecDocument& doc, Reader& r) {
  RefChecker c(names, doc, r);
  for (const auto& [name, d] : doc.rings) {
    if (auto* p = std::get_if<ProductDecl>(&d.body)) {
      for (const auto& f : p->factors) c.check(f, {"rings"}, "ring factor");
    }
  }
  for (const auto& [name, d] : doc.groups) {
    if (auto* p = std::get_if<ProductDecl>(&d.body)) {
      for (const auto& f : p->factors) c.check(f, {"groups"}, "group factor");
    }
    if (auto* a = std::get_if<GroupDecl::Additive>(&d.body)) c.check(a->ring, {"rings"}, "additive ring");
  }
  for (const auto& [name, d] : doc.functors) {
    c.check(d.base, {"categories"}, "functor base");
    auto value = [&](const Ref& v) {
      if (d.kind == ValueKind::Ring) {
        c.check(v, {"rings"}, "functor value");
      } else {
        c.check(v, {"groups"}, "functor value");
      }
    };
    if (d.constant) value(*d.constant);
    for (const auto& [obj, v] : d.objects) value(v);
  }
  for (const auto& [name, d] : doc.bipresheaves) {
    c.check(d.first, {"functors"}, "bipresheaf first");
    c.check(d.second, {"functors"}, "bipresheaf second");
    c.functor_kind(d.first, d.kind, "bipresheaf first");
    c.functor_kind(d.second, d.kind, "bipresheaf second");
  }
  for (const auto& [name, d] : doc.modules) {
    c.check(d.over, {"bipresheaves"}, "module over");
    c.bipresheaf_kind(d.over, ValueKind::Ring, "module over");
    c.check(d.first.carrier, {"functors"}, "module carrier");
    c.check(d.second.carrier, {"functors"}, "module carrier");
    c.functor_kind(d.first.carrier, ValueKind::Group, "module carrier");
    c.functor_kind(d.second.carrier, ValueKind::Group, "module carrier");
  }
  for (const auto& [name, d] : doc.gr_bipresheaves) {
    c.check(d.over, {"bipresheaves"}, "gr bipresheaf over");
    c.bipresheaf_kind(d.over, ValueKind::Ring, "gr bipresheaf over");
    if (d.from_module) c.check(*d.from_module, {"modules"}, "gr bipresheaf from_module");
    for (const auto& [obj, v] : d.first_objects) c.check(v, {"groups"}, "gr bipresheaf value");
    for (const auto& [obj, v] : d.second_objects) c.check(v, {"groups"}, "gr bipresheaf value");
  }
  for (const auto& [name, d] : doc.universes) {
    c.check(d.base, {"categories"}, "universe base");
    for (const auto& g : d.groups) c.check(g, {"groups"}, "universe group");
  }
}

// ----- serialization -----

using OJ = nlohmann::ordered_json;

OJ to_json(const MapDecl& m) {
  if (auto* s = std::get_if<std::string>(&m.body)) return *s;
  OJ out = OJ::object();
  for (const auto& [k, v] : std::get<std::map<std::string, std::string>>(m.body)) out[k] = v;
  return out;
}

OJ to_json(const ConnectingDecl& c) {
  if (auto* m = std::get_if<MapDecl>(&c.body)) return to_json(*m);
  OJ out = OJ::object();
  for (const auto& [k, v] : std::get<std::map<std::string, MapDecl>>(c.body)) out[k] = to_json(v);
  return out;
}

OJ refs_json(const std::vector<Ref>& refs) {
  OJ out = OJ::array();
  for (const auto& r : refs) out.push_back(r.value);
  return out;
}

OJ ref_map_json(const std::map<std::string, Ref>& m) {
  OJ out = OJ::object();
  for (const auto& [k, v] : m) out[k] = v.value;
  return out;
}

OJ to_json(const CategoryDecl& d) {
  OJ out = OJ::object();
  out["objects"] = d.data.objects;
  OJ mors = OJ::object();
  for (const auto& a : d.data.morphisms) mors[a.id] = OJ::array({a.dom, a.cod});
  out["morphisms"] = mors;
  OJ ids = OJ::object();
  for (const auto& [x, f] : d.data.identities) ids[x] = f;
  out["identities"] = ids;
  OJ comp = OJ::array();
  for (const auto& c : d.data.compositions) comp.push_back(OJ::array({c.second, c.first, c.result}));
  out["compose"] = comp;
  return out;
}

OJ to_json(const RingDecl& d) {
  OJ out = OJ::object();
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, RingSpec::Modular>) {
          out["modular"] = b.n;
        } else if constexpr (std::is_same_v<T, RingSpec::Trivial>) {
          out["trivial"] = true;
        } else if constexpr (std::is_same_v<T, ProductDecl>) {
          out["product"] = refs_json(b.factors);
        } else {
          OJ t = OJ::object();
          t["elements"] = b.elements;
          t["zero"] = b.zero;
          t["one"] = b.one;
          t["add"] = b.add;
          t["mul"] = b.mul;
          out["table"] = t;
        }
      },
      d.body);
  return out;
}

OJ to_json(const GroupDecl& d) {
  OJ out = OJ::object();
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, GroupDecl::Cyclic>) {
          out["cyclic"] = b.n;
        } else if constexpr (std::is_same_v<T, GroupDecl::Zero>) {
          out["zero"] = true;
        } else if constexpr (std::is_same_v<T, ProductDecl>) {
          out["product"] = refs_json(b.factors);
        } else if constexpr (std::is_same_v<T, GroupDecl::Additive>) {
          out["additive"] = b.ring.value;
        } else {
          OJ t = OJ::object();
          t["elements"] = b.elements;
          t["zero"] = b.zero;
          t["add"] = b.add;
          out["table"] = t;
        }
      },
      d.body);
  return out;
}

OJ to_json(const FunctorDecl& d) {
  OJ out = OJ::object();
  out["base"] = d.base.value;
  out["variance"] = d.variance == Variance::Contravariant ? "contravariant" : "covariant";
  out["kind"] = to_string(d.kind);
  if (d.constant) {
    out["constant"] = d.constant->value;
    return out;
  }
  out["objects"] = ref_map_json(d.objects);
  if (d.all_morphisms) {
    out["morphisms"] = to_json(*d.all_morphisms);
  } else if (!d.morphisms.empty()) {
    OJ m = OJ::object();
    for (const auto& [k, v] : d.morphisms) m[k] = to_json(v);
    out["morphisms"] = m;
  }
  return out;
}

OJ to_json(const BipresheafDecl& d) {
  OJ out = OJ::object();
  out["kind"] = to_string(d.kind);
  out["first"] = d.first.value;
  out["second"] = d.second.value;
  out["connecting"] = to_json(d.connecting);
  return out;
}

OJ to_json(const ModuleSideDecl& d) {
  OJ out = OJ::object();
  out["carrier"] = d.carrier.value;
  if (auto* s = std::get_if<std::string>(&d.action.body)) {
    out["action"] = *s;
  } else {
    OJ a = OJ::object();
    for (const auto& [obj, rows] :
         std::get<std::map<std::string, std::map<std::string, std::map<std::string, std::string>>>>(
             d.action.body)) {
      OJ per = OJ::object();
      for (const auto& [m, row] : rows) {
        OJ r = OJ::object();
        for (const auto& [s, v] : row) r[s] = v;
        per[m] = r;
      }
      a[obj] = per;
    }
    out["action"] = a;
  }
  return out;
}

OJ to_json(const ModuleDecl& d) {
  OJ out = OJ::object();
  out["over"] = d.over.value;
  out["first"] = to_json(d.first);
  out["second"] = to_json(d.second);
  out["connecting"] = to_json(d.connecting);
  return out;
}

OJ entries_json(const std::vector<GrMapEntry>& es) {
  OJ out = OJ::array();
  for (const auto& e : es) {
    OJ item = OJ::object();
    item["family"] = e.family;
    item["map"] = to_json(e.map);
    out.push_back(item);
  }
  return out;
}

OJ to_json(const GrBipresheafDecl& d) {
  OJ out = OJ::object();
  out["over"] = d.over.value;
  if (d.from_module) {
    out["from_module"] = d.from_module->value;
    return out;
  }
  out["first_objects"] = ref_map_json(d.first_objects);
  out["second_objects"] = ref_map_json(d.second_objects);
  if (d.connecting) out["connecting"] = to_json(*d.connecting);
  out["first_default"] = d.first_default;
  out["second_default"] = d.second_default;
  if (!d.first.empty()) out["first"] = entries_json(d.first);
  if (!d.second.empty()) out["second"] = entries_json(d.second);
  return out;
}

OJ to_json(const UniverseDecl& d) {
  OJ out = OJ::object();
  out["base"] = d.base.value;
  out["groups"] = refs_json(d.groups);
  if (d.budget) out["budget"] = *d.budget;
  return out;
}

template <class Decl>
void write_section(OJ& root, const char* key, const std::map<std::string, Decl>& sec) {
  if (sec.empty()) return;
  OJ out = OJ::object();
  for (const auto& [name, d] : sec) out[name] = to_json(d);
  root[key] = out;
}

}  // namespace

SpecParse parse_spec(std::string_view text) {
  SpecParse out;
  auto parsed = json::parse(text);
  Reader r;
  r.errors = parsed.errors;
  SpecDocument doc;
  if (parsed.value) {
    const Value& root = *parsed.value;
    if (r.expect(root, Kind::Object, "document")) {
      r.allow_keys(root,
                   {"categories", "rings", "groups", "functors", "bipresheaves", "modules",
                    "gr_bipresheaves", "universes"},
                   "document");
      std::map<std::string, std::pair<std::string, Location>> names;
      read_section(r, root, "categories", doc.categories, names,
                   [&](const Value& v) { return r.category(v); });
      read_section(r, root, "rings", doc.rings, names, [&](const Value& v) { return r.ring(v); });
      read_section(r, root, "groups", doc.groups, names,
                   [&](const Value& v) { return r.group(v); });
      read_section(r, root, "functors", doc.functors, names,
                   [&](const Value& v) { return r.functor(v); });
      read_section(r, root, "bipresheaves", doc.bipresheaves, names,
                   [&](const Value& v) { return r.bipresheaf(v); });
      read_section(r, root, "modules", doc.modules, names,
                   [&](const Value& v) { return r.module(v); });
      read_section(r, root, "gr_bipresheaves", doc.gr_bipresheaves, names,
                   [&](const Value& v) { return r.gr_bipresheaf(v); });
      read_section(r, root, "universes", doc.universes, names,
                   [&](const Value& v) { return r.universe(v); });
      SpecDocument names_only = doc;
      for (const auto& [name, where] : names) {
        if (names_only.section_of(name).empty()) {
          const auto& sec = where.first;
          if (sec == "categories") names_only.categories[name];
          else if (sec == "rings") names_only.rings[name];
          else if (sec == "groups") names_only.groups[name];
          else if (sec == "functors") names_only.functors[name];
          else if (sec == "bipresheaves") names_only.bipresheaves[name];
          else if (sec == "modules") names_only.modules[name];
          else if (sec == "gr_bipresheaves") names_only.gr_bipresheaves[name];
          else names_only.universes[name];
        }
      }
      check_references(names_only, doc, r);
    }
  }
  std::stable_sort(r.errors.begin(), r.errors.end(), [](const ParseError& a, const ParseError& b) {
    return std::pair(a.where.line, a.where.column) < std::pair(b.where.line, b.where.column);
  });
  out.errors = std::move(r.errors);
  if (out.errors.empty()) out.document = std::move(doc);
  return out;
}

std::string serialize(const SpecDocument& doc) {
  OJ root = OJ::object();
  write_section(root, "categories", doc.categories);
  write_section(root, "rings", doc.rings);
  write_section(root, "groups", doc.groups);
  write_section(root, "functors", doc.functors);
  write_section(root, "bipresheaves", doc.bipresheaves);
  write_section(root, "modules", doc.modules);
  write_section(root, "gr_bipresheaves", doc.gr_bipresheaves);
  write_section(root, "universes", doc.universes);
  return root.dump(2) + "\n";
}

std::string format_errors(const std::vector<ParseError>& errors, const std::string& file) {
  std::ostringstream out;
  for (const auto& e : errors) {
    if (!file.empty()) out << file << ":";
    out << json::to_string(e.where) << ": error: " << e.message << "\n";
  }
  return out.str();
}

}  // namespace bipre::spec
