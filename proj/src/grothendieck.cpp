#include "bipre/grothendieck.hpp"

#include <stdexcept>

namespace bipre {

GrMorphism normalize(GrMorphism m) {
  for (auto it = m.components.begin(); it != m.components.end();) {
    auto& sum = it->second;
    for (auto p = sum.begin(); p != sum.end();) {
      p = p->second == 0 ? sum.erase(p) : std::next(p);
    }
    it = sum.empty() ? m.components.erase(it) : std::next(it);
  }
  return m;
}

const char* to_string(EqualityMode m) { return m == EqualityMode::Strict ? "strict" : "tensor"; }

const char* to_string(SumIdMode m) {
  return m == SumIdMode::ExcludeZero ? "exclude-zero" : "include-zero";
}

GrCategory GrCategory::build(RingBipresheaf rings) {
  auto rep = validate_bipresheaf(rings);
  if (rep.has_structural()) {
    ValidationReport structural;
    for (const auto& v : rep.violations()) {
      if (v.structural) structural.add(v);
    }
    throw StructuralError("ring bipresheaf is not well typed", structural);
  }
  GrCategory G;
  G.rings_ = std::move(rings);
  const auto& c = G.base();
  for (MorId h = 0; h < c.morphism_count(); ++h) {
    G.factorizations_.push_back(factorizations(c, h));
  }
  return G;
}

Elem GrCategory::theta_along(MorId f, Elem r1) const {
  return rings_.R2.on(f)(rings_.theta[base().dom(f)](r1));
}

Elem GrCategory::derived(MorId f, const TensorPair& p) const {
  return rings_.R2.at(base().cod(f)).times(theta_along(f, p.r1), p.r2);
}

GrMorphism GrCategory::identity(ObjId x) const {
  if (x >= base().object_count()) throw std::out_of_range("unknown object index");
  GrMorphism m{x, x, {}};
  m.components[base().identity(x)][{rings_.R1.at(x).one(), rings_.R2.at(x).one()}] = 1;
  return m;
}

void GrCategory::check_context(const GrMorphism& m) const {
  const auto& c = base();
  auto fail = [&](const std::string& why) {
    ValidationReport rep;
    rep.add({"context-mismatch", "", {}, why, true});
    throw StructuralError("Gr morphism does not match its context: " + why, rep);
  };
  if (m.source >= c.object_count() || m.target >= c.object_count()) fail("unknown endpoint");
  const auto& R1 = rings_.R1.at(m.source);
  const auto& R2 = rings_.R2.at(m.target);
  for (const auto& [f, sum] : m.components) {
    if (f >= c.morphism_count() || c.dom(f) != m.source || c.cod(f) != m.target) {
      fail("component indexed by a morphism outside Hom(source, target)");
    }
    for (const auto& [p, n] : sum) {
      if (p.r1 >= R1.size() || p.r2 >= R2.size()) fail("pair element out of range");
      if (n == 0) fail("zero multiplicity");
    }
  }
}

GrMorphism GrCategory::compose(const GrMorphism& psi, const GrMorphism& phi) const {
  if (phi.target != psi.source) {
    ValidationReport rep;
    rep.add({"endpoint-mismatch", "", {describe(psi), describe(phi)},
             "target of the first factor is not the source of the second", true});
    throw StructuralError("Gr morphisms are not composable", rep);
  }
  check_context(phi);
  check_context(psi);
  const ObjId x = phi.source;
  const ObjId z = psi.target;
  const auto& R1x = rings_.R1.at(x);
  const auto& R2z = rings_.R2.at(z);
  GrMorphism out{x, z, {}};
  for (const auto& [f, phi_f] : phi.components) {
    for (const auto& [g, psi_g] : psi.components) {
      const MorId h = base().compose(g, f);
      auto& target = out.components[h];
      for (const auto& [r, n] : phi_f) {
        for (const auto& [s, k] : psi_g) {
          const TensorPair p{R1x.times(rings_.R1.on(f)(s.r1), r.r1),
                             R2z.times(rings_.R2.on(g)(r.r2), s.r2)};
          target[p] += n * k;
        }
      }
    }
  }
  return normalize(std::move(out));
}

GrMorphism GrCategory::tensor_form(const GrMorphism& m) const {
  GrMorphism out{m.source, m.target, {}};
  const auto& R1 = rings_.R1.at(m.source);
  for (const auto& [f, sum] : m.components) {
    for (const auto& [p, n] : sum) {
      if (p.r1 == R1.zero()) continue;
      out.components[f][{p.r1, derived(f, p)}] += n;
    }
  }
  return normalize(std::move(out));
}

bool GrCategory::equal(const GrMorphism& a, const GrMorphism& b, EqualityMode mode) const {
  if (a.source != b.source || a.target != b.target) {
    throw StructuralError("cannot compare Gr morphisms with different endpoints");
  }
  if (mode == EqualityMode::Strict) return normalize(a) == normalize(b);
  return tensor_form(a) == tensor_form(b);
}

std::size_t GrCategory::pure_count(ObjId x, ObjId y, std::size_t cap) const {
  const std::size_t radix = 1 + rings_.R1.at(x).size() * rings_.R2.at(y).size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < base().hom(x, y).size(); ++i) total = saturating_mul(total, radix, cap);
  return total;
}

void GrCategory::for_each_pure(ObjId x, ObjId y, std::size_t budget,
                               const std::function<bool(const GrMorphism&)>& fn) const {
  const std::size_t total = pure_count(x, y, budget);
  if (total > budget) {
    throw ResourceError("pure families " + base().object_name(x) + " -> " +
                        base().object_name(y) + " exceed the budget of " +
                        std::to_string(budget));
  }
  const auto& hom = base().hom(x, y);
  const std::size_t n2 = rings_.R2.at(y).size();
  const std::size_t radix = 1 + rings_.R1.at(x).size() * n2;
  std::vector<std::size_t> digit(hom.size(), 0);
  while (true) {
    GrMorphism m{x, y, {}};
    for (std::size_t i = 0; i < hom.size(); ++i) {
      if (digit[i] == 0) continue;
      const std::size_t k = digit[i] - 1;
      m.components[hom[i]][{k / n2, k % n2}] = 1;
    }
    if (!fn(m)) return;
    std::size_t i = hom.size();
    while (i > 0 && ++digit[i - 1] == radix) digit[--i] = 0;
    if (i == 0) return;
  }
}

std::string GrCategory::describe(const GrMorphism& m) const {
  const auto& c = base();
  std::string out = c.object_name(m.source) + "->" + c.object_name(m.target) + " {";
  bool first_comp = true;
  for (const auto& [f, sum] : m.components) {
    if (!first_comp) out += "; ";
    first_comp = false;
    out += c.morphism_name(f) + ":";
    bool first_pair = true;
    for (const auto& [p, n] : sum) {
      out += first_pair ? " " : ", ";
      first_pair = false;
      out += "(" + rings_.R1.at(m.source).name(p.r1) + "," + rings_.R2.at(m.target).name(p.r2) +
             ")";
      if (n != 1) out += "x" + std::to_string(n);
    }
  }
  return out + "}";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

// Splits at `sep` occurrences outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

GrMorphism GrCategory::parse(const std::string& text) const {
  auto bad = [&](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument("cannot read Gr morphism '" + text + "': " + why);
  };
  const auto arrow = text.find("->");
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (arrow == std::string::npos || open == std::string::npos || close == std::string::npos ||
      open < arrow || close < open) {
    throw bad("expected 'x->y {...}'");
  }
  const auto& c = base();
  auto x = c.find_object(trim(text.substr(0, arrow)));
  auto y = c.find_object(trim(text.substr(arrow + 2, open - arrow - 2)));
  if (!x || !y) throw bad("unknown endpoint");
  GrMorphism m{*x, *y, {}};
  const std::string body = trim(text.substr(open + 1, close - open - 1));
  if (body.empty()) return m;
  for (const auto& comp : split_top(body, ';')) {
    const auto colon = comp.find(':');
    if (colon == std::string::npos) throw bad("component without ':'");
    auto f = c.find_morphism(trim(comp.substr(0, colon)));
    if (!f) throw bad("unknown morphism");
    for (auto term : split_top(comp.substr(colon + 1), ',')) {
      term = trim(term);
      std::uint64_t mult = 1;
      const auto end = term.rfind(')');
      if (term.empty() || term.front() != '(' || end == std::string::npos) throw bad("bad term");
      if (end + 1 < term.size()) {
        const std::string tail = term.substr(end + 1);
        if (tail.size() < 2 || tail[0] != 'x') throw bad("bad multiplicity");
        try {
          mult = std::stoull(tail.substr(1));
        } catch (const std::exception&) {
          throw bad("bad multiplicity");
        }
      }
      auto slots = split_top(term.substr(1, end - 1), ',');
      if (slots.size() != 2) throw bad("pair needs two slots");
      auto r1 = rings_.R1.at(*x).find(trim(slots[0]));
      auto r2 = rings_.R2.at(*y).find(trim(slots[1]));
      if (!r1 || !r2) throw bad("unknown ring element");
      m.components[*f][{*r1, *r2}] += mult;
    }
  }
  m = normalize(std::move(m));
  try {
    check_context(m);
  } catch (const StructuralError& e) {
    throw bad(e.what());
  }
  return m;
}

// ---- free functions -------------------------------------------------------------

GrMorphism gr_identity(const GrCategory& G, ObjId x) { return G.identity(x); }

GrMorphism gr_compose(const GrCategory& G, const GrMorphism& psi, const GrMorphism& phi) {
  return G.compose(psi, phi);
}

bool gr_equal(const GrCategory& G, const GrMorphism& a, const GrMorphism& b, EqualityMode mode) {
  return G.equal(a, b, mode);
}

std::vector<GrMorphism> enumerate_pure_morphisms(const GrCategory& G, ObjId x, ObjId y,
                                                 std::size_t budget) {
  std::vector<GrMorphism> out;
  G.for_each_pure(x, y, budget, [&](const GrMorphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Elem sum_of_derived(const GrCategory& G, const GrMorphism& m) {
  const auto& R2 = G.rings().R2.at(m.target);
  Elem acc = R2.zero();
  for (const auto& [f, sum] : m.components) {
    for (const auto& [p, n] : sum) {
      acc = R2.plus(acc, R2.additive().multiple(n, G.derived(f, p)));
    }
  }
  return acc;
}

bool sum_id_fails(const GrCategory& G, const GrMorphism& m) {
  return sum_of_derived(G, m) != G.rings().R2.at(m.target).one();
}

SumIdReport check_sum_id(const GrCategory& G, SumIdMode mode, std::size_t budget) {
  const auto& c = G.base();
  std::size_t total = 0;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (ObjId y = 0; y < c.object_count(); ++y) {
      if (c.hom(x, y).empty()) continue;
      total += G.pure_count(x, y, budget);
      if (total > budget) {
        throw ResourceError("sum-id enumeration exceeds the budget of " + std::to_string(budget));
      }
    }
  }
  SumIdReport rep;
  rep.mode = mode;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (ObjId y = 0; y < c.object_count(); ++y) {
      if (c.hom(x, y).empty()) continue;
      G.for_each_pure(x, y, budget, [&](const GrMorphism& m) {
        if (m.components.empty() && mode == SumIdMode::ExcludeZero) return true;
        ++rep.families_checked;
        if (sum_id_fails(G, m)) {
          rep.pass = false;
          ++rep.failures;
          if (rep.witnesses.size() < SumIdReport::kMaxWitnesses) rep.witnesses.push_back(m);
        }
        return true;
      });
    }
  }
  return rep;
}

// ---- law checks -----------------------------------------------------------------

namespace {

using MaybeViolation = std::optional<Violation>;

struct Tuple {
  MorId f, g;
  Elem r1, r2, s1, s2;
};

MaybeViolation check_chain(const GrCategory& G, const Tuple& t) {
  const auto& c = G.base();
  const auto& B = G.rings();
  const ObjId x = c.dom(t.f);
  const ObjId y = c.cod(t.f);
  const ObjId z = c.cod(t.g);
  const MorId gf = c.compose(t.g, t.f);
  const auto& R2y = B.R2.at(y);
  const auto& R2z = B.R2.at(z);
  const Elem lhs = R2z.times(B.R2.on(t.g)(R2y.times(G.theta_along(t.f, t.r1), t.r2)),
                             R2z.times(G.theta_along(t.g, t.s1), t.s2));
  const Elem rhs =
      R2z.times(G.theta_along(gf, B.R1.at(x).times(B.R1.on(t.f)(t.s1), t.r1)),
                R2z.times(B.R2.on(t.g)(t.r2), t.s2));
  if (lhs == rhs) return std::nullopt;
  return Violation{"well-definedness", "",
                   {c.morphism_name(t.f), c.morphism_name(t.g), B.R1.at(x).name(t.r1),
                    R2y.name(t.r2), B.R1.at(y).name(t.s1), R2z.name(t.s2)},
                   "R2(g)(r1^theta r2)(s1^theta s2) = " + R2z.name(lhs) +
                       ", (R1(f)(s1) r1)^theta (R2(g)(r2) s2) = " + R2z.name(rhs)};
}

MaybeViolation check_left_unit(const GrCategory& G, const GrMorphism& phi) {
  const auto out = G.compose(G.identity(phi.target), phi);
  if (out == phi) return std::nullopt;
  return Violation{"left-unit", "", {G.describe(phi)}, "1 . phi = " + G.describe(out)};
}

MaybeViolation check_right_unit(const GrCategory& G, const GrMorphism& phi) {
  const auto out = G.compose(phi, G.identity(phi.source));
  if (out == phi) return std::nullopt;
  return Violation{"right-unit", "", {G.describe(phi)}, "phi . 1 = " + G.describe(out)};
}

MaybeViolation check_assoc(const GrCategory& G, const GrMorphism& chi, const GrMorphism& psi,
                           const GrMorphism& phi) {
  const auto left = G.compose(chi, G.compose(psi, phi));
  const auto right = G.compose(G.compose(chi, psi), phi);
  if (left == right) return std::nullopt;
  return Violation{"associativity", "", {G.describe(chi), G.describe(psi), G.describe(phi)},
                   "chi.(psi.phi) = " + G.describe(left) + ", (chi.psi).phi = " +
                       G.describe(right)};
}

// Side "post": psi . a vs psi . b. Side "pre": a . psi vs b . psi.
MaybeViolation check_congruence(const GrCategory& G, const GrMorphism& a, const GrMorphism& b,
                                const GrMorphism& other, const std::string& side) {
  if (!G.equal(a, b, EqualityMode::Tensor)) return std::nullopt;
  const bool post = side == "post";
  const auto ca = post ? G.compose(other, a) : G.compose(a, other);
  const auto cb = post ? G.compose(other, b) : G.compose(b, other);
  if (G.equal(ca, cb, EqualityMode::Tensor)) return std::nullopt;
  return Violation{"tensor-congruence", "",
                   {G.describe(a), G.describe(b), G.describe(other), side},
                   "tensor-equal inputs give " + G.describe(G.tensor_form(ca)) + " and " +
                       G.describe(G.tensor_form(cb))};
}

using PureTable = std::vector<std::vector<GrMorphism>>;  // indexed x * n + y

PureTable all_pure(const GrCategory& G, std::size_t budget) {
  const std::size_t n = G.base().object_count();
  PureTable table(n * n);
  std::size_t total = 0;
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      total += G.pure_count(x, y, budget);
      if (total > budget) {
        throw ResourceError("pure families exceed the budget of " + std::to_string(budget));
      }
      table[x * n + y] = enumerate_pure_morphisms(G, x, y, budget);
    }
  }
  return table;
}

void charge(std::size_t& used, std::size_t amount, std::size_t budget, const char* what) {
  used += amount;
  if (used > budget) {
    throw ResourceError(std::string(what) + " exceeds the budget of " + std::to_string(budget));
  }
}

}  // namespace

ValidationReport check_well_definedness(const GrCategory& G, std::size_t budget) {
  const auto& c = G.base();
  const auto& B = G.rings();
  std::size_t used = 0;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g = 0; g < c.morphism_count(); ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      std::size_t n = saturating_mul(B.R1.at(c.dom(f)).size(), B.R2.at(c.cod(f)).size(), budget);
      n = saturating_mul(n, B.R1.at(c.cod(f)).size(), budget);
      n = saturating_mul(n, B.R2.at(c.cod(g)).size(), budget);
      charge(used, n, budget, "well-definedness check");
    }
  }
  ValidationReport rep;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g = 0; g < c.morphism_count(); ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      const ObjId x = c.dom(f), y = c.cod(f), z = c.cod(g);
      for (Elem r1 = 0; r1 < B.R1.at(x).size(); ++r1) {
        for (Elem r2 = 0; r2 < B.R2.at(y).size(); ++r2) {
          for (Elem s1 = 0; s1 < B.R1.at(y).size(); ++s1) {
            for (Elem s2 = 0; s2 < B.R2.at(z).size(); ++s2) {
              if (auto v = check_chain(G, {f, g, r1, r2, s1, s2})) rep.add(std::move(*v));
            }
          }
        }
      }
    }
  }
  return rep;
}

ValidationReport check_gr_category_laws(const GrCategory& G, std::size_t budget) {
  const std::size_t n = G.base().object_count();
  const PureTable pure = all_pure(G, budget);
  auto at = [&](ObjId a, ObjId b) -> const std::vector<GrMorphism>& { return pure[a * n + b]; };
  std::size_t used = 0;
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      for (ObjId z = 0; z < n; ++z) {
        for (ObjId w = 0; w < n; ++w) {
          std::size_t k = saturating_mul(at(x, y).size(), at(y, z).size(), budget);
          charge(used, saturating_mul(k, at(z, w).size(), budget), budget,
                 "associativity check");
        }
      }
    }
  }
  ValidationReport rep;
  auto note = [&](MaybeViolation v) {
    if (v) rep.add(std::move(*v));
  };
  for (const auto& family : pure) {
    for (const auto& phi : family) {
      note(check_left_unit(G, phi));
      note(check_right_unit(G, phi));
    }
  }
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      for (ObjId z = 0; z < n; ++z) {
        for (ObjId w = 0; w < n; ++w) {
          for (const auto& phi : at(x, y)) {
            for (const auto& psi : at(y, z)) {
              for (const auto& chi : at(z, w)) note(check_assoc(G, chi, psi, phi));
            }
          }
        }
      }
    }
  }
  return rep;
}

ValidationReport check_tensor_congruence(const GrCategory& G, std::size_t budget) {
  const std::size_t n = G.base().object_count();
  const PureTable pure = all_pure(G, budget);
  ValidationReport rep;
  std::size_t used = 0;
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      const auto& here = pure[x * n + y];
      std::map<GrMorphism, std::vector<std::size_t>> classes;
      for (std::size_t i = 0; i < here.size(); ++i) classes[G.tensor_form(here[i])].push_back(i);
      for (const auto& [form, members] : classes) {
        for (std::size_t i = 0; i < members.size(); ++i) {
          for (std::size_t j = i + 1; j < members.size(); ++j) {
            const auto& a = here[members[i]];
            const auto& b = here[members[j]];
            for (ObjId z = 0; z < n; ++z) {
              charge(used, pure[y * n + z].size() + pure[z * n + x].size(), budget,
                     "tensor congruence check");
              for (const auto& psi : pure[y * n + z]) {
                if (auto v = check_congruence(G, a, b, psi, "post")) rep.add(std::move(*v));
              }
              for (const auto& chi : pure[z * n + x]) {
                if (auto v = check_congruence(G, a, b, chi, "pre")) rep.add(std::move(*v));
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

std::optional<Violation> replay(const GrCategory& G, const Violation& v) {
  const auto& c = G.base();
  const auto& B = G.rings();
  try {
    if (v.law == "well-definedness" && v.witness.size() == 6) {
      auto f = c.find_morphism(v.witness[0]);
      auto g = c.find_morphism(v.witness[1]);
      if (!f || !g || c.cod(*f) != c.dom(*g)) return std::nullopt;
      const ObjId x = c.dom(*f), y = c.cod(*f), z = c.cod(*g);
      auto r1 = B.R1.at(x).find(v.witness[2]);
      auto r2 = B.R2.at(y).find(v.witness[3]);
      auto s1 = B.R1.at(y).find(v.witness[4]);
      auto s2 = B.R2.at(z).find(v.witness[5]);
      if (!r1 || !r2 || !s1 || !s2) return std::nullopt;
      return check_chain(G, {*f, *g, *r1, *r2, *s1, *s2});
    }
    if (v.law == "left-unit" && v.witness.size() == 1) {
      return check_left_unit(G, G.parse(v.witness[0]));
    }
    if (v.law == "right-unit" && v.witness.size() == 1) {
      return check_right_unit(G, G.parse(v.witness[0]));
    }
    if (v.law == "associativity" && v.witness.size() == 3) {
      return check_assoc(G, G.parse(v.witness[0]), G.parse(v.witness[1]),
                         G.parse(v.witness[2]));
    }
    if (v.law == "tensor-congruence" && v.witness.size() == 4) {
      return check_congruence(G, G.parse(v.witness[0]), G.parse(v.witness[1]),
                              G.parse(v.witness[2]), v.witness[3]);
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  } catch (const StructuralError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace bipre
