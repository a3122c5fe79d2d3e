#include "bipre/algebra.hpp"

#include <map>
#include <set>

namespace bipre {

namespace {

void check_unique_names(const std::vector<std::string>& names, ValidationReport& errors) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      errors.add({"duplicate-element", "", {n}, "element name used twice", true});
    }
  }
}

void check_table(const std::vector<Elem>& table, std::size_t n, const std::string& which,
                 ValidationReport& errors) {
  if (table.size() != n * n) {
    errors.add({"table-shape", "", {which},
                "expected " + std::to_string(n * n) + " entries, got " +
                    std::to_string(table.size()),
                true});
    return;
  }
  for (Elem v : table) {
    if (v >= n) {
      errors.add({"table-range", "", {which}, "entry out of range", true});
      return;
    }
  }
}

// Mixed-radix index of a tuple, first factor most significant.
std::vector<std::vector<Elem>> all_tuples(const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<Elem>> out{{}};
  for (std::size_t s : sizes) {
    std::vector<std::vector<Elem>> next;
    for (const auto& prefix : out) {
      for (Elem e = 0; e < s; ++e) {
        auto t = prefix;
        t.push_back(e);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string tuple_name(const std::vector<const std::vector<std::string>*>& factor_names,
                       const std::vector<Elem>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += (*factor_names[i])[t[i]];
  }
  return s + ")";
}

}  // namespace

// ---- FinAbGroup -------------------------------------------------------------

FinAbGroup FinAbGroup::from_tables(std::vector<std::string> names, std::vector<Elem> add,
                                   Elem zero) {
  ValidationReport errors;
  if (names.empty()) errors.add({"empty-carrier", "", {}, "a group needs at least one element", true});
  check_unique_names(names, errors);
  check_table(add, names.size(), "add", errors);
  if (zero >= names.size()) errors.add({"table-range", "", {"zero"}, "zero out of range", true});
  if (!errors.ok()) throw StructuralError("malformed group tables", errors);
  FinAbGroup g;
  g.names_ = std::move(names);
  g.add_ = std::move(add);
  g.zero_ = zero;
  return g;
}

FinAbGroup FinAbGroup::cyclic(std::size_t n) {
  if (n == 0) throw StructuralError("cyclic group of order 0");
  std::vector<std::string> names;
  std::vector<Elem> add(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) add[a * n + b] = (a + b) % n;
  }
  return from_tables(std::move(names), std::move(add), 0);
}

FinAbGroup FinAbGroup::zero_group() { return from_tables({"0"}, {0}, 0); }

FinAbGroup FinAbGroup::product(const std::vector<FinAbGroup>& factors) {
  std::vector<std::size_t> sizes;
  std::vector<const std::vector<std::string>*> names;
  for (const auto& f : factors) {
    sizes.push_back(f.size());
    names.push_back(&f.names());
  }
  const auto tuples = all_tuples(sizes);
  std::map<std::vector<Elem>, Elem> index;
  for (Elem i = 0; i < tuples.size(); ++i) index[tuples[i]] = i;
  const std::size_t n = tuples.size();
  std::vector<std::string> out_names;
  std::vector<Elem> add(n * n);
  std::vector<Elem> zero_tuple;
  for (const auto& f : factors) zero_tuple.push_back(f.zero());
  for (Elem a = 0; a < n; ++a) {
    out_names.push_back(tuple_name(names, tuples[a]));
    for (Elem b = 0; b < n; ++b) {
      std::vector<Elem> t(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) {
        t[i] = factors[i].plus(tuples[a][i], tuples[b][i]);
      }
      add[a * n + b] = index.at(t);
    }
  }
  return from_tables(std::move(out_names), std::move(add), index.at(zero_tuple));
}

std::optional<Elem> FinAbGroup::find(const std::string& name) const {
  for (Elem a = 0; a < names_.size(); ++a) {
    if (names_[a] == name) return a;
  }
  return std::nullopt;
}

std::optional<Elem> FinAbGroup::negate(Elem a) const {
  for (Elem b = 0; b < size(); ++b) {
    if (plus(a, b) == zero_) return b;
  }
  return std::nullopt;
}

Elem FinAbGroup::multiple(std::uint64_t n, Elem a) const {
  Elem acc = zero_;
  // Orders are tiny; reduce n by the order of a to keep the loop short.
  std::uint64_t order = 1;
  for (Elem x = a; x != zero_ && order <= size(); x = plus(x, a)) ++order;
  if (order <= size()) n %= order;
  for (std::uint64_t i = 0; i < n; ++i) acc = plus(acc, a);
  return acc;
}

// ---- FinCommRing ------------------------------------------------------------

FinCommRing FinCommRing::from_tables(std::vector<std::string> names, std::vector<Elem> add,
                                     std::vector<Elem> mul, Elem zero, Elem one) {
  const std::size_t n = names.size();
  ValidationReport errors;
  check_table(mul, n, "mul", errors);
  if (one >= n) errors.add({"table-range", "", {"one"}, "one out of range", true});
  FinCommRing r;
  try {
    r.additive_ = FinAbGroup::from_tables(std::move(names), std::move(add), zero);
  } catch (const StructuralError& e) {
    errors.merge(e.report());
  }
  if (!errors.ok()) throw StructuralError("malformed ring tables", errors);
  r.mul_ = std::move(mul);
  r.one_ = one;
  return r;
}

FinCommRing FinCommRing::modular(std::size_t n) {
  if (n == 0) throw StructuralError("modular ring needs n >= 1");
  std::vector<std::string> names;
  std::vector<Elem> add(n * n), mul(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) {
      add[a * n + b] = (a + b) % n;
      mul[a * n + b] = (a * b) % n;
    }
  }
  return from_tables(std::move(names), std::move(add), std::move(mul), 0, 1 % n);
}

FinCommRing FinCommRing::trivial() { return from_tables({"e"}, {0}, {0}, 0, 0); }

FinCommRing FinCommRing::product(const std::vector<FinCommRing>& factors) {
  std::vector<FinAbGroup> groups;
  for (const auto& f : factors) groups.push_back(f.additive());
  FinCommRing r;
  r.additive_ = FinAbGroup::product(groups);
  std::vector<std::size_t> sizes;
  for (const auto& f : factors) sizes.push_back(f.size());
  const auto tuples = all_tuples(sizes);
  std::map<std::vector<Elem>, Elem> index;
  for (Elem i = 0; i < tuples.size(); ++i) index[tuples[i]] = i;
  const std::size_t n = tuples.size();
  r.mul_.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      std::vector<Elem> t(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) {
        t[i] = factors[i].times(tuples[a][i], tuples[b][i]);
      }
      r.mul_[a * n + b] = index.at(t);
    }
  }
  std::vector<Elem> one_tuple;
  for (const auto& f : factors) one_tuple.push_back(f.one());
  r.one_ = index.at(one_tuple);
  return r;
}

// ---- axiom checks -----------------------------------------------------------

namespace {

using MaybeViolation = std::optional<Violation>;

MaybeViolation group_assoc(const FinAbGroup& g, Elem a, Elem b, Elem c) {
  const Elem l = g.plus(a, g.plus(b, c));
  const Elem r = g.plus(g.plus(a, b), c);
  if (l == r) return std::nullopt;
  return Violation{"add-associativity", "", {g.name(a), g.name(b), g.name(c)},
                   "a+(b+c) = " + g.name(l) + ", (a+b)+c = " + g.name(r)};
}

MaybeViolation group_comm(const FinAbGroup& g, Elem a, Elem b) {
  if (g.plus(a, b) == g.plus(b, a)) return std::nullopt;
  return Violation{"add-commutativity", "", {g.name(a), g.name(b)},
                   "a+b = " + g.name(g.plus(a, b)) + ", b+a = " + g.name(g.plus(b, a))};
}

MaybeViolation group_identity(const FinAbGroup& g, Elem a) {
  if (g.plus(g.zero(), a) == a && g.plus(a, g.zero()) == a) return std::nullopt;
  return Violation{"add-identity", "", {g.name(a)},
                   "0+a = " + g.name(g.plus(g.zero(), a))};
}

MaybeViolation group_inverse(const FinAbGroup& g, Elem a) {
  if (g.negate(a)) return std::nullopt;
  return Violation{"add-inverse", "", {g.name(a)}, "no b with a+b = 0"};
}

MaybeViolation ring_mul_assoc(const FinCommRing& r, Elem a, Elem b, Elem c) {
  const Elem l = r.times(a, r.times(b, c));
  const Elem rr = r.times(r.times(a, b), c);
  if (l == rr) return std::nullopt;
  return Violation{"mul-associativity", "", {r.name(a), r.name(b), r.name(c)},
                   "a(bc) = " + r.name(l) + ", (ab)c = " + r.name(rr)};
}

MaybeViolation ring_mul_comm(const FinCommRing& r, Elem a, Elem b) {
  if (r.times(a, b) == r.times(b, a)) return std::nullopt;
  return Violation{"mul-commutativity", "", {r.name(a), r.name(b)},
                   "ab = " + r.name(r.times(a, b)) + ", ba = " + r.name(r.times(b, a))};
}

MaybeViolation ring_mul_identity(const FinCommRing& r, Elem a) {
  if (r.times(r.one(), a) == a) return std::nullopt;
  return Violation{"mul-identity", "", {r.name(a)}, "1a = " + r.name(r.times(r.one(), a))};
}

MaybeViolation ring_distrib(const FinCommRing& r, Elem a, Elem b, Elem c) {
  const Elem l = r.times(a, r.plus(b, c));
  const Elem rr = r.plus(r.times(a, b), r.times(a, c));
  if (l == rr) return std::nullopt;
  return Violation{"distributivity", "", {r.name(a), r.name(b), r.name(c)},
                   "a(b+c) = " + r.name(l) + ", ab+ac = " + r.name(rr)};
}

std::optional<std::vector<Elem>> resolve(const std::vector<std::string>& names,
                                         const FinAbGroup& g) {
  std::vector<Elem> out;
  for (const auto& n : names) {
    auto e = g.find(n);
    if (!e) return std::nullopt;
    out.push_back(*e);
  }
  return out;
}

}  // namespace

ValidationReport validate_group(const FinAbGroup& g) {
  ValidationReport rep;
  const std::size_t n = g.size();
  auto note = [&](MaybeViolation v) {
    if (v) rep.add(std::move(*v));
  };
  for (Elem a = 0; a < n; ++a) note(group_identity(g, a));
  for (Elem a = 0; a < n; ++a) note(group_inverse(g, a));
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) note(group_comm(g, a, b));
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) note(group_assoc(g, a, b, c));
    }
  }
  return rep;
}

ValidationReport validate_ring(const FinCommRing& r) {
  ValidationReport rep = validate_group(r.additive());
  const std::size_t n = r.size();
  auto note = [&](MaybeViolation v) {
    if (v) rep.add(std::move(*v));
  };
  for (Elem a = 0; a < n; ++a) note(ring_mul_identity(r, a));
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) note(ring_mul_comm(r, a, b));
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        note(ring_mul_assoc(r, a, b, c));
        note(ring_distrib(r, a, b, c));
      }
    }
  }
  return rep;
}

std::optional<Violation> replay(const FinAbGroup& g, const Violation& v) {
  auto w = resolve(v.witness, g);
  if (!w) return std::nullopt;
  const auto& e = *w;
  if (v.law == "add-associativity" && e.size() == 3) return group_assoc(g, e[0], e[1], e[2]);
  if (v.law == "add-commutativity" && e.size() == 2) return group_comm(g, e[0], e[1]);
  if (v.law == "add-identity" && e.size() == 1) return group_identity(g, e[0]);
  if (v.law == "add-inverse" && e.size() == 1) return group_inverse(g, e[0]);
  return std::nullopt;
}

std::optional<Violation> replay(const FinCommRing& r, const Violation& v) {
  if (v.law.rfind("add-", 0) == 0) return replay(r.additive(), v);
  auto w = resolve(v.witness, r.additive());
  if (!w) return std::nullopt;
  const auto& e = *w;
  if (v.law == "mul-associativity" && e.size() == 3) return ring_mul_assoc(r, e[0], e[1], e[2]);
  if (v.law == "mul-commutativity" && e.size() == 2) return ring_mul_comm(r, e[0], e[1]);
  if (v.law == "mul-identity" && e.size() == 1) return ring_mul_identity(r, e[0]);
  if (v.law == "distributivity" && e.size() == 3) return ring_distrib(r, e[0], e[1], e[2]);
  return std::nullopt;
}

// ---- RingSpec ---------------------------------------------------------------

FinCommRing build_ring_unchecked(const RingSpec& spec) {
  return std::visit(
      [](const auto& recipe) -> FinCommRing {
        using T = std::decay_t<decltype(recipe)>;
        if constexpr (std::is_same_v<T, RingSpec::Modular>) {
          return FinCommRing::modular(recipe.n);
        } else if constexpr (std::is_same_v<T, RingSpec::Trivial>) {
          return FinCommRing::trivial();
        } else if constexpr (std::is_same_v<T, RingSpec::Product>) {
          std::vector<FinCommRing> factors;
          for (const auto& f : recipe.factors) factors.push_back(build_ring_unchecked(f));
          return FinCommRing::product(factors);
        } else {
          const std::size_t n = recipe.elements.size();
          std::map<std::string, Elem> index;
          for (Elem i = 0; i < n; ++i) index.emplace(recipe.elements[i], i);
          ValidationReport errors;
          auto lookup = [&](const std::string& name) -> Elem {
            auto it = index.find(name);
            if (it == index.end()) {
              errors.add({"unknown-element", "", {name}, "name not among the elements", true});
              return 0;
            }
            return it->second;
          };
          auto flatten = [&](const std::vector<std::vector<std::string>>& rows,
                             const char* which) {
            std::vector<Elem> out;
            if (rows.size() != n) {
              errors.add({"table-shape", "", {which}, "wrong number of rows", true});
              return out;
            }
            for (const auto& row : rows) {
              if (row.size() != n) {
                errors.add({"table-shape", "", {which}, "wrong row length", true});
                return std::vector<Elem>{};
              }
              for (const auto& cell : row) out.push_back(lookup(cell));
            }
            return out;
          };
          auto add = flatten(recipe.add, "add");
          auto mul = flatten(recipe.mul, "mul");
          const Elem zero = lookup(recipe.zero);
          const Elem one = lookup(recipe.one);
          if (!errors.ok()) throw StructuralError("malformed ring table", errors);
          return FinCommRing::from_tables(recipe.elements, std::move(add), std::move(mul), zero,
                                          one);
        }
      },
      spec.recipe);
}

FinCommRing build_ring(const RingSpec& spec) {
  FinCommRing r = build_ring_unchecked(spec);
  ValidationReport rep = validate_ring(r);
  if (!rep.ok()) {
    const auto& v = rep.violations().front();
    std::string witness;
    for (const auto& w : v.witness) witness += (witness.empty() ? "" : ", ") + w;
    throw AxiomError("ring axiom " + v.law + " fails at (" + witness + ")", rep);
  }
  return r;
}

// ---- Hom --------------------------------------------------------------------

template <class Obj>
Hom<Obj>::Hom(Obj source, Obj target, std::vector<Elem> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != source_.size()) {
    throw StructuralError("map is not total: " + std::to_string(map_.size()) + " of " +
                          std::to_string(source_.size()) + " elements assigned");
  }
  for (Elem v : map_) {
    if (v >= target_.size()) throw StructuralError("map value out of range");
  }
}

template <class Obj>
Hom<Obj> Hom<Obj>::identity(const Obj& obj) {
  std::vector<Elem> m(obj.size());
  for (Elem a = 0; a < m.size(); ++a) m[a] = a;
  return Hom(obj, obj, std::move(m));
}

template <class Obj>
Hom<Obj> Hom<Obj>::zero(const Obj& source, const Obj& target) {
  return Hom(source, target, std::vector<Elem>(source.size(), target.zero()));
}

template <class Obj>
bool Hom<Obj>::is_identity() const {
  if (!(source_ == target_)) return false;
  for (Elem a = 0; a < map_.size(); ++a) {
    if (map_[a] != a) return false;
  }
  return true;
}

template <class Obj>
bool Hom<Obj>::is_zero() const {
  for (Elem v : map_) {
    if (v != target_.zero()) return false;
  }
  return true;
}

template class Hom<FinAbGroup>;
template class Hom<FinCommRing>;

template <class Obj>
Hom<Obj> compose(const Hom<Obj>& g, const Hom<Obj>& f) {
  if (!(f.target() == g.source())) throw StructuralError("composing maps with mismatched endpoints");
  std::vector<Elem> m(f.map().size());
  for (Elem a = 0; a < m.size(); ++a) m[a] = g(f(a));
  return Hom<Obj>(f.source(), g.target(), std::move(m));
}

template Hom<FinAbGroup> compose(const Hom<FinAbGroup>&, const Hom<FinAbGroup>&);
template Hom<FinCommRing> compose(const Hom<FinCommRing>&, const Hom<FinCommRing>&);

GroupHom add_homs(const GroupHom& a, const GroupHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) {
    throw StructuralError("adding maps with mismatched endpoints");
  }
  std::vector<Elem> m(a.map().size());
  for (Elem x = 0; x < m.size(); ++x) m[x] = a.target().plus(a(x), b(x));
  return GroupHom(a.source(), a.target(), std::move(m));
}

namespace {

template <class Obj>
MaybeViolation hom_add(const Hom<Obj>& h, Elem a, Elem b) {
  const auto& s = h.source();
  const auto& t = h.target();
  const Elem l = h(s.plus(a, b));
  const Elem r = t.plus(h(a), h(b));
  if (l == r) return std::nullopt;
  return Violation{"preserves-add", "", {s.name(a), s.name(b)},
                   "h(a+b) = " + t.name(l) + ", h(a)+h(b) = " + t.name(r)};
}

MaybeViolation hom_mul(const RingHom& h, Elem a, Elem b) {
  const auto& s = h.source();
  const auto& t = h.target();
  const Elem l = h(s.times(a, b));
  const Elem r = t.times(h(a), h(b));
  if (l == r) return std::nullopt;
  return Violation{"preserves-mul", "", {s.name(a), s.name(b)},
                   "h(ab) = " + t.name(l) + ", h(a)h(b) = " + t.name(r)};
}

MaybeViolation hom_one(const RingHom& h) {
  const Elem image = h(h.source().one());
  if (image == h.target().one()) return std::nullopt;
  return Violation{"preserves-one", "", {},
                   "h(1) = " + h.target().name(image) + ", 1 = " +
                       h.target().name(h.target().one())};
}

}  // namespace

ValidationReport validate_group_hom(const GroupHom& h) {
  ValidationReport rep;
  const std::size_t n = h.source().size();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (auto v = hom_add(h, a, b)) rep.add(std::move(*v));
    }
  }
  return rep;
}

ValidationReport validate_ring_hom(const RingHom& h) {
  ValidationReport rep;
  if (auto v = hom_one(h)) rep.add(std::move(*v));
  const std::size_t n = h.source().size();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (auto v = hom_add(h, a, b)) rep.add(std::move(*v));
      if (auto v = hom_mul(h, a, b)) rep.add(std::move(*v));
    }
  }
  return rep;
}

std::optional<Violation> replay(const GroupHom& h, const Violation& v) {
  auto w = resolve(v.witness, h.source());
  if (w && v.law == "preserves-add" && w->size() == 2) return hom_add(h, (*w)[0], (*w)[1]);
  return std::nullopt;
}

std::optional<Violation> replay(const RingHom& h, const Violation& v) {
  if (v.law == "preserves-one") return hom_one(h);
  auto w = resolve(v.witness, h.source().additive());
  if (!w || w->size() != 2) return std::nullopt;
  if (v.law == "preserves-add") return hom_add(h, (*w)[0], (*w)[1]);
  if (v.law == "preserves-mul") return hom_mul(h, (*w)[0], (*w)[1]);
  return std::nullopt;
}

namespace {

// Depth-first search over element maps in lexicographic order. `consistent`
// is asked, after each assignment of element i, to check every constraint
// whose arguments and result are all among 0..i.
template <class Obj, class Consistent>
std::vector<Hom<Obj>> search_maps(const Obj& source, const Obj& target, std::size_t budget,
                                  Consistent consistent) {
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  std::vector<Hom<Obj>> out;
  std::vector<Elem> map(n, 0);
  std::size_t visited = 0;
  std::size_t depth = 0;
  std::vector<Elem> next(n, 0);  // next candidate value at each depth
  while (true) {
    if (next[depth] == m) {
      if (depth == 0) break;
      next[depth] = 0;
      --depth;
      continue;
    }
    map[depth] = next[depth]++;
    if (++visited > budget) throw ResourceError("homomorphism search exceeded budget");
    if (!consistent(map, depth)) continue;
    if (depth + 1 == n) {
      out.emplace_back(source, target, map);
    } else {
      ++depth;
    }
  }
  return out;
}

}  // namespace

std::vector<GroupHom> enumerate_group_homs(const FinAbGroup& source, const FinAbGroup& target,
                                           std::size_t budget) {
  auto consistent = [&](const std::vector<Elem>& map, std::size_t i) {
    for (Elem a = 0; a <= i; ++a) {
      for (Elem b = 0; b <= i; ++b) {
        const Elem c = source.plus(a, b);
        if (c <= i && map[c] != target.plus(map[a], map[b])) return false;
      }
    }
    return true;
  };
  return search_maps(source, target, budget, consistent);
}

std::vector<RingHom> enumerate_ring_homs(const FinCommRing& source, const FinCommRing& target,
                                         std::size_t budget) {
  auto consistent = [&](const std::vector<Elem>& map, std::size_t i) {
    if (source.one() <= i && map[source.one()] != target.one()) return false;
    for (Elem a = 0; a <= i; ++a) {
      for (Elem b = 0; b <= i; ++b) {
        const Elem c = source.plus(a, b);
        if (c <= i && map[c] != target.plus(map[a], map[b])) return false;
        const Elem d = source.times(a, b);
        if (d <= i && map[d] != target.times(map[a], map[b])) return false;
      }
    }
    return true;
  };
  return search_maps(source, target, budget, consistent);
}

std::string describe_map(const std::vector<std::string>& source_names,
                         const std::vector<std::string>& target_names,
                         const std::vector<Elem>& map) {
  std::string s;
  for (Elem a = 0; a < map.size(); ++a) {
    if (a) s += ", ";
    s += source_names[a] + "->" + target_names[map[a]];
  }
  return s;
}

}  // namespace bipre
