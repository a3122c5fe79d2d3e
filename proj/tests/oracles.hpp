#pragma once

// Brute-force reference implementations used as test oracles. They work
// from the raw tables with plain loops and share no code paths with the
// library's own enumerators.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "bipre/grothendieck.hpp"

namespace bipre::oracle {

// --- categories -----------------------------------------------------------

/// Every (f, g) with g . f = h, by scanning all pairs.
inline std::vector<std::pair<MorId, MorId>> factorizations(const FinCategory& c, MorId h) {
  std::vector<std::pair<MorId, MorId>> out;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g = 0; g < c.morphism_count(); ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      if (c.compose(g, f) == h) out.emplace_back(f, g);
    }
  }
  return out;
}

// --- Grothendieck construction ---------------------------------------------

inline Elem theta_along(const RingBipresheaf& B, MorId f, Elem r1) {
  const ObjId x = B.base().dom(f);
  return B.R2.on(f).map()[B.theta[x].map()[r1]];
}

/// prod over f in Hom(x, y) of (1 + |R1(x)| |R2(y)|).
inline std::size_t pure_count(const RingBipresheaf& B, ObjId x, ObjId y) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < B.base().hom(x, y).size(); ++i) {
    n *= 1 + B.R1.at(x).size() * B.R2.at(y).size();
  }
  return n;
}

/// One slot choice per morphism of Hom(x, y): -1 for absent, otherwise
/// r1 * |R2(y)| + r2.
using Family = std::vector<long>;

/// Mixed-radix walk over all families x -> y.
template <class Fn>
void for_each_family(const RingBipresheaf& B, ObjId x, ObjId y, Fn fn) {
  const auto& hom = B.base().hom(x, y);
  const long radix = static_cast<long>(B.R1.at(x).size() * B.R2.at(y).size()) + 1;
  Family fam(hom.size(), -1);
  while (true) {
    fn(fam);
    std::size_t i = 0;
    for (; i < fam.size(); ++i) {
      if (++fam[i] + 1 < radix) break;
      fam[i] = -1;
    }
    if (i == fam.size()) return;
  }
}

inline Elem family_sum(const RingBipresheaf& B, ObjId x, ObjId y, const Family& fam) {
  const auto& R2y = B.R2.at(y);
  const auto& hom = B.base().hom(x, y);
  Elem sum = R2y.zero();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (fam[i] < 0) continue;
    const Elem r1 = static_cast<Elem>(fam[i]) / R2y.size();
    const Elem r2 = static_cast<Elem>(fam[i]) % R2y.size();
    sum = R2y.plus(sum, R2y.times(theta_along(B, hom[i], r1), r2));
  }
  return sum;
}

struct SumIdCount {
  std::size_t families = 0;
  std::size_t failures = 0;
};

/// Families over every pair with a non-empty hom set.
inline SumIdCount sum_id(const RingBipresheaf& B, bool include_zero) {
  SumIdCount out;
  const std::size_t n = B.base().object_count();
  for (ObjId x = 0; x < n; ++x) {
    for (ObjId y = 0; y < n; ++y) {
      if (B.base().hom(x, y).empty()) continue;
      for_each_family(B, x, y, [&](const Family& fam) {
        bool empty = true;
        for (long s : fam) empty = empty && s < 0;
        if (empty && !include_zero) return;
        ++out.families;
        if (family_sum(B, x, y, fam) != B.R2.at(y).one()) ++out.failures;
      });
    }
  }
  return out;
}

/// Composite psi . phi from the factorization-sum formula, as
/// h -> ((r1, r2) -> multiplicity), zero multiplicities dropped.
using RawComponents = std::map<MorId, std::map<std::pair<Elem, Elem>, std::uint64_t>>;

inline RawComponents compose(const RingBipresheaf& B, const GrMorphism& psi,
                             const GrMorphism& phi) {
  const auto& c = B.base();
  RawComponents out;
  for (const auto& [f, left] : phi.components) {
    for (const auto& [g, right] : psi.components) {
      if (c.cod(f) != c.dom(g)) continue;
      const MorId h = c.compose(g, f);
      const auto& R1 = B.R1.at(phi.source);
      const auto& R2 = B.R2.at(psi.target);
      for (const auto& [p, n] : left) {
        for (const auto& [q, k] : right) {
          const Elem a = R1.times(B.R1.on(f).map()[q.r1], p.r1);
          const Elem b = R2.times(B.R2.on(g).map()[p.r2], q.r2);
          out[h][{a, b}] += n * k;
        }
      }
    }
  }
  return out;
}

inline RawComponents raw(const GrMorphism& m) {
  RawComponents out;
  for (const auto& [f, sum] : m.components) {
    for (const auto& [p, n] : sum) out[f][{p.r1, p.r2}] = n;
  }
  return out;
}

struct WellDefinedCount {
  std::size_t tuples = 0;
  std::size_t failures = 0;
};

/// R2(g)(r1^th(f) r2) (s1^th(g) s2) = (R1(f)(s1) r1)^th(gf) (R2(g)(r2) s2).
inline WellDefinedCount well_definedness(const RingBipresheaf& B) {
  const auto& c = B.base();
  WellDefinedCount out;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    for (MorId g = 0; g < c.morphism_count(); ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      const ObjId x = c.dom(f), y = c.cod(f), z = c.cod(g);
      const auto& R1x = B.R1.at(x);
      const auto& R1y = B.R1.at(y);
      const auto& R2y = B.R2.at(y);
      const auto& R2z = B.R2.at(z);
      const MorId h = c.compose(g, f);
      for (Elem r1 = 0; r1 < R1x.size(); ++r1) {
        for (Elem r2 = 0; r2 < R2y.size(); ++r2) {
          for (Elem s1 = 0; s1 < R1y.size(); ++s1) {
            for (Elem s2 = 0; s2 < R2z.size(); ++s2) {
              ++out.tuples;
              const Elem lhs =
                  R2z.times(B.R2.on(g).map()[R2y.times(theta_along(B, f, r1), r2)],
                            R2z.times(theta_along(B, g, s1), s2));
              const Elem rhs =
                  R2z.times(theta_along(B, h, R1x.times(B.R1.on(f).map()[s1], r1)),
                            R2z.times(B.R2.on(g).map()[r2], s2));
              if (lhs != rhs) ++out.failures;
            }
          }
        }
      }
    }
  }
  return out;
}

// --- audit universe over the arrow category -------------------------------

/// Bipresheaves over x -> y with every component 0 or Z/2. Every map is
/// multiplication by a scalar in F2 and must vanish when either end is 0.
struct ScalarBipresheaf {
  int d1x, d1y, d2x, d2y;  // dimension of A1(x), A1(y), A2(x), A2(y)
  int a1, a2, ex, ey;      // A1(f): A1(y)->A1(x), A2(f), eta_x, eta_y
};

struct ScalarMorphism {
  std::size_t s, t;
  int p1x, p1y, p2x, p2y;
};

struct ScalarUniverse {
  std::vector<ScalarBipresheaf> objects;
  std::vector<ScalarMorphism> arrows;
  std::size_t monos = 0, epis = 0, bimorphisms = 0;
  // Morphisms with a kernel (cokernel) component whose dimension is not
  // among the universe's dimensions.
  std::size_t kernel_outside = 0;
  std::size_t cokernel_outside = 0;
};

inline std::vector<int> scalars(int a, int b) {
  return a && b ? std::vector<int>{0, 1} : std::vector<int>{0};
}

inline ScalarUniverse scalar_universe(const std::vector<int>& dims) {
  ScalarUniverse u;
  for (int d1x : dims)
    for (int d1y : dims)
      for (int d2x : dims)
        for (int d2y : dims)
          for (int a1 : scalars(d1y, d1x))
            for (int a2 : scalars(d2x, d2y))
              for (int ex : scalars(d1x, d2x))
                for (int ey : scalars(d1y, d2y)) {
                  if (ey != (a2 * ex * a1) % 2) continue;
                  u.objects.push_back({d1x, d1y, d2x, d2y, a1, a2, ex, ey});
                }
  auto homs = [&](std::size_t si, std::size_t ti) {
    std::vector<ScalarMorphism> out;
    const auto& S = u.objects[si];
    const auto& T = u.objects[ti];
    for (int p1x : scalars(S.d1x, T.d1x))
      for (int p1y : scalars(S.d1y, T.d1y))
        for (int p2x : scalars(S.d2x, T.d2x))
          for (int p2y : scalars(S.d2y, T.d2y)) {
            if ((p1x * S.a1) % 2 != (T.a1 * p1y) % 2) continue;
            if ((T.a2 * p2x) % 2 != (p2y * S.a2) % 2) continue;
            if ((p2x * S.ex) % 2 != (T.ex * p1x) % 2) continue;
            if ((p2y * S.ey) % 2 != (T.ey * p1y) % 2) continue;
            out.push_back({si, ti, p1x, p1y, p2x, p2y});
          }
    return out;
  };
  std::vector<std::vector<std::vector<ScalarMorphism>>> hom(
      u.objects.size(), std::vector<std::vector<ScalarMorphism>>(u.objects.size()));
  for (std::size_t s = 0; s < u.objects.size(); ++s) {
    for (std::size_t t = 0; t < u.objects.size(); ++t) {
      hom[s][t] = homs(s, t);
      for (const auto& m : hom[s][t]) u.arrows.push_back(m);
    }
  }
  auto is_zero = [](const ScalarMorphism& m) {
    return m.p1x == 0 && m.p1y == 0 && m.p2x == 0 && m.p2y == 0;
  };
  auto then = [](const ScalarMorphism& first, const ScalarMorphism& second) {
    return ScalarMorphism{first.s, second.t, first.p1x * second.p1x, first.p1y * second.p1y,
                          first.p2x * second.p2x, first.p2y * second.p2y};
  };
  for (const auto& m : u.arrows) {
    const auto& S = u.objects[m.s];
    const auto& T = u.objects[m.t];
    auto allowed = [&](int d) { return std::find(dims.begin(), dims.end(), d) != dims.end(); };
    const int src[] = {S.d1x, S.d1y, S.d2x, S.d2y};
    const int tgt[] = {T.d1x, T.d1y, T.d2x, T.d2y};
    const int rank[] = {m.p1x, m.p1y, m.p2x, m.p2y};
    bool k_out = false, q_out = false;
    for (int i = 0; i < 4; ++i) {
      k_out = k_out || !allowed(src[i] - rank[i]);
      q_out = q_out || !allowed(tgt[i] - rank[i]);
    }
    u.kernel_outside += k_out;
    u.cokernel_outside += q_out;
    bool mono = true, epi = true;
    for (std::size_t w = 0; w < u.objects.size(); ++w) {
      for (const auto& v : hom[w][m.s]) {
        if (!is_zero(v) && is_zero(then(v, m))) mono = false;
      }
      for (const auto& v : hom[m.t][w]) {
        if (!is_zero(v) && is_zero(then(m, v))) epi = false;
      }
    }
    u.monos += mono;
    u.epis += epi;
    u.bimorphisms += mono && epi;
  }
  return u;
}

}  // namespace bipre::oracle
