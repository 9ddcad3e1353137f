#pragma once

// Continuous maps of ionads, specialisations between them, and the
// categories they assemble into.

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "ionad/ionad.hpp"
#include "ionad/site.hpp"
#include "ionad/space.hpp"

namespace ionad {

using IonadPtr = std::shared_ptr<const Ionad>;

/// A continuous map X → Y presented by a point map f and, for every basis
/// object b of Y, a coalgebra structure on f⁻¹M(b).
struct ContinuousMap {
  IonadPtr src;
  IonadPtr dst;
  std::vector<Index> point_map;
  std::vector<Coalgebra> lifting;

  friend bool operator==(const ContinuousMap& a, const ContinuousMap& b) {
    return a.point_map == b.point_map && a.lifting == b.lifting;
  }
};

inline bool same_ionad(const IonadPtr& a, const IonadPtr& b) { return a == b || (a && b && *a == *b); }

inline Report check_continuous(const ContinuousMap& m) {
  Report r;
  if (!m.src || !m.dst) {
    r.fail("continuous map without endpoints");
    return r;
  }
  const auto& mx = m.src->basis;
  const auto& my = m.dst->basis;
  if (m.point_map.size() != m.src->points) r.fail("point map is not total");
  for (Index y : m.point_map)
    if (y >= m.dst->points) r.fail("point map leaves the target");
  if (m.lifting.size() != my.shape.object_count) r.fail("one lifting per basis object is required");
  if (!r.ok()) return r;
  for (Index b = 0; b < my.shape.object_count; ++b) {
    const auto& l = m.lifting[b];
    const std::string at = "lifting of basis object " + std::to_string(b);
    if (!(l.carrier == pullback_family(m.point_map, my.value[b]))) {
      r.fail(at + " has the wrong carrier");
      continue;
    }
    for (auto& v : coalgebra_check(mx, l).violations) r.fail(at + ": " + v);
  }
  if (!r.ok()) return r;
  for (Index g = 0; g < my.shape.morphism_count(); ++g)
    if (!is_coalgebra_morphism(pullback_map(m.point_map, my.action[g]), m.lifting[my.shape.src(g)],
                               m.lifting[my.shape.dst(g)]))
      r.fail("lifting is not functorial at basis morphism " + std::to_string(g));
  return r;
}

inline ContinuousMap identity_map(const IonadPtr& x, const Budget& budget = {}) {
  ContinuousMap m{x, x, std::vector<Index>(x->points), {}};
  std::iota(m.point_map.begin(), m.point_map.end(), Index{0});
  for (Index b = 0; b < x->basis.shape.object_count; ++b) m.lifting.push_back(lift_basis(x->basis, b, budget));
  return m;
}

/// δ_A : f⁻¹ J A → I f⁻¹ A on one class, where `ja` = J A over the target and
/// `ifa` = I f⁻¹A over the source: [b, φ, s] ↦ I(f⁻¹φ)(lifting_b(s)).
inline Index delta_at(const ContinuousMap& f, const InteriorValue& ja, const InteriorValue& ifa, Index x,
                      Index cls) {
  const auto& w = ja.witnesses[f.point_map[x]][cls];
  const Coalgebra& l = f.lifting[w.object];
  const auto& lw = l.interior->witnesses[x][l.structure.component[x][w.element]];
  const auto& lh = l.interior->homs[lw.object];
  const auto& phi = ja.homs[w.object];
  std::size_t idx = ifa.homs[lw.object].index_by(
      [&](Index y, Index e) { return phi.digit(w.map, f.point_map[y], lh.digit(lw.map, y, e)); });
  return ifa.classify(x, lw.object, idx, lw.element);
}

/// f*(A, a) = δ_A ∘ f⁻¹a.
inline Coalgebra inverse_image(const ContinuousMap& f, const Coalgebra& c, const Budget& budget = {}) {
  PointFamily carrier = pullback_family(f.point_map, c.carrier);
  auto ifa = std::make_shared<const InteriorValue>(interior_apply(*f.src, carrier, budget));
  Coalgebra out{carrier, FamilyMap{carrier, ifa->carrier, {}}, ifa};
  for (Index x = 0; x < f.point_map.size(); ++x) {
    std::vector<Index> comp;
    for (Index e : c.structure.component[f.point_map[x]]) comp.push_back(delta_at(f, *c.interior, *ifa, x, e));
    out.structure.component.push_back(std::move(comp));
  }
  return out;
}

/// m2 ∘ m1.
inline ContinuousMap compose(const ContinuousMap& m2, const ContinuousMap& m1, const Budget& budget = {}) {
  if (!same_ionad(m1.dst, m2.src)) throw input_error("compose: endpoints do not match");
  ContinuousMap out{m1.src, m2.dst, {}, {}};
  for (Index y : m1.point_map) out.point_map.push_back(m2.point_map[y]);
  for (const auto& l : m2.lifting) out.lifting.push_back(inverse_image(m1, l, budget));
  return out;
}

/// Σ on a continuous map of finite spaces: the lifting of V is the open f⁻¹V.
inline ContinuousMap sigma_map(const std::vector<Index>& f, const IonadPtr& sx, const FinTopSpace& s,
                               const IonadPtr& sy, const FinTopSpace& t) {
  if (f.size() != s.points) throw input_error("sigma_map: point map is not total");
  ContinuousMap m{sx, sy, f, {}};
  for (Index v = 0; v < t.opens.size(); ++v) {
    std::uint64_t pre = 0;
    for (Index x = 0; x < f.size(); ++x)
      if (t.opens[v] >> f[x] & 1u) pre |= std::uint64_t{1} << x;
    auto it = std::lower_bound(s.opens.begin(), s.opens.end(), pre);
    if (it == s.opens.end() || *it != pre) throw input_error("sigma_map: point map is not continuous");
    const Index u = static_cast<Index>(it - s.opens.begin());
    PointFamily carrier = pullback_family(f, sy->basis.value[v]);
    auto ia = std::make_shared<const InteriorValue>(interior_apply(*sx, carrier));
    FamilyMap incl{sx->basis.value[u], carrier, {}};
    for (Index x = 0; x < f.size(); ++x) incl.component.emplace_back(carrier.fibers[x], 0);
    const std::size_t phi = ia->homs[u].index_of(incl);
    Coalgebra c{carrier, FamilyMap{carrier, ia->carrier, {}}, ia};
    for (Index x = 0; x < f.size(); ++x) {
      std::vector<Index> comp;
      for (Index e = 0; e < carrier.fibers[x]; ++e) comp.push_back(ia->classify(x, u, phi, e));
      c.structure.component.push_back(std::move(comp));
    }
    m.lifting.push_back(std::move(c));
  }
  return m;
}

/// All continuous maps X → Y: point maps lexicographic, then lifting
/// structures lexicographic per basis object.
inline std::vector<ContinuousMap> enumerate_continuous_maps(const IonadPtr& x, const IonadPtr& y,
                                                            const Budget& budget = {}) {
  const auto& my = y->basis;
  const auto& c = my.shape;
  const std::size_t nx = x->points, ny = y->points;
  std::size_t maps = 1;
  for (std::size_t i = 0; i < nx; ++i) {
    if (ny != 0 && maps > budget.enumeration / ny) throw budget_exceeded("point map enumeration budget exceeded");
    maps *= ny;
  }
  std::vector<ContinuousMap> out;
  std::vector<Index> f(nx, 0);
  for (std::size_t n = 0; n < maps; ++n) {
    std::vector<std::vector<Coalgebra>> cand;
    bool empty = false;
    for (Index b = 0; b < c.object_count && !empty; ++b) {
      PointFamily carrier = pullback_family(f, my.value[b]);
      auto ia = std::make_shared<const InteriorValue>(interior_apply(*x, carrier, budget));
      cand.push_back(enumerate_coalgebra_structures(x->basis, carrier, ia, budget));
      empty = cand.back().empty();
    }
    if (!empty) {
      // backtrack over basis objects; a morphism is checked once both ends are fixed
      std::vector<FamilyMap> action;
      for (const auto& a : my.action) action.push_back(pullback_map(f, a));
      ContinuousMap m{x, y, f, std::vector<Coalgebra>(c.object_count)};
      std::vector<Index> pick(c.object_count, 0);
      Index b = 0;
      while (true) {
        if (b == c.object_count) {
          out.push_back(m);
          if (b == 0) break;
          --b;
          ++pick[b];
        }
        if (pick[b] == cand[b].size()) {
          pick[b] = 0;
          if (b == 0) break;
          --b;
          ++pick[b];
          continue;
        }
        m.lifting[b] = cand[b][pick[b]];
        bool ok = true;
        for (Index g = 0; g < c.morphism_count() && ok; ++g) {
          const Index s = c.src(g), d = c.dst(g);
          if (std::max(s, d) != b) continue;
          ok = is_coalgebra_morphism(action[g], m.lifting[s], m.lifting[d]);
        }
        if (ok)
          ++b;
        else
          ++pick[b];
      }
    }
    for (Index i = nx; i > 0; --i) {
      if (++f[i - 1] < ny) break;
      f[i - 1] = 0;
    }
  }
  return out;
}

/// One stored component of δ : f⁻¹ J ⇒ I f⁻¹.
struct DeltaComponent {
  PointFamily family;                           // A over the target
  std::shared_ptr<const InteriorValue> outer;   // J A
  std::shared_ptr<const InteriorValue> inner;   // I f⁻¹A
  FamilyMap delta;                              // f⁻¹ J A → I f⁻¹A
};

/// A continuous map as a point map with a comonad morphism, stored at the
/// basis values (first, in object order) and at the requested probes.
struct ComonadMorphismPresentation {
  IonadPtr src;
  IonadPtr dst;
  std::vector<Index> point_map;
  std::vector<DeltaComponent> delta;
};

inline ComonadMorphismPresentation to_comonad_morphism(const ContinuousMap& m,
                                                       const std::vector<PointFamily>& probes = {},
                                                       const Budget& budget = {}) {
  ComonadMorphismPresentation p{m.src, m.dst, m.point_map, {}};
  std::vector<PointFamily> families = m.dst->basis.value;
  families.insert(families.end(), probes.begin(), probes.end());
  for (const auto& a : families) {
    if (a.points() != m.dst->points) throw input_error("probe family over the wrong point set");
    DeltaComponent d;
    d.family = a;
    d.outer = std::make_shared<const InteriorValue>(interior_apply(*m.dst, a, budget));
    d.inner = std::make_shared<const InteriorValue>(interior_apply(*m.src, pullback_family(m.point_map, a), budget));
    d.delta = FamilyMap{pullback_family(m.point_map, d.outer->carrier), d.inner->carrier, {}};
    for (Index x = 0; x < m.point_map.size(); ++x) {
      std::vector<Index> comp;
      for (Index k = 0; k < d.outer->carrier.fibers[m.point_map[x]]; ++k)
        comp.push_back(delta_at(m, *d.outer, *d.inner, x, k));
      d.delta.component.push_back(std::move(comp));
    }
    p.delta.push_back(std::move(d));
  }
  return p;
}

namespace detail {

/// lifting_b(x, s) read off the stored δ at M(b): δ_{M b}[b, id, s].
inline Index stored_lifting(const ComonadMorphismPresentation& p, Index b, Index x, Index s) {
  const auto& d = p.delta[b];
  const std::size_t id = d.outer->homs[b].index_of(identity_map(p.dst->basis.value[b]));
  return d.delta.component[x][d.outer->classify(p.point_map[x], b, id, s)];
}

}  // namespace detail

/// The counit and comultiplication axioms of δ at every stored family.
inline Report check_comonad_morphism(const ComonadMorphismPresentation& p) {
  Report r;
  const auto& mx = p.src->basis;
  const auto& my = p.dst->basis;
  if (p.delta.size() < my.shape.object_count) {
    r.fail("presentation lacks the basis components");
    return r;
  }
  for (Index i = 0; i < p.delta.size(); ++i) {
    const auto& d = p.delta[i];
    const auto& ja = *d.outer;
    const auto& ifa = *d.inner;
    for (Index x = 0; x < p.point_map.size(); ++x) {
      const Index fx = p.point_map[x];
      for (Index k = 0; k < ja.carrier.fibers[fx]; ++k) {
        const std::string at = " at family " + std::to_string(i) + ", point " + std::to_string(x) + ", class " +
                               std::to_string(k);
        const Index dk = d.delta.component[x][k];
        if (ifa.counit(x, dk) != ja.counit(fx, k)) r.fail("counit axiom" + at);
        // Δ ∘ δ_A against I(δ_A) ∘ δ_{JA} ∘ f⁻¹Δ, as terms of I I f⁻¹A
        const auto& w = ja.witnesses[fx][k];
        const Index l = detail::stored_lifting(p, w.object, x, w.element);
        const auto& li = *p.delta[w.object].inner;
        const auto& lw = li.witnesses[x][l];
        Term<Index> rhs{lw.object, std::vector<std::vector<Index>>(mx.points), lw.element};
        for (Index y = 0; y < mx.points; ++y)
          for (Index t = 0; t < mx.fiber(lw.object, y); ++t) {
            Index u = ja.classify(p.point_map[y], w.object, w.map, li.homs[lw.object].digit(lw.map, y, t));
            rhs.map[y].push_back(d.delta.component[y][u]);
          }
        if (!term_equal(mx, x, delta_term(mx, ifa, x, dk), rhs, same_index)) r.fail("comultiplication axiom" + at);
      }
    }
  }
  return r;
}

inline ContinuousMap from_comonad_morphism(const ComonadMorphismPresentation& p) {
  const auto& my = p.dst->basis;
  if (p.delta.size() < my.shape.object_count) throw input_error("presentation lacks the basis components");
  ContinuousMap m{p.src, p.dst, p.point_map, {}};
  for (Index b = 0; b < my.shape.object_count; ++b) {
    const auto& d = p.delta[b];
    PointFamily carrier = pullback_family(p.point_map, my.value[b]);
    Coalgebra c{carrier, FamilyMap{carrier, d.inner->carrier, {}}, d.inner};
    for (Index x = 0; x < p.point_map.size(); ++x) {
      std::vector<Index> comp;
      for (Index s = 0; s < carrier.fibers[x]; ++s) comp.push_back(detail::stored_lifting(p, b, x, s));
      c.structure.component.push_back(std::move(comp));
    }
    m.lifting.push_back(std::move(c));
  }
  return m;
}

/// A 2-cell between continuous maps X → Y: a natural family of coalgebra
/// morphisms lifting_src(b) → lifting_dst(b).
struct Specialisation {
  std::shared_ptr<const ContinuousMap> src;
  std::shared_ptr<const ContinuousMap> dst;
  std::vector<FamilyMap> component;
};

inline Report check_specialisation(const Specialisation& s) {
  Report r;
  if (!s.src || !s.dst || !same_ionad(s.src->src, s.dst->src) || !same_ionad(s.src->dst, s.dst->dst)) {
    r.fail("specialisation between maps with different endpoints");
    return r;
  }
  const auto& my = s.src->dst->basis;
  if (s.component.size() != my.shape.object_count) {
    r.fail("one component per basis object is required");
    return r;
  }
  for (Index b = 0; b < my.shape.object_count; ++b)
    if (!is_coalgebra_morphism(s.component[b], s.src->lifting[b], s.dst->lifting[b]))
      r.fail("component " + std::to_string(b) + " is not a coalgebra morphism");
  if (!r.ok()) return r;
  for (Index g = 0; g < my.shape.morphism_count(); ++g) {
    const Index a = my.shape.src(g), b = my.shape.dst(g);
    if (!(compose(pullback_map(s.dst->point_map, my.action[g]), s.component[a]) ==
          compose(s.component[b], pullback_map(s.src->point_map, my.action[g]))))
      r.fail("not natural at basis morphism " + std::to_string(g));
  }
  return r;
}

inline Specialisation identity_specialisation(const std::shared_ptr<const ContinuousMap>& f) {
  Specialisation s{f, f, {}};
  for (const auto& l : f->lifting) s.component.push_back(identity_map(l.carrier));
  return s;
}

/// β ∘ α.
inline Specialisation vertical_compose(const Specialisation& beta, const Specialisation& alpha) {
  if (!(*alpha.dst == *beta.src)) throw input_error("vertical_compose: specialisations do not meet");
  Specialisation s{alpha.src, beta.dst, {}};
  for (Index b = 0; b < alpha.component.size(); ++b) s.component.push_back(compose(beta.component[b], alpha.component[b]));
  return s;
}

/// All specialisations f ⇒ g in lexicographic order of component tables.
inline std::vector<Specialisation> enumerate_specialisations(const std::shared_ptr<const ContinuousMap>& f,
                                                             const std::shared_ptr<const ContinuousMap>& g,
                                                             const Budget& budget = {}) {
  const auto& my = f->dst->basis;
  const auto& c = my.shape;
  std::vector<std::vector<FamilyMap>> cand(c.object_count);
  for (Index b = 0; b < c.object_count; ++b) {
    HomSpace h(f->lifting[b].carrier, g->lifting[b].carrier);
    if (h.size() > budget.enumeration) throw budget_exceeded("specialisation enumeration budget exceeded");
    for (std::size_t i = 0; i < h.size(); ++i) {
      FamilyMap a = h.at(i);
      if (is_coalgebra_morphism(a, f->lifting[b], g->lifting[b])) cand[b].push_back(std::move(a));
    }
    if (cand[b].empty()) return {};
  }
  std::vector<FamilyMap> fa, ga;
  for (const auto& a : my.action) {
    fa.push_back(pullback_map(f->point_map, a));
    ga.push_back(pullback_map(g->point_map, a));
  }
  std::vector<Specialisation> out;
  Specialisation s{f, g, std::vector<FamilyMap>(c.object_count)};
  std::vector<Index> pick(c.object_count, 0);
  Index b = 0;
  while (true) {
    if (b == c.object_count) {
      out.push_back(s);
      if (b == 0) break;
      --b;
      ++pick[b];
    }
    if (pick[b] == cand[b].size()) {
      pick[b] = 0;
      if (b == 0) break;
      --b;
      ++pick[b];
      continue;
    }
    s.component[b] = cand[b][pick[b]];
    bool ok = true;
    for (Index k = 0; k < c.morphism_count() && ok; ++k) {
      const Index u = c.src(k), v = c.dst(k);
      if (std::max(u, v) != b) continue;
      ok = compose(ga[k], s.component[u]) == compose(s.component[v], fa[k]);
    }
    if (ok)
      ++b;
    else
      ++pick[b];
  }
  return out;
}

namespace detail {

/// A finite category from hom-sets: identities first, then the remaining
/// morphisms ordered by (source, target, position in the hom-set).
/// `comp(g, f)` composes payloads; `id[o]` locates the identity in homs[o][o].
template <class T, class Compose>
std::pair<FinCategory, std::vector<T>> assemble_category(const std::vector<std::vector<std::vector<T>>>& homs,
                                                         const std::vector<Index>& id, Compose&& comp) {
  const std::size_t n = homs.size();
  std::vector<Arrow> extra;
  std::vector<T> payload;
  std::vector<std::vector<std::vector<Index>>> where(n, std::vector<std::vector<Index>>(n));
  for (Index o = 0; o < n; ++o) payload.push_back(homs[o][o][id[o]]);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index k = 0; k < homs[a][b].size(); ++k) {
        if (a == b && k == id[a]) {
          where[a][b].push_back(a);
          continue;
        }
        where[a][b].push_back(n + extra.size());
        extra.push_back({a, b});
        payload.push_back(homs[a][b][k]);
      }
  FinCategory c = make_category(n, extra, nullptr);
  const std::size_t m = c.morphism_count();
  for (Index g = n; g < m; ++g)
    for (Index f = n; f < m; ++f) {
      if (!c.composable(g, f)) continue;
      T h = comp(payload[g], payload[f]);
      const auto& hs = homs[c.src(f)][c.dst(g)];
      auto it = std::find(hs.begin(), hs.end(), h);
      if (it == hs.end()) throw std::logic_error("hom-set is not closed under composition");
      c.table[g * m + f] = where[c.src(f)][c.dst(g)][static_cast<Index>(it - hs.begin())];
    }
  return {std::move(c), std::move(payload)};
}

}  // namespace detail

inline bool operator==(const Specialisation& a, const Specialisation& b) {
  return *a.src == *b.src && *a.dst == *b.dst && a.component == b.component;
}

/// Ion(X, Y): continuous maps and the specialisations between them.
struct HomCategory {
  FinCategory category;
  std::vector<std::shared_ptr<const ContinuousMap>> objects;
  std::vector<Specialisation> morphisms;  // indexed like category.arrows
};

inline HomCategory hom_category(const IonadPtr& x, const IonadPtr& y, const Budget& budget = {}) {
  HomCategory h;
  for (auto& m : enumerate_continuous_maps(x, y, budget))
    h.objects.push_back(std::make_shared<const ContinuousMap>(std::move(m)));
  const std::size_t n = h.objects.size();
  std::vector<std::vector<std::vector<Specialisation>>> homs(n, std::vector<std::vector<Specialisation>>(n));
  std::vector<Index> id(n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) homs[a][b] = enumerate_specialisations(h.objects[a], h.objects[b], budget);
  for (Index a = 0; a < n; ++a) {
    auto& hs = homs[a][a];
    auto it = std::find(hs.begin(), hs.end(), identity_specialisation(h.objects[a]));
    if (it == hs.end()) throw std::logic_error("identity specialisation missing");
    id[a] = static_cast<Index>(it - hs.begin());
  }
  auto [c, payload] = detail::assemble_category(
      homs, id, [](const Specialisation& g, const Specialisation& f) { return vertical_compose(g, f); });
  h.category = std::move(c);
  h.morphisms = std::move(payload);
  return h;
}

/// V(X): points, with natural transformations M(−)(x) ⇒ M(−)(y) as morphisms.
struct SpecialisationCategory {
  FinCategory category;
  std::vector<NaturalTransformation> transformation;  // indexed like category.arrows
};

inline SpecialisationCategory specialisation_category(const Ionad& x, const Budget& budget = {}) {
  const auto& m = x.basis;
  const std::size_t n = x.points;
  std::vector<SetValuedFunctor> at;
  for (Index p = 0; p < n; ++p) at.push_back(m.at_point(p));
  std::vector<std::vector<std::vector<NaturalTransformation>>> homs(n,
                                                                    std::vector<std::vector<NaturalTransformation>>(n));
  std::vector<Index> id(n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) homs[a][b] = enumerate_natural_transformations(at[a], at[b], budget.enumeration);
  for (Index a = 0; a < n; ++a) {
    NaturalTransformation e;
    for (std::size_t v : at[a].value) {
      std::vector<Index> comp(v);
      std::iota(comp.begin(), comp.end(), Index{0});
      e.push_back(std::move(comp));
    }
    id[a] = static_cast<Index>(std::find(homs[a][a].begin(), homs[a][a].end(), e) - homs[a][a].begin());
  }
  auto [c, payload] = detail::assemble_category(
      homs, id, [](const NaturalTransformation& g, const NaturalTransformation& f) { return vertical_compose(g, f); });
  return SpecialisationCategory{std::move(c), std::move(payload)};
}

/// One stored component of ρ : f⁻¹ J ⇒ g⁻¹.
struct RhoComponent {
  PointFamily family;                           // A over the target
  std::shared_ptr<const InteriorValue> outer;   // J A
  std::shared_ptr<const InteriorValue> target;  // I g⁻¹A
  FamilyMap rho;                                // f⁻¹ J A → g⁻¹ A
};

/// A specialisation as ρ, stored at the basis values (first) and at probes.
struct RhoPresentation {
  std::shared_ptr<const ContinuousMap> src;
  std::shared_ptr<const ContinuousMap> dst;
  std::vector<RhoComponent> rho;
};

/// ρ_A[b, φ, s] = φ(α_b(s)).
inline RhoPresentation rho_presentation(const Specialisation& s, const std::vector<PointFamily>& probes = {},
                                        const Budget& budget = {}) {
  const auto& f = *s.src;
  const auto& g = *s.dst;
  RhoPresentation p{s.src, s.dst, {}};
  std::vector<PointFamily> families = f.dst->basis.value;
  families.insert(families.end(), probes.begin(), probes.end());
  for (const auto& a : families) {
    if (a.points() != f.dst->points) throw input_error("probe family over the wrong point set");
    RhoComponent r;
    r.family = a;
    r.outer = std::make_shared<const InteriorValue>(interior_apply(*f.dst, a, budget));
    r.target = std::make_shared<const InteriorValue>(interior_apply(*f.src, pullback_family(g.point_map, a), budget));
    r.rho = FamilyMap{pullback_family(f.point_map, r.outer->carrier), pullback_family(g.point_map, a), {}};
    for (Index x = 0; x < f.point_map.size(); ++x) {
      std::vector<Index> comp;
      for (const auto& w : r.outer->witnesses[f.point_map[x]])
        comp.push_back(r.outer->homs[w.object].digit(w.map, g.point_map[x], s.component[w.object](x, w.element)));
      r.rho.component.push_back(std::move(comp));
    }
    p.rho.push_back(std::move(r));
  }
  return p;
}

namespace detail {

/// α_b(x, s) read off the stored ρ at M(b): ρ_{M b}[b, id, s].
inline Index stored_alpha(const RhoPresentation& p, Index b, Index x, Index s) {
  const auto& r = p.rho[b];
  const std::size_t id = r.outer->homs[b].index_of(identity_map(p.src->dst->basis.value[b]));
  return r.rho.component[x][r.outer->classify(p.src->point_map[x], b, id, s)];
}

}  // namespace detail

/// The square γ ∘ ρJ ∘ f⁻¹Δ = Iρ ∘ δJ ∘ f⁻¹Δ at every stored family, both
/// sides landing in I g⁻¹A.
inline Report check_rho(const RhoPresentation& p) {
  Report r;
  const auto& f = *p.src;
  const auto& g = *p.dst;
  if (p.rho.size() < f.dst->basis.shape.object_count) {
    r.fail("presentation lacks the basis components");
    return r;
  }
  for (Index i = 0; i < p.rho.size(); ++i) {
    const auto& c = p.rho[i];
    const auto& ja = *c.outer;
    const auto& iga = *c.target;
    for (Index x = 0; x < f.point_map.size(); ++x)
      for (Index k = 0; k < ja.carrier.fibers[f.point_map[x]]; ++k) {
        const auto& w = ja.witnesses[f.point_map[x]][k];
        // top: [b, φ, α_b(s)] in J A at g x, then γ
        Index moved = ja.classify(g.point_map[x], w.object, w.map, detail::stored_alpha(p, w.object, x, w.element));
        Index top = delta_at(g, ja, iga, x, moved);
        // bottom: lifting_b(s) = [b', χ, s'], then [b', ρ ∘ f⁻¹ψ_φ ∘ χ, s']
        const Coalgebra& l = f.lifting[w.object];
        const auto& lw = l.interior->witnesses[x][l.structure.component[x][w.element]];
        const auto& lh = l.interior->homs[lw.object];
        std::size_t idx = iga.homs[lw.object].index_by([&](Index y, Index e) {
          return c.rho.component[y][ja.classify(f.point_map[y], w.object, w.map, lh.digit(lw.map, y, e))];
        });
        Index bottom = iga.classify(x, lw.object, idx, lw.element);
        if (top != bottom)
          r.fail("square fails at family " + std::to_string(i) + ", point " + std::to_string(x) + ", class " +
                 std::to_string(k));
      }
  }
  return r;
}

inline Specialisation from_rho(const RhoPresentation& p) {
  const auto& my = p.src->dst->basis;
  if (p.rho.size() < my.shape.object_count) throw input_error("presentation lacks the basis components");
  Specialisation s{p.src, p.dst, {}};
  for (Index b = 0; b < my.shape.object_count; ++b) {
    FamilyMap a{p.src->lifting[b].carrier, p.dst->lifting[b].carrier, {}};
    for (Index x = 0; x < p.src->point_map.size(); ++x) {
      std::vector<Index> comp;
      for (Index e = 0; e < a.src.fibers[x]; ++e) comp.push_back(detail::stored_alpha(p, b, x, e));
      a.component.push_back(std::move(comp));
    }
    s.component.push_back(std::move(a));
  }
  return s;
}

}  // namespace ionad
