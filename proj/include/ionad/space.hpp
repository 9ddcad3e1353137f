#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ionad/core.hpp"
#include "ionad/family.hpp"
#include "ionad/fincat.hpp"
#include "ionad/ionad.hpp"

namespace ionad {

/// Finite space; opens are bitmasks over the points, kept sorted and unique.
struct FinTopSpace {
  std::size_t points = 0;
  std::vector<std::uint64_t> opens;
  friend bool operator==(const FinTopSpace&, const FinTopSpace&) = default;
};

inline std::uint64_t full_mask(std::size_t points) {
  return points >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << points) - 1;
}

inline FinTopSpace make_space(std::size_t points, std::vector<std::uint64_t> opens) {
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  return FinTopSpace{points, std::move(opens)};
}

inline Report validate_space(const FinTopSpace& s) {
  Report r;
  if (s.points > 63) {
    r.fail("too many points");
    return r;
  }
  const std::uint64_t all = full_mask(s.points);
  if (!std::is_sorted(s.opens.begin(), s.opens.end()) ||
      std::adjacent_find(s.opens.begin(), s.opens.end()) != s.opens.end())
    r.fail("opens are not sorted and unique");
  auto has = [&](std::uint64_t u) { return std::binary_search(s.opens.begin(), s.opens.end(), u); };
  for (auto u : s.opens)
    if (u & ~all) r.fail("open " + std::to_string(u) + " mentions a missing point");
  if (!has(0)) r.fail("empty set is not open");
  if (!has(all)) r.fail("whole space is not open");
  for (auto u : s.opens)
    for (auto v : s.opens) {
      if (!has(u & v)) r.fail("not closed under intersection: " + std::to_string(u) + ", " + std::to_string(v));
      if (!has(u | v)) r.fail("not closed under union: " + std::to_string(u) + ", " + std::to_string(v));
    }
  return r;
}

/// Poset of opens with 0/1 fibers; objects in the sorted order of `opens`.
inline Ionad sigma(const FinTopSpace& s) {
  Report r = validate_space(s);
  if (!r.ok()) throw input_error("invalid space: " + r.first());
  const auto& o = s.opens;
  BasisFunctor m;
  m.points = s.points;
  m.shape = preorder_category(o.size(), [&](Index a, Index b) { return (o[a] & ~o[b]) == 0; });
  for (auto u : o) m.value.push_back(subset_family(s.points, u));
  for (Index g = 0; g < m.shape.morphism_count(); ++g) {
    FamilyMap f{m.value[m.shape.src(g)], m.value[m.shape.dst(g)], {}};
    for (Index x = 0; x < s.points; ++x) f.component.emplace_back(f.src.fibers[x], 0);
    m.action.push_back(std::move(f));
  }
  return make_ionad(std::move(m));
}

/// Interior of a subset, as the support of I applied to its 0/1 family.
inline std::uint64_t interior_operator(const Ionad& x, std::uint64_t a, const Budget& budget = {}) {
  InteriorValue iv = interior_apply(x, subset_family(x.points, a), budget);
  for (auto f : iv.carrier.fibers)
    if (f > 1) throw std::logic_error("interior of a subterminal family is not subterminal");
  return support(iv.carrier);
}

/// Opens are the fixpoints of the interior operator.
inline FinTopSpace lambda(const Ionad& x, const Budget& budget = {}) {
  if (x.points > budget.lambda_points)
    throw budget_exceeded("lambda over " + std::to_string(x.points) + " points exceeds the limit of " +
                          std::to_string(budget.lambda_points));
  std::vector<std::uint64_t> opens;
  for (std::uint64_t a = 0; a <= full_mask(x.points); ++a)
    if (interior_operator(x, a, budget) == a) opens.push_back(a);
  FinTopSpace s{x.points, std::move(opens)};
  Report r = validate_space(s);
  if (!r.ok()) throw std::logic_error("lambda produced an invalid space: " + r.first());
  return s;
}

/// B = C^op, M(c)(x) = C(c, x) indexed by position in `hom(c, x)`; a
/// morphism g : c' → c of C acts by u ↦ u∘g.
inline Ionad alexandroff(const FinCategory& c) {
  Report r = validate_category(c);
  if (!r.ok()) throw input_error("invalid category: " + r.first());
  BasisFunctor m;
  m.points = c.object_count;
  m.shape = opposite(c);
  std::vector<std::vector<std::vector<Index>>> homs(c.object_count);
  for (Index a = 0; a < c.object_count; ++a) {
    PointFamily v;
    for (Index x = 0; x < c.object_count; ++x) {
      homs[a].push_back(c.hom(a, x));
      v.fibers.push_back(homs[a].back().size());
    }
    m.value.push_back(v);
  }
  for (Index g = 0; g < c.morphism_count(); ++g) {
    const Index from = c.dst(g), to = c.src(g);
    FamilyMap f{m.value[from], m.value[to], {}};
    for (Index x = 0; x < c.object_count; ++x) {
      std::vector<Index> comp;
      for (Index u : homs[from][x]) {
        Index ug = c.compose(u, g);
        comp.push_back(static_cast<Index>(std::find(homs[to][x].begin(), homs[to][x].end(), ug) - homs[to][x].begin()));
      }
      f.component.push_back(std::move(comp));
    }
    m.action.push_back(std::move(f));
  }
  return make_ionad(std::move(m));
}

/// The coalgebra over A(C) of a covariant functor P : C → Set, via
/// e ∈ P(x) ↦ class(x, (u ↦ P(u)(e)), id_x).
inline Coalgebra functor_to_coalgebra(const FinCategory& c, const Ionad& ax, const SetValuedFunctor& p,
                                      const Budget& budget = {}) {
  if (p.variance != Variance::covariant || !(p.shape == c)) throw input_error("need a covariant functor on C");
  PointFamily carrier{p.value};
  auto ia = std::make_shared<const InteriorValue>(interior_apply(ax, carrier, budget));
  Coalgebra out{carrier, FamilyMap{carrier, ia->carrier, {}}, ia};
  for (Index x = 0; x < c.object_count; ++x) {
    std::vector<Index> comp;
    auto ids = c.hom(x, x);
    Index id_pos = static_cast<Index>(std::find(ids.begin(), ids.end(), c.identity[x]) - ids.begin());
    for (Index e = 0; e < p.value[x]; ++e) {
      std::size_t phi = ia->homs[x].index_by([&](Index y, Index t) { return p.action[c.hom(x, y)[t]][e]; });
      comp.push_back(ia->classify(x, x, phi, id_pos));
    }
    out.structure.component.push_back(std::move(comp));
  }
  return out;
}

/// Inverse direction: P(u : x → y)(e) = φ_y(u∘s) for a(e) = class(b, φ, s).
inline SetValuedFunctor coalgebra_to_functor(const FinCategory& c, const Coalgebra& a) {
  const auto& ia = *a.interior;
  SetValuedFunctor p{c, Variance::covariant, a.carrier.fibers, {}};
  for (Index u = 0; u < c.morphism_count(); ++u) {
    const Index x = c.src(u), y = c.dst(u);
    std::vector<Index> act;
    for (Index e = 0; e < a.carrier.fibers[x]; ++e) {
      const auto& w = ia.witnesses[x][a.structure.component[x][e]];
      Index s = c.hom(w.object, x)[w.element];
      auto to = c.hom(w.object, y);
      Index pos = static_cast<Index>(std::find(to.begin(), to.end(), c.compose(u, s)) - to.begin());
      act.push_back(ia.homs[w.object].digit(w.map, y, pos));
    }
    p.action.push_back(std::move(act));
  }
  return p;
}

/// A finite group (one-object category, all morphisms invertible) acting on a space.
struct GroupAction {
  FinCategory group;
  FinTopSpace space;
  std::vector<std::vector<Index>> act;  // [g][x]
};

inline std::uint64_t image_of(const GroupAction& a, Index g, std::uint64_t u) {
  std::uint64_t out = 0;
  for (Index x = 0; x < a.space.points; ++x)
    if (u >> x & 1u) out |= std::uint64_t{1} << a.act[g][x];
  return out;
}

inline Report validate_action(const GroupAction& a) {
  Report r = validate_category(a.group);
  if (!r.ok()) return r;
  r = validate_space(a.space);
  if (!r.ok()) return r;
  const auto& g = a.group;
  if (g.object_count != 1) r.fail("group must have one object");
  for (Index h = 0; h < g.morphism_count(); ++h) {
    bool invertible = false;
    for (Index k = 0; k < g.morphism_count(); ++k) invertible = invertible || g.compose(h, k) == g.identity[0];
    if (!invertible) r.fail("element " + std::to_string(h) + " is not invertible");
  }
  if (a.act.size() != g.morphism_count()) {
    r.fail("action table has wrong length");
    return r;
  }
  for (const auto& row : a.act)
    if (row.size() != a.space.points || std::any_of(row.begin(), row.end(), [&](Index y) { return y >= a.space.points; })) {
      r.fail("action row out of range");
      return r;
    }
  for (Index x = 0; x < a.space.points; ++x) {
    if (a.act[g.identity[0]][x] != x) r.fail("identity moves point " + std::to_string(x));
    for (Index h = 0; h < g.morphism_count(); ++h)
      for (Index k = 0; k < g.morphism_count(); ++k)
        if (a.act[g.compose(h, k)][x] != a.act[h][a.act[k][x]])
          r.fail("action law fails at (" + std::to_string(h) + ", " + std::to_string(k) + ")");
  }
  for (Index h = 0; h < g.morphism_count(); ++h)
    for (auto u : a.space.opens)
      if (!std::binary_search(a.space.opens.begin(), a.space.opens.end(), image_of(a, h, u)))
        r.fail("element " + std::to_string(h) + " does not act by a homeomorphism");
  return r;
}

/// Objects are the opens; morphisms U → V are the g with gU ⊆ V, listed as
/// (U, V, g) in lexicographic order; M(U)(x) = {h : hx ∈ U}, acted on by h ↦ gh.
struct EquivariantBasis {
  Ionad ionad;
  std::vector<Index> element;  // group element of each basis morphism
};

inline EquivariantBasis equivariant_full(const GroupAction& a) {
  Report r = validate_action(a);
  if (!r.ok()) throw input_error("invalid group action: " + r.first());
  const auto& g = a.group;
  const auto& o = a.space.opens;
  const std::size_t ng = g.morphism_count();
  FinCategory c;
  c.object_count = o.size();
  std::vector<Index> element;
  c.identity.assign(o.size(), npos);
  for (Index u = 0; u < o.size(); ++u)
    for (Index v = 0; v < o.size(); ++v)
      for (Index h = 0; h < ng; ++h)
        if ((image_of(a, h, o[u]) & ~o[v]) == 0) {
          if (u == v && h == g.identity[0]) c.identity[u] = c.arrows.size();
          c.arrows.push_back({u, v});
          element.push_back(h);
        }
  const std::size_t n = c.arrows.size();
  c.table.assign(n * n, npos);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      if (c.arrows[q].dst != c.arrows[p].src) continue;
      Index h = g.compose(element[p], element[q]);
      for (Index t = 0; t < n; ++t)
        if (c.arrows[t].src == c.arrows[q].src && c.arrows[t].dst == c.arrows[p].dst && element[t] == h) {
          c.table[p * n + q] = t;
          break;
        }
    }
  BasisFunctor m;
  m.points = a.space.points;
  m.shape = c;
  std::vector<std::vector<std::vector<Index>>> members(o.size());  // [U][x] sorted group elements
  for (Index u = 0; u < o.size(); ++u) {
    PointFamily v;
    for (Index x = 0; x < a.space.points; ++x) {
      std::vector<Index> hs;
      for (Index h = 0; h < ng; ++h)
        if (o[u] >> a.act[h][x] & 1u) hs.push_back(h);
      v.fibers.push_back(hs.size());
      members[u].push_back(std::move(hs));
    }
    m.value.push_back(v);
  }
  for (Index p = 0; p < n; ++p) {
    const Index u = c.arrows[p].src, v = c.arrows[p].dst;
    FamilyMap f{m.value[u], m.value[v], {}};
    for (Index x = 0; x < a.space.points; ++x) {
      std::vector<Index> comp;
      for (Index h : members[u][x]) {
        Index gh = g.compose(element[p], h);
        const auto& to = members[v][x];
        comp.push_back(static_cast<Index>(std::lower_bound(to.begin(), to.end(), gh) - to.begin()));
      }
      f.component.push_back(std::move(comp));
    }
    m.action.push_back(std::move(f));
  }
  return {make_ionad(std::move(m)), std::move(element)};
}

inline Ionad equivariant(const GroupAction& a) { return equivariant_full(a).ionad; }

/// leq[x][y] iff every open containing x contains y.
inline std::vector<std::vector<bool>> specialisation_preorder(const FinTopSpace& s) {
  std::vector<std::vector<bool>> leq(s.points, std::vector<bool>(s.points, true));
  for (auto u : s.opens)
    for (Index x = 0; x < s.points; ++x)
      for (Index y = 0; y < s.points; ++y)
        if ((u >> x & 1u) && !(u >> y & 1u)) leq[x][y] = false;
  return leq;
}

/// Preimage of every open is open.
inline bool is_continuous(const std::vector<Index>& f, const FinTopSpace& s, const FinTopSpace& t) {
  for (auto v : t.opens) {
    std::uint64_t pre = 0;
    for (Index x = 0; x < f.size(); ++x)
      if (v >> f[x] & 1u) pre |= std::uint64_t{1} << x;
    if (!std::binary_search(s.opens.begin(), s.opens.end(), pre)) return false;
  }
  return true;
}

}  // namespace ionad
