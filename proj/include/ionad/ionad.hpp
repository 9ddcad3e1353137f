#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ionad/core.hpp"
#include "ionad/family.hpp"
#include "ionad/fincat.hpp"

namespace ionad {

/// A functor M : B → Set^X on finite data.
struct BasisFunctor {
  FinCategory shape;
  std::size_t points = 0;
  std::vector<PointFamily> value;
  std::vector<FamilyMap> action;

  [[nodiscard]] std::size_t fiber(Index b, Index x) const { return value[b].fibers[x]; }
  [[nodiscard]] Index act(Index g, Index x, Index s) const { return action[g].component[x][s]; }

  /// M(−)(x) as a covariant set-valued functor on B.
  [[nodiscard]] SetValuedFunctor at_point(Index x) const {
    SetValuedFunctor f{shape, Variance::covariant, {}, {}};
    for (const auto& v : value) f.value.push_back(v.fibers[x]);
    for (const auto& a : action) f.action.push_back(a.component[x]);
    return f;
  }
  friend bool operator==(const BasisFunctor&, const BasisFunctor&) = default;
};

inline Report check_basis(const BasisFunctor& m) {
  Report r = validate_category(m.shape);
  if (!r.ok()) return r;
  if (m.value.size() != m.shape.object_count || m.action.size() != m.shape.morphism_count()) {
    r.fail("basis tables have wrong length");
    return r;
  }
  for (const auto& v : m.value)
    if (v.points() != m.points) r.fail("basis value over the wrong number of points");
  for (Index g = 0; g < m.action.size(); ++g) {
    const auto& a = m.action[g];
    if (!(a.src == m.value[m.shape.src(g)]) || !(a.dst == m.value[m.shape.dst(g)])) {
      r.fail("action of " + std::to_string(g) + " has wrong endpoints");
      continue;
    }
    Report fr = check_family_map(a);
    for (auto& v : fr.violations) r.fail("action of " + std::to_string(g) + ": " + v);
  }
  if (!r.ok()) return r;
  for (Index x = 0; x < m.points; ++x) {
    Report fr = check_functor(m.at_point(x));
    for (auto& v : fr.violations) r.fail("at point " + std::to_string(x) + ": " + v);
  }
  return r;
}

/// Cofilteredness of the categories of elements El_x.
struct FlatnessReport {
  bool ok = true;
  Index point = npos;
  int condition = 0;  // 1 nonempty, 2 common source, 3 equalising morphism
  std::string detail;
  std::vector<std::pair<Index, Index>> elements;  // (object, element) pairs of the witness
  std::vector<Index> arrows;                      // parallel pair, condition 3 only
  explicit operator bool() const { return ok; }
};

inline FlatnessReport flatness_check(const BasisFunctor& m) {
  const auto& c = m.shape;
  for (Index x = 0; x < m.points; ++x) {
    std::vector<std::pair<Index, Index>> el;
    for (Index b = 0; b < c.object_count; ++b)
      for (Index s = 0; s < m.fiber(b, x); ++s) el.emplace_back(b, s);
    if (el.empty())
      return {false, x, 1, "category of elements at point " + std::to_string(x) + " is empty", {}, {}};
    auto id_of = [&](Index b, Index s) {
      Index i = 0;
      for (Index o = 0; o < b; ++o) i += m.fiber(o, x);
      return i + s;
    };
    const std::size_t n = el.size();
    // reach[i][j]: some morphism el_i → el_j
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (Index g = 0; g < c.morphism_count(); ++g)
      for (Index s = 0; s < m.fiber(c.src(g), x); ++s)
        reach[id_of(c.src(g), s)][id_of(c.dst(g), m.act(g, x, s))] = true;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        bool found = false;
        for (Index k = 0; k < n && !found; ++k) found = reach[k][i] && reach[k][j];
        if (!found)
          return {false, x, 2,
                  "objects (" + std::to_string(el[i].first) + "," + std::to_string(el[i].second) + ") and (" +
                      std::to_string(el[j].first) + "," + std::to_string(el[j].second) +
                      ") at point " + std::to_string(x) + " have no common source",
                  {el[i], el[j]},
                  {}};
      }
    for (Index g = 0; g < c.morphism_count(); ++g)
      for (Index h = g + 1; h < c.morphism_count(); ++h) {
        if (c.src(g) != c.src(h) || c.dst(g) != c.dst(h)) continue;
        const Index b = c.src(g);
        for (Index s = 0; s < m.fiber(b, x); ++s) {
          if (m.act(g, x, s) != m.act(h, x, s)) continue;
          bool found = false;
          for (Index k : c.into(b)) {
            if (c.compose(g, k) != c.compose(h, k)) continue;
            for (Index t = 0; t < m.fiber(c.src(k), x) && !found; ++t) found = m.act(k, x, t) == s;
            if (found) break;
          }
          if (!found)
            return {false, x, 3,
                    "parallel pair (" + std::to_string(g) + ", " + std::to_string(h) + ") at (" +
                        std::to_string(b) + "," + std::to_string(s) + ") over point " + std::to_string(x) +
                        " has no equalising morphism",
                    {{b, s}},
                    {g, h}};
        }
      }
  }
  return {};
}

/// Canonical representative of an interior class: basis object, index of the
/// map M(object) → A in its hom-space, and element of M(object) at the point.
struct Witness {
  Index object = 0;
  Index map = 0;
  Index element = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// The family I A = ∫^b Hom(M b, A) × M(b)(−), materialised with least witnesses.
class InteriorValue {
 public:
  PointFamily source;
  PointFamily carrier;
  std::vector<std::vector<Witness>> witnesses;  // [x][class]
  std::vector<HomSpace> homs;                   // Hom(M b, A) per basis object

  /// Class of (b, φ, s) at x; φ given by its index in `homs[b]`.
  [[nodiscard]] Index classify(Index x, Index b, std::size_t map, Index s) const {
    return class_of_[x][offset_[x][b] + map * fibers_[b][x] + s];
  }
  [[nodiscard]] Index classify(Index x, Index b, const FamilyMap& phi, Index s) const {
    return classify(x, b, homs[b].index_of(phi), s);
  }
  /// ε_A on a class.
  [[nodiscard]] Index counit(Index x, Index cls) const {
    const auto& w = witnesses[x][cls];
    return homs[w.object].digit(w.map, x, w.element);
  }
  [[nodiscard]] FamilyMap witness_map(Index x, Index cls) const {
    const auto& w = witnesses[x][cls];
    return homs[w.object].at(w.map);
  }

 private:
  friend InteriorValue interior_unchecked(const BasisFunctor&, const PointFamily&, const Budget&);
  std::vector<std::vector<std::size_t>> fibers_;  // [b][x]
  std::vector<std::vector<std::size_t>> offset_;  // [x][b]
  std::vector<std::vector<Index>> class_of_;      // [x][pair]
};

/// Coend evaluation without the flatness precondition (needed to probe
/// non-flat bases).
inline InteriorValue interior_unchecked(const BasisFunctor& m, const PointFamily& a,
                                        const Budget& budget = {}) {
  if (a.points() != m.points) throw input_error("family and basis have different points");
  const auto& c = m.shape;
  const std::size_t nb = c.object_count;
  InteriorValue iv;
  iv.source = a;
  iv.fibers_.resize(nb);
  for (Index b = 0; b < nb; ++b) {
    iv.homs.emplace_back(m.value[b], a);
    if (iv.homs.back().saturated()) throw budget_exceeded("hom-space overflow in interior evaluation");
    iv.fibers_[b] = m.value[b].fibers;
  }
  std::size_t total = 0;
  iv.offset_.assign(m.points, std::vector<std::size_t>(nb, 0));
  std::vector<std::size_t> pairs(m.points, 0);
  for (Index x = 0; x < m.points; ++x) {
    for (Index b = 0; b < nb; ++b) {
      iv.offset_[x][b] = pairs[x];
      std::size_t add = iv.homs[b].size() * m.fiber(b, x);
      if (m.fiber(b, x) != 0 && add / m.fiber(b, x) != iv.homs[b].size())
        throw budget_exceeded("interior pair count overflow");
      pairs[x] += add;
    }
    total += pairs[x];
    if (total > budget.interior_pairs)
      throw budget_exceeded("interior evaluation needs " + std::to_string(total) +
                            "+ pre-quotient pairs, over the budget of " +
                            std::to_string(budget.interior_pairs));
  }
  std::vector<UnionFind> uf;
  for (Index x = 0; x < m.points; ++x) uf.emplace_back(pairs[x]);
  auto pair_index = [&](Index x, Index b, std::size_t phi, Index s) {
    return iv.offset_[x][b] + phi * m.fiber(b, x) + s;
  };
  // (ψ∘M(g), s) ~ (ψ, M(g)(s)) for g : b → b'
  for (Index g = 0; g < c.morphism_count(); ++g) {
    if (c.is_identity(g)) continue;
    const Index b = c.src(g), b2 = c.dst(g);
    const auto& act = m.action[g].component;
    for (std::size_t psi = 0; psi < iv.homs[b2].size(); ++psi) {
      FamilyMap p = iv.homs[b2].at(psi);
      std::size_t phi = iv.homs[b].index_by([&](Index x, Index e) { return p.component[x][act[x][e]]; });
      for (Index x = 0; x < m.points; ++x)
        for (Index s = 0; s < m.fiber(b, x); ++s)
          uf[x].unite(pair_index(x, b, phi, s), pair_index(x, b2, psi, act[x][s]));
    }
  }
  iv.class_of_.resize(m.points);
  iv.witnesses.resize(m.points);
  for (Index x = 0; x < m.points; ++x) {
    std::size_t count = 0;
    iv.class_of_[x] = uf[x].classes(count);
    iv.carrier.fibers.push_back(count);
    auto& ws = iv.witnesses[x];
    ws.reserve(count);
    for (Index b = 0; b < nb; ++b)
      for (std::size_t phi = 0; phi < iv.homs[b].size(); ++phi)
        for (Index s = 0; s < m.fiber(b, x); ++s)
          if (iv.class_of_[x][pair_index(x, b, phi, s)] == ws.size()) ws.push_back({b, phi, s});
  }
  return iv;
}

/// A basis known to be flat, i.e. a bounded ionad presented by its basis.
struct Ionad {
  std::size_t points = 0;
  BasisFunctor basis;
  friend bool operator==(const Ionad&, const Ionad&) = default;
};

inline Ionad make_ionad(BasisFunctor m) {
  Report r = check_basis(m);
  if (!r.ok()) throw input_error("invalid basis: " + r.first());
  FlatnessReport f = flatness_check(m);
  if (!f.ok) throw not_flat("basis is not flat: " + f.detail);
  std::size_t p = m.points;
  return Ionad{p, std::move(m)};
}

inline InteriorValue interior_apply(const Ionad& x, const PointFamily& a, const Budget& budget = {}) {
  return interior_unchecked(x.basis, a, budget);
}

/// Refuses non-flat bases.
inline InteriorValue interior_apply(const BasisFunctor& m, const PointFamily& a, const Budget& budget = {}) {
  FlatnessReport f = flatness_check(m);
  if (!f.ok) throw not_flat("interior of a non-flat basis: " + f.detail);
  return interior_unchecked(m, a, budget);
}

/// I(f) on a single class: class(b, φ, s) ↦ class(b, f∘φ, s).
inline Index map_class(const InteriorValue& ia, const InteriorValue& ib, const FamilyMap& f, Index x,
                       Index cls) {
  const auto& w = ia.witnesses[x][cls];
  const auto& ha = ia.homs[w.object];
  std::size_t idx = ib.homs[w.object].index_by(
      [&](Index y, Index e) { return f.component[y][ha.digit(w.map, y, e)]; });
  return ib.classify(x, w.object, idx, w.element);
}

/// I(f) : I A → I B.
inline FamilyMap interior_map(const InteriorValue& ia, const InteriorValue& ib, const FamilyMap& f) {
  if (!(f.src == ia.source) || !(f.dst == ib.source)) throw input_error("interior_map: family mismatch");
  FamilyMap out{ia.carrier, ib.carrier, {}};
  for (Index x = 0; x < ia.carrier.points(); ++x) {
    std::vector<Index> comp;
    for (Index k = 0; k < ia.carrier.fibers[x]; ++k) comp.push_back(map_class(ia, ib, f, x, k));
    out.component.push_back(std::move(comp));
  }
  return out;
}

/// ε_A : I A → A.
inline FamilyMap counit(const InteriorValue& ia) {
  FamilyMap out{ia.carrier, ia.source, {}};
  for (Index x = 0; x < ia.carrier.points(); ++x) {
    std::vector<Index> comp;
    for (Index k = 0; k < ia.carrier.fibers[x]; ++k) comp.push_back(ia.counit(x, k));
    out.component.push_back(std::move(comp));
  }
  return out;
}

inline FamilyMap counit(const BasisFunctor& m, const PointFamily& a, const Budget& budget = {}) {
  return counit(interior_apply(m, a, budget));
}

/// The map ψ_φ : M(b) → I A, t ↦ class(b, φ, t).
inline std::vector<std::vector<Index>> spread(const InteriorValue& ia, const BasisFunctor& m, Index b,
                                              std::size_t phi) {
  std::vector<std::vector<Index>> out(m.points);
  for (Index y = 0; y < m.points; ++y)
    for (Index t = 0; t < m.fiber(b, y); ++t) out[y].push_back(ia.classify(y, b, phi, t));
  return out;
}

/// Δ_A : I A → I I A against a materialised I I A.
inline FamilyMap comultiplication(const BasisFunctor& m, const InteriorValue& ia, const InteriorValue& iia) {
  if (!(iia.source == ia.carrier)) throw input_error("comultiplication: I I A does not match I A");
  FamilyMap out{ia.carrier, iia.carrier, {}};
  for (Index x = 0; x < m.points; ++x) {
    std::vector<Index> comp;
    for (Index k = 0; k < ia.carrier.fibers[x]; ++k) {
      const auto& w = ia.witnesses[x][k];
      auto psi = spread(ia, m, w.object, w.map);
      std::size_t idx = iia.homs[w.object].index_by([&](Index y, Index e) { return psi[y][e]; });
      comp.push_back(iia.classify(x, w.object, idx, w.element));
    }
    out.component.push_back(std::move(comp));
  }
  return out;
}

inline FamilyMap comultiplication(const BasisFunctor& m, const PointFamily& a, const Budget& budget = {}) {
  InteriorValue ia = interior_apply(m, a, budget);
  InteriorValue iia = interior_apply(m, ia.carrier, budget);
  return comultiplication(m, ia, iia);
}

/// An element of I V presented by a representative (object, map, element);
/// `map[y][t]` is the image of t ∈ M(object)(y), a value of type V.
template <class V>
struct Term {
  Index object = 0;
  std::vector<std::vector<V>> map;
  Index element = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Equality of two terms at point x in a flat basis.
///
/// El_x is cofiltered, so the coend is a filtered colimit and two
/// representatives agree iff a single span (c, r) → both sides equalises
/// their maps. `eq(y, u, v)` decides equality of values at point y.
template <class V, class Eq>
bool term_equal(const BasisFunctor& m, Index x, const Term<V>& a, const Term<V>& b, Eq&& eq) {
  if (a == b) return true;
  const auto& c = m.shape;
  for (Index g = 0; g < c.morphism_count(); ++g) {
    if (c.dst(g) != a.object) continue;
    const Index src = c.src(g);
    for (Index h = 0; h < c.morphism_count(); ++h) {
      if (c.dst(h) != b.object || c.src(h) != src) continue;
      bool has_element = false;
      for (Index r = 0; r < m.fiber(src, x) && !has_element; ++r)
        has_element = m.act(g, x, r) == a.element && m.act(h, x, r) == b.element;
      if (!has_element) continue;
      bool same = true;
      for (Index y = 0; y < m.points && same; ++y)
        for (Index u = 0; u < m.fiber(src, y) && same; ++u)
          same = eq(y, a.map[y][m.act(g, y, u)], b.map[y][m.act(h, y, u)]);
      if (same) return true;
    }
  }
  return false;
}

inline bool same_index(Index, Index u, Index v) { return u == v; }

/// Δ_A of a class as a term of I I A.
inline Term<Index> delta_term(const BasisFunctor& m, const InteriorValue& ia, Index x, Index cls) {
  const auto& w = ia.witnesses[x][cls];
  return Term<Index>{w.object, spread(ia, m, w.object, w.map), w.element};
}

/// The three comonad identities on A, checked elementwise. I I A and I I I A
/// are compared through `term_equal`, so only I A is materialised.
inline Report check_comonad_laws(const BasisFunctor& m, const InteriorValue& ia) {
  Report r;
  for (Index x = 0; x < m.points; ++x)
    for (Index k = 0; k < ia.carrier.fibers[x]; ++k) {
      const auto& w = ia.witnesses[x][k];
      const std::string at = " at point " + std::to_string(x) + ", class " + std::to_string(k);
      // ε_{IA} ∘ Δ_A = id
      if (ia.classify(x, w.object, w.map, w.element) != k) r.fail("left counit law" + at);
      // I(ε_A) ∘ Δ_A = id: ε ∘ ψ_φ must be φ itself
      auto psi = spread(ia, m, w.object, w.map);
      std::size_t idx = ia.homs[w.object].index_by([&](Index y, Index e) { return ia.counit(y, psi[y][e]); });
      if (ia.classify(x, w.object, idx, w.element) != k) r.fail("right counit law" + at);
      // Δ_{IA} ∘ Δ_A = I(Δ_A) ∘ Δ_A in I I I A
      Term<Term<Index>> lhs{w.object, {}, w.element}, rhs{w.object, {}, w.element};
      lhs.map.resize(m.points);
      rhs.map.resize(m.points);
      for (Index y = 0; y < m.points; ++y)
        for (Index t = 0; t < m.fiber(w.object, y); ++t) {
          lhs.map[y].push_back(Term<Index>{w.object, psi, t});
          rhs.map[y].push_back(delta_term(m, ia, y, psi[y][t]));
        }
      auto inner = [&](Index y, const Term<Index>& u, const Term<Index>& v) {
        return term_equal(m, y, u, v, same_index);
      };
      if (!term_equal(m, x, lhs, rhs, inner)) r.fail("coassociativity" + at);
    }
  return r;
}

/// An I-coalgebra: a generalised open.
struct Coalgebra {
  PointFamily carrier;
  FamilyMap structure;  // carrier → interior->carrier
  std::shared_ptr<const InteriorValue> interior;

  friend bool operator==(const Coalgebra& a, const Coalgebra& b) {
    return a.carrier == b.carrier && a.structure == b.structure;
  }
};

/// Counit law and coassociativity, elementwise.
inline Report coalgebra_check(const BasisFunctor& m, const Coalgebra& c) {
  Report r;
  if (c.carrier.points() != m.points || !c.interior || !(c.interior->source == c.carrier)) {
    r.fail("coalgebra carrier does not match the basis");
    return r;
  }
  if (!(c.structure.src == c.carrier) || !(c.structure.dst == c.interior->carrier) ||
      !check_family_map(c.structure).ok()) {
    r.fail("coalgebra structure is not a map into the interior");
    return r;
  }
  const auto& ia = *c.interior;
  for (Index x = 0; x < m.points; ++x)
    for (Index e = 0; e < c.carrier.fibers[x]; ++e) {
      Index k = c.structure.component[x][e];
      if (ia.counit(x, k) != e) {
        r.fail("counit law at point " + std::to_string(x) + ", element " + std::to_string(e));
        continue;
      }
      const auto& w = ia.witnesses[x][k];
      Term<Index> lhs{w.object, spread(ia, m, w.object, w.map), w.element};
      Term<Index> rhs{w.object, {}, w.element};
      rhs.map.resize(m.points);
      for (Index y = 0; y < m.points; ++y)
        for (Index t = 0; t < m.fiber(w.object, y); ++t)
          rhs.map[y].push_back(c.structure.component[y][ia.homs[w.object].digit(w.map, y, t)]);
      if (!term_equal(m, x, lhs, rhs, same_index))
        r.fail("coassociativity at point " + std::to_string(x) + ", element " + std::to_string(e));
    }
  return r;
}

/// Cofree coalgebra (I A, Δ_A); needs I I A.
inline Coalgebra cofree_coalgebra(const BasisFunctor& m, const InteriorValue& ia, const Budget& budget = {}) {
  auto iia = std::make_shared<const InteriorValue>(interior_unchecked(m, ia.carrier, budget));
  return Coalgebra{ia.carrier, comultiplication(m, ia, *iia), iia};
}

/// h is a coalgebra morphism c1 → c2.
inline bool is_coalgebra_morphism(const FamilyMap& h, const Coalgebra& c1, const Coalgebra& c2) {
  if (!(h.src == c1.carrier) || !(h.dst == c2.carrier)) return false;
  for (Index x = 0; x < h.src.points(); ++x)
    for (Index e = 0; e < h.src.fibers[x]; ++e) {
      Index lhs = c2.structure.component[x][h.component[x][e]];
      Index rhs = map_class(*c1.interior, *c2.interior, h, x, c1.structure.component[x][e]);
      if (lhs != rhs) return false;
    }
  return true;
}

/// All coalgebra structures on A, in lexicographic order of structure tables.
inline std::vector<Coalgebra> enumerate_coalgebra_structures(
    const BasisFunctor& m, const PointFamily& a, std::shared_ptr<const InteriorValue> ia = nullptr,
    const Budget& budget = {}) {
  if (!ia) ia = std::make_shared<const InteriorValue>(interior_apply(m, a, budget));
  std::vector<std::pair<Index, Index>> slots;
  std::vector<std::vector<Index>> candidates;
  std::size_t product = 1;
  for (Index x = 0; x < a.points(); ++x)
    for (Index e = 0; e < a.fibers[x]; ++e) {
      std::vector<Index> cand;
      for (Index k = 0; k < ia->carrier.fibers[x]; ++k)
        if (ia->counit(x, k) == e) cand.push_back(k);
      if (cand.empty()) return {};
      if (product > budget.enumeration / cand.size())
        throw budget_exceeded("coalgebra structure enumeration budget exceeded");
      product *= cand.size();
      slots.emplace_back(x, e);
      candidates.push_back(std::move(cand));
    }
  std::vector<Coalgebra> out;
  Coalgebra c{a, FamilyMap{a, ia->carrier, {}}, ia};
  for (Index x = 0; x < a.points(); ++x) c.structure.component.emplace_back(a.fibers[x], 0);
  std::vector<Index> digit(slots.size(), 0);
  while (true) {
    for (Index i = 0; i < slots.size(); ++i)
      c.structure.component[slots[i].first][slots[i].second] = candidates[i][digit[i]];
    if (coalgebra_check(m, c).ok()) out.push_back(c);
    Index i = slots.size();
    while (i > 0) {
      --i;
      if (++digit[i] < candidates[i].size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (slots.empty()) return out;
  }
}

/// Outcome of a finite-limit preservation probe.
struct ProbeReport {
  bool ok = true;
  Index diagram = npos;
  Index point = npos;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// For each diagram D, checks that the canonical comparison I(lim D) → lim I(D)
/// is bijective. Works on non-flat bases too.
inline ProbeReport cartesianness_probe(const BasisFunctor& m, const std::vector<FamilyDiagram>& sample,
                                       const Budget& budget = {}) {
  for (Index di = 0; di < sample.size(); ++di) {
    FamilyDiagram d = sample[di];
    if (d.nodes.empty()) d.points = m.points;
    LimitCone lim = finite_limit(d, budget.enumeration);
    InteriorValue il = interior_unchecked(m, lim.apex, budget);
    std::vector<InteriorValue> in;
    for (const auto& n : d.nodes) in.push_back(interior_unchecked(m, n, budget));
    FamilyDiagram idiag;
    idiag.points = m.points;
    for (const auto& v : in) idiag.nodes.push_back(v.carrier);
    for (const auto& e : d.edges) idiag.edges.push_back({e.from, e.to, interior_map(in[e.from], in[e.to], e.map)});
    LimitCone ilim = finite_limit(idiag, budget.enumeration);
    for (Index x = 0; x < m.points; ++x) {
      if (il.carrier.fibers[x] != ilim.apex.fibers[x])
        return {false, di, x,
                "I(lim) has " + std::to_string(il.carrier.fibers[x]) + " elements but lim I has " +
                    std::to_string(ilim.apex.fibers[x])};
      std::vector<bool> hit(ilim.apex.fibers[x], false);
      for (Index k = 0; k < il.carrier.fibers[x]; ++k) {
        std::vector<Index> tuple;
        for (Index i = 0; i < d.nodes.size(); ++i) tuple.push_back(map_class(il, in[i], lim.projections[i], x, k));
        Index j = ilim.find(x, tuple);
        if (j == npos || hit[j])
          return {false, di, x, "comparison map is not injective at class " + std::to_string(k)};
        hit[j] = true;
      }
    }
  }
  return {};
}

/// M ⊗ P = ∫^b P(b) × M(b)(−) for a presheaf P on the basis shape.
class TensorValue {
 public:
  PointFamily carrier;
  std::vector<std::vector<Witness>> witnesses;  // map field holds the element of P(object)

  [[nodiscard]] Index classify(Index x, Index b, Index p, Index s) const {
    return class_of_[x][offset_[x][b] + p * fibers_[b][x] + s];
  }

 private:
  friend TensorValue tensor_apply(const BasisFunctor&, const SetValuedFunctor&, const Budget&);
  std::vector<std::vector<std::size_t>> fibers_;
  std::vector<std::vector<std::size_t>> offset_;
  std::vector<std::vector<Index>> class_of_;
};

inline TensorValue tensor_apply(const BasisFunctor& m, const SetValuedFunctor& p, const Budget& budget = {}) {
  if (!(p.shape == m.shape) || p.variance != Variance::contravariant)
    throw input_error("tensor needs a presheaf on the basis shape");
  const auto& c = m.shape;
  TensorValue tv;
  tv.fibers_.resize(c.object_count);
  for (Index b = 0; b < c.object_count; ++b) tv.fibers_[b] = m.value[b].fibers;
  tv.offset_.assign(m.points, std::vector<std::size_t>(c.object_count, 0));
  std::vector<UnionFind> uf;
  std::size_t total = 0;
  for (Index x = 0; x < m.points; ++x) {
    std::size_t n = 0;
    for (Index b = 0; b < c.object_count; ++b) {
      tv.offset_[x][b] = n;
      n += p.value[b] * m.fiber(b, x);
    }
    total += n;
    if (total > budget.interior_pairs) throw budget_exceeded("tensor evaluation over budget");
    uf.emplace_back(n);
  }
  for (Index g = 0; g < c.morphism_count(); ++g) {
    if (c.is_identity(g)) continue;
    const Index b = c.src(g), b2 = c.dst(g);
    for (Index x = 0; x < m.points; ++x)
      for (Index q = 0; q < p.value[b2]; ++q)
        for (Index s = 0; s < m.fiber(b, x); ++s)
          uf[x].unite(tv.offset_[x][b] + p.action[g][q] * m.fiber(b, x) + s,
                      tv.offset_[x][b2] + q * m.fiber(b2, x) + m.act(g, x, s));
  }
  tv.class_of_.resize(m.points);
  tv.witnesses.resize(m.points);
  for (Index x = 0; x < m.points; ++x) {
    std::size_t count = 0;
    tv.class_of_[x] = uf[x].classes(count);
    tv.carrier.fibers.push_back(count);
    for (Index b = 0; b < c.object_count; ++b)
      for (Index q = 0; q < p.value[b]; ++q)
        for (Index s = 0; s < m.fiber(b, x); ++s)
          if (tv.class_of_[x][tv.offset_[x][b] + q * m.fiber(b, x) + s] == tv.witnesses[x].size())
            tv.witnesses[x].push_back({b, q, s});
  }
  return tv;
}

/// M ⊗ τ for a natural transformation τ : P ⇒ Q.
inline FamilyMap tensor_map(const TensorValue& tp, const TensorValue& tq, const NaturalTransformation& tau) {
  FamilyMap out{tp.carrier, tq.carrier, {}};
  for (Index x = 0; x < tp.carrier.points(); ++x) {
    std::vector<Index> comp;
    for (const auto& w : tp.witnesses[x]) comp.push_back(tq.classify(x, w.object, tau[w.object][w.map], w.element));
    out.component.push_back(std::move(comp));
  }
  return out;
}

/// Finite diagram of presheaves on a fixed shape.
struct PresheafDiagram {
  struct Edge {
    Index from = 0;
    Index to = 0;
    NaturalTransformation map;
  };
  FinCategory shape;
  std::vector<SetValuedFunctor> nodes;
  std::vector<Edge> edges;
};

struct PresheafLimit {
  SetValuedFunctor apex;
  std::vector<NaturalTransformation> projections;
  std::vector<std::vector<std::vector<Index>>> tuples;  // [object][element]
};

/// Objectwise limit of presheaves, tuples in lexicographic order.
inline PresheafLimit presheaf_limit(const PresheafDiagram& d) {
  const auto& c = d.shape;
  PresheafLimit out;
  out.apex = SetValuedFunctor{c, Variance::contravariant, {}, {}};
  out.tuples.resize(c.object_count);
  for (Index o = 0; o < c.object_count; ++o) {
    FamilyDiagram fd;
    fd.points = 1;
    for (const auto& n : d.nodes) fd.nodes.push_back(PointFamily{{n.value[o]}});
    for (const auto& e : d.edges)
      fd.edges.push_back({e.from, e.to, FamilyMap{fd.nodes[e.from], fd.nodes[e.to], {e.map[o]}}});
    LimitCone lc = finite_limit(fd);
    out.tuples[o] = lc.tuples[0];
    out.apex.value.push_back(lc.apex.fibers[0]);
  }
  for (Index k = 0; k < c.morphism_count(); ++k) {
    std::vector<Index> act;
    const auto& from = out.tuples[c.dst(k)];
    const auto& to = out.tuples[c.src(k)];
    for (const auto& t : from) {
      std::vector<Index> u;
      for (Index i = 0; i < d.nodes.size(); ++i) u.push_back(d.nodes[i].action[k][t[i]]);
      act.push_back(static_cast<Index>(std::lower_bound(to.begin(), to.end(), u) - to.begin()));
    }
    out.apex.action.push_back(std::move(act));
  }
  for (Index i = 0; i < d.nodes.size(); ++i) {
    NaturalTransformation pr(c.object_count);
    for (Index o = 0; o < c.object_count; ++o)
      for (const auto& t : out.tuples[o]) pr[o].push_back(t[i]);
    out.projections.push_back(std::move(pr));
  }
  return out;
}

/// For each presheaf diagram D, checks that M ⊗ (lim D) → lim (M ⊗ D) is bijective.
inline ProbeReport tensor_probe(const BasisFunctor& m, const std::vector<PresheafDiagram>& sample,
                                const Budget& budget = {}) {
  for (Index di = 0; di < sample.size(); ++di) {
    const auto& d = sample[di];
    PresheafLimit lim = presheaf_limit(d);
    TensorValue tl = tensor_apply(m, lim.apex, budget);
    std::vector<TensorValue> tn;
    for (const auto& n : d.nodes) tn.push_back(tensor_apply(m, n, budget));
    FamilyDiagram fd;
    fd.points = m.points;
    for (const auto& t : tn) fd.nodes.push_back(t.carrier);
    for (const auto& e : d.edges) fd.edges.push_back({e.from, e.to, tensor_map(tn[e.from], tn[e.to], e.map)});
    LimitCone flim = finite_limit(fd, budget.enumeration);
    for (Index x = 0; x < m.points; ++x) {
      if (tl.carrier.fibers[x] != flim.apex.fibers[x])
        return {false, di, x,
                "M⊗(lim) has " + std::to_string(tl.carrier.fibers[x]) + " elements but lim M⊗ has " +
                    std::to_string(flim.apex.fibers[x])};
      std::vector<bool> hit(flim.apex.fibers[x], false);
      for (Index k = 0; k < tl.carrier.fibers[x]; ++k) {
        const auto& w = tl.witnesses[x][k];
        std::vector<Index> tuple;
        for (Index i = 0; i < d.nodes.size(); ++i)
          tuple.push_back(tn[i].classify(x, w.object, lim.projections[i][w.object][w.map], w.element));
        Index j = flim.find(x, tuple);
        if (j == npos || hit[j]) return {false, di, x, "comparison map is not injective"};
        hit[j] = true;
      }
    }
  }
  return {};
}

/// Terminal presheaf, binary products of representables, and equalisers of
/// pairs y(g), y(h) for parallel g ≠ h. A basis is flat iff M ⊗ (−)
/// preserves all of these.
inline std::vector<PresheafDiagram> standard_flatness_probes(const FinCategory& c) {
  std::vector<PresheafDiagram> out;
  out.push_back(PresheafDiagram{c, {}, {}});
  std::vector<SetValuedFunctor> y;
  for (Index b = 0; b < c.object_count; ++b) y.push_back(representable(c, b));
  for (Index a = 0; a < c.object_count; ++a)
    for (Index b = a; b < c.object_count; ++b) out.push_back(PresheafDiagram{c, {y[a], y[b]}, {}});
  auto yoneda = [&](Index g) {
    NaturalTransformation t(c.object_count);
    for (Index o = 0; o < c.object_count; ++o) {
      auto from = c.hom(o, c.src(g)), to = c.hom(o, c.dst(g));
      for (Index u : from)
        t[o].push_back(static_cast<Index>(std::find(to.begin(), to.end(), c.compose(g, u)) - to.begin()));
    }
    return t;
  };
  for (Index g = 0; g < c.morphism_count(); ++g)
    for (Index h = g + 1; h < c.morphism_count(); ++h)
      if (c.src(g) == c.src(h) && c.dst(g) == c.dst(h))
        out.push_back(PresheafDiagram{c, {y[c.src(g)], y[c.dst(g)]}, {{0, 1, yoneda(g)}, {0, 1, yoneda(h)}}});
  return out;
}

/// Colimit of a diagram of coalgebras, computed on carriers.
struct CoalgebraDiagram {
  struct Edge {
    Index from = 0;
    Index to = 0;
    FamilyMap map;
  };
  std::vector<Coalgebra> nodes;
  std::vector<Edge> edges;
  std::size_t points = 0;
};

struct CoalgebraColimit {
  Coalgebra apex;
  ColimitCocone cocone;
};

inline CoalgebraColimit coalgebra_colimit(const BasisFunctor& m, const CoalgebraDiagram& d,
                                          const Budget& budget = {}) {
  for (const auto& e : d.edges)
    if (!is_coalgebra_morphism(e.map, d.nodes[e.from], d.nodes[e.to]))
      throw input_error("coalgebra diagram edge is not a coalgebra morphism");
  FamilyDiagram fd;
  fd.points = m.points;
  for (const auto& n : d.nodes) fd.nodes.push_back(n.carrier);
  for (const auto& e : d.edges) fd.edges.push_back({e.from, e.to, e.map});
  ColimitCocone cc = finite_colimit(fd);
  auto iq = std::make_shared<const InteriorValue>(interior_apply(m, cc.apex, budget));
  Coalgebra q{cc.apex, FamilyMap{cc.apex, iq->carrier, {}}, iq};
  for (Index x = 0; x < m.points; ++x) {
    std::vector<Index> comp(cc.apex.fibers[x], npos);
    for (Index i = 0; i < d.nodes.size(); ++i)
      for (Index e = 0; e < d.nodes[i].carrier.fibers[x]; ++e) {
        Index cls = cc.injections[i].component[x][e];
        Index v = map_class(*d.nodes[i].interior, *iq, cc.injections[i], x, d.nodes[i].structure.component[x][e]);
        if (comp[cls] == npos)
          comp[cls] = v;
        else if (comp[cls] != v)
          throw input_error("induced coalgebra structure is not well defined on the colimit");
      }
    q.structure.component.push_back(std::move(comp));
  }
  return {std::move(q), std::move(cc)};
}

}  // namespace ionad
