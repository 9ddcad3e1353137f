#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ionad/core.hpp"
#include "ionad/family.hpp"
#include "ionad/fincat.hpp"
#include "ionad/ionad.hpp"

namespace ionad {

/// A sieve on `object`: a set of morphisms into it closed under precomposition.
/// Bit i of `mask` marks the i-th entry of `shape.into(object)`.
struct Sieve {
  Index object = 0;
  std::uint32_t mask = 0;
  std::vector<Index> members;

  [[nodiscard]] bool contains(Index g) const {
    return std::find(members.begin(), members.end(), g) != members.end();
  }
  friend bool operator==(const Sieve& a, const Sieve& b) { return a.object == b.object && a.mask == b.mask; }
};

inline Sieve make_sieve(const FinCategory& c, Index u, std::uint32_t mask) {
  Sieve s{u, mask, {}};
  auto in = c.into(u);
  for (Index i = 0; i < in.size(); ++i)
    if (mask >> i & 1u) s.members.push_back(in[i]);
  return s;
}

inline bool is_sieve(const FinCategory& c, const Sieve& s) {
  for (Index g : s.members) {
    if (c.dst(g) != s.object) return false;
    for (Index h : c.into(c.src(g)))
      if (!s.contains(c.compose(g, h))) return false;
  }
  return true;
}

/// All sieves on u in increasing mask order.
inline std::vector<Sieve> enumerate_sieves(const FinCategory& c, Index u, const Budget& budget = {}) {
  auto in = c.into(u);
  if (in.size() > budget.max_sieve_arrows || in.size() >= 32)
    throw budget_exceeded("object " + std::to_string(u) + " has " + std::to_string(in.size()) +
                          " incoming morphisms, over the sieve budget of " + std::to_string(budget.max_sieve_arrows));
  std::vector<Sieve> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << in.size()); ++mask) {
    Sieve s = make_sieve(c, u, mask);
    if (is_sieve(c, s)) out.push_back(std::move(s));
  }
  return out;
}

inline Sieve maximal_sieve(const FinCategory& c, Index u) {
  return make_sieve(c, u, static_cast<std::uint32_t>((std::uint64_t{1} << c.into(u).size()) - 1));
}

/// h*(S) = {k : h∘k ∈ S} for h : v → u.
inline Sieve pullback_sieve(const FinCategory& c, const Sieve& s, Index h) {
  auto in = c.into(c.src(h));
  std::uint32_t mask = 0;
  for (Index i = 0; i < in.size(); ++i)
    if (s.contains(c.compose(h, in[i]))) mask |= std::uint32_t{1} << i;
  return make_sieve(c, c.src(h), mask);
}

/// Every element of M(u) lies in the image of some member.
inline bool jointly_epi(const BasisFunctor& m, const Sieve& s) {
  for (Index x = 0; x < m.points; ++x) {
    std::vector<bool> hit(m.fiber(s.object, x), false);
    for (Index g : s.members)
      for (Index t = 0; t < m.fiber(m.shape.src(g), x); ++t) hit[m.act(g, x, t)] = true;
    for (bool h : hit)
      if (!h) return false;
  }
  return true;
}

/// Covering sieves stored extensionally per object.
struct GeneratedTopology {
  BasisFunctor basis;
  std::vector<std::vector<Sieve>> sieves;  // all sieves per object
  std::vector<std::vector<Sieve>> covers;  // covering sieves per object

  [[nodiscard]] bool covering(const Sieve& s) const {
    for (const auto& c : covers[s.object])
      if (c.mask == s.mask) return true;
    return false;
  }
};

/// Maximality, pullback stability and transitivity.
inline Report check_topology_axioms(const GeneratedTopology& t) {
  Report r;
  const auto& c = t.basis.shape;
  for (Index u = 0; u < c.object_count; ++u) {
    if (!t.covering(maximal_sieve(c, u))) r.fail("maximal sieve on " + std::to_string(u) + " does not cover");
    for (const auto& s : t.covers[u])
      for (Index h : c.into(u))
        if (!t.covering(pullback_sieve(c, s, h)))
          r.fail("pullback of covering sieve " + std::to_string(s.mask) + " on " + std::to_string(u) +
                 " along " + std::to_string(h) + " does not cover");
    for (const auto& s : t.covers[u])
      for (const auto& rs : t.sieves[u]) {
        if (t.covering(rs)) continue;
        bool locally = true;
        for (Index g : s.members) locally = locally && t.covering(pullback_sieve(c, rs, g));
        if (locally)
          r.fail("transitivity fails for sieve " + std::to_string(rs.mask) + " on " + std::to_string(u));
      }
  }
  return r;
}

inline GeneratedTopology generate_topology(const BasisFunctor& m, const Budget& budget = {}) {
  FlatnessReport f = flatness_check(m);
  if (!f.ok) throw not_flat("topology of a non-flat basis: " + f.detail);
  GeneratedTopology t{m, {}, {}};
  for (Index u = 0; u < m.shape.object_count; ++u) {
    t.sieves.push_back(enumerate_sieves(m.shape, u, budget));
    std::vector<Sieve> cov;
    for (const auto& s : t.sieves.back())
      if (jointly_epi(m, s)) cov.push_back(s);
    t.covers.push_back(std::move(cov));
  }
  Report r = check_topology_axioms(t);
  if (!r.ok()) throw std::logic_error("generated topology violates an axiom: " + r.first());
  return t;
}

struct SheafReport {
  bool ok = true;
  Index object = npos;
  std::uint32_t sieve = 0;
  std::string reason;  // "not-separated" or "no-amalgamation"
  explicit operator bool() const { return ok; }
};

/// Matching families of a presheaf on a sieve, lexicographic in the members' elements.
inline std::vector<std::vector<Index>> matching_families(const FinCategory& c, const SetValuedFunctor& p,
                                                         const Sieve& s, std::size_t budget = 5'000'000) {
  const auto& mem = s.members;
  std::vector<Index> pick(mem.size(), 0);
  std::vector<std::vector<Index>> out;
  std::size_t visited = 0;
  auto position = [&](Index g) {
    return static_cast<Index>(std::find(mem.begin(), mem.end(), g) - mem.begin());
  };
  std::function<void(Index)> rec = [&](Index i) {
    if (++visited > budget) throw budget_exceeded("matching family enumeration budget exceeded");
    if (i == mem.size()) {
      out.push_back(pick);
      return;
    }
    const Index g = mem[i];
    for (Index v = 0; v < p.value[c.src(g)]; ++v) {
      pick[i] = v;
      bool ok = true;
      // x_{g∘k} = P(k)(x_g) against members already chosen, and symmetrically
      for (Index j = 0; j <= i && ok; ++j) {
        const Index gj = mem[j];
        for (Index k : c.into(c.src(gj))) {
          Index jk = position(c.compose(gj, k));
          if (jk <= i && p.action[k][pick[j]] != pick[jk]) {
            ok = false;
            break;
          }
        }
      }
      if (ok) rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// For every covering sieve, P(u) → matching families must be bijective.
inline SheafReport sheaf_check(const GeneratedTopology& t, const SetValuedFunctor& p) {
  const auto& c = t.basis.shape;
  if (!(p.shape == c) || p.variance != Variance::contravariant)
    throw input_error("sheaf_check needs a presheaf on the basis shape");
  for (Index u = 0; u < c.object_count; ++u)
    for (const auto& s : t.covers[u]) {
      auto fams = matching_families(c, p, s);
      std::vector<bool> hit(fams.size(), false);
      for (Index e = 0; e < p.value[u]; ++e) {
        std::vector<Index> fam;
        for (Index g : s.members) fam.push_back(p.action[g][e]);
        auto it = std::lower_bound(fams.begin(), fams.end(), fam);
        Index j = static_cast<Index>(it - fams.begin());
        if (hit[j]) return {false, u, s.mask, "not-separated"};
        hit[j] = true;
      }
      for (bool h : hit)
        if (!h) return {false, u, s.mask, "no-amalgamation"};
    }
  return {};
}

/// δ_b : M(b) → I M(b), s ↦ class(b, id, s).
inline Coalgebra lift_basis(const BasisFunctor& m, Index b, const Budget& budget = {}) {
  auto ib = std::make_shared<const InteriorValue>(interior_apply(m, m.value[b], budget));
  const std::size_t id = ib->homs[b].index_of(identity_map(m.value[b]));
  Coalgebra c{m.value[b], FamilyMap{m.value[b], ib->carrier, {}}, ib};
  for (Index x = 0; x < m.points; ++x) {
    std::vector<Index> comp;
    for (Index s = 0; s < m.fiber(b, x); ++s) comp.push_back(ib->classify(x, b, id, s));
    c.structure.component.push_back(std::move(comp));
  }
  return c;
}

/// L P = M ⊗ P with its canonical coalgebra structure.
struct LeftComparison {
  TensorValue tensor;
  Coalgebra coalgebra;
};

inline LeftComparison comparison_L_full(const BasisFunctor& m, const SetValuedFunctor& p, const Budget& budget = {}) {
  TensorValue tv = tensor_apply(m, p, budget);
  auto il = std::make_shared<const InteriorValue>(interior_apply(m, tv.carrier, budget));
  Coalgebra c{tv.carrier, FamilyMap{tv.carrier, il->carrier, {}}, il};
  for (Index x = 0; x < m.points; ++x) {
    std::vector<Index> comp;
    for (const auto& w : tv.witnesses[x]) {
      std::size_t phi = il->homs[w.object].index_by([&](Index y, Index t) { return tv.classify(y, w.object, w.map, t); });
      comp.push_back(il->classify(x, w.object, phi, w.element));
    }
    c.structure.component.push_back(std::move(comp));
  }
  return {std::move(tv), std::move(c)};
}

inline Coalgebra comparison_L(const BasisFunctor& m, const SetValuedFunctor& p, const Budget& budget = {}) {
  return comparison_L_full(m, p, budget).coalgebra;
}

/// R(A, a)(b): coalgebra morphisms lift_basis(b) → (A, a), as hom-space indices.
struct RightComparison {
  SetValuedFunctor presheaf;
  std::vector<std::vector<std::size_t>> maps;  // [b][element] → index in Hom(M b, A)
};

inline RightComparison comparison_R_full(const BasisFunctor& m, const Coalgebra& c) {
  const auto& ia = *c.interior;
  const auto& sh = m.shape;
  RightComparison r{SetValuedFunctor{sh, Variance::contravariant, {}, {}}, {}};
  for (Index b = 0; b < sh.object_count; ++b) {
    std::vector<std::size_t> good;
    const auto& h = ia.homs[b];
    for (std::size_t phi = 0; phi < h.size(); ++phi) {
      bool ok = true;
      for (Index y = 0; y < m.points && ok; ++y)
        for (Index t = 0; t < m.fiber(b, y) && ok; ++t)
          ok = c.structure.component[y][h.digit(phi, y, t)] == ia.classify(y, b, phi, t);
      if (ok) good.push_back(phi);
    }
    r.presheaf.value.push_back(good.size());
    r.maps.push_back(std::move(good));
  }
  for (Index k = 0; k < sh.morphism_count(); ++k) {
    const Index from = sh.dst(k), to = sh.src(k);
    std::vector<Index> act;
    for (std::size_t phi : r.maps[from]) {
      std::size_t pk = ia.homs[to].index_by([&](Index y, Index t) { return ia.homs[from].digit(phi, y, m.act(k, y, t)); });
      auto it = std::lower_bound(r.maps[to].begin(), r.maps[to].end(), pk);
      act.push_back(static_cast<Index>(it - r.maps[to].begin()));
    }
    r.presheaf.action.push_back(std::move(act));
  }
  return r;
}

inline SetValuedFunctor comparison_R(const BasisFunctor& m, const Coalgebra& c) {
  return comparison_R_full(m, c).presheaf;
}

/// Unit P → R L P, p ↦ (t ↦ class(b, p, t)), is bijective at every b.
inline bool unit_is_iso(const BasisFunctor& m, const SetValuedFunctor& p, const Budget& budget = {}) {
  LeftComparison l = comparison_L_full(m, p, budget);
  RightComparison r = comparison_R_full(m, l.coalgebra);
  const auto& il = *l.coalgebra.interior;
  for (Index b = 0; b < m.shape.object_count; ++b) {
    if (r.maps[b].size() != p.value[b]) return false;
    std::vector<bool> hit(p.value[b], false);
    for (Index q = 0; q < p.value[b]; ++q) {
      std::size_t phi = il.homs[b].index_by([&](Index y, Index t) { return l.tensor.classify(y, b, q, t); });
      auto it = std::lower_bound(r.maps[b].begin(), r.maps[b].end(), phi);
      if (it == r.maps[b].end() || *it != phi) return false;
      Index j = static_cast<Index>(it - r.maps[b].begin());
      if (hit[j]) return false;
      hit[j] = true;
    }
  }
  return true;
}

/// Counit L R c → c, class(b, φ, s) ↦ φ_x(s), is bijective at every point.
inline bool counit_is_iso(const BasisFunctor& m, const Coalgebra& c, const Budget& budget = {}) {
  RightComparison r = comparison_R_full(m, c);
  TensorValue tv = tensor_apply(m, r.presheaf, budget);
  const auto& ia = *c.interior;
  for (Index x = 0; x < m.points; ++x) {
    if (tv.carrier.fibers[x] != c.carrier.fibers[x]) return false;
    std::vector<bool> hit(c.carrier.fibers[x], false);
    for (const auto& w : tv.witnesses[x]) {
      Index e = ia.homs[w.object].digit(r.maps[w.object][w.map], x, w.element);
      if (hit[e]) return false;
      hit[e] = true;
    }
  }
  return true;
}

}  // namespace ionad
