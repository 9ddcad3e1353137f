#pragma once

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ionad/core.hpp"

namespace ionad {

/// A finite set is its cardinality; elements are 0..size-1.
struct FinSet {
  std::size_t size = 0;
  [[nodiscard]] bool contains(Index e) const { return e < size; }
  friend bool operator==(const FinSet&, const FinSet&) = default;
};

struct Arrow {
  Index src = 0;
  Index dst = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite category with a dense composition table.
///
/// `table[g * n + f]` holds g∘f (f first) when dst(f) == src(g), and npos otherwise.
struct FinCategory {
  std::size_t object_count = 0;
  std::vector<Arrow> arrows;
  std::vector<Index> identity;
  std::vector<Index> table;

  [[nodiscard]] std::size_t morphism_count() const { return arrows.size(); }
  [[nodiscard]] Index src(Index f) const { return arrows[f].src; }
  [[nodiscard]] Index dst(Index f) const { return arrows[f].dst; }
  [[nodiscard]] bool composable(Index g, Index f) const { return dst(f) == src(g); }

  /// g∘f; npos when not composable.
  [[nodiscard]] Index compose(Index g, Index f) const {
    return table[g * arrows.size() + f];
  }

  [[nodiscard]] bool is_identity(Index f) const {
    return identity[arrows[f].src] == f;
  }

  /// Morphisms a → b in index order.
  [[nodiscard]] std::vector<Index> hom(Index a, Index b) const {
    std::vector<Index> out;
    for (Index f = 0; f < arrows.size(); ++f)
      if (arrows[f].src == a && arrows[f].dst == b) out.push_back(f);
    return out;
  }

  [[nodiscard]] std::vector<Index> into(Index b) const {
    std::vector<Index> out;
    for (Index f = 0; f < arrows.size(); ++f)
      if (arrows[f].dst == b) out.push_back(f);
    return out;
  }

  friend bool operator==(const FinCategory&, const FinCategory&) = default;
};

/// Exhaustive law check; each violation names the offending morphisms.
inline Report validate_category(const FinCategory& c) {
  Report r;
  const std::size_t n = c.arrows.size();
  if (c.identity.size() != c.object_count) {
    r.fail("identity table has wrong length");
    return r;
  }
  if (c.table.size() != n * n) {
    r.fail("composition table has wrong size");
    return r;
  }
  for (Index f = 0; f < n; ++f)
    if (c.arrows[f].src >= c.object_count || c.arrows[f].dst >= c.object_count)
      r.fail("morphism " + std::to_string(f) + " has an endpoint out of range");
  if (!r.ok()) return r;
  for (Index o = 0; o < c.object_count; ++o) {
    Index i = c.identity[o];
    if (i >= n || c.arrows[i].src != o || c.arrows[i].dst != o)
      r.fail("identity of object " + std::to_string(o) + " is not an endomorphism of it");
  }
  if (!r.ok()) return r;
  for (Index g = 0; g < n; ++g) {
    for (Index f = 0; f < n; ++f) {
      Index h = c.compose(g, f);
      if (!c.composable(g, f)) {
        if (h != npos)
          r.fail("composite defined on non-composable pair (" + std::to_string(g) + ", " +
                 std::to_string(f) + ")");
        continue;
      }
      if (h >= n) {
        r.fail("composite missing for (" + std::to_string(g) + ", " + std::to_string(f) + ")");
        continue;
      }
      if (c.arrows[h].src != c.arrows[f].src || c.arrows[h].dst != c.arrows[g].dst)
        r.fail("composite of (" + std::to_string(g) + ", " + std::to_string(f) +
               ") has wrong endpoints");
    }
  }
  if (!r.ok()) return r;
  for (Index f = 0; f < n; ++f) {
    if (c.compose(f, c.identity[c.src(f)]) != f ||
        c.compose(c.identity[c.dst(f)], f) != f)
      r.fail("identity law at " + std::to_string(f));
  }
  for (Index h = 0; h < n; ++h)
    for (Index g = 0; g < n; ++g) {
      if (!c.composable(h, g)) continue;
      Index hg = c.compose(h, g);
      for (Index f = 0; f < n; ++f) {
        if (!c.composable(g, f)) continue;
        if (c.compose(hg, f) != c.compose(h, c.compose(g, f)))
          r.fail("associativity at (" + std::to_string(h) + ", " + std::to_string(g) + ", " +
                 std::to_string(f) + ")");
      }
    }
  return r;
}

/// Builds a category from its non-identity arrows and a composition rule on
/// non-identity composable pairs; identities get indices 0..objects-1.
///
/// `rule(g, f)` receives indices into `extra` and returns an index into the
/// final arrow list (identities first, then `extra` shifted by `objects`).
/// Without a rule those entries stay npos for the caller to fill.
inline FinCategory make_category(std::size_t objects, const std::vector<Arrow>& extra,
                                 const std::function<Index(Index, Index)>& rule) {
  FinCategory c;
  c.object_count = objects;
  for (Index o = 0; o < objects; ++o) {
    c.arrows.push_back({o, o});
    c.identity.push_back(o);
  }
  for (const auto& a : extra) c.arrows.push_back(a);
  const std::size_t n = c.arrows.size();
  c.table.assign(n * n, npos);
  for (Index g = 0; g < n; ++g)
    for (Index f = 0; f < n; ++f) {
      if (!c.composable(g, f)) continue;
      if (g < objects)
        c.table[g * n + f] = f;
      else if (f < objects)
        c.table[g * n + f] = g;
      else if (rule)
        c.table[g * n + f] = rule(g - objects, f - objects);
    }
  return c;
}

inline FinCategory terminal_category() { return make_category(1, {}, nullptr); }

inline FinCategory discrete_category(std::size_t n) { return make_category(n, {}, nullptr); }

/// •→• : objects 0, 1 and one arrow (index 2).
inline FinCategory arrow_category() { return make_category(2, {{0, 1}}, nullptr); }

/// Preorder category: one arrow a → b iff leq(a, b); arrows in lexicographic (a, b) order
/// after the identities.
inline FinCategory preorder_category(std::size_t n,
                                     const std::function<bool(Index, Index)>& leq) {
  std::vector<Arrow> extra;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (a != b && leq(a, b)) extra.push_back({a, b});
  FinCategory c = make_category(n, extra, nullptr);
  const std::size_t m = c.arrows.size();
  for (Index g = 0; g < m; ++g)
    for (Index f = 0; f < m; ++f) {
      if (!c.composable(g, f) || c.is_identity(g) || c.is_identity(f)) continue;
      Index s = c.src(f), d = c.dst(g);
      Index h = s == d ? c.identity[s] : c.hom(s, d).front();
      c.table[g * m + f] = h;
    }
  return c;
}

/// One-object category from a monoid multiplication table on 0..k-1 with unit 0.
/// `mul[a * k + b]` is a∘b.
inline FinCategory monoid_category(std::size_t k, const std::vector<Index>& mul) {
  std::vector<Arrow> extra(k - 1, Arrow{0, 0});
  FinCategory c = make_category(1, extra, nullptr);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) c.table[a * k + b] = mul[a * k + b];
  return c;
}

/// Cyclic group Z/n as a one-object category.
inline FinCategory cyclic_group(std::size_t n) {
  std::vector<Index> mul(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
  return monoid_category(n, mul);
}

inline FinCategory opposite(const FinCategory& c) {
  FinCategory o = c;
  const std::size_t n = c.arrows.size();
  for (auto& a : o.arrows) std::swap(a.src, a.dst);
  for (Index g = 0; g < n; ++g)
    for (Index f = 0; f < n; ++f) o.table[g * n + f] = c.table[f * n + g];
  return o;
}

/// Product category; object (a, b) ↦ a * |D| + b, morphism (f, g) ↦ f * |mor D| + g.
inline FinCategory product_category(const FinCategory& c, const FinCategory& d) {
  FinCategory p;
  const std::size_t nc = c.arrows.size(), nd = d.arrows.size();
  p.object_count = c.object_count * d.object_count;
  for (Index f = 0; f < nc; ++f)
    for (Index g = 0; g < nd; ++g)
      p.arrows.push_back({c.src(f) * d.object_count + d.src(g),
                          c.dst(f) * d.object_count + d.dst(g)});
  for (Index a = 0; a < c.object_count; ++a)
    for (Index b = 0; b < d.object_count; ++b)
      p.identity.push_back(c.identity[a] * nd + d.identity[b]);
  const std::size_t n = p.arrows.size();
  p.table.assign(n * n, npos);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      Index cf = c.compose(x / nd, y / nd), dg = d.compose(x % nd, y % nd);
      if (cf != npos && dg != npos) p.table[x * n + y] = cf * nd + dg;
    }
  return p;
}

/// Arrow category C^2: objects are morphisms of C, morphisms k → k' are commuting
/// squares (u, v) with k'∘u = v∘k, listed in lexicographic (k, k', u, v) order.
struct ArrowCategory {
  FinCategory category;
  std::vector<std::pair<Index, Index>> squares;  // per morphism: (u on domains, v on codomains)
};

inline ArrowCategory arrow_category_of(const FinCategory& c) {
  ArrowCategory out;
  const std::size_t n = c.arrows.size();
  auto& a = out.category;
  a.object_count = n;
  std::vector<Index> id_square(n, npos);
  for (Index k = 0; k < n; ++k)
    for (Index k2 = 0; k2 < n; ++k2)
      for (Index u : c.hom(c.src(k), c.src(k2)))
        for (Index v : c.hom(c.dst(k), c.dst(k2)))
          if (c.compose(k2, u) == c.compose(v, k)) {
            if (k == k2 && c.is_identity(u) && c.is_identity(v)) id_square[k] = a.arrows.size();
            a.arrows.push_back({k, k2});
            out.squares.emplace_back(u, v);
          }
  a.identity = id_square;
  const std::size_t m = a.arrows.size();
  a.table.assign(m * m, npos);
  for (Index s = 0; s < m; ++s)
    for (Index t = 0; t < m; ++t) {
      if (a.arrows[t].dst != a.arrows[s].src) continue;
      Index u = c.compose(out.squares[s].first, out.squares[t].first);
      Index v = c.compose(out.squares[s].second, out.squares[t].second);
      for (Index r = 0; r < m; ++r)
        if (a.arrows[r].src == a.arrows[t].src && a.arrows[r].dst == a.arrows[s].dst &&
            out.squares[r] == std::make_pair(u, v)) {
          a.table[s * m + t] = r;
          break;
        }
    }
  return out;
}

/// Functor between finite categories.
struct FinFunctor {
  FinCategory source;
  FinCategory target;
  std::vector<Index> object_map;
  std::vector<Index> morphism_map;
};

inline Report check_functor(const FinFunctor& f) {
  Report r;
  const auto& s = f.source;
  const auto& t = f.target;
  if (f.object_map.size() != s.object_count || f.morphism_map.size() != s.morphism_count()) {
    r.fail("functor tables have wrong length");
    return r;
  }
  for (Index m = 0; m < s.morphism_count(); ++m) {
    Index fm = f.morphism_map[m];
    if (fm >= t.morphism_count() || t.src(fm) != f.object_map[s.src(m)] ||
        t.dst(fm) != f.object_map[s.dst(m)])
      r.fail("endpoints not preserved at morphism " + std::to_string(m));
  }
  if (!r.ok()) return r;
  for (Index o = 0; o < s.object_count; ++o)
    if (f.morphism_map[s.identity[o]] != t.identity[f.object_map[o]])
      r.fail("identity not preserved at object " + std::to_string(o));
  for (Index g = 0; g < s.morphism_count(); ++g)
    for (Index h = 0; h < s.morphism_count(); ++h)
      if (s.composable(g, h) &&
          f.morphism_map[s.compose(g, h)] != t.compose(f.morphism_map[g], f.morphism_map[h]))
        r.fail("composition not preserved at (" + std::to_string(g) + ", " +
               std::to_string(h) + ")");
  return r;
}

enum class Variance { covariant, contravariant };

/// Set-valued functor on a finite shape. For a morphism g, `action[g]` is the
/// function value[src g] → value[dst g] (covariant) or value[dst g] → value[src g]
/// (contravariant).
struct SetValuedFunctor {
  FinCategory shape;
  Variance variance = Variance::covariant;
  std::vector<std::size_t> value;
  std::vector<std::vector<Index>> action;

  [[nodiscard]] Index from_object(Index g) const {
    return variance == Variance::covariant ? shape.src(g) : shape.dst(g);
  }
  [[nodiscard]] Index to_object(Index g) const {
    return variance == Variance::covariant ? shape.dst(g) : shape.src(g);
  }
};

inline Report check_functor(const SetValuedFunctor& f) {
  Report r;
  const auto& c = f.shape;
  if (f.value.size() != c.object_count || f.action.size() != c.morphism_count()) {
    r.fail("functor tables have wrong length");
    return r;
  }
  for (Index g = 0; g < c.morphism_count(); ++g) {
    const auto& a = f.action[g];
    if (a.size() != f.value[f.from_object(g)]) {
      r.fail("action of " + std::to_string(g) + " has wrong domain");
      continue;
    }
    for (Index e : a)
      if (e >= f.value[f.to_object(g)]) r.fail("action of " + std::to_string(g) + " leaves its codomain");
  }
  if (!r.ok()) return r;
  for (Index o = 0; o < c.object_count; ++o)
    for (Index e = 0; e < f.value[o]; ++e)
      if (f.action[c.identity[o]][e] != e) r.fail("identity not preserved at object " + std::to_string(o));
  for (Index g = 0; g < c.morphism_count(); ++g)
    for (Index h = 0; h < c.morphism_count(); ++h) {
      if (!c.composable(g, h)) continue;
      Index gh = c.compose(g, h);
      for (Index e = 0; e < f.value[f.from_object(gh)]; ++e) {
        Index lhs = f.action[gh][e];
        Index rhs = f.variance == Variance::covariant ? f.action[g][f.action[h][e]]
                                                      : f.action[h][f.action[g][e]];
        if (lhs != rhs) {
          r.fail("composition not preserved at (" + std::to_string(g) + ", " + std::to_string(h) + ")");
          break;
        }
      }
    }
  return r;
}

/// Representable B(−, b) as a contravariant functor; elements of B(c, b) are
/// indexed by their position in `shape.hom(c, b)`.
inline SetValuedFunctor representable(const FinCategory& c, Index b) {
  SetValuedFunctor f{c, Variance::contravariant, {}, {}};
  std::vector<std::vector<Index>> homs(c.object_count);
  for (Index o = 0; o < c.object_count; ++o) {
    homs[o] = c.hom(o, b);
    f.value.push_back(homs[o].size());
  }
  for (Index k = 0; k < c.morphism_count(); ++k) {
    // k : s → d acts B(d, b) → B(s, b), u ↦ u∘k
    const auto& from = homs[c.dst(k)];
    const auto& to = homs[c.src(k)];
    std::vector<Index> act;
    for (Index u : from) {
      Index uk = c.compose(u, k);
      act.push_back(static_cast<Index>(std::find(to.begin(), to.end(), uk) - to.begin()));
    }
    f.action.push_back(std::move(act));
  }
  return f;
}

/// Covariant representable C(b, −).
inline SetValuedFunctor corepresentable(const FinCategory& c, Index b) {
  SetValuedFunctor f{c, Variance::covariant, {}, {}};
  std::vector<std::vector<Index>> homs(c.object_count);
  for (Index o = 0; o < c.object_count; ++o) {
    homs[o] = c.hom(b, o);
    f.value.push_back(homs[o].size());
  }
  for (Index k = 0; k < c.morphism_count(); ++k) {
    const auto& from = homs[c.src(k)];
    const auto& to = homs[c.dst(k)];
    std::vector<Index> act;
    for (Index u : from) {
      Index ku = c.compose(k, u);
      act.push_back(static_cast<Index>(std::find(to.begin(), to.end(), ku) - to.begin()));
    }
    f.action.push_back(std::move(act));
  }
  return f;
}

inline SetValuedFunctor constant_functor(const FinCategory& c, Variance v, std::size_t size) {
  SetValuedFunctor f{c, v, std::vector<std::size_t>(c.object_count, size), {}};
  std::vector<Index> id(size);
  std::iota(id.begin(), id.end(), Index{0});
  f.action.assign(c.morphism_count(), id);
  return f;
}

/// A natural transformation as per-object component tables.
using NaturalTransformation = std::vector<std::vector<Index>>;

/// All natural transformations F ⇒ G in lexicographic order of component tables.
inline std::vector<NaturalTransformation> enumerate_natural_transformations(
    const SetValuedFunctor& f, const SetValuedFunctor& g, std::size_t budget = 5'000'000) {
  if (!(f.shape == g.shape) || f.variance != g.variance)
    throw input_error("natural transformations need functors of equal shape and variance");
  const auto& c = f.shape;
  const std::size_t objects = c.object_count;

  // flatten (object, element) slots in lexicographic order
  std::vector<std::pair<Index, Index>> slots;
  for (Index o = 0; o < objects; ++o)
    for (Index e = 0; e < f.value[o]; ++e) slots.emplace_back(o, e);
  for (const auto& [o, e] : slots)
    if (g.value[o] == 0) return {};

  NaturalTransformation eta(objects);
  for (Index o = 0; o < objects; ++o) eta[o].assign(f.value[o], npos);

  // naturality constraints whose two entries are both assigned, for the
  // morphisms touching object o
  auto consistent = [&](Index o) {
    for (Index k = 0; k < c.morphism_count(); ++k) {
      Index a = f.from_object(k), b = f.to_object(k);
      if (a != o && b != o) continue;
      for (Index e = 0; e < f.value[a]; ++e) {
        Index lhs = eta[b][f.action[k][e]];
        if (eta[a][e] == npos || lhs == npos) continue;
        if (lhs != g.action[k][eta[a][e]]) return false;
      }
    }
    return true;
  };

  std::vector<NaturalTransformation> out;
  std::size_t visited = 0;
  std::function<void(Index)> rec = [&](Index i) {
    if (++visited > budget) throw budget_exceeded("natural transformation enumeration budget exceeded");
    if (i == slots.size()) {
      out.push_back(eta);
      return;
    }
    auto [o, e] = slots[i];
    for (Index v = 0; v < g.value[o]; ++v) {
      eta[o][e] = v;
      if (!consistent(o)) continue;
      rec(i + 1);
    }
    eta[o][e] = npos;
  };
  rec(0);
  // full check over every morphism
  std::erase_if(out, [&](const NaturalTransformation& t) {
    for (Index k = 0; k < c.morphism_count(); ++k) {
      Index a = f.from_object(k), b = f.to_object(k);
      for (Index e = 0; e < f.value[a]; ++e)
        if (t[b][f.action[k][e]] != g.action[k][t[a][e]]) return true;
    }
    return false;
  });
  return out;
}

/// Vertical composite (β ∘ α)_o = β_o ∘ α_o.
inline NaturalTransformation vertical_compose(const NaturalTransformation& beta,
                                              const NaturalTransformation& alpha) {
  NaturalTransformation out(alpha.size());
  for (Index o = 0; o < alpha.size(); ++o)
    for (Index e : alpha[o]) out[o].push_back(beta[o][e]);
  return out;
}

inline std::string describe(const FinCategory& c) {
  std::ostringstream os;
  os << c.object_count << " objects, " << c.morphism_count() << " morphisms";
  return os.str();
}

}  // namespace ionad
