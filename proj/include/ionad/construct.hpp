#pragma once

// Finite limits and colimits of ionads presented by bases.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ionad/morphism.hpp"

namespace ionad {

/// One point with the terminal basis.
inline Ionad terminal_ionad() {
  BasisFunctor m;
  m.points = 1;
  m.shape = terminal_category();
  m.value = {terminal_family(1)};
  m.action = {identity_map(m.value[0])};
  return make_ionad(std::move(m));
}

/// Disjoint union of categories; objects and arrows concatenated in order.
inline FinCategory coproduct_category(const std::vector<FinCategory>& cs) {
  FinCategory out;
  std::vector<std::size_t> obj, arr;
  for (const auto& c : cs) {
    obj.push_back(out.object_count);
    arr.push_back(out.arrows.size());
    for (const auto& a : c.arrows) out.arrows.push_back({a.src + obj.back(), a.dst + obj.back()});
    for (Index i : c.identity) out.identity.push_back(i + arr.back());
    out.object_count += c.object_count;
  }
  const std::size_t n = out.arrows.size();
  out.table.assign(n * n, npos);
  for (Index k = 0; k < cs.size(); ++k) {
    const std::size_t m = cs[k].arrows.size();
    for (Index g = 0; g < m; ++g)
      for (Index f = 0; f < m; ++f) {
        Index h = cs[k].compose(g, f);
        if (h != npos) out.table[(g + arr[k]) * n + f + arr[k]] = h + arr[k];
      }
  }
  return out;
}

struct CoproductWitness {
  std::vector<IonadPtr> summands;
  IonadPtr ionad;
  std::vector<std::size_t> point_offset;
  std::vector<std::size_t> object_offset;
  std::vector<std::size_t> arrow_offset;
  std::vector<ContinuousMap> injection;
};

/// Points and bases side by side; each basis value is empty off its summand.
inline CoproductWitness coproduct(const std::vector<IonadPtr>& xs, const Budget& budget = {}) {
  CoproductWitness w{xs, nullptr, {}, {}, {}, {}};
  std::vector<FinCategory> shapes;
  std::size_t points = 0, objects = 0, arrows = 0;
  for (const auto& x : xs) {
    w.point_offset.push_back(points);
    w.object_offset.push_back(objects);
    w.arrow_offset.push_back(arrows);
    points += x->points;
    objects += x->basis.shape.object_count;
    arrows += x->basis.shape.morphism_count();
    shapes.push_back(x->basis.shape);
  }
  BasisFunctor m;
  m.points = points;
  m.shape = coproduct_category(shapes);
  auto widen = [&](Index k, const PointFamily& a) {
    PointFamily out{std::vector<std::size_t>(points, 0)};
    for (Index x = 0; x < a.points(); ++x) out.fibers[w.point_offset[k] + x] = a.fibers[x];
    return out;
  };
  for (Index k = 0; k < xs.size(); ++k)
    for (const auto& v : xs[k]->basis.value) m.value.push_back(widen(k, v));
  for (Index k = 0; k < xs.size(); ++k)
    for (const auto& a : xs[k]->basis.action) {
      FamilyMap f{widen(k, a.src), widen(k, a.dst), std::vector<std::vector<Index>>(points)};
      for (Index x = 0; x < a.component.size(); ++x) f.component[w.point_offset[k] + x] = a.component[x];
      m.action.push_back(std::move(f));
    }
  w.ionad = std::make_shared<const Ionad>(make_ionad(std::move(m)));
  // injection k: basis objects of other summands pull back to the empty family
  for (Index k = 0; k < xs.size(); ++k) {
    ContinuousMap inj{xs[k], w.ionad, std::vector<Index>(xs[k]->points), {}};
    for (Index x = 0; x < xs[k]->points; ++x) inj.point_map[x] = w.point_offset[k] + x;
    for (Index j = 0; j < xs.size(); ++j)
      for (Index b = 0; b < xs[j]->basis.shape.object_count; ++b) {
        if (j == k) {
          inj.lifting.push_back(lift_basis(xs[k]->basis, b, budget));
          continue;
        }
        PointFamily empty{std::vector<std::size_t>(xs[k]->points, 0)};
        auto ia = std::make_shared<const InteriorValue>(interior_apply(*xs[k], empty, budget));
        inj.lifting.push_back(
            Coalgebra{empty, FamilyMap{empty, ia->carrier, std::vector<std::vector<Index>>(xs[k]->points)}, ia});
      }
    w.injection.push_back(std::move(inj));
  }
  return w;
}

/// Interior on the coproduct computed summand by summand.
inline PointFamily coproduct_interior(const CoproductWitness& w, const PointFamily& a, const Budget& budget = {}) {
  if (a.points() != w.ionad->points) throw input_error("coproduct_interior: family over the wrong point set");
  PointFamily out;
  for (Index k = 0; k < w.summands.size(); ++k) {
    PointFamily part;
    for (Index x = 0; x < w.summands[k]->points; ++x) part.fibers.push_back(a.fibers[w.point_offset[k] + x]);
    InteriorValue iv = interior_apply(*w.summands[k], part, budget);
    out.fibers.insert(out.fibers.end(), iv.carrier.fibers.begin(), iv.carrier.fibers.end());
  }
  return out;
}

/// X × Y on points x·|Y| + y, generated by the rectangles M(b) × N(c) on
/// shape B × C; an element (s, t) is stored as s·|N(c)(y)| + t.
struct ProductWitness {
  IonadPtr left;
  IonadPtr right;
  IonadPtr product;
};

namespace detail {

inline Index product_object(const ProductWitness& p, Index b, Index c) {
  return b * p.right->basis.shape.object_count + c;
}

/// Least object of `m` inhabited at point x; flatness makes one exist.
inline Index inhabited(const BasisFunctor& m, Index x) {
  for (Index b = 0; b < m.shape.object_count; ++b)
    if (m.fiber(b, x) > 0) return b;
  throw std::logic_error("flat basis with an empty category of elements");
}

/// Lifting of the projection side `first ? M(b) : N(b)`, represented by
/// a rectangle through the least inhabited object of the other factor.
inline Coalgebra projection_lifting(const ProductWitness& p, bool first, Index b, const Budget& budget) {
  const auto& mx = p.left->basis;
  const auto& my = p.right->basis;
  const std::size_t ny = p.right->points;
  std::vector<Index> proj(p.product->points);
  for (Index q = 0; q < proj.size(); ++q) proj[q] = first ? q / ny : q % ny;
  PointFamily carrier = pullback_family(proj, first ? mx.value[b] : my.value[b]);
  auto ia = std::make_shared<const InteriorValue>(interior_apply(*p.product, carrier, budget));
  Coalgebra out{carrier, FamilyMap{carrier, ia->carrier, {}}, ia};
  for (Index q = 0; q < proj.size(); ++q) {
    const Index x = q / ny, y = q % ny;
    std::vector<Index> comp;
    if (carrier.fibers[q] > 0) {
      const Index other = first ? inhabited(my, y) : inhabited(mx, x);
      const Index o = first ? product_object(p, b, other) : product_object(p, other, b);
      const Index cy = first ? other : b;
      std::size_t phi = ia->homs[o].index_by([&](Index r, Index e) {
        const std::size_t n = my.fiber(cy, r % ny);
        return first ? e / n : e % n;
      });
      for (Index s = 0; s < carrier.fibers[q]; ++s)
        comp.push_back(ia->classify(q, o, phi, first ? s * my.fiber(cy, y) : s));
    }
    out.structure.component.push_back(std::move(comp));
  }
  return out;
}

}  // namespace detail

inline ProductWitness product(const IonadPtr& x, const IonadPtr& y) {
  const auto& m = x->basis;
  const auto& n = y->basis;
  const std::size_t nx = x->points, ny = y->points;
  BasisFunctor p;
  p.points = nx * ny;
  p.shape = product_category(m.shape, n.shape);
  for (Index b = 0; b < m.shape.object_count; ++b)
    for (Index c = 0; c < n.shape.object_count; ++c) {
      PointFamily v;
      for (Index q = 0; q < p.points; ++q) v.fibers.push_back(m.fiber(b, q / ny) * n.fiber(c, q % ny));
      p.value.push_back(std::move(v));
    }
  const std::size_t arrows_n = n.shape.morphism_count();
  for (Index g = 0; g < m.shape.morphism_count(); ++g)
    for (Index h = 0; h < arrows_n; ++h) {
      const Index src = m.shape.src(g) * n.shape.object_count + n.shape.src(h);
      const Index dst = m.shape.dst(g) * n.shape.object_count + n.shape.dst(h);
      FamilyMap f{p.value[src], p.value[dst], {}};
      for (Index q = 0; q < p.points; ++q) {
        const Index xq = q / ny, yq = q % ny;
        const std::size_t from = n.fiber(n.shape.src(h), yq), to = n.fiber(n.shape.dst(h), yq);
        std::vector<Index> comp;
        for (Index e = 0; e < p.value[src].fibers[q]; ++e)
          comp.push_back(m.act(g, xq, e / from) * to + n.act(h, yq, e % from));
        f.component.push_back(std::move(comp));
      }
      p.action.push_back(std::move(f));
    }
  return ProductWitness{x, y, std::make_shared<const Ionad>(make_ionad(std::move(p)))};
}

/// The first or second projection out of the product.
inline ContinuousMap projection(const ProductWitness& p, bool first, const Budget& budget = {}) {
  const std::size_t ny = p.right->points;
  ContinuousMap out{p.product, first ? p.left : p.right, std::vector<Index>(p.product->points), {}};
  for (Index q = 0; q < out.point_map.size(); ++q) out.point_map[q] = first ? q / ny : q % ny;
  for (Index b = 0; b < out.dst->basis.shape.object_count; ++b)
    out.lifting.push_back(detail::projection_lifting(p, first, b, budget));
  return out;
}

/// ⟨f, g⟩ : Z → X × Y; the lifting of (b, c) is the product coalgebra
/// f'(b) × g'(c), found as the unique class over both structure maps.
inline ContinuousMap pair_maps(const ProductWitness& p, const ContinuousMap& f, const ContinuousMap& g,
                               const Budget& budget = {}) {
  if (!same_ionad(f.src, g.src) || !same_ionad(f.dst, p.left) || !same_ionad(g.dst, p.right))
    throw input_error("pair_maps: endpoints do not match");
  const auto& mn = p.right->basis;
  const std::size_t ny = p.right->points, nz = f.point_map.size();
  ContinuousMap h{f.src, p.product, std::vector<Index>(nz), {}};
  for (Index z = 0; z < nz; ++z) h.point_map[z] = f.point_map[z] * ny + g.point_map[z];
  for (Index b = 0; b < p.left->basis.shape.object_count; ++b)
    for (Index c = 0; c < mn.shape.object_count; ++c) {
      const Coalgebra& lf = f.lifting[b];
      const Coalgebra& lg = g.lifting[c];
      PointFamily carrier = pullback_family(h.point_map, p.product->basis.value[detail::product_object(p, b, c)]);
      auto ia = std::make_shared<const InteriorValue>(interior_apply(*f.src, carrier, budget));
      FamilyMap p1{carrier, lf.carrier, {}}, p2{carrier, lg.carrier, {}};
      for (Index z = 0; z < nz; ++z) {
        const std::size_t n = lg.carrier.fibers[z];
        std::vector<Index> c1, c2;
        for (Index e = 0; e < carrier.fibers[z]; ++e) {
          c1.push_back(e / n);
          c2.push_back(e % n);
        }
        p1.component.push_back(std::move(c1));
        p2.component.push_back(std::move(c2));
      }
      Coalgebra out{carrier, FamilyMap{carrier, ia->carrier, {}}, ia};
      for (Index z = 0; z < nz; ++z) {
        std::vector<Index> comp;
        for (Index e = 0; e < carrier.fibers[z]; ++e) {
          const Index want1 = lf.structure.component[z][p1.component[z][e]];
          const Index want2 = lg.structure.component[z][p2.component[z][e]];
          Index found = npos;
          for (Index k = 0; k < ia->carrier.fibers[z] && found == npos; ++k)
            if (map_class(*ia, *lf.interior, p1, z, k) == want1 && map_class(*ia, *lg.interior, p2, z, k) == want2)
              found = k;
          if (found == npos) throw std::logic_error("pair_maps: product coalgebra has no structure class");
          comp.push_back(found);
        }
        out.structure.component.push_back(std::move(comp));
      }
      h.lifting.push_back(std::move(out));
    }
  return h;
}

/// Components of h : Z → X × Y; f'(b) is the coend over C of h'(b, −),
/// realised through the least inhabited rectangle at each point.
inline std::pair<ContinuousMap, ContinuousMap> unpair(const ProductWitness& p, const ContinuousMap& h,
                                                      const Budget& budget = {}) {
  if (!same_ionad(h.dst, p.product)) throw input_error("unpair: target is not the product");
  const auto& mx = p.left->basis;
  const auto& my = p.right->basis;
  const std::size_t ny = p.right->points, nz = h.point_map.size();
  ContinuousMap f{h.src, p.left, std::vector<Index>(nz), {}}, g{h.src, p.right, std::vector<Index>(nz), {}};
  for (Index z = 0; z < nz; ++z) {
    f.point_map[z] = h.point_map[z] / ny;
    g.point_map[z] = h.point_map[z] % ny;
  }
  auto side = [&](bool first, Index b) {
    const auto& base = first ? mx : my;
    const auto& pm = first ? f.point_map : g.point_map;
    PointFamily carrier = pullback_family(pm, base.value[b]);
    auto ia = std::make_shared<const InteriorValue>(interior_apply(*h.src, carrier, budget));
    Coalgebra out{carrier, FamilyMap{carrier, ia->carrier, {}}, ia};
    for (Index z = 0; z < nz; ++z) {
      std::vector<Index> comp;
      if (carrier.fibers[z] > 0) {
        const Index other = first ? detail::inhabited(my, g.point_map[z]) : detail::inhabited(mx, f.point_map[z]);
        const Index bx = first ? b : other, cy = first ? other : b;
        const Coalgebra& l = h.lifting[detail::product_object(p, bx, cy)];
        FamilyMap proj{l.carrier, carrier, {}};
        for (Index w = 0; w < nz; ++w) {
          const std::size_t n = my.fiber(cy, g.point_map[w]);
          std::vector<Index> c;
          for (Index e = 0; e < l.carrier.fibers[w]; ++e) c.push_back(first ? e / n : e % n);
          proj.component.push_back(std::move(c));
        }
        for (Index s = 0; s < carrier.fibers[z]; ++s) {
          const Index e = first ? s * my.fiber(cy, g.point_map[z]) : s;
          comp.push_back(map_class(*l.interior, *ia, proj, z, l.structure.component[z][e]));
        }
      }
      out.structure.component.push_back(std::move(comp));
    }
    return out;
  };
  for (Index b = 0; b < mx.shape.object_count; ++b) f.lifting.push_back(side(true, b));
  for (Index c = 0; c < my.shape.object_count; ++c) g.lifting.push_back(side(false, c));
  return {std::move(f), std::move(g)};
}

/// C ⊗ X on points c'·|X| + x, generated on shape C^op × B by
/// N(c, b)(c', x) = C(c, c') × M(b)(x); an element (w, s) is w·|M(b)(x)| + s
/// with w the position of the arrow in C.hom(c, c').
inline Ionad tensor(const FinCategory& c, const Ionad& x) {
  Report r = validate_category(c);
  if (!r.ok()) throw input_error("invalid category: " + r.first());
  const auto& m = x.basis;
  const std::size_t nx = x.points, nb = m.shape.object_count;
  BasisFunctor n;
  n.points = c.object_count * nx;
  n.shape = product_category(opposite(c), m.shape);
  for (Index a = 0; a < c.object_count; ++a)
    for (Index b = 0; b < nb; ++b) {
      PointFamily v;
      for (Index q = 0; q < n.points; ++q) v.fibers.push_back(c.hom(a, q / nx).size() * m.fiber(b, q % nx));
      n.value.push_back(std::move(v));
    }
  const std::size_t mb = m.shape.morphism_count();
  for (Index u = 0; u < c.morphism_count(); ++u)
    for (Index g = 0; g < mb; ++g) {
      // u : a2 → a in C is a → a2 in C^op and acts by w ↦ w∘u
      const Index a = c.dst(u), a2 = c.src(u);
      const Index src = a * nb + m.shape.src(g), dst = a2 * nb + m.shape.dst(g);
      FamilyMap f{n.value[src], n.value[dst], {}};
      for (Index q = 0; q < n.points; ++q) {
        const Index cq = q / nx, xq = q % nx;
        const auto from = c.hom(a, cq), to = c.hom(a2, cq);
        const std::size_t sf = m.fiber(m.shape.src(g), xq), st = m.fiber(m.shape.dst(g), xq);
        std::vector<Index> comp;
        for (Index e = 0; e < n.value[src].fibers[q]; ++e) {
          const Index w = c.compose(from[e / sf], u);
          const Index pos = static_cast<Index>(std::find(to.begin(), to.end(), w) - to.begin());
          comp.push_back(pos * st + m.act(g, xq, e % sf));
        }
        f.component.push_back(std::move(comp));
      }
      n.action.push_back(std::move(f));
    }
  return make_ionad(std::move(n));
}

/// The cotensor 2 ⋔ X: points are the morphisms α : x → y of V(X), and the
/// basis on the arrow category of B sends k : c → d to the pullback
/// N(k)(α) = {(u, v) ∈ M(d)(x) × M(c)(y) : α_d(u) = M(k)(y)(v)}.
struct CotensorWitness {
  IonadPtr base;
  SpecialisationCategory specialisation;
  ArrowCategory shape;
  IonadPtr ionad;
  std::vector<std::vector<std::vector<std::pair<Index, Index>>>> pairs;  // [k][α] in lexicographic order
  ContinuousMap domain;
  ContinuousMap codomain;
};

inline CotensorWitness cotensor_arrow(const IonadPtr& x, const Budget& budget = {}) {
  const auto& m = x->basis;
  const auto& b = m.shape;
  CotensorWitness w{x, specialisation_category(*x, budget), arrow_category_of(b), nullptr, {}, {}, {}};
  const auto& vx = w.specialisation;
  const std::size_t points = vx.category.morphism_count();
  if (points > budget.enumeration) throw budget_exceeded("cotensor point set exceeds the enumeration budget");
  BasisFunctor n;
  n.points = points;
  n.shape = w.shape.category;
  w.pairs.resize(b.morphism_count());
  for (Index k = 0; k < b.morphism_count(); ++k) {
    const Index c = b.src(k), d = b.dst(k);
    PointFamily v;
    for (Index a = 0; a < points; ++a) {
      const Index px = vx.category.src(a), py = vx.category.dst(a);
      std::vector<std::pair<Index, Index>> ps;
      for (Index u = 0; u < m.fiber(d, px); ++u)
        for (Index t = 0; t < m.fiber(c, py); ++t)
          if (vx.transformation[a][d][u] == m.act(k, py, t)) ps.emplace_back(u, t);
      v.fibers.push_back(ps.size());
      w.pairs[k].push_back(std::move(ps));
    }
    n.value.push_back(std::move(v));
  }
  for (Index sq = 0; sq < w.shape.squares.size(); ++sq) {
    const Index k = n.shape.src(sq), k2 = n.shape.dst(sq);
    const auto [u, v] = w.shape.squares[sq];
    FamilyMap f{n.value[k], n.value[k2], {}};
    for (Index a = 0; a < points; ++a) {
      const Index px = vx.category.src(a), py = vx.category.dst(a);
      const auto& to = w.pairs[k2][a];
      std::vector<Index> comp;
      for (const auto& [e, t] : w.pairs[k][a]) {
        std::pair<Index, Index> img{m.act(v, px, e), m.act(u, py, t)};
        comp.push_back(static_cast<Index>(std::find(to.begin(), to.end(), img) - to.begin()));
      }
      f.component.push_back(std::move(comp));
    }
    n.action.push_back(std::move(f));
  }
  FlatnessReport fr = flatness_check(n);
  if (!fr.ok) throw not_flat("cotensor basis is not flat: " + fr.detail);
  w.ionad = std::make_shared<const Ionad>(make_ionad(std::move(n)));

  // evaluation at the two ends; the domain side lifts through k = id, the
  // codomain side through the first (k, u) that reaches the element
  std::vector<Index> dom(points), cod(points);
  for (Index a = 0; a < points; ++a) {
    dom[a] = vx.category.src(a);
    cod[a] = vx.category.dst(a);
  }
  w.domain = ContinuousMap{w.ionad, x, dom, {}};
  w.codomain = ContinuousMap{w.ionad, x, cod, {}};
  for (Index o = 0; o < b.object_count; ++o)
    for (bool first : {true, false}) {
      PointFamily carrier = pullback_family(first ? dom : cod, m.value[o]);
      auto ia = std::make_shared<const InteriorValue>(interior_apply(*w.ionad, carrier, budget));
      Coalgebra l{carrier, FamilyMap{carrier, ia->carrier, {}}, ia};
      for (Index a = 0; a < points; ++a) {
        std::vector<Index> comp;
        for (Index s = 0; s < carrier.fibers[a]; ++s) {
          Index k = npos, pos = npos;
          if (first) {
            k = b.identity[o];
            const auto& ps = w.pairs[k][a];
            const std::pair<Index, Index> want{s, vx.transformation[a][o][s]};
            pos = static_cast<Index>(std::find(ps.begin(), ps.end(), want) - ps.begin());
          } else {
            for (Index k2 = 0; k2 < b.morphism_count() && k == npos; ++k2) {
              if (b.src(k2) != o) continue;
              const auto& ps = w.pairs[k2][a];
              for (Index i = 0; i < ps.size() && k == npos; ++i)
                if (ps[i].second == s) k = k2, pos = i;
            }
            if (k == npos) throw std::logic_error("cotensor: codomain element outside every pullback");
          }
          std::size_t phi = ia->homs[k].index_by([&](Index r, Index e) {
            return first ? w.pairs[k][r][e].first : w.pairs[k][r][e].second;
          });
          comp.push_back(ia->classify(a, k, phi, pos));
        }
        l.structure.component.push_back(std::move(comp));
      }
      (first ? w.domain : w.codomain).lifting.push_back(std::move(l));
    }
  return w;
}

}  // namespace ionad
