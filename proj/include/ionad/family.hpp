#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ionad/core.hpp"
#include "ionad/fincat.hpp"

namespace ionad {

/// An object of Set^X: one finite set per point.
struct PointFamily {
  std::vector<std::size_t> fibers;

  [[nodiscard]] std::size_t points() const { return fibers.size(); }
  [[nodiscard]] std::size_t fiber(Index x) const { return fibers[x]; }
  [[nodiscard]] std::size_t total() const {
    return std::accumulate(fibers.begin(), fibers.end(), std::size_t{0});
  }
  friend bool operator==(const PointFamily&, const PointFamily&) = default;
  friend auto operator<=>(const PointFamily&, const PointFamily&) = default;
};

inline PointFamily terminal_family(std::size_t points) {
  return PointFamily{std::vector<std::size_t>(points, 1)};
}

/// 0/1-valued family of a subset given as a bitmask.
inline PointFamily subset_family(std::size_t points, std::uint64_t mask) {
  PointFamily a;
  for (Index x = 0; x < points; ++x) a.fibers.push_back((mask >> x) & 1U);
  return a;
}

/// Points with a nonempty fiber, as a bitmask.
inline std::uint64_t support(const PointFamily& a) {
  std::uint64_t m = 0;
  for (Index x = 0; x < a.points(); ++x)
    if (a.fibers[x] > 0) m |= std::uint64_t{1} << x;
  return m;
}

/// A morphism of Set^X.
struct FamilyMap {
  PointFamily src;
  PointFamily dst;
  std::vector<std::vector<Index>> component;

  [[nodiscard]] Index operator()(Index x, Index e) const { return component[x][e]; }
  friend bool operator==(const FamilyMap&, const FamilyMap&) = default;
};

inline Report check_family_map(const FamilyMap& f) {
  Report r;
  if (f.src.points() != f.dst.points() || f.component.size() != f.src.points()) {
    r.fail("family map with mismatched points");
    return r;
  }
  for (Index x = 0; x < f.src.points(); ++x) {
    if (f.component[x].size() != f.src.fibers[x]) r.fail("component at point " + std::to_string(x) + " is not total");
    for (Index e : f.component[x])
      if (e >= f.dst.fibers[x]) r.fail("component at point " + std::to_string(x) + " leaves its codomain");
  }
  return r;
}

inline FamilyMap identity_map(const PointFamily& a) {
  FamilyMap f{a, a, {}};
  for (std::size_t n : a.fibers) {
    std::vector<Index> c(n);
    std::iota(c.begin(), c.end(), Index{0});
    f.component.push_back(std::move(c));
  }
  return f;
}

/// g ∘ f.
inline FamilyMap compose(const FamilyMap& g, const FamilyMap& f) {
  if (!(f.dst == g.src)) throw input_error("composing family maps with mismatched families");
  FamilyMap h{f.src, g.dst, {}};
  for (Index x = 0; x < f.src.points(); ++x) {
    std::vector<Index> c;
    c.reserve(f.component[x].size());
    for (Index e : f.component[x]) c.push_back(g.component[x][e]);
    h.component.push_back(std::move(c));
  }
  return h;
}

inline FamilyMap terminal_map(const PointFamily& a) {
  FamilyMap f{a, terminal_family(a.points()), {}};
  for (std::size_t n : a.fibers) f.component.emplace_back(n, 0);
  return f;
}

[[nodiscard]] inline bool is_bijective(const FamilyMap& f) {
  for (Index x = 0; x < f.src.points(); ++x) {
    if (f.src.fibers[x] != f.dst.fibers[x]) return false;
    std::vector<bool> hit(f.dst.fibers[x], false);
    for (Index e : f.component[x]) {
      if (hit[e]) return false;
      hit[e] = true;
    }
  }
  return true;
}

/// Inverse of a bijective family map.
inline FamilyMap inverse(const FamilyMap& f) {
  if (!is_bijective(f)) throw input_error("inverse of a non-bijective family map");
  FamilyMap g{f.dst, f.src, {}};
  for (Index x = 0; x < f.src.points(); ++x) {
    std::vector<Index> c(f.dst.fibers[x]);
    for (Index e = 0; e < f.component[x].size(); ++e) c[f.component[x][e]] = e;
    g.component.push_back(std::move(c));
  }
  return g;
}

/// Hom_{Set^X}(A, B) as a finite set with a lexicographic mixed-radix coding:
/// the digit of (x, e) is the image of e at x, most significant first.
class HomSpace {
 public:
  HomSpace(PointFamily src, PointFamily dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_.points() != dst_.points()) throw input_error("hom of families over different points");
    for (Index x = 0; x < src_.points(); ++x)
      for (Index e = 0; e < src_.fibers[x]; ++e) slots_.emplace_back(x, e);
    size_ = 1;
    weights_.assign(slots_.size(), 0);
    saturated_ = false;
    for (Index i = slots_.size(); i-- > 0;) {
      weights_[i] = size_;
      std::size_t radix = dst_.fibers[slots_[i].first];
      if (radix == 0) {
        size_ = 0;
        break;
      }
      if (size_ > std::numeric_limits<std::size_t>::max() / radix) {
        saturated_ = true;
        size_ = std::numeric_limits<std::size_t>::max();
        break;
      }
      size_ *= radix;
    }
    if (size_ == 0) saturated_ = false;
  }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] bool saturated() const { return saturated_; }
  [[nodiscard]] const PointFamily& src() const { return src_; }
  [[nodiscard]] const PointFamily& dst() const { return dst_; }

  [[nodiscard]] FamilyMap at(std::size_t index) const {
    FamilyMap f{src_, dst_, {}};
    f.component.resize(src_.points());
    for (Index x = 0; x < src_.points(); ++x) f.component[x].resize(src_.fibers[x]);
    for (Index i = 0; i < slots_.size(); ++i) {
      auto [x, e] = slots_[i];
      f.component[x][e] = (index / weights_[i]) % dst_.fibers[x];
    }
    return f;
  }

  [[nodiscard]] std::size_t index_of(const FamilyMap& f) const {
    std::size_t idx = 0;
    for (Index i = 0; i < slots_.size(); ++i) {
      auto [x, e] = slots_[i];
      idx += f.component[x][e] * weights_[i];
    }
    return idx;
  }

  /// Index of the map whose (x, e) digit is `digit(x, e)`.
  template <class Digit>
  [[nodiscard]] std::size_t index_by(Digit&& digit) const {
    std::size_t idx = 0;
    for (Index i = 0; i < slots_.size(); ++i) idx += digit(slots_[i].first, slots_[i].second) * weights_[i];
    return idx;
  }

  /// Digit (x, e) of the map with the given index.
  [[nodiscard]] Index digit(std::size_t index, Index x, Index e) const {
    return (index / weight(x, e)) % dst_.fibers[x];
  }

 private:
  [[nodiscard]] std::size_t weight(Index x, Index e) const {
    std::size_t off = 0;
    for (Index y = 0; y < x; ++y) off += src_.fibers[y];
    return weights_[off + e];
  }

  PointFamily src_, dst_;
  std::vector<std::pair<Index, Index>> slots_;
  std::vector<std::size_t> weights_;
  std::size_t size_ = 1;
  bool saturated_ = false;
};

inline HomSpace hom_family(const PointFamily& a, const PointFamily& b) { return HomSpace(a, b); }

/// A finite diagram in Set^X.
struct FamilyDiagram {
  struct Edge {
    Index from = 0;
    Index to = 0;
    FamilyMap map;
  };
  std::vector<PointFamily> nodes;
  std::vector<Edge> edges;
  std::size_t points = 0;  // used when the diagram has no nodes
};

inline std::size_t diagram_points(const FamilyDiagram& d) {
  std::size_t p = d.nodes.empty() ? d.points : d.nodes.front().points();
  for (const auto& n : d.nodes)
    if (n.points() != p) throw input_error("diagram nodes over different points");
  for (const auto& e : d.edges) {
    if (e.from >= d.nodes.size() || e.to >= d.nodes.size())
      throw input_error("diagram edge refers to a missing node");
    if (!(e.map.src == d.nodes[e.from]) || !(e.map.dst == d.nodes[e.to]))
      throw input_error("diagram edge map does not match its endpoints");
  }
  return p;
}

/// Limit cone: apex fibers are the matching tuples in lexicographic order.
struct LimitCone {
  PointFamily apex;
  std::vector<FamilyMap> projections;
  std::vector<std::vector<std::vector<Index>>> tuples;  // [x][element] -> tuple over nodes

  /// Element with the given tuple at x, or npos.
  [[nodiscard]] Index find(Index x, const std::vector<Index>& tuple) const {
    const auto& ts = tuples[x];
    auto it = std::lower_bound(ts.begin(), ts.end(), tuple);
    return it != ts.end() && *it == tuple ? static_cast<Index>(it - ts.begin()) : npos;
  }
};

inline LimitCone finite_limit(const FamilyDiagram& d, std::size_t budget = 5'000'000) {
  const std::size_t points = diagram_points(d);
  const std::size_t n = d.nodes.size();
  LimitCone cone;
  cone.tuples.resize(points);
  std::size_t visited = 0;
  for (Index x = 0; x < points; ++x) {
    std::vector<Index> t(n, 0);
    // edges checkable once both endpoints ≤ i are assigned
    std::function<void(Index)> rec = [&](Index i) {
      if (++visited > budget) throw budget_exceeded("finite limit enumeration budget exceeded");
      if (i == n) {
        cone.tuples[x].push_back(t);
        return;
      }
      for (Index v = 0; v < d.nodes[i].fibers[x]; ++v) {
        t[i] = v;
        bool ok = true;
        for (const auto& e : d.edges) {
          if (std::max(e.from, e.to) != i) continue;
          if (e.map.component[x][t[e.from]] != t[e.to]) {
            ok = false;
            break;
          }
        }
        if (ok) rec(i + 1);
      }
    };
    rec(0);
    cone.apex.fibers.push_back(cone.tuples[x].size());
  }
  for (Index i = 0; i < n; ++i) {
    FamilyMap p{cone.apex, d.nodes[i], {}};
    for (Index x = 0; x < points; ++x) {
      std::vector<Index> c;
      for (const auto& t : cone.tuples[x]) c.push_back(t[i]);
      p.component.push_back(std::move(c));
    }
    cone.projections.push_back(std::move(p));
  }
  return cone;
}

/// Colimit cocone: apex fibers are union-find classes over the disjoint union,
/// each represented by its least (node, element).
struct ColimitCocone {
  PointFamily apex;
  std::vector<FamilyMap> injections;
  std::vector<std::vector<std::pair<Index, Index>>> representatives;  // [x][class]
};

inline ColimitCocone finite_colimit(const FamilyDiagram& d) {
  const std::size_t points = diagram_points(d);
  const std::size_t n = d.nodes.size();
  ColimitCocone cc;
  cc.representatives.resize(points);
  for (Index i = 0; i < n; ++i) cc.injections.push_back(FamilyMap{d.nodes[i], {}, {}});
  std::vector<std::vector<Index>> class_of(points);
  for (Index x = 0; x < points; ++x) {
    std::vector<Index> offset(n + 1, 0);
    for (Index i = 0; i < n; ++i) offset[i + 1] = offset[i] + d.nodes[i].fibers[x];
    UnionFind uf(offset[n]);
    for (const auto& e : d.edges)
      for (Index a = 0; a < d.nodes[e.from].fibers[x]; ++a)
        uf.unite(offset[e.from] + a, offset[e.to] + e.map.component[x][a]);
    std::size_t count = 0;
    class_of[x] = uf.classes(count);
    cc.apex.fibers.push_back(count);
    cc.representatives[x].assign(count, {npos, npos});
    for (Index i = 0; i < n; ++i)
      for (Index a = 0; a < d.nodes[i].fibers[x]; ++a) {
        auto& rep = cc.representatives[x][class_of[x][offset[i] + a]];
        if (rep.first == npos) rep = {i, a};
      }
    for (Index i = 0; i < n; ++i) {
      std::vector<Index> c;
      for (Index a = 0; a < d.nodes[i].fibers[x]; ++a) c.push_back(class_of[x][offset[i] + a]);
      cc.injections[i].component.push_back(std::move(c));
    }
  }
  for (auto& inj : cc.injections) inj.dst = cc.apex;
  return cc;
}

/// Reindexing along a function f : X → Y: (f⁻¹A)(x) = A(f x).
inline PointFamily pullback_family(const std::vector<Index>& f, const PointFamily& a) {
  PointFamily out;
  for (Index y : f) out.fibers.push_back(a.fibers[y]);
  return out;
}

inline FamilyMap pullback_map(const std::vector<Index>& f, const FamilyMap& m) {
  FamilyMap out{pullback_family(f, m.src), pullback_family(f, m.dst), {}};
  for (Index y : f) out.component.push_back(m.component[y]);
  return out;
}

}  // namespace ionad
