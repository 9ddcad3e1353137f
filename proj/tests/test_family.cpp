#include <catch_amalgamated.hpp>

#include "ionad/family.hpp"
#include "support/oracles.hpp"

using namespace ionad;

TEST_CASE("empty limit is terminal") {
  FamilyDiagram d;
  d.points = 2;
  LimitCone l = finite_limit(d);
  CHECK(l.apex == terminal_family(2));
}

TEST_CASE("binary product multiplies fibers") {
  FamilyDiagram d{{PointFamily{{2}}, PointFamily{{3}}}, {}, 1};
  CHECK(finite_limit(d).apex.fibers == std::vector<std::size_t>{6});
}

TEST_CASE("equalizer keeps agreeing elements") {
  PointFamily a{{5}}, b{{3}};
  FamilyMap f{a, b, {{0, 1, 2, 0, 1}}}, g{a, b, {{0, 2, 2, 1, 0}}};
  FamilyDiagram d{{a, b}, {{0, 1, f}, {0, 1, g}}, 1};
  LimitCone l = finite_limit(d);
  CHECK(l.apex.fibers == std::vector<std::size_t>{2});
  CHECK(l.tuples[0] == std::vector<std::vector<Index>>{{0, 0}, {2, 2}});
}

TEST_CASE("colimit basics") {
  PointFamily a{{2}}, b{{3}}, one{{1}};
  FamilyDiagram single{{a}, {}, 1};
  ColimitCocone c1 = finite_colimit(single);
  CHECK(c1.apex == a);
  CHECK(c1.injections[0].component == identity_map(a).component);

  CHECK(finite_colimit(FamilyDiagram{{a, b}, {}, 1}).apex.fibers == std::vector<std::size_t>{5});

  PointFamily two{{2}};
  FamilyDiagram coeq{{one, two}, {{0, 1, FamilyMap{one, two, {{0}}}}, {0, 1, FamilyMap{one, two, {{1}}}}}, 1};
  CHECK(finite_colimit(coeq).apex.fibers == std::vector<std::size_t>{1});
}

TEST_CASE("colimit of an empty diagram is empty") {
  FamilyDiagram d;
  d.points = 3;
  CHECK(finite_colimit(d).apex.fibers == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("hom-family sizes") {
  PointFamily a{{1, 2}}, b{{2, 2}};
  CHECK(hom_family(a, terminal_family(2)).size() == 1);
  CHECK(hom_family(terminal_family(2), PointFamily{{2, 3}}).size() == 6);
  HomSpace h(a, b);
  CHECK(h.size() == 8);
  CHECK(h.size() == oracle::all_maps(a, b).size());
  auto brute = oracle::all_maps(a, b);
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(h.at(i).component == brute[i]);
    CHECK(h.index_of(h.at(i)) == i);
  }
}

namespace {

// every map apex → target satisfying the cone condition, by brute force
std::size_t count_cone_maps(const FamilyDiagram& d, const PointFamily& apex, const std::vector<FamilyMap>& legs,
                            const PointFamily& w) {
  // cones from w: tuples of maps w → node_i compatible with edges
  std::vector<std::vector<oracle::Table>> choices;
  for (const auto& n : d.nodes) choices.push_back(oracle::all_maps(w, n));
  std::size_t cones = 0;
  std::vector<Index> pick(d.nodes.size(), 0);
  std::function<void(Index)> rec = [&](Index i) {
    if (i == d.nodes.size()) {
      for (const auto& e : d.edges)
        for (Index x = 0; x < w.points(); ++x)
          for (Index t = 0; t < w.fibers[x]; ++t)
            if (e.map.component[x][choices[e.from][pick[e.from]][x][t]] != choices[e.to][pick[e.to]][x][t]) return;
      // exactly one mediating map must exist
      std::size_t mediating = 0;
      for (const auto& u : oracle::all_maps(w, apex)) {
        bool ok = true;
        for (Index k = 0; k < legs.size() && ok; ++k)
          for (Index x = 0; x < w.points() && ok; ++x)
            for (Index t = 0; t < w.fibers[x] && ok; ++t)
              ok = legs[k].component[x][u[x][t]] == choices[k][pick[k]][x][t];
        mediating += ok;
      }
      if (mediating == 1) ++cones;
      else cones += 1000;
      return;
    }
    for (pick[i] = 0; pick[i] < choices[i].size(); ++pick[i]) rec(i + 1);
  };
  rec(0);
  return cones;
}

}  // namespace

TEST_CASE("limits have the universal property on small diagrams") {
  PointFamily a{{2, 1}}, b{{3, 2}}, c{{2, 2}};
  FamilyMap f{a, c, {{0, 1}, {1}}}, g{b, c, {{1, 0, 1}, {1, 0}}};
  std::vector<FamilyDiagram> ds{
      FamilyDiagram{{a, b, c}, {{0, 2, f}, {1, 2, g}}, 2},
      FamilyDiagram{{a, c}, {{0, 1, f}, {0, 1, FamilyMap{a, c, {{0, 0}, {1}}}}}, 2},
      FamilyDiagram{{a, b}, {}, 2},
  };
  for (const auto& d : ds) {
    LimitCone l = finite_limit(d);
    for (const PointFamily& w : {PointFamily{{1, 1}}, PointFamily{{2, 1}}, PointFamily{{0, 2}}})
      CHECK(count_cone_maps(d, l.apex, l.projections, w) < 1000);  // each cone mediated exactly once
  }
}

TEST_CASE("colimits have the universal property on small diagrams") {
  PointFamily a{{2, 1}}, b{{3, 2}};
  FamilyMap f{a, b, {{0, 1}, {1}}}, g{a, b, {{2, 1}, {0}}};
  FamilyDiagram d{{a, b}, {{0, 1, f}, {0, 1, g}}, 2};
  ColimitCocone cc = finite_colimit(d);
  for (const PointFamily& w : {PointFamily{{2, 2}}, PointFamily{{1, 3}}}) {
    for (const auto& hb : oracle::all_maps(b, w)) {
      // a cocone is determined by its leg on b when it coequalises f and g
      bool cocone = true;
      for (Index x = 0; x < 2; ++x)
        for (Index e = 0; e < a.fibers[x]; ++e) cocone = cocone && hb[x][f(x, e)] == hb[x][g(x, e)];
      std::size_t mediating = 0;
      for (const auto& u : oracle::all_maps(cc.apex, w)) {
        bool ok = true;
        for (Index x = 0; x < 2; ++x)
          for (Index e = 0; e < b.fibers[x]; ++e) ok = ok && u[x][cc.injections[1](x, e)] == hb[x][e];
        mediating += ok;
      }
      CHECK(mediating == (cocone ? 1u : 0u));
    }
  }
}

TEST_CASE("composition and inverses of family maps") {
  PointFamily a{{2}};
  FamilyMap swap{a, a, {{1, 0}}};
  CHECK(is_bijective(swap));
  CHECK(compose(swap, swap).component == identity_map(a).component);
  CHECK(inverse(swap).component == swap.component);
  CHECK_THROWS_AS(inverse(FamilyMap{a, a, {{0, 0}}}), input_error);
}
