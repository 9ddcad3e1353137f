#include <catch_amalgamated.hpp>

#include "ionad/construct.hpp"
#include "support/catenum.hpp"
#include "support/spaces.hpp"

using namespace ionad;

namespace {

IonadPtr share(Ionad x) { return std::make_shared<const Ionad>(std::move(x)); }

std::vector<FinTopSpace> small_spaces() {
  std::vector<FinTopSpace> out;
  for (std::size_t n = 0; n <= 2; ++n)
    for (const auto& s : oracle::enumerate_topologies(n)) out.push_back(s);
  return out;
}

std::vector<PointFamily> families(std::size_t points, std::size_t max) {
  std::vector<PointFamily> out;
  std::vector<std::size_t> f(points, 0);
  while (true) {
    out.push_back(PointFamily{f});
    Index i = points;
    while (i > 0 && ++f[i - 1] > max) f[--i] = 0;
    if (i == 0) return out;
  }
}

}  // namespace

TEST_CASE("terminal ionad") {
  auto t = share(terminal_ionad());
  CHECK(lambda(*t) == oracle::discrete_space(1));
  for (std::size_t k = 0; k <= 3; ++k) {
    InteriorValue iv = interior_apply(*t, PointFamily{{k}});
    CHECK(iv.carrier.fibers[0] == k);
    CHECK(is_bijective(counit(iv)));
  }
  for (const auto& s : small_spaces()) {
    HomCategory h = hom_category(share(sigma(s)), t);
    CHECK(h.objects.size() == 1);
    CHECK(h.category.morphism_count() == 1);
  }
}

TEST_CASE("coproducts") {
  auto spaces = small_spaces();
  SECTION("empty") {
    CoproductWitness w = coproduct({});
    CHECK(w.ionad->points == 0);
    CHECK(coproduct_interior(w, PointFamily{}).fibers.empty());
    CHECK(interior_apply(*w.ionad, PointFamily{}).carrier.fibers.empty());
  }
  SECTION("single summand") {
    for (const auto& s : spaces) {
      auto x = share(sigma(s));
      CoproductWitness w = coproduct({x});
      for (const auto& a : families(s.points, 2))
        CHECK(interior_apply(*w.ionad, a).carrier == interior_apply(*x, a).carrier);
    }
  }
  SECTION("disjoint unions of spaces") {
    for (const auto& s : spaces)
      for (const auto& t : spaces) {
        auto xs = share(sigma(s));
        auto xt = share(sigma(t));
        CoproductWitness w = coproduct({xs, xt});
        CHECK(lambda(*w.ionad) == oracle::coproduct_space(s, t));
        for (const auto& inj : w.injection) CHECK(check_continuous(inj).ok());
        for (const auto& a : families(s.points + t.points, 2))
          CHECK(coproduct_interior(w, a) == interior_apply(*w.ionad, a).carrier);
      }
  }
  SECTION("mixed summands") {
    auto a = share(alexandroff(arrow_category()));
    auto e = share(equivariant(oracle::z2_corpus()[0]));
    CoproductWitness w = coproduct({a, e, a});
    CHECK(w.ionad->points == 6);
    for (const auto& inj : w.injection) CHECK(check_continuous(inj).ok());
    for (const auto& f : families(6, 1)) CHECK(coproduct_interior(w, f) == interior_apply(*w.ionad, f).carrier);
  }
}

TEST_CASE("products of spaces") {
  auto spaces = small_spaces();
  spaces.push_back(make_space(3, {0b000, 0b001, 0b011, 0b111}));
  for (const auto& s : spaces)
    for (const auto& t : spaces) {
      if (s.points * t.points > 6) continue;
      ProductWitness p = product(share(sigma(s)), share(sigma(t)));
      CHECK(flatness_check(p.product->basis).ok);
      CHECK(lambda(*p.product) == oracle::product_space(s, t));
      CHECK(check_continuous(projection(p, true)).ok());
      CHECK(check_continuous(projection(p, false)).ok());
    }
}

TEST_CASE("product with the terminal ionad") {
  auto t = share(terminal_ionad());
  for (const auto& x : {share(sigma(oracle::sierpinski_space())), share(alexandroff(arrow_category())),
                        share(equivariant(oracle::z2_corpus()[1]))}) {
    ProductWitness p = product(x, t);
    CHECK(p.product->basis.value == x->basis.value);
    ProductWitness q = product(t, x);
    CHECK(q.product->basis.value == x->basis.value);
  }
}

TEST_CASE("specialisation category of a product of Alexandroff ionads") {
  auto cats = oracle::enumerate_categories(2, 3);
  for (const auto& c : cats)
    for (const auto& d : cats) {
      ProductWitness p = product(share(alexandroff(c)), share(alexandroff(d)));
      SpecialisationCategory v = specialisation_category(*p.product);
      FinCategory cd = product_category(c, d);
      REQUIRE(v.category.object_count == cd.object_count);
      for (Index a = 0; a < cd.object_count; ++a)
        for (Index b = 0; b < cd.object_count; ++b) CHECK(v.category.hom(a, b).size() == cd.hom(a, b).size());
    }
}

TEST_CASE("pairing and unpairing") {
  std::vector<IonadPtr> sources{share(sigma(oracle::discrete_space(1))), share(sigma(oracle::sierpinski_space())),
                                share(sigma(oracle::indiscrete_space(2))), share(alexandroff(arrow_category()))};
  std::vector<IonadPtr> targets;
  for (const auto& s : small_spaces())
    if (s.points > 0) targets.push_back(share(sigma(s)));
  std::size_t pairs = 0;
  for (const auto& z : sources)
    for (const auto& x : targets)
      for (const auto& y : targets) {
        ProductWitness p = product(x, y);
        ContinuousMap p1 = projection(p, true), p2 = projection(p, false);
        auto fs = enumerate_continuous_maps(z, x);
        auto gs = enumerate_continuous_maps(z, y);
        for (const auto& f : fs)
          for (const auto& g : gs) {
            ContinuousMap h = pair_maps(p, f, g);
            CHECK(check_continuous(h).ok());
            auto [f2, g2] = unpair(p, h);
            CHECK(f2 == f);
            CHECK(g2 == g);
            CHECK(compose(p1, h) == f);
            CHECK(compose(p2, h) == g);
            ++pairs;
          }
        if (z->points == 1)
          for (const auto& h : enumerate_continuous_maps(z, p.product)) {
            auto [f, g] = unpair(p, h);
            CHECK(pair_maps(p, f, g) == h);
          }
      }
  CHECK(pairs > 100);
}

TEST_CASE("pairing the projections gives the identity") {
  for (const auto& s : small_spaces())
    for (const auto& t : small_spaces()) {
      ProductWitness p = product(share(sigma(s)), share(sigma(t)));
      CHECK(pair_maps(p, projection(p, true), projection(p, false)) == identity_map(p.product));
    }
}

TEST_CASE("pairing with the map to the terminal ionad") {
  auto t = share(terminal_ionad());
  auto z = share(sigma(oracle::sierpinski_space()));
  for (const auto& x : {share(sigma(oracle::sierpinski_space())), share(alexandroff(arrow_category()))}) {
    ProductWitness p = product(x, t);
    auto bang = enumerate_continuous_maps(z, t);
    REQUIRE(bang.size() == 1);
    for (const auto& f : enumerate_continuous_maps(z, x)) {
      ContinuousMap h = pair_maps(p, f, bang.front());
      CHECK(h.point_map == f.point_map);
      CHECK(h.lifting == f.lifting);
    }
  }
}

TEST_CASE("tensors by categories") {
  auto t = terminal_ionad();
  for (const auto& x : {sigma(oracle::sierpinski_space()), alexandroff(arrow_category())})
    CHECK(tensor(terminal_category(), x).basis.value == x.basis.value);
  for (const auto& c : oracle::enumerate_categories(3, 5)) {
    Ionad tc = tensor(c, t);
    CHECK(tc.basis == alexandroff(c).basis);
  }
  for (const auto& c : oracle::enumerate_categories(2, 3))
    for (const auto& x : {share(sigma(oracle::sierpinski_space())), share(equivariant(oracle::z2_corpus()[0]))}) {
      Ionad tc = tensor(c, *x);
      CHECK(flatness_check(tc.basis).ok);
      CHECK(tc.basis == product(share(alexandroff(c)), x).product->basis);
    }
}

TEST_CASE("cotensor by the arrow category") {
  SECTION("terminal") {
    CotensorWitness w = cotensor_arrow(share(terminal_ionad()));
    CHECK(w.ionad->points == 1);
    CHECK(w.ionad->basis.shape.object_count == 1);
    CHECK(w.ionad->basis.value[0].fibers == std::vector<std::size_t>{1});
  }
  SECTION("Sierpinski") {
    auto x = share(sigma(oracle::sierpinski_space()));
    CotensorWitness w = cotensor_arrow(x);
    REQUIRE(w.ionad->points == 3);
    // brute-force pullbacks of 0/1 sets
    const auto& m = x->basis;
    const auto& vx = w.specialisation;
    for (Index k = 0; k < m.shape.morphism_count(); ++k)
      for (Index a = 0; a < 3; ++a) {
        const Index px = vx.category.src(a), py = vx.category.dst(a);
        std::size_t count = 0;
        for (Index u = 0; u < m.fiber(m.shape.dst(k), px); ++u)
          for (Index v = 0; v < m.fiber(m.shape.src(k), py); ++v)
            count += vx.transformation[a][m.shape.dst(k)][u] == m.act(k, py, v);
        CHECK(w.ionad->basis.value[k].fibers[a] == count);
      }
    CHECK(check_continuous(w.domain).ok());
    CHECK(check_continuous(w.codomain).ok());
  }
  SECTION("corpus") {
    std::vector<IonadPtr> xs;
    for (const auto& s : small_spaces()) xs.push_back(share(sigma(s)));
    xs.push_back(share(alexandroff(arrow_category())));
    xs.push_back(share(alexandroff(cyclic_group(2))));
    for (const auto& a : oracle::z2_corpus()) xs.push_back(share(equivariant(a)));
    Budget roomy;
    roomy.interior_pairs = 1u << 24;
    for (const auto& x : xs) {
      CotensorWitness w = cotensor_arrow(x, roomy);
      CHECK(w.ionad->points == w.specialisation.category.morphism_count());
      CHECK(check_continuous(w.domain).ok());
      CHECK(check_continuous(w.codomain).ok());
    }
  }
}
