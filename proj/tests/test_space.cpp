#include <catch_amalgamated.hpp>

#include "ionad/space.hpp"
#include "support/bases.hpp"
#include "support/catenum.hpp"
#include "support/oracles.hpp"
#include "support/spaces.hpp"

using namespace ionad;

TEST_CASE("sigma bases are flat posets") {
  Ionad d1 = sigma(oracle::discrete_space(1));
  CHECK(d1.basis.shape.object_count == 2);
  Ionad s = sigma(oracle::sierpinski_space());
  CHECK(s.basis.shape.object_count == 3);
  CHECK(s.basis.shape.morphism_count() == 6);
  // a non-chain topology on 4 points
  FinTopSpace t = make_space(4, {0b0000, 0b0001, 0b0010, 0b0011, 0b1111});
  REQUIRE(validate_space(t).ok());
  CHECK(flatness_check(sigma(t).basis).ok);
}

TEST_CASE("invalid spaces are rejected") {
  CHECK(validate_space(FinTopSpace{2, {0b00, 0b01, 0b10, 0b11}}).ok());
  CHECK_FALSE(validate_space(FinTopSpace{2, {0b01, 0b11}}).ok());
  CHECK_FALSE(validate_space(FinTopSpace{2, {0b00, 0b01, 0b10}}).ok());
  CHECK_THROWS_AS(sigma(FinTopSpace{2, {0b00, 0b01, 0b10, 0b11, 0b11}}), input_error);
}

TEST_CASE("lambda inverts sigma on small spaces") {
  CHECK(lambda(sigma(oracle::sierpinski_space())) == oracle::sierpinski_space());
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& s : oracle::enumerate_topologies(n)) CHECK(lambda(sigma(s)) == s);
}

TEST_CASE("lambda of the empty ionad") {
  FinTopSpace empty{0, {0}};
  Ionad e = sigma(empty);
  CHECK(e.points == 0);
  CHECK(lambda(e) == empty);
}

TEST_CASE("interior operator laws on corpus ionads") {
  std::vector<Ionad> corpus;
  for (const auto& s : oracle::enumerate_topologies(3)) corpus.push_back(sigma(s));
  corpus.push_back(alexandroff(arrow_category()));
  corpus.push_back(alexandroff(cyclic_group(2)));
  for (const auto& a : oracle::z2_corpus()) corpus.push_back(equivariant(a));
  for (const auto& x : corpus) {
    const std::uint64_t full = full_mask(x.points);
    CHECK(interior_operator(x, full) == full);
    for (std::uint64_t a = 0; a <= full; ++a) {
      std::uint64_t ia = interior_operator(x, a);
      CHECK((ia & ~a) == 0);
      CHECK(interior_operator(x, ia) == ia);
      for (std::uint64_t b = 0; b <= full; ++b)
        CHECK(interior_operator(x, a & b) == (ia & interior_operator(x, b)));
    }
  }
}

namespace {

// up-closed subsets of the preorder generated by C's morphisms
FinTopSpace upset_space(const FinCategory& c) {
  const std::size_t n = c.object_count;
  std::vector<std::uint64_t> opens;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
    bool up = true;
    for (Index f = 0; f < c.morphism_count(); ++f)
      if ((u >> c.src(f) & 1u) && !(u >> c.dst(f) & 1u)) up = false;
    if (up) opens.push_back(u);
  }
  return FinTopSpace{n, opens};
}

}  // namespace

TEST_CASE("lambda of Alexandroff ionads is the up-set space") {
  CHECK(lambda(alexandroff(arrow_category())) == oracle::sierpinski_space());
  for (const auto& c : oracle::enumerate_categories(3, 5)) CHECK(lambda(alexandroff(c)) == upset_space(c));
}

TEST_CASE("Alexandroff examples") {
  Ionad d = alexandroff(discrete_category(2));
  CHECK(d.basis.value[0].fibers == std::vector<std::size_t>{1, 0});
  CHECK(d.basis.value[1].fibers == std::vector<std::size_t>{0, 1});
  CHECK(lambda(d) == oracle::discrete_space(2));
  Ionad z = alexandroff(cyclic_group(2));
  CHECK(z.points == 1);
  CHECK(z.basis.value[0].fibers == std::vector<std::size_t>{2});
}

TEST_CASE("Alexandroff coalgebras are functors") {
  for (const auto& c : oracle::enumerate_categories(2, 4)) {
    Ionad ax = alexandroff(c);
    for (const auto& p : fixture::all_small_functors(c, 2)) {
      Coalgebra a = functor_to_coalgebra(c, ax, p);
      CHECK(coalgebra_check(ax.basis, a).ok());
      SetValuedFunctor back = coalgebra_to_functor(c, a);
      CHECK(back.action == p.action);
    }
  }
}

TEST_CASE("equivariant bases") {
  // trivial group reproduces sigma's fibers
  FinTopSpace s = oracle::sierpinski_space();
  GroupAction triv{terminal_category(), s, {{0, 1}}};
  Ionad e = equivariant(triv);
  Ionad sg = sigma(s);
  REQUIRE(e.basis.shape.object_count == sg.basis.shape.object_count);
  for (Index u = 0; u < s.opens.size(); ++u) CHECK(e.basis.value[u] == sg.basis.value[u]);

  auto corpus = oracle::z2_corpus();
  Ionad swap = equivariant(corpus[0]);
  // opens of the discrete 2-point space: ∅, {0}, {1}, {0,1}
  CHECK(swap.basis.value[1].fibers == std::vector<std::size_t>{1, 1});
  CHECK(swap.basis.value[3].fibers == std::vector<std::size_t>{2, 2});
  for (const auto& a : corpus) CHECK(flatness_check(equivariant(a).basis).ok);
}

TEST_CASE("invalid group actions are rejected") {
  GroupAction bad{cyclic_group(2), oracle::sierpinski_space(), {{0, 1}, {1, 0}}};
  CHECK_FALSE(validate_action(bad).ok());
  CHECK_THROWS_AS(equivariant(bad), input_error);
}

TEST_CASE("specialisation preorders") {
  auto d = specialisation_preorder(oracle::discrete_space(3));
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y) CHECK(d[x][y] == (x == y));
  auto s = specialisation_preorder(oracle::sierpinski_space());
  CHECK(s[0][1]);
  CHECK_FALSE(s[1][0]);
  auto i = specialisation_preorder(oracle::indiscrete_space(2));
  CHECK((i[0][1] && i[1][0]));
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& t : oracle::enumerate_topologies(n)) {
      auto p = specialisation_preorder(t);
      for (Index x = 0; x < n; ++x) {
        CHECK(p[x][x]);
        for (Index y = 0; y < n; ++y)
          for (Index z = 0; z < n; ++z)
            if (p[x][y] && p[y][z]) CHECK(p[x][z]);
      }
    }
}

TEST_CASE("topology counts") {
  CHECK(oracle::enumerate_topologies(2).size() == 4);
  CHECK(oracle::enumerate_topologies(3).size() == 29);
  CHECK(oracle::count_preorders(3) == 29);
}
