#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gridcode/error.hpp"
#include "gridcode/grid.hpp"
#include "gridcode/rational.hpp"

using namespace gridcode;

TEST_CASE("rational arithmetic stays reduced") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(3, 7) / Rational(2, 1) == Rational(3, 14));
  CHECK(Rational(23, 55) < Rational(53, 126));
  CHECK(Rational::parse("11/26") == Rational(11, 26));
  CHECK(Rational::parse("2") == Rational(2, 1));
  CHECK(Rational(3, 7).decimal() == "0.4285714");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
}

TEST_CASE("floor and ceiling division round toward the correct side") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(ceil_div(-7, 2) == -3);
  CHECK(ceil_div(7, 2) == 4);
  CHECK(floor_mod(-7, 3) == 2);
}

TEST_CASE("lattice hermite normal form and reduction") {
  const Lattice2 hex_t({0, 2}, {1, 1});
  CHECK(hex_t.index() == 2);
  CHECK(hex_t.hnf_a() == 2);
  CHECK(hex_t.hnf_c() == 1);
  CHECK(hex_t.contains({1, 1}));
  CHECK(hex_t.contains({2, 0}));
  CHECK_FALSE(hex_t.contains({1, 0}));

  const Lattice2 fig({40, 0}, {-6, 1});
  CHECK(fig.index() == 40);
  CHECK(fig.contains({-6 * 16 + 40 * 3, 16}));
  const Lattice2 big({0, 126}, {1, -11});
  CHECK(big.index() == 126);
  CHECK(big.hnf_c() == 1);
  CHECK(big.contains({-23, 1}));
  CHECK(big.contains({126, 0}));

  for (std::int64_t x = -9; x <= 9; ++x)
    for (std::int64_t y = -9; y <= 9; ++y) {
      const Cell r = fig.reduce({x, y});
      CHECK(r.x >= 0);
      CHECK(r.x < fig.hnf_a());
      CHECK(r.y >= 0);
      CHECK(r.y < fig.hnf_c());
      CHECK(fig.contains(Cell{x, y} - r));
    }
}

TEST_CASE("hex grid is the brick wall") {
  const GridModel hex = make_preset_grid("hex");
  CHECK(hex.step_width() == 2);
  auto nbrs = [&](Cell c) {
    auto v = hex.neighbors(c);
    return std::set<Cell>(v.begin(), v.end());
  };
  CHECK(nbrs({0, 0}) == std::set<Cell>{{1, 0}, {-1, 0}, {0, 1}});
  CHECK(nbrs({1, 0}) == std::set<Cell>{{2, 0}, {0, 0}, {1, -1}});
  CHECK(nbrs({3, 4}) == std::set<Cell>{{4, 4}, {2, 4}, {3, 3}});
  CHECK(hex.ball({0, 0}, 1).size() == 4);
  CHECK(hex.ball({0, 0}, 2).size() == 10);
}

TEST_CASE("every preset has symmetric adjacency and translation-invariant balls") {
  for (const auto& name : preset_grid_names()) {
    CAPTURE(name);
    const GridModel g = make_preset_grid(name);
    for (std::int64_t x = -3; x <= 3; ++x)
      for (std::int64_t y = -3; y <= 3; ++y) {
        const Cell c{x, y};
        for (const Cell& n : g.neighbors(c)) {
          auto back = g.neighbors(n);
          CHECK(std::find(back.begin(), back.end(), c) != back.end());
        }
        for (int r = 1; r <= 2; ++r) {
          const Cell t = g.translations().u();
          auto shifted = g.ball(c + t, r);
          auto ball = g.ball(c, r);
          REQUIRE(ball.size() == shifted.size());
          for (std::size_t i = 0; i < ball.size(); ++i) CHECK(ball[i] + t == shifted[i]);
        }
      }
  }
}

TEST_CASE("ball sizes of the preset grids") {
  CHECK(make_preset_grid("square").ball({0, 0}, 2).size() == 13);
  CHECK(make_preset_grid("king").ball({0, 0}, 2).size() == 25);
  CHECK(make_preset_grid("triangular").ball({0, 0}, 1).size() == 7);
  CHECK(make_preset_grid("triangular").ball({0, 0}, 2).size() == 19);
}

TEST_CASE("distance agrees with balls") {
  const GridModel hex = make_preset_grid("hex");
  for (const Cell& c : hex.ball({0, 0}, 3)) {
    const int d = hex.distance({0, 0}, c, 3);
    auto inner = d > 0 ? hex.ball({0, 0}, d - 1) : std::vector<Cell>{};
    CHECK(std::find(inner.begin(), inner.end(), c) == inner.end());
  }
}

TEST_CASE("period normalization") {
  const GridModel hex = make_preset_grid("hex");
  CHECK_THROWS_AS(normalize_period(hex, {1, 2}), Error);
  try {
    normalize_period(hex, {1, 2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInLattice);
  }
  try {
    normalize_period(hex, {2, 0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegeneratePeriod);
  }
  auto n = normalize_period(hex, {1, -1});
  CHECK(n.reflected);
  CHECK(n.period == PeriodVector{1, 1});
  auto m = normalize_period(hex, {0, -2});
  CHECK_FALSE(m.reflected);
  CHECK(m.period == PeriodVector{0, 2});
  CHECK(reduce_mod_period({3, 2}, {0, 5}) == Cell{-6, 1});
}

TEST_CASE("reflected grid mirrors adjacency") {
  const GridModel hex = make_preset_grid("hex");
  const GridModel mirrored = hex.reflected();
  CHECK(mirrored.mirrored());
  for (std::int64_t x = -3; x <= 3; ++x)
    for (std::int64_t y = -3; y <= 3; ++y) {
      auto a = hex.neighbors({x, y});
      std::set<Cell> expected;
      for (const Cell& c : a) expected.insert({-c.x, c.y});
      auto b = mirrored.neighbors({-x, y});
      CHECK(std::set<Cell>(b.begin(), b.end()) == expected);
    }
}

TEST_CASE("grid files round trip the hex preset") {
  const GridModel g = parse_grid(
      "name brick\n"
      "lattice 0,2 1,1\n"
      "coset 0,0 : 1,0 -1,0 0,1\n"
      "coset 1,0 : 1,0 -1,0 0,-1\n");
  const GridModel hex = make_preset_grid("hex");
  for (std::int64_t x = -4; x <= 4; ++x)
    for (std::int64_t y = -4; y <= 4; ++y) CHECK(g.ball({x, y}, 2) == hex.ball({x, y}, 2));
  CHECK_THROWS_AS(parse_grid("name bad\nlattice 1,0 0,1\ncoset 0,0 : 1,0\n"), Error);  // asymmetric
  CHECK_THROWS_AS(parse_cell("3;4"), Error);
  CHECK(parse_cell("-6,1") == Cell{-6, 1});
}
