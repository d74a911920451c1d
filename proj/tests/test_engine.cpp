#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "gridcode/engine.hpp"
#include "gridcode/verifier.hpp"
#include "test_support.hpp"

using namespace gridcode;

namespace {

SearchRequest request(const std::string& grid, CodeKind kind, int radius, Cell period) {
  SearchRequest r;
  r.grid = grid;
  r.spec = {kind, radius};
  r.period = period;
  return r;
}

SearchRequest hex_id(Cell period) { return request("hex", CodeKind::Identifying, 1, period); }

// Minimum over second periods (kW, 0), k = 1..max_k, of the exact torus optimum.
Rational torus_min(const SearchRequest& r, std::int64_t max_k) {
  const GridModel grid = load_grid(r.grid);
  const std::int64_t w = grid.step_width();
  std::optional<Rational> best;
  for (std::int64_t k = 1; k <= max_k; ++k) {
    const Lattice2 lattice(r.period, {k * w, 0});
    const auto t = lattice.index() <= 20 ? torus_bruteforce(grid, r.spec, lattice)
                                         : torus_branch_and_bound(grid, r.spec, lattice);
    if (t && (!best || t->density < *best)) best = t->density;
  }
  REQUIRE(best.has_value());
  return *best;
}

void check_round_trip(const SearchResult& r) {
  CHECK(verify_code(r.code).accepted());
  CHECK(density(r.code) == r.alpha);
  CHECK(r.code.lattice().index() <= r.code.width() * r.code.height());
}

}  // namespace

TEST_CASE("hex (0,2) equals the torus optimum and its witness has period (14,0)") {
  const SearchResult r = min_density(hex_id({0, 2}));
  CHECK(r.alpha == Rational(3, 7));
  CHECK(r.cycle_length == 7);
  CHECK(torus_min(hex_id({0, 2}), 7) == r.alpha);
  CHECK(torus_min(hex_id({0, 2}), 6) > r.alpha);  // the optimum needs the full cycle length
  check_round_trip(r);
  CHECK(r.code.lattice().contains({14, 0}));
  CHECK(r.code.lattice().contains({0, 2}));
}

TEST_CASE("engine matches the torus oracle whenever the cycle fits") {
  for (const SearchRequest& q : {hex_id({1, 1}), hex_id({2, 2}), hex_id({3, 1}),
                                 request("king", CodeKind::LocatingDominating, 2, {1, 1}),
                                 request("king", CodeKind::LocatingDominating, 2, {1, 2}),
                                 request("king", CodeKind::LocatingDominating, 2, {0, 1}),
                                 request("king", CodeKind::RedundantLocatingDominating, 1, {1, 1}),
                                 request("king", CodeKind::RedundantLocatingDominating, 1, {1, 2}),
                                 request("square", CodeKind::Identifying, 2, {2, 1}),
                                 request("triangular", CodeKind::Identifying, 2, {1, 2})}) {
    CAPTURE(q.grid);
    CAPTURE(q.period.x);
    CAPTURE(q.period.y);
    const SearchResult r = min_density(q);
    check_round_trip(r);
    const GridModel grid = load_grid(q.grid);
    const auto reach = static_cast<std::size_t>(64 / (grid.step_width() * q.period.y));
    REQUIRE(r.cycle_length <= reach);
    CHECK(torus_min(q, static_cast<std::int64_t>(r.cycle_length)) == r.alpha);
  }
}

TEST_CASE("long optimal cycles are consistent with every reachable torus") {
  // Cycle length 85 is beyond any torus oracle; shorter tori can only do worse.
  const auto q = request("king", CodeKind::LocatingDominating, 2, {1, 3});
  const SearchResult r = min_density(q);
  CHECK(r.alpha == Rational(12, 85));
  CHECK(r.cycle_length == 85);
  check_round_trip(r);
  CHECK(torus_min(q, 8) >= r.alpha);
}

TEST_CASE("hex identifying densities respect the known lower bound") {
  for (Cell v : {Cell{0, 2}, Cell{1, 1}, Cell{2, 2}, Cell{3, 1}, Cell{1, 3}, Cell{-5, 1}, Cell{-9, 1}}) {
    const SearchResult r = min_density(hex_id(v));
    CHECK(r.alpha >= Rational(23, 55));
    check_round_trip(r);
  }
  // Period (-9,1) reaches 11/26, the density of the best known small-period code.
  CHECK(min_density(hex_id({-9, 1})).alpha == Rational(11, 26));
}

TEST_CASE("refining the period never increases the minimum") {
  CHECK(min_density(hex_id({0, 4})).alpha <= min_density(hex_id({0, 2})).alpha);
  for (const auto& [grid, kind, radius] : std::vector<std::tuple<std::string, CodeKind, int>>{
           {"hex", CodeKind::Identifying, 1},
           {"king", CodeKind::LocatingDominating, 2},
           {"square", CodeKind::Identifying, 2},
           {"king", CodeKind::RedundantLocatingDominating, 1}}) {
    for (Cell v : {Cell{1, 1}, Cell{0, 1}}) {
      if (!load_grid(grid).translations().contains(v)) continue;
      const Rational base = min_density(request(grid, kind, radius, v)).alpha;
      for (std::int64_t k : {2, 3}) {
        CAPTURE(grid);
        CAPTURE(k);
        CHECK(min_density(request(grid, kind, radius, k * v)).alpha <= base);
      }
    }
  }
}

TEST_CASE("mirrored periods agree on mirror-symmetric grids") {
  for (const auto& [grid, kind, radius] : std::vector<std::tuple<std::string, CodeKind, int>>{
           {"hex", CodeKind::Identifying, 1}, {"king", CodeKind::LocatingDominating, 2},
           {"square", CodeKind::Identifying, 2}, {"king", CodeKind::RedundantLocatingDominating, 1}}) {
    for (Cell v : {Cell{1, 1}, Cell{3, 1}, Cell{1, 2}, Cell{2, 2}}) {
      if (!load_grid(grid).translations().contains(v)) continue;
      const SearchResult a = min_density(request(grid, kind, radius, v));
      const SearchResult b = min_density(request(grid, kind, radius, {-v.x, v.y}));
      CHECK(a.alpha == b.alpha);
      CHECK(b.reflected);
      check_round_trip(b);
      CHECK(b.code.lattice().contains({-v.x, v.y}));
    }
  }
  CHECK(min_density(hex_id({0, -2})).alpha == Rational(3, 7));
  CHECK(min_density(hex_id({-1, -1})).alpha == Rational(1, 2));
}

TEST_CASE("variants and thread counts give identical witnesses") {
  SearchRequest base = request("king", CodeKind::LocatingDominating, 2, {1, 2});
  const SearchResult ref = min_density(base);
  for (KarpVariant v : {KarpVariant::QuadraticSpace, KarpVariant::LinearSpace, KarpVariant::Sqrt3_2Space}) {
    for (int threads : {1, 3}) {
      SearchRequest q = base;
      q.variant = v;
      q.threads = threads;
      const SearchResult r = min_density(q);
      CHECK(r.alpha == ref.alpha);
      CHECK(r.code == ref.code);
    }
  }
}

TEST_CASE("errors propagate with their kinds") {
  auto kind_of = [](const SearchRequest& q) {
    try {
      min_density(q);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind_of(hex_id({2, 0})) == ErrorKind::DegeneratePeriod);
  CHECK(kind_of(hex_id({0, 0})) == ErrorKind::DegeneratePeriod);
  CHECK(kind_of(hex_id({1, 0})) == ErrorKind::DegeneratePeriod);
  CHECK(kind_of(hex_id({1, 2})) == ErrorKind::NotInLattice);
  CHECK(kind_of(request(testing::data_path("ladder.grid"), CodeKind::Identifying, 1, {0, 1})) ==
        ErrorKind::TwinVertices);
  SearchRequest capped = hex_id({0, 2});
  capped.caps.max_nodes = 1;
  CHECK(kind_of(capped) == ErrorKind::ResourceLimit);
}

TEST_CASE("locating-dominating codes exist on grids with twins") {
  const SearchResult r = min_density(request(testing::data_path("ladder.grid"), CodeKind::LocatingDominating, 1, {0, 1}));
  check_round_trip(r);
  CHECK(r.alpha == Rational(1, 2));
}

TEST_CASE("sweep reports rows and keeps going after failures") {
  CHECK(sweep({}).empty());
  SearchRequest capped = hex_id({0, 4});
  capped.caps.max_nodes = 1;
  const auto rows = sweep({hex_id({0, 2}), capped, hex_id({1, 1})});
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].result.has_value());
  CHECK(rows[0].result->alpha == Rational(3, 7));
  CHECK(rows[1].error == ErrorKind::ResourceLimit);
  REQUIRE(rows[2].result.has_value());
  CHECK(rows[2].result->alpha == Rational(1, 2));

  const std::string jsonl = sweep_to_jsonl(rows);
  std::istringstream lines(jsonl);
  std::string line;
  std::vector<nlohmann::json> parsed;
  while (std::getline(lines, line)) parsed.push_back(nlohmann::json::parse(line));
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0]["alpha"] == "3/7");
  CHECK(parsed[1]["status"] == "ResourceLimit");
  const std::string table = sweep_to_table(rows);
  CHECK(table.find("3/7") != std::string::npos);
  CHECK(table.find("ResourceLimit") != std::string::npos);
}

TEST_CASE("every preset parses and sweeps cleanly") {
  for (const char* name : {"alpha0_hex_identifying_r1.cfg", "alpha1_king_ld_r2.cfg", "alpha2_king_rld_r1.cfg",
                           "alpha3_square_identifying_r2.cfg", "alpha4_triangular_identifying_r2.cfg"}) {
    CAPTURE(name);
    const auto requests = parse_sweep_config(testing::read_text(std::string(GRIDCODE_PRESETS) + "/" + name));
    REQUIRE(requests.size() >= 6);
    for (const auto& row : sweep(requests)) {
      CAPTURE(row.message);
      REQUIRE(row.result.has_value());
      check_round_trip(*row.result);
    }
  }
  CHECK_THROWS_AS(parse_sweep_config("grid hex\n"), Error);
  CHECK_THROWS_AS(parse_sweep_config("colour = red\n"), Error);
  CHECK_THROWS_AS(parse_sweep_config("radius = two\n"), Error);
}
