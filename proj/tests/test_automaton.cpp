#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <map>

#include "gridcode/automaton.hpp"
#include "gridcode/error.hpp"

using namespace gridcode;

namespace {

struct Case {
  const char* grid;
  CodeKind kind;
  int radius;
  PeriodVector period;
};

const Case kCases[] = {
    {"hex", CodeKind::Identifying, 1, {0, 2}},
    {"hex", CodeKind::Identifying, 1, {1, 1}},
    {"hex", CodeKind::Identifying, 1, {2, 2}},
    {"hex", CodeKind::Identifying, 1, {3, 1}},
    {"hex", CodeKind::Identifying, 1, {0, 4}},
    {"king", CodeKind::LocatingDominating, 2, {1, 1}},
    {"king", CodeKind::LocatingDominating, 2, {0, 2}},
    {"king", CodeKind::LocatingDominating, 2, {1, 2}},
    {"king", CodeKind::RedundantLocatingDominating, 1, {1, 1}},
    {"king", CodeKind::RedundantLocatingDominating, 1, {0, 3}},
    {"square", CodeKind::Identifying, 2, {2, 1}},
    {"triangular", CodeKind::Identifying, 2, {1, 2}},
};

StripAutomaton make(const Case& c) {
  const GridModel grid = make_preset_grid(c.grid);
  return StripAutomaton(generate_clauses(grid, {c.kind, c.radius}), c.period);
}

std::vector<PendingClause> sorted(std::vector<PendingClause> v) {
  std::sort(v.begin(), v.end());
  return v;
}

StripPattern pattern_of(std::uint64_t bits, std::size_t size) {
  StripPattern p;
  for (std::size_t i = 0; i < size; ++i) p.bits.push_back((bits >> i) & 1U);
  return p;
}

// Breadth-first closure using only the geometric step, every pattern tried.
struct NaiveAutomaton {
  std::map<std::vector<PendingClause>, std::size_t> ids;
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
};

NaiveAutomaton naive_build(const StripAutomaton& a) {
  NaiveAutomaton out;
  const std::size_t size = a.border().cells_per_period();
  std::deque<std::vector<PendingClause>> queue{{}};
  out.ids[{}] = 0;
  while (!queue.empty()) {
    const auto node = queue.front();
    queue.pop_front();
    const std::size_t from = out.ids[node];
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << size); ++bits) {
      const auto pattern = pattern_of(bits, size);
      const auto next = a.step(AutomatonNode{node}, pattern);
      if (!next) continue;
      const auto key = sorted(next->clauses);
      auto [it, fresh] = out.ids.try_emplace(key, out.ids.size());
      if (fresh) queue.push_back(key);
      auto e = out.edges.try_emplace({from, it->second}, pattern.weight()).first;
      e->second = std::min(e->second, pattern.weight());
    }
  }
  return out;
}

}  // namespace

TEST_CASE("border strips partition the plane") {
  for (PeriodVector v : {PeriodVector{0, 2}, PeriodVector{3, 1}, PeriodVector{2, 3}, PeriodVector{5, 4}}) {
    for (std::int64_t w : {1, 2}) {
      const Border b(v, w);
      CHECK(b.offset(0) == 0);
      for (std::int64_t j = 0; j < v.y; ++j) CHECK(b.offset(j) == ceil_div(j * v.x, v.y));
      for (std::int64_t x = -12; x <= 12; ++x)
        for (std::int64_t y = -12; y <= 12; ++y) {
          const Cell c{x, y};
          const std::size_t p = b.position_of(c);
          REQUIRE(p < b.cells_per_period());
          // c = border cell + k*(W,0) + t*v for the strip k and some t.
          const Cell rest = c - b.cell_at(p) - Cell{b.strip_of(c) * w, 0};
          CHECK(rest.y % v.y == 0);
          CHECK(rest == (rest.y / v.y) * v.cell());
        }
    }
  }
}

TEST_CASE("incoming translates start in strip 0") {
  for (const Case& c : kCases) {
    CAPTURE(c.grid);
    const StripAutomaton a = make(c);
    CHECK_FALSE(a.incoming().empty());
    std::set<std::pair<std::uint32_t, Cell>> seen;
    for (const auto& p : a.incoming()) {
      CHECK(p.anchor.y >= 0);
      CHECK(p.anchor.y < c.period.y);
      CHECK(seen.insert({p.class_id, p.anchor}).second);
      std::int64_t min_strip = std::numeric_limits<std::int64_t>::max();
      for (const Cell& cell : a.cells_of(p)) min_strip = std::min(min_strip, a.border().strip_of(cell));
      CHECK(min_strip == 0);
    }
  }
}

TEST_CASE("optimized builder equals the naive step-by-step closure") {
  for (const Case& c : kCases) {
    CAPTURE(c.grid);
    CAPTURE(c.period.x);
    CAPTURE(c.period.y);
    const StripAutomaton a = make(c);
    const BuiltAutomaton built = a.build();
    const NaiveAutomaton naive = naive_build(a);
    REQUIRE(built.node_count() == naive.ids.size());

    std::vector<std::size_t> to_naive(built.node_count());
    for (NodeId id = 0; id < built.node_count(); ++id) {
      const auto key = sorted(a.decode(built, id).clauses);
      auto it = naive.ids.find(key);
      REQUIRE(it != naive.ids.end());
      to_naive[id] = it->second;
    }
    CHECK(to_naive[0] == 0);
    std::map<std::pair<std::size_t, std::size_t>, int> mapped;
    for (const auto& e : built.graph.edges()) {
      auto [it, fresh] = mapped.try_emplace({to_naive[e.from], to_naive[e.to]}, static_cast<int>(e.weight));
      CHECK(fresh);  // parallel edges were collapsed
    }
    CHECK(mapped == naive.edges);
  }
}

TEST_CASE("builds are identical for every thread count") {
  for (const Case& c : kCases) {
    const StripAutomaton a = make(c);
    BuildOptions one, three;
    three.threads = 3;
    const auto x = a.build(one);
    const auto y = a.build(three);
    CHECK(x.keys == y.keys);
    CHECK(x.key_offsets == y.key_offsets);
    CHECK(x.graph.edges() == y.graph.edges());
  }
}

TEST_CASE("find_pattern realizes every edge") {
  for (const Case& c : kCases) {
    const StripAutomaton a = make(c);
    const auto built = a.build();
    for (const auto& e : built.graph.edges()) {
      const auto p = a.find_pattern(built, e.from, e.to, e.weight);
      REQUIRE(p.has_value());
      CHECK(p->weight() == e.weight);
      const auto next = a.step(a.decode(built, e.from), *p);
      REQUIRE(next.has_value());
      CHECK(sorted(next->clauses) == sorted(a.decode(built, e.to).clauses));
    }
    CHECK_FALSE(a.find_pattern(built, 0, 0, 1000).has_value());
  }
}

TEST_CASE("resource caps raise ResourceLimit") {
  const StripAutomaton a = make(kCases[0]);
  BuildOptions tiny;
  tiny.max_nodes = 1;
  try {
    a.build(tiny);
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
  BuildOptions few_edges;
  few_edges.max_edges = 3;
  CHECK_THROWS_AS(a.build(few_edges), Error);
}

TEST_CASE("node table lists every node") {
  const StripAutomaton a = make(kCases[0]);
  const auto built = a.build();
  const std::string table = a.format_node_table(built);
  CHECK(static_cast<std::size_t>(std::count(table.begin(), table.end(), '\n')) == built.node_count() + 1);
  CHECK(table.rfind("# node", 0) == 0);
  CHECK(table.find("\n0 :\n") != std::string::npos);
}

TEST_CASE("period outside the translation lattice is refused") {
  const GridModel hex = make_preset_grid("hex");
  try {
    StripAutomaton(generate_clauses(hex, {CodeKind::Identifying, 1}), PeriodVector{1, 2});
    FAIL("expected NotInLattice");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInLattice);
  }
}
