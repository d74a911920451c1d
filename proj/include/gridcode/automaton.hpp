#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gridcode/constraints.hpp"
#include "gridcode/digraph.hpp"
#include "gridcode/grid.hpp"

namespace gridcode {

/// The slanted strip {(s_j + i, j) : 0 <= i < W}, s_j = ceil(j*x/y), and its
/// translates by multiples of (W, 0), which partition Z^2.
class Border {
 public:
  Border(PeriodVector period, std::int64_t width);

  PeriodVector period() const noexcept { return period_; }
  std::int64_t width() const noexcept { return width_; }
  std::size_t cells_per_period() const noexcept { return static_cast<std::size_t>(width_ * period_.y); }

  std::int64_t offset(std::int64_t row) const { return ceil_div(row * period_.x, period_.y); }
  /// Index k of the strip Border + (k*W, 0) holding c.
  std::int64_t strip_of(Cell c) const { return floor_div(c.x - offset(c.y), width_); }
  /// Position of c within its strip's period, row-major: row * W + column.
  std::size_t position_of(Cell c) const;
  /// Border cell (strip 0) at a position in [0, W*y).
  Cell cell_at(std::size_t position) const;

 private:
  PeriodVector period_;
  std::int64_t width_;
};

Border border_frontier(const GridModel& grid, PeriodVector period);

/// Codeword bits on one period of the border, indexed by Border::position_of.
struct StripPattern {
  std::vector<std::uint8_t> bits;
  int weight() const;
  friend bool operator==(const StripPattern&, const StripPattern&) = default;
};

/// A translate of a family class still waiting for codewords.
struct PendingClause {
  std::uint32_t class_id = 0;
  Cell anchor;        // reduced modulo the period: row in [0, y)
  int remaining = 1;  // codewords still required
  friend auto operator<=>(const PendingClause&, const PendingClause&) = default;
};

/// A v-periodic collection of pending clauses, sorted; empty is the start node.
struct AutomatonNode {
  std::vector<PendingClause> clauses;
  friend bool operator==(const AutomatonNode&, const AutomatonNode&) = default;
};

struct BuildOptions {
  std::size_t max_nodes = 20'000'000;
  std::size_t max_edges = 400'000'000;
  std::size_t max_bytes = std::size_t{8} << 30;
  int threads = 1;
};

struct BuiltAutomaton {
  WeightedDigraph graph;  // start node 0 is the empty collection
  std::vector<std::size_t> key_offsets;
  std::vector<std::uint32_t> keys;  // packed node encodings, see StripAutomaton::decode
  std::size_t patterns_tried = 0;

  std::size_t node_count() const { return graph.node_count(); }
};

/// Transition structure for one (grid, clause family, period) triple.
///
/// Edges are strip patterns: a node C steps to
///   D = { S - (W,0) : S in C ∪ C_B not yet holding its threshold of codewords }
/// and the step is rejected when some S in D has no cell right of the border.
class StripAutomaton {
 public:
  /// `family.grid` must already be the normalized grid for `period`.
  StripAutomaton(ClauseFamily family, PeriodVector period);
  ~StripAutomaton();
  StripAutomaton(StripAutomaton&&) noexcept;
  StripAutomaton& operator=(StripAutomaton&&) noexcept;

  const ClauseFamily& family() const noexcept { return family_; }
  const Border& border() const noexcept { return border_; }
  PeriodVector period() const noexcept { return border_.period(); }

  /// C_B: one representative per v-orbit of the class translates meeting the
  /// border and lying in {(i, j) : i >= s_j}; remaining = threshold.
  const std::vector<PendingClause>& incoming() const noexcept { return incoming_; }

  /// Cells of a pending clause translate.
  std::vector<Cell> cells_of(const PendingClause& clause) const;

  /// Reference transition computed from the cell sets. nullopt = rejected.
  std::optional<AutomatonNode> step(const AutomatonNode& node, const StripPattern& pattern) const;

  /// Breadth-first closure from the empty node with pruned pattern enumeration.
  /// Parallel edges keep only their minimum weight. Bit-identical for every
  /// thread count. Throws ResourceLimit.
  BuiltAutomaton build(const BuildOptions& options = {}) const;

  AutomatonNode decode(const BuiltAutomaton& built, NodeId id) const;

  /// A pattern of the given weight leading from `from` to `to`, in the same
  /// enumeration order the builder uses.
  std::optional<StripPattern> find_pattern(const BuiltAutomaton& built, NodeId from, NodeId to, Weight weight) const;

  /// One line per node: "id : class@x,y/remaining ...".
  std::string format_node_table(const BuiltAutomaton& built) const;

  /// Precomputed per-translate geometry; opaque outside the implementation.
  struct Tables;

 private:
  ClauseFamily family_;
  Border border_;
  std::vector<PendingClause> incoming_;
  std::unique_ptr<Tables> tables_;
};

}  // namespace gridcode
