#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridcode {

using NodeId = std::uint32_t;
using Weight = std::int64_t;

struct WeightedEdge {
  NodeId from = 0;
  NodeId to = 0;
  Weight weight = 0;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Finite directed graph with nonnegative integer weights and a start node,
/// stored as compressed out-adjacency. Parallel edges and self-loops allowed.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  /// Edges in any order; they are stably sorted by source.
  WeightedDigraph(std::size_t node_count, NodeId start, std::vector<WeightedEdge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  NodeId start() const noexcept { return start_; }

  std::span<const NodeId> targets(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::span<const Weight> weights(NodeId u) const {
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }
  std::vector<WeightedEdge> edges() const;
  Weight max_weight() const noexcept { return max_weight_; }

  /// Minimum weight over parallel u->v edges, or -1 if there is none.
  Weight min_edge_weight(NodeId u, NodeId v) const;

  /// Every node reachable from the start node.
  bool all_reachable_from_start() const;
  bool strongly_connected() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Weight> weights_;
  NodeId start_ = 0;
  Weight max_weight_ = 0;
};

/// Text edge list: "n s" header, then "from to weight" per line; '#' comments.
std::string format_edge_list(const WeightedDigraph& graph);
WeightedDigraph parse_edge_list(std::string_view text);

}  // namespace gridcode
