#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gridcode/digraph.hpp"
#include "gridcode/rational.hpp"
#include "gridcode/storage_meter.hpp"

namespace gridcode {

enum class KarpVariant {
  QuadraticSpace,  // (n+1) x n table of path weights plus predecessors
  LinearSpace,     // two passes over five length-n arrays; value only
  Sqrt3_2Space,    // checkpoint rows every ceil(sqrt n) levels, segment-wise path rebuild
};

KarpVariant parse_karp_variant(std::string_view text);  // "quad" | "linear" | "sqrt"
const char* karp_variant_name(KarpVariant variant);

struct MeanCycleResult {
  Rational alpha;          // minimum mean edge weight over all cycles
  NodeId witness = 0;      // node attaining the outer minimum of Karp's formula
  std::vector<NodeId> cycle;  // closed walk, front() == back(); empty for LinearSpace
};

struct KarpOptions {
  int threads = 1;
  StorageMeter* meter = nullptr;              // counts auxiliary array entries
  std::size_t max_table_bytes = std::size_t{4} << 30;  // QuadraticSpace guard
};

/// Minimum mean cycle by Karp's recurrence. The start node must reach every
/// node. Results are identical for every thread count and, apart from the
/// missing cycle of LinearSpace, for every variant.
/// Throws NoCycle, Overflow, ResourceLimit.
MeanCycleResult karp(const WeightedDigraph& graph, KarpVariant variant, const KarpOptions& options = {});

/// The O(n^{3/2})-space variant with path reconstruction.
MeanCycleResult karp_sqrt_reconstruct(const WeightedDigraph& graph, const KarpOptions& options = {});

/// Total weight over length of a closed walk, using the cheapest parallel edge per step.
Rational cycle_mean(const WeightedDigraph& graph, const std::vector<NodeId>& cycle);

/// Exhaustive minimum over simple cycles (n <= 12). Test oracle only.
Rational oracle_min_mean(const WeightedDigraph& graph);

}  // namespace gridcode
