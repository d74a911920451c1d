#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gridcode/digraph.hpp"
#include "gridcode/rational.hpp"

namespace gridcode::kernels {

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Incoming adjacency, each node's in-edges sorted by (source, weight).
struct InEdges {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> sources;
  std::vector<Weight> weights;

  explicit InEdges(const WeightedDigraph& graph);
  std::size_t node_count() const noexcept { return offsets.size() - 1; }
};

/// One Bellman step: cur[v] = min over (w,v) of prev[w] + weight.
/// Unreachable states stay kInfinity. Ties go to the lowest source index.
/// `pred` may be empty; otherwise it receives the minimizing source.
void relax_serial(const InEdges& in, std::span<const Weight> prev, std::span<Weight> cur,
                  std::span<NodeId> pred);

/// Same result as relax_serial, bit for bit, with the node loop split across
/// `threads` OpenMP threads.
void relax_parallel(const InEdges& in, std::span<const Weight> prev, std::span<Weight> cur,
                    std::span<NodeId> pred, int threads);

inline void relax(const InEdges& in, std::span<const Weight> prev, std::span<Weight> cur, std::span<NodeId> pred,
                  int threads) {
  if (threads <= 1)
    relax_serial(in, prev, cur, pred);
  else
    relax_parallel(in, prev, cur, pred, threads);
}

/// Folds level k into the per-node running maximum of (F_n - F_k)/(n - k).
/// max_den == 0 marks "no finite term yet".
void fold_running_max(std::span<const Weight> f_n, std::span<const Weight> f_k, std::int64_t n_minus_k,
                      std::span<Weight> max_num, std::span<Weight> max_den, int threads);

/// Karp's formula, textbook form: full (n+1) x n table, single thread.
/// Kept as the reference the parallel variants are tested and benchmarked against.
/// Returns false when no cycle is reachable.
bool karp_reference_alpha(const WeightedDigraph& graph, Rational& alpha);

}  // namespace gridcode::kernels
