#include "gridcode/mmc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gridcode/error.hpp"
#include "gridcode/mmc_kernels.hpp"

namespace gridcode {

using kernels::kInfinity;
using kernels::kNoNode;

KarpVariant parse_karp_variant(std::string_view text) {
  if (text == "quad" || text == "quadratic") return KarpVariant::QuadraticSpace;
  if (text == "linear") return KarpVariant::LinearSpace;
  if (text == "sqrt") return KarpVariant::Sqrt3_2Space;
  throw Error(ErrorKind::Parse, "unknown Karp variant '" + std::string(text) + "' (quad|linear|sqrt)");
}

const char* karp_variant_name(KarpVariant variant) {
  switch (variant) {
    case KarpVariant::QuadraticSpace: return "quad";
    case KarpVariant::LinearSpace: return "linear";
    case KarpVariant::Sqrt3_2Space: return "sqrt";
  }
  return "?";
}

namespace {

void check_preconditions(const WeightedDigraph& graph) {
  const auto n = static_cast<__int128>(graph.node_count());
  if (n * graph.max_weight() >= (static_cast<__int128>(1) << 62))
    throw Error(ErrorKind::Overflow, "path weights may exceed 62 bits");
}

struct Minimizer {
  Rational alpha;
  NodeId witness = kNoNode;
};

// Outer minimum of Karp's formula over nodes with a finite length-n weight.
Minimizer pick_minimizer(std::span<const Weight> f_n, std::span<const Weight> max_num,
                         std::span<const Weight> max_den) {
  Minimizer best;
  Weight best_num = 0, best_den = 1;
  for (std::size_t v = 0; v < f_n.size(); ++v) {
    if (f_n[v] == kInfinity || max_den[v] == 0) continue;
    if (best.witness == kNoNode ||
        static_cast<__int128>(max_num[v]) * best_den < static_cast<__int128>(best_num) * max_den[v]) {
      best.witness = static_cast<NodeId>(v);
      best_num = max_num[v];
      best_den = max_den[v];
    }
  }
  if (best.witness == kNoNode) throw Error(ErrorKind::NoCycle, "no cycle is reachable from the start node");
  best.alpha = Rational(best_num, best_den);
  return best;
}

// A minimum-weight length-n walk from the start contains a contiguous closed
// subwalk of mean alpha; the innermost such one is between consecutive visits.
std::vector<NodeId> cut_cycle(const WeightedDigraph& graph, const std::vector<NodeId>& path, const Rational& alpha) {
  const std::size_t len = path.size();
  std::vector<Weight> prefix(len, 0);
  for (std::size_t k = 1; k < len; ++k) prefix[k] = prefix[k - 1] + graph.min_edge_weight(path[k - 1], path[k]);
  auto mean_is_alpha = [&](std::size_t i, std::size_t j) {
    return static_cast<__int128>(prefix[j] - prefix[i]) * alpha.den() ==
           static_cast<__int128>(alpha.num()) * static_cast<__int128>(j - i);
  };
  std::vector<std::size_t> last(graph.node_count(), SIZE_MAX);
  for (std::size_t j = 0; j < len; ++j) {
    const std::size_t i = last[path[j]];
    if (i != SIZE_MAX && mean_is_alpha(i, j)) return {path.begin() + static_cast<std::ptrdiff_t>(i),
                                                      path.begin() + static_cast<std::ptrdiff_t>(j) + 1};
    last[path[j]] = j;
  }
  for (std::size_t j = 0; j < len; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (path[i] == path[j] && mean_is_alpha(i, j))
        return {path.begin() + static_cast<std::ptrdiff_t>(i), path.begin() + static_cast<std::ptrdiff_t>(j) + 1};
  throw Error(ErrorKind::Internal, "minimum-weight walk holds no cycle of mean " + alpha.str());
}

MeanCycleResult karp_quadratic(const WeightedDigraph& graph, const kernels::InEdges& in, const KarpOptions& opt) {
  const std::size_t n = graph.node_count();
  const double bytes = static_cast<double>(n + 1) * static_cast<double>(n) * (sizeof(Weight) + sizeof(NodeId));
  if (bytes > static_cast<double>(opt.max_table_bytes))
    throw Error(ErrorKind::ResourceLimit, "quadratic Karp table needs " + std::to_string(bytes / 1e9) +
                                              " GB; use the sqrt or linear variant");
  MeteredArray<Weight> table((n + 1) * n, kInfinity, opt.meter);
  MeteredArray<NodeId> pred(n * n, kNoNode, opt.meter);
  auto row = [&](std::size_t k) { return std::span<Weight>(table.data() + k * n, n); };
  row(0)[graph.start()] = 0;
  for (std::size_t k = 1; k <= n; ++k)
    kernels::relax(in, row(k - 1), row(k), std::span<NodeId>(pred.data() + (k - 1) * n, n), opt.threads);

  MeteredArray<Weight> max_num(n, 0, opt.meter), max_den(n, 0, opt.meter);
  for (std::size_t k = 0; k < n; ++k)
    kernels::fold_running_max(row(n), row(k), static_cast<std::int64_t>(n - k), {max_num.data(), n},
                              {max_den.data(), n}, opt.threads);
  const Minimizer best = pick_minimizer(row(n), {max_num.data(), n}, {max_den.data(), n});

  std::vector<NodeId> path(n + 1);
  path[n] = best.witness;
  for (std::size_t k = n; k >= 1; --k) path[k - 1] = pred[(k - 1) * n + path[k]];
  return {best.alpha, best.witness, cut_cycle(graph, path, best.alpha)};
}

// Second pass shared by LinearSpace and Sqrt3_2Space: recompute F_k and fold
// Karp's inner maximum against the stored F_n.
Minimizer evaluate_formula(const WeightedDigraph& graph, const kernels::InEdges& in, std::span<const Weight> f_n,
                           const KarpOptions& opt) {
  const std::size_t n = graph.node_count();
  MeteredArray<Weight> prev(n, kInfinity, opt.meter), cur(n, kInfinity, opt.meter);
  MeteredArray<Weight> max_num(n, 0, opt.meter), max_den(n, 0, opt.meter);
  prev[graph.start()] = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      kernels::relax(in, {prev.data(), n}, {cur.data(), n}, {}, opt.threads);
      std::swap(prev, cur);
    }
    kernels::fold_running_max(f_n, {prev.data(), n}, static_cast<std::int64_t>(n - k), {max_num.data(), n},
                              {max_den.data(), n}, opt.threads);
  }
  return pick_minimizer(f_n, {max_num.data(), n}, {max_den.data(), n});
}

MeanCycleResult karp_linear(const WeightedDigraph& graph, const kernels::InEdges& in, const KarpOptions& opt) {
  const std::size_t n = graph.node_count();
  MeteredArray<Weight> f_n(n, kInfinity, opt.meter);
  {
    MeteredArray<Weight> prev(n, kInfinity, opt.meter), cur(n, kInfinity, opt.meter);
    prev[graph.start()] = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      kernels::relax(in, {prev.data(), n}, {cur.data(), n}, {}, opt.threads);
      std::swap(prev, cur);
    }
    std::copy(prev.data(), prev.data() + n, f_n.data());
  }
  const Minimizer best = evaluate_formula(graph, in, {f_n.data(), n}, opt);
  return {best.alpha, best.witness, {}};
}

}  // namespace

MeanCycleResult karp_sqrt_reconstruct(const WeightedDigraph& graph, const KarpOptions& opt) {
  check_preconditions(graph);
  const kernels::InEdges in(graph);
  const std::size_t n = graph.node_count();
  std::size_t m = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (m * m < n) ++m;
  while (m > 1 && (m - 1) * (m - 1) >= n) --m;
  // Checkpoints 0, m, 2m, ..., n: consecutive gaps are at most m.
  const std::size_t segments = (n + m - 1) / m;
  auto checkpoint = [&](std::size_t i) { return std::min(i * m, n); };

  MeteredArray<Weight> rows((segments + 1) * n, kInfinity, opt.meter);
  auto stored = [&](std::size_t i) { return std::span<Weight>(rows.data() + i * n, n); };
  {
    MeteredArray<Weight> prev(n, kInfinity, opt.meter), cur(n, kInfinity, opt.meter);
    prev[graph.start()] = 0;
    std::copy(prev.data(), prev.data() + n, stored(0).begin());
    std::size_t next = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      kernels::relax(in, {prev.data(), n}, {cur.data(), n}, {}, opt.threads);
      std::swap(prev, cur);
      if (k == checkpoint(next)) {
        std::copy(prev.data(), prev.data() + n, stored(next).begin());
        ++next;
      }
    }
  }
  const Minimizer best = evaluate_formula(graph, in, stored(segments), opt);

  MeteredArray<NodeId> path(n + 1, kNoNode, opt.meter);
  MeteredArray<NodeId> choice(m * n, kNoNode, opt.meter);
  MeteredArray<Weight> prev(n, kInfinity, opt.meter), cur(n, kInfinity, opt.meter);
  path[n] = best.witness;
  for (std::size_t i = segments; i >= 1; --i) {
    const std::size_t lo = checkpoint(i - 1), hi = checkpoint(i);
    std::copy(stored(i - 1).begin(), stored(i - 1).end(), prev.data());
    for (std::size_t k = lo + 1; k <= hi; ++k) {
      kernels::relax(in, {prev.data(), n}, {cur.data(), n}, {choice.data() + (k - lo - 1) * n, n}, opt.threads);
      std::swap(prev, cur);
    }
    for (std::size_t k = hi; k > lo; --k) path[k - 1] = choice[(k - lo - 1) * n + path[k]];
  }
  std::vector<NodeId> walk(path.data(), path.data() + n + 1);
  return {best.alpha, best.witness, cut_cycle(graph, walk, best.alpha)};
}

MeanCycleResult karp(const WeightedDigraph& graph, KarpVariant variant, const KarpOptions& options) {
  if (variant == KarpVariant::Sqrt3_2Space) return karp_sqrt_reconstruct(graph, options);
  check_preconditions(graph);
  const kernels::InEdges in(graph);
  if (variant == KarpVariant::QuadraticSpace) return karp_quadratic(graph, in, options);
  return karp_linear(graph, in, options);
}

Rational cycle_mean(const WeightedDigraph& graph, const std::vector<NodeId>& cycle) {
  if (cycle.size() < 2 || cycle.front() != cycle.back()) throw Error(ErrorKind::Internal, "not a closed walk");
  Weight total = 0;
  for (std::size_t k = 1; k < cycle.size(); ++k) {
    const Weight w = graph.min_edge_weight(cycle[k - 1], cycle[k]);
    if (w < 0) throw Error(ErrorKind::Internal, "closed walk uses a missing edge");
    total += w;
  }
  return Rational(total, static_cast<std::int64_t>(cycle.size() - 1));
}

}  // namespace gridcode
