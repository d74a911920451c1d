#include "gridcode/mmc_kernels.hpp"

#include <algorithm>
#include <numeric>

namespace gridcode::kernels {

InEdges::InEdges(const WeightedDigraph& graph) {
  const std::size_t n = graph.node_count();
  offsets.assign(n + 1, 0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : graph.targets(u)) ++offsets[v + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  sources.resize(graph.edge_count());
  weights.resize(graph.edge_count());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  // Sources are visited in increasing order, so each in-list is sorted by source.
  for (NodeId u = 0; u < n; ++u) {
    auto t = graph.targets(u);
    auto w = graph.weights(u);
    for (std::size_t i = 0; i < t.size(); ++i) {
      sources[fill[t[i]]] = u;
      weights[fill[t[i]]] = w[i];
      ++fill[t[i]];
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> order(offsets[v + 1] - offsets[v]);
    std::iota(order.begin(), order.end(), offsets[v]);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return sources[a] != sources[b] ? sources[a] < sources[b] : weights[a] < weights[b];
    });
    std::vector<NodeId> s;
    std::vector<Weight> w;
    for (std::size_t idx : order) {
      s.push_back(sources[idx]);
      w.push_back(weights[idx]);
    }
    std::copy(s.begin(), s.end(), sources.begin() + static_cast<std::ptrdiff_t>(offsets[v]));
    std::copy(w.begin(), w.end(), weights.begin() + static_cast<std::ptrdiff_t>(offsets[v]));
  }
}

namespace {

inline void relax_node(const InEdges& in, std::span<const Weight> prev, std::span<Weight> cur,
                       std::span<NodeId> pred, std::size_t v) {
  Weight best = kInfinity;
  NodeId arg = kNoNode;
  for (std::size_t e = in.offsets[v]; e < in.offsets[v + 1]; ++e) {
    const Weight base = prev[in.sources[e]];
    if (base == kInfinity) continue;
    const Weight candidate = base + in.weights[e];
    if (candidate < best) {
      best = candidate;
      arg = in.sources[e];
    }
  }
  cur[v] = best;
  if (!pred.empty()) pred[v] = arg;
}

}  // namespace

void relax_serial(const InEdges& in, std::span<const Weight> prev, std::span<Weight> cur,
                  std::span<NodeId> pred) {
  const std::size_t n = in.node_count();
  for (std::size_t v = 0; v < n; ++v) relax_node(in, prev, cur, pred, v);
}

void relax_parallel(const InEdges& in, std::span<const Weight> prev, std::span<Weight> cur,
                    std::span<NodeId> pred, int threads) {
  const auto n = static_cast<std::int64_t>(in.node_count());
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::int64_t v = 0; v < n; ++v) relax_node(in, prev, cur, pred, static_cast<std::size_t>(v));
}

void fold_running_max(std::span<const Weight> f_n, std::span<const Weight> f_k, std::int64_t n_minus_k,
                      std::span<Weight> max_num, std::span<Weight> max_den, int threads) {
  const auto n = static_cast<std::int64_t>(f_n.size());
#pragma omp parallel for num_threads(threads > 0 ? threads : 1) schedule(static) if (threads > 1)
  for (std::int64_t v = 0; v < n; ++v) {
    if (f_n[v] == kInfinity || f_k[v] == kInfinity) continue;
    const Weight num = f_n[v] - f_k[v];
    if (max_den[v] == 0 ||
        static_cast<__int128>(num) * max_den[v] > static_cast<__int128>(max_num[v]) * n_minus_k) {
      max_num[v] = num;
      max_den[v] = n_minus_k;
    }
  }
}

bool karp_reference_alpha(const WeightedDigraph& graph, Rational& alpha) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<Weight>> table(n + 1, std::vector<Weight>(n, kInfinity));
  table[0][graph.start()] = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    for (NodeId w = 0; w < n; ++w) {
      if (table[k - 1][w] == kInfinity) continue;
      auto t = graph.targets(w);
      auto wt = graph.weights(w);
      for (std::size_t i = 0; i < t.size(); ++i)
        table[k][t[i]] = std::min(table[k][t[i]], table[k - 1][w] + wt[i]);
    }
  }
  bool found = false;
  for (std::size_t v = 0; v < n; ++v) {
    if (table[n][v] == kInfinity) continue;
    bool have = false;
    Rational worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (table[k][v] == kInfinity) continue;
      const Rational term(table[n][v] - table[k][v], static_cast<std::int64_t>(n - k));
      if (!have || term > worst) worst = term;
      have = true;
    }
    if (have && (!found || worst < alpha)) {
      alpha = worst;
      found = true;
    }
  }
  return found;
}

}  // namespace gridcode::kernels
