#include <vector>

#include "gridcode/error.hpp"
#include "gridcode/mmc.hpp"

namespace gridcode {

namespace {

struct CycleSearch {
  std::size_t n;
  std::vector<std::vector<Weight>> cheapest;  // -1 where no edge
  std::vector<char> on_path;
  NodeId root = 0;
  bool found = false;
  Rational best;

  void consider(Weight total, std::int64_t length) {
    const Rational mean(total, length);
    if (!found || mean < best) best = mean;
    found = true;
  }

  // Simple cycles whose smallest node is `root`, extended through nodes > root.
  void extend(NodeId u, Weight total, std::int64_t length) {
    for (NodeId v = root; v < n; ++v) {
      const Weight w = cheapest[u][v];
      if (w < 0) continue;
      if (v == root) {
        consider(total + w, length + 1);
      } else if (!on_path[v]) {
        on_path[v] = 1;
        extend(v, total + w, length + 1);
        on_path[v] = 0;
      }
    }
  }
};

}  // namespace

Rational oracle_min_mean(const WeightedDigraph& graph) {
  const std::size_t n = graph.node_count();
  if (n > 12) throw Error(ErrorKind::IndexTooLarge, "simple-cycle oracle is limited to 12 nodes");
  CycleSearch search{n, std::vector<std::vector<Weight>>(n, std::vector<Weight>(n, -1)), std::vector<char>(n, 0)};
  for (const auto& e : graph.edges()) {
    Weight& slot = search.cheapest[e.from][e.to];
    if (slot < 0 || e.weight < slot) slot = e.weight;
  }
  for (NodeId root = 0; root < n; ++root) {
    search.root = root;
    search.on_path[root] = 1;
    search.extend(root, 0, 0);
    search.on_path[root] = 0;
  }
  if (!search.found) throw Error(ErrorKind::NoCycle, "graph is acyclic");
  return search.best;
}

}  // namespace gridcode
