#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridcode/digraph.hpp"

namespace gridcode::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string data_path(const std::string& name) { return std::string(GRIDCODE_TEST_DATA) + "/" + name; }

/// Random digraph whose start node 0 reaches every node: a random spanning
/// arborescence plus `extra` random edges. Every node gets an out-edge so a
/// cycle always exists.
inline WeightedDigraph random_reachable_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra,
                                              Weight max_weight) {
  std::uniform_int_distribution<Weight> weight(0, max_weight);
  std::vector<WeightedEdge> edges;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    edges.push_back({parent(rng), v, weight(rng)});
  }
  std::uniform_int_distribution<NodeId> any(0, static_cast<NodeId>(n - 1));
  for (NodeId v = 0; v < n; ++v) edges.push_back({v, any(rng), weight(rng)});
  for (std::size_t i = 0; i < extra; ++i) edges.push_back({any(rng), any(rng), weight(rng)});
  std::shuffle(edges.begin(), edges.end(), rng);
  return WeightedDigraph(n, 0, std::move(edges));
}

/// Random strongly connected digraph: a Hamiltonian cycle through a random
/// permutation plus `extra` random edges.
inline WeightedDigraph random_strong_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra,
                                           Weight max_weight) {
  std::uniform_int_distribution<Weight> weight(0, max_weight);
  std::vector<NodeId> perm(n);
  for (NodeId v = 0; v < n; ++v) perm[v] = v;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({perm[i], perm[(i + 1) % n], weight(rng)});
  std::uniform_int_distribution<NodeId> any(0, static_cast<NodeId>(n - 1));
  for (std::size_t i = 0; i < extra; ++i) edges.push_back({any(rng), any(rng), weight(rng)});
  return WeightedDigraph(n, 0, std::move(edges));
}

}  // namespace gridcode::testing
