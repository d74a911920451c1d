#include "gridcode/digraph.hpp"

#include <algorithm>
#include <sstream>

#include "gridcode/error.hpp"

namespace gridcode {

WeightedDigraph::WeightedDigraph(std::size_t node_count, NodeId start, std::vector<WeightedEdge> edges)
    : start_(start) {
  if (node_count == 0) throw Error(ErrorKind::Parse, "graph with no nodes");
  if (start >= node_count) throw Error(ErrorKind::Parse, "start node out of range");
  std::stable_sort(edges.begin(), edges.end(),
                   [](const WeightedEdge& a, const WeightedEdge& b) { return a.from < b.from; });
  offsets_.assign(node_count + 1, 0);
  targets_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.from >= node_count || e.to >= node_count) throw Error(ErrorKind::Parse, "edge endpoint out of range");
    if (e.weight < 0) throw Error(ErrorKind::Parse, "negative edge weight");
    ++offsets_[e.from + 1];
    targets_.push_back(e.to);
    weights_.push_back(e.weight);
    max_weight_ = std::max(max_weight_, e.weight);
  }
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];
}

std::vector<WeightedEdge> WeightedDigraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    auto t = targets(u);
    auto w = weights(u);
    for (std::size_t i = 0; i < t.size(); ++i) out.push_back({u, t[i], w[i]});
  }
  return out;
}

Weight WeightedDigraph::min_edge_weight(NodeId u, NodeId v) const {
  Weight best = -1;
  auto t = targets(u);
  auto w = weights(u);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == v && (best < 0 || w[i] < best)) best = w[i];
  return best;
}

namespace {

std::vector<char> reach(std::size_t n, NodeId from, const std::vector<std::vector<NodeId>>& adj) {
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  return seen;
}

}  // namespace

bool WeightedDigraph::all_reachable_from_start() const {
  std::vector<std::vector<NodeId>> adj(node_count());
  for (NodeId u = 0; u < node_count(); ++u) adj[u].assign(targets(u).begin(), targets(u).end());
  auto seen = reach(node_count(), start_, adj);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool WeightedDigraph::strongly_connected() const {
  std::vector<std::vector<NodeId>> fwd(node_count()), rev(node_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : targets(u)) {
      fwd[u].push_back(v);
      rev[v].push_back(u);
    }
  auto a = reach(node_count(), start_, fwd);
  auto b = reach(node_count(), start_, rev);
  for (std::size_t i = 0; i < node_count(); ++i)
    if (!a[i] || !b[i]) return false;
  return true;
}

std::string format_edge_list(const WeightedDigraph& graph) {
  std::ostringstream out;
  out << graph.node_count() << ' ' << graph.start() << '\n';
  for (const auto& e : graph.edges()) out << e.from << ' ' << e.to << ' ' << e.weight << '\n';
  return out.str();
}

WeightedDigraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_header = false;
  std::size_t n = 0;
  long long start = 0;
  std::vector<WeightedEdge> edges;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    long long a = 0, b = 0, c = 0;
    if (!have_header) {
      if (!(words >> a)) continue;
      if (!(words >> b) || a <= 0 || b < 0) throw Error(ErrorKind::Parse, "edge list header must be 'n s'");
      n = static_cast<std::size_t>(a);
      start = b;
      have_header = true;
      continue;
    }
    if (!(words >> a)) continue;
    if (!(words >> b >> c) || a < 0 || b < 0) throw Error(ErrorKind::Parse, "bad edge line: " + line);
    std::string extra;
    if (words >> extra) throw Error(ErrorKind::Parse, "trailing data on edge line: " + line);
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), c});
  }
  if (!have_header) throw Error(ErrorKind::Parse, "empty edge list");
  return WeightedDigraph(n, static_cast<NodeId>(start), std::move(edges));
}

}  // namespace gridcode
