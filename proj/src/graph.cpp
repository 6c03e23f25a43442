// Copyright 2026 The gbig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gbig/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "gbig/error.hpp"

namespace gbig {
namespace {

void check_node(const Graph& g, NodeId v) {
  if (v >= g.num_nodes()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "node " + std::to_string(v) + " >= num_nodes " + std::to_string(g.num_nodes()));
  }
}

std::vector<std::size_t> bfs_limited(const Graph& g, NodeId src, std::size_t max_depth) {
  std::vector<std::size_t> dist(g.num_nodes(), kUnreachable);
  std::deque<NodeId> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (dist[u] == max_depth) continue;
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > kUnreachable - b ? kUnreachable : a + b;
}

}  // namespace

Graph Graph::from_edges(std::size_t num_nodes, std::span<const Edge> edges) {
  Graph g(num_nodes);
  for (const auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") with num_nodes " +
                      std::to_string(num_nodes));
    }
    if (u == v) continue;
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  std::size_t twice_edges = 0;
  for (auto& nbrs : g.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    twice_edges += nbrs.size();
  }
  g.num_edges_ = twice_edges / 2;
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& nbrs = adj_.at(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (NodeId u = 0; u < adj_.size(); ++u)
    for (NodeId v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<std::size_t> bfs_distances(const Graph& g, NodeId src) {
  check_node(g, src);
  return bfs_limited(g, src, kUnreachable);
}

std::size_t count_shortest_paths(const Graph& g, NodeId from, NodeId to) {
  check_node(g, from);
  check_node(g, to);
  const auto dist = bfs_distances(g, from);
  if (dist[to] == kUnreachable) return 0;
  // Process nodes in BFS layer order; counts flow along edges that advance one layer.
  std::vector<NodeId> order(g.num_nodes());
  for (NodeId v = 0; v < order.size(); ++v) order[v] = v;
  std::erase_if(order, [&](NodeId v) { return dist[v] == kUnreachable || dist[v] > dist[to]; });
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return dist[a] < dist[b]; });
  std::vector<std::size_t> count(g.num_nodes(), 0);
  count[from] = 1;
  for (NodeId u : order)
    for (NodeId v : g.neighbors(u))
      if (dist[v] == dist[u] + 1) count[v] = saturating_add(count[v], count[u]);
  return count[to];
}

std::vector<Path> shortest_paths(const Graph& g, NodeId from, NodeId to, PathBudget budget) {
  check_node(g, from);
  check_node(g, to);
  if (from == to) throw Error(ErrorCode::kInvalidArgument, "shortest_paths needs distinct endpoints");
  const auto from_dist = bfs_distances(g, from);
  if (from_dist[to] == kUnreachable) {
    throw Error(ErrorCode::kNoPath, "nodes " + std::to_string(from) + " and " + std::to_string(to) +
                                        " are in different components");
  }
  const std::size_t total = count_shortest_paths(g, from, to);
  if (total > budget.max_paths && !budget.truncate) {
    throw Error(ErrorCode::kPathBudgetExceeded,
                std::to_string(total) + " shortest paths between " + std::to_string(from) + " and " +
                    std::to_string(to) + " exceed budget " + std::to_string(budget.max_paths));
  }
  const std::size_t limit = std::min(total, budget.max_paths);

  // A node lies on some shortest path iff d(from, v) + d(v, to) == d(from, to).
  const auto to_dist = bfs_distances(g, to);
  const std::size_t length = from_dist[to];

  std::vector<Path> paths;
  paths.reserve(limit);
  Path current{{from}};
  // Depth-first expansion over sorted neighbours yields lexicographic order.
  std::vector<std::size_t> cursor{0};
  while (!cursor.empty() && paths.size() < limit) {
    const NodeId u = current.nodes.back();
    if (u == to) {
      paths.push_back(current);
      current.nodes.pop_back();
      cursor.pop_back();
      continue;
    }
    const auto nbrs = g.neighbors(u);
    std::size_t& next = cursor.back();
    bool advanced = false;
    while (next < nbrs.size()) {
      const NodeId v = nbrs[next++];
      if (from_dist[v] == from_dist[u] + 1 && to_dist[v] != kUnreachable && from_dist[v] + to_dist[v] == length) {
        current.nodes.push_back(v);
        cursor.push_back(0);
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      current.nodes.pop_back();
      cursor.pop_back();
    }
  }
  return paths;
}

std::vector<NodeId> max_distance_set(const Graph& g, NodeId x) {
  check_node(g, x);
  if (g.degree(x) == 0) {
    throw Error(ErrorCode::kIsolatedNode, "node " + std::to_string(x) + " has no reachable neighbour");
  }
  const auto dist = bfs_distances(g, x);
  std::size_t best = 0;
  for (std::size_t d : dist)
    if (d != kUnreachable) best = std::max(best, d);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < dist.size(); ++v)
    if (dist[v] == best) out.push_back(v);
  return out;
}

std::vector<NodeId> k_hop_nodes(const Graph& g, NodeId x, std::size_t k) {
  check_node(g, x);
  const auto dist = bfs_limited(g, x, k);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreachable) out.push_back(v);
  return out;
}

}  // namespace gbig
