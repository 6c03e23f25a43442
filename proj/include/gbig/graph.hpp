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

#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace gbig {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Simple undirected unweighted graph. Immutable once built; neighbor lists
// are sorted and symmetric.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t num_nodes) : adj_(num_nodes) {}

  // Self-loops are dropped and repeated edges collapse to one.
  static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adj_.at(v); }
  std::size_t degree(NodeId v) const { return adj_.at(v).size(); }
  bool has_edge(NodeId u, NodeId v) const;

  // Each undirected edge once as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::size_t num_edges_ = 0;
};

struct Path {
  std::vector<NodeId> nodes;

  // Edge count.
  std::size_t length() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  auto operator<=>(const Path&) const = default;
};

// Hop distance from src to every node; kUnreachable outside src's component.
std::vector<std::size_t> bfs_distances(const Graph& g, NodeId src);

struct PathBudget {
  std::size_t max_paths = 1024;
  // Keep the first max_paths paths in lexicographic order instead of failing.
  bool truncate = false;
};

// Number of distinct shortest paths between two nodes, saturating at SIZE_MAX.
std::size_t count_shortest_paths(const Graph& g, NodeId from, NodeId to);

// All shortest paths from `from` to `to`, lexicographically ordered.
// Throws kNoPath across components and kPathBudgetExceeded when the count
// exceeds the budget (unless truncation was requested).
std::vector<Path> shortest_paths(const Graph& g, NodeId from, NodeId to, PathBudget budget = {});

// Nodes at maximal hop distance from x within x's component.
// Throws kIsolatedNode when x has no neighbours.
std::vector<NodeId> max_distance_set(const Graph& g, NodeId x);

// Nodes within k hops of x (x included), ascending.
std::vector<NodeId> k_hop_nodes(const Graph& g, NodeId x, std::size_t k);

}  // namespace gbig
