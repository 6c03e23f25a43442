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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gbig/error.hpp"
#include "gbig/graph.hpp"
#include "oracles.hpp"

namespace {

using gbig::Edge;
using gbig::ErrorCode;
using gbig::Graph;
using gbig::NodeId;

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph::from_edges(n, e);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const gbig::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected gbig::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(Graph, FromEdgesNormalizesInput) {
  const std::vector<Edge> e = {{0, 1}, {1, 0}, {2, 2}, {1, 2}, {0, 1}};
  const auto g = Graph::from_edges(3, e);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(g.has_edge(2, 2));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_EQ(g.degree(1), 2u);
}

TEST(Graph, OutOfRangeEdgeIsRejected) {
  const std::vector<Edge> e = {{0, 3}};
  EXPECT_EQ(code_of([&] { Graph::from_edges(3, e); }), ErrorCode::kIndexOutOfRange);
}

TEST(Graph, BfsDistancesOnPathAndDisconnected) {
  const auto g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}});
  const auto d = gbig::bfs_distances(g, 0);
  EXPECT_EQ(d[0], 0u);
  EXPECT_EQ(d[2], 2u);
  EXPECT_EQ(d[3], gbig::kUnreachable);
}

TEST(ShortestPaths, DiamondHasTwoPathsInLexicographicOrder) {
  const auto g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const auto paths = gbig::shortest_paths(g, 0, 3);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].nodes, (std::vector<NodeId>{0, 1, 3}));
  EXPECT_EQ(paths[1].nodes, (std::vector<NodeId>{0, 2, 3}));
  EXPECT_EQ(gbig::count_shortest_paths(g, 0, 3), 2u);
}

TEST(ShortestPaths, PathGraphHasOnePath) {
  const auto paths = gbig::shortest_paths(path_graph(5), 4, 0);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].nodes, (std::vector<NodeId>{4, 3, 2, 1, 0}));
  EXPECT_EQ(paths[0].length(), 4u);
}

TEST(ShortestPaths, ErrorCases) {
  const auto g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  EXPECT_EQ(code_of([&] { gbig::shortest_paths(g, 0, 2); }), ErrorCode::kNoPath);
  EXPECT_EQ(code_of([&] { gbig::shortest_paths(g, 1, 1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { gbig::shortest_paths(g, 0, 9); }), ErrorCode::kIndexOutOfRange);
}

// A chain of k diamonds has 2^k shortest paths end to end.
Graph diamond_chain(std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < k; ++i) {
    const NodeId s = 3 * i;
    e.insert(e.end(), {{s, s + 1}, {s, s + 2}, {s + 1, s + 3}, {s + 2, s + 3}});
  }
  return Graph::from_edges(3 * k + 1, e);
}

TEST(ShortestPaths, BudgetIsEnforcedOrTruncates) {
  const auto g = diamond_chain(6);
  EXPECT_EQ(gbig::count_shortest_paths(g, 0, 18), 64u);
  EXPECT_EQ(code_of([&] { gbig::shortest_paths(g, 0, 18, {.max_paths = 63}); }), ErrorCode::kPathBudgetExceeded);
  EXPECT_EQ(gbig::shortest_paths(g, 0, 18, {.max_paths = 64}).size(), 64u);

  const auto full = gbig::shortest_paths(g, 0, 18, {.max_paths = 64});
  const auto cut = gbig::shortest_paths(g, 0, 18, {.max_paths = 10, .truncate = true});
  ASSERT_EQ(cut.size(), 10u);
  for (std::size_t i = 0; i < cut.size(); ++i) EXPECT_EQ(cut[i], full[i]);
}

TEST(ShortestPaths, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracle::random_graph(3 + trial % 8, 0.35, rng);
    for (NodeId a = 0; a < g.num_nodes(); ++a) {
      for (NodeId b = 0; b < g.num_nodes(); ++b) {
        if (a == b) continue;
        const auto expected = oracle::brute_shortest_paths(g, a, b);
        if (expected.empty()) {
          EXPECT_EQ(code_of([&] { gbig::shortest_paths(g, a, b); }), ErrorCode::kNoPath);
          continue;
        }
        const auto got = gbig::shortest_paths(g, a, b, {.max_paths = 1u << 20});
        std::set<std::vector<NodeId>> got_set;
        for (const auto& p : got) got_set.insert(p.nodes);
        EXPECT_EQ(got_set, expected) << "trial " << trial << " " << a << "->" << b;
        EXPECT_EQ(got_set.size(), got.size()) << "duplicate paths";
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
        EXPECT_EQ(gbig::count_shortest_paths(g, a, b), got.size());
      }
    }
  }
}

TEST(ShortestPaths, ReversalSymmetry) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::random_connected_graph(10, 0.2, rng);
    const auto fwd = gbig::shortest_paths(g, 0, 9, {.max_paths = 1u << 20});
    auto back = gbig::shortest_paths(g, 9, 0, {.max_paths = 1u << 20});
    std::set<std::vector<NodeId>> a, b;
    for (const auto& p : fwd) a.insert(p.nodes);
    for (auto& p : back) {
      std::reverse(p.nodes.begin(), p.nodes.end());
      b.insert(p.nodes);
    }
    EXPECT_EQ(a, b);
  }
}

TEST(MaxDistanceSet, Examples) {
  EXPECT_EQ(gbig::max_distance_set(path_graph(5), 0), (std::vector<NodeId>{4}));
  EXPECT_EQ(gbig::max_distance_set(path_graph(5), 2), (std::vector<NodeId>{0, 4}));
  EXPECT_EQ(gbig::max_distance_set(star(4), 0), (std::vector<NodeId>{1, 2, 3, 4}));
  EXPECT_EQ(gbig::max_distance_set(star(4), 1), (std::vector<NodeId>{2, 3, 4}));
  const Graph lonely = Graph::from_edges(3, std::vector<Edge>{{1, 2}});
  EXPECT_EQ(code_of([&] { gbig::max_distance_set(lonely, 0); }), ErrorCode::kIsolatedNode);
}

TEST(MaxDistanceSet, AgreesWithAllPairsOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_graph(12, 0.2, rng);
    const auto d = oracle::all_pairs_hops(g);
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
      if (g.degree(x) == 0) continue;
      std::size_t far = 0;
      for (NodeId y = 0; y < g.num_nodes(); ++y)
        if (d[x][y] != SIZE_MAX) far = std::max(far, d[x][y]);
      std::vector<NodeId> expected;
      for (NodeId y = 0; y < g.num_nodes(); ++y)
        if (d[x][y] == far) expected.push_back(y);
      EXPECT_EQ(gbig::max_distance_set(g, x), expected);
    }
  }
}

TEST(KHop, MatchesAllPairsOracle) {
  std::mt19937_64 rng(3);
  const auto g = oracle::random_graph(20, 0.12, rng);
  const auto d = oracle::all_pairs_hops(g);
  for (std::size_t k = 0; k <= 4; ++k) {
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
      std::vector<NodeId> expected;
      for (NodeId y = 0; y < g.num_nodes(); ++y)
        if (d[x][y] <= k) expected.push_back(y);
      EXPECT_EQ(gbig::k_hop_nodes(g, x, k), expected) << "x=" << x << " k=" << k;
    }
  }
}

}  // namespace
