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

#include "gbig/synthgen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "gbig/error.hpp"

namespace gbig {

std::string_view motif_name(Motif m) { return m == Motif::kHouse ? "house" : "circle"; }

Motif parse_motif(std::string_view name) {
  if (name == "house") return Motif::kHouse;
  if (name == "circle") return Motif::kCircle;
  throw Error(ErrorCode::kInvalidArgument, "unknown motif '" + std::string(name) + "'");
}

MotifFragment make_motif(Motif kind) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  switch (kind) {
    case Motif::kHouse:
      n = 5;
      edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}};
      break;
    case Motif::kCircle:
      n = 6;
      for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
      break;
  }
  MotifFragment f;
  f.graph = Graph::from_edges(n, edges);
  f.important.resize(n);
  std::iota(f.important.begin(), f.important.end(), NodeId{0});
  return f;
}

namespace {

void validate(const GenParams& p, std::size_t motif_size) {
  if (p.homophily != 1 && p.homophily != -1) throw Error(ErrorCode::kInvalidArgument, "homophily must be +1 or -1");
  if (p.num_subgraphs == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one subgraph");
  if (p.subgraph_size < motif_size) {
    throw Error(ErrorCode::kInvalidArgument, "subgraph size " + std::to_string(p.subgraph_size) +
                                                 " is smaller than the motif (" + std::to_string(motif_size) + ")");
  }
  if (!(p.edge_probability > 0.0 && p.edge_probability < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "edge probability must lie in (0, 1)");
  }
  if (p.feature_dim == 0) throw Error(ErrorCode::kInvalidArgument, "feature dim must be positive");
  if (p.informative_dims > p.feature_dim) {
    throw Error(ErrorCode::kInvalidArgument, "informative dims exceed feature dim");
  }
}

// Union-find over a node range, used to stitch an Erdos-Renyi draw together.
struct Components {
  std::vector<std::size_t> parent;
  explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Erdos-Renyi G(n, p) on [offset, offset + n), then every component other
// than the anchor's is joined to a random earlier node.
void add_connected_er(std::size_t offset, std::size_t n, double p, std::mt19937_64& rng, std::vector<Edge>& edges) {
  std::bernoulli_distribution coin(p);
  Components comps(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) {
        edges.emplace_back(offset + u, offset + v);
        comps.unite(u, v);
      }
    }
  }
  for (std::size_t v = 1; v < n; ++v) {
    if (comps.find(v) == v && comps.find(0) != v) {
      std::uniform_int_distribution<std::size_t> pick(0, v - 1);
      const std::size_t u = pick(rng);
      edges.emplace_back(offset + u, offset + v);
      comps.unite(u, v);
    }
  }
}

// Local-search sign assignment: flip a node while most of its neighbours
// share its sign. Each flip strictly increases the number of disagreeing
// edges, so this terminates.
std::vector<int> heterophilic_signs(const Graph& g, std::vector<int> sign) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      std::size_t same = 0;
      for (NodeId u : g.neighbors(v)) same += sign[u] == sign[v] ? 1 : 0;
      if (2 * same > g.degree(v)) {
        sign[v] = -sign[v];
        changed = true;
      }
    }
  }
  return sign;
}

void stratified_split(const std::vector<std::size_t>& labels, std::size_t num_classes, std::mt19937_64& rng,
                      Split& split) {
  for (std::size_t c = 0; c < num_classes; ++c) {
    std::vector<NodeId> members;
    for (NodeId v = 0; v < labels.size(); ++v)
      if (labels[v] == c) members.push_back(v);
    std::shuffle(members.begin(), members.end(), rng);
    const std::size_t n = members.size();
    const std::size_t n_train = (n * 6 + 5) / 10;
    const std::size_t n_val = std::min(n - n_train, (n * 2 + 5) / 10);
    split.train.insert(split.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.val.insert(split.val.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train),
                     members.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    split.test.insert(split.test.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train + n_val),
                      members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
}

}  // namespace

GraphBundle generate(const GenParams& params) {
  const MotifFragment motif = make_motif(params.motif);
  const std::size_t motif_size = motif.graph.num_nodes();
  validate(params, motif_size);

  std::mt19937_64 rng(params.seed);
  const std::size_t base_size = params.subgraph_size - motif_size;
  const std::size_t n = params.num_subgraphs * params.subgraph_size;

  std::vector<Edge> edges;
  std::vector<std::size_t> labels(n, 0);
  GroundTruth truth;
  std::vector<NodeId> anchors;
  for (std::size_t k = 0; k < params.num_subgraphs; ++k) {
    const std::size_t offset = k * params.subgraph_size;
    const std::size_t motif_offset = offset + base_size;
    if (base_size > 0) add_connected_er(offset, base_size, params.edge_probability, rng, edges);
    for (const auto& [u, v] : motif.graph.edges()) edges.emplace_back(motif_offset + u, motif_offset + v);
    if (base_size > 0) {
      std::uniform_int_distribution<std::size_t> pick_base(0, base_size - 1);
      std::uniform_int_distribution<std::size_t> pick_motif(0, motif_size - 1);
      const NodeId b = offset + pick_base(rng);
      const NodeId m = motif_offset + pick_motif(rng);
      edges.emplace_back(b, m);
    }
    std::vector<NodeId> members;
    for (NodeId v : motif.important) members.push_back(motif_offset + v);
    for (NodeId v : members) {
      labels[v] = 1;
      truth.targets[v] = members;
    }
    anchors.push_back(offset);
  }
  for (std::size_t k = 1; k < anchors.size(); ++k) edges.emplace_back(anchors[k - 1], anchors[k]);

  GraphBundle bundle;
  bundle.name = std::string(motif_name(params.motif)) + (params.homophily > 0 ? "-homophilic" : "-heterophilic");
  bundle.graph = Graph::from_edges(n, edges);
  bundle.labels = std::move(labels);

  std::vector<int> sign(n);
  for (NodeId v = 0; v < n; ++v) sign[v] = bundle.labels[v] == 1 ? 1 : -1;
  if (params.homophily < 0) sign = heterophilic_signs(bundle.graph, std::move(sign));

  std::normal_distribution<double> normal(0.0, 1.0);
  bundle.features = Matrix(n, params.feature_dim);
  for (NodeId v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < params.feature_dim; ++j) {
      const double mean = j < params.informative_dims ? static_cast<double>(sign[v]) : 0.0;
      bundle.features(v, j) = mean + normal(rng);
    }
  }

  stratified_split(bundle.labels, 2, rng, bundle.masks);
  bundle.ground_truth = std::move(truth);
  return bundle;
}

double feature_sign_agreement(const GraphBundle& bundle, std::size_t informative_dims) {
  const auto edges = bundle.graph.edges();
  if (edges.empty() || informative_dims == 0) return 0.0;
  std::size_t agree = 0;
  for (const auto& [u, v] : edges) {
    for (std::size_t j = 0; j < informative_dims; ++j) {
      agree += (bundle.features(u, j) > 0.0) == (bundle.features(v, j) > 0.0) ? 1 : 0;
    }
  }
  return static_cast<double>(agree) / static_cast<double>(edges.size() * informative_dims);
}

}  // namespace gbig
