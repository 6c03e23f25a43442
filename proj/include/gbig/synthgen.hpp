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

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gbig/bundle.hpp"
#include "gbig/graph.hpp"

namespace gbig {

enum class Motif { kHouse, kCircle };

std::string_view motif_name(Motif m);
Motif parse_motif(std::string_view name);

struct MotifFragment {
  Graph graph;
  std::vector<NodeId> important;  // every motif node
};

// house: 4-cycle 0-1-2-3 with roof apex 4 joined to 0 and 1.
// circle: 6-cycle.
MotifFragment make_motif(Motif kind);

struct GenParams {
  Motif motif = Motif::kHouse;
  int homophily = 1;  // +1 or -1
  std::size_t num_subgraphs = 10;
  std::size_t subgraph_size = 12;
  double edge_probability = 0.3;
  std::size_t feature_dim = 8;
  std::size_t informative_dims = 4;
  std::uint64_t seed = 0;
};

// Synthetic node-classification bundle with motif ground truth.
//
// Each subgraph is an Erdos-Renyi base (made connected) plus one motif hung
// off a random base node by a single bridge. Subgraphs are chained through
// their first base node ("anchor"). Motif nodes are class 1, the rest 0.
// Informative features are N(+-1, 1) by class; the rest are N(0, 1). For
// homophily -1 each node's informative signs are flipped whenever most of
// its neighbours carry the same sign, repeated until stable, so connected
// nodes tend to disagree.
GraphBundle generate(const GenParams& params);

// Mean over edges and informative dims of [sign(x_u) == sign(x_v)].
double feature_sign_agreement(const GraphBundle& bundle, std::size_t informative_dims);

}  // namespace gbig
