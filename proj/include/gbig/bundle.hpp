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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbig/graph.hpp"
#include "gbig/matrix.hpp"

namespace gbig {

struct Split {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;

  bool operator==(const Split&) const = default;
};

// Per explainable node, the set of nodes that make up its true explanation.
struct GroundTruth {
  std::map<NodeId, std::vector<NodeId>> targets;

  bool operator==(const GroundTruth&) const = default;
};

// A graph dataset: structure, node features, labels, splits and optional
// explanation ground truth.
struct GraphBundle {
  std::string name;
  Graph graph;
  Matrix features;
  std::vector<std::size_t> labels;
  Split masks;
  std::optional<GroundTruth> ground_truth;

  std::size_t num_nodes() const noexcept { return graph.num_nodes(); }
  std::size_t num_features() const noexcept { return features.cols(); }
  std::size_t num_classes() const;

  // Throws gbig::Error describing the first violated invariant.
  void validate() const;

  bool operator==(const GraphBundle&) const = default;
};

}  // namespace gbig
