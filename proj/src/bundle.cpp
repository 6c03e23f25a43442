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

#include "gbig/bundle.hpp"

#include <algorithm>
#include <string>

#include "gbig/error.hpp"

namespace gbig {

std::size_t GraphBundle::num_classes() const {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

void GraphBundle::validate() const {
  const std::size_t n = graph.num_nodes();
  if (features.rows() != n) {
    throw Error(ErrorCode::kShapeMismatch, "features have " + std::to_string(features.rows()) + " rows for " +
                                               std::to_string(n) + " nodes");
  }
  if (labels.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "labels have " + std::to_string(labels.size()) + " entries for " + std::to_string(n) + " nodes");
  }
  std::vector<int> owner(n, -1);
  const std::vector<NodeId>* lists[] = {&masks.train, &masks.val, &masks.test};
  for (int which = 0; which < 3; ++which) {
    for (NodeId v : *lists[which]) {
      if (v >= n) throw Error(ErrorCode::kIndexOutOfRange, "mask index " + std::to_string(v));
      if (owner[v] != -1) throw Error(ErrorCode::kOverlappingMasks, "node " + std::to_string(v) + " appears more than once across masks");
      owner[v] = which;
    }
  }
  if (ground_truth) {
    for (const auto& [target, nodes] : ground_truth->targets) {
      if (target >= n) throw Error(ErrorCode::kIndexOutOfRange, "ground-truth target " + std::to_string(target));
      for (NodeId v : nodes)
        if (v >= n) throw Error(ErrorCode::kIndexOutOfRange, "ground-truth node " + std::to_string(v));
    }
  }
}

}  // namespace gbig
