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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbig/attribution.hpp"
#include "gbig/bundle.hpp"
#include "gbig/explainable.hpp"
#include "gbig/graph.hpp"
#include "gbig/matrix.hpp"

namespace gbig {

// Drop in the target's predicted-class score when the mask's important
// nodes have their features zeroed. Structure is left untouched.
double fidelity_term(const Explainable& model, const Matrix& x, const ExplanationMask& mask);

// Mean of fidelity_term over masks. Throws kEmptyInput on no masks.
double fidelity(const Explainable& model, const Matrix& x, std::span<const ExplanationMask> masks);

// Mean of 1 - |important| / |k-hop neighbourhood of target|.
double sparsity(std::span<const ExplanationMask> masks, const Graph& g, std::size_t hops = 3);

// |a & b| / |a | b| over sorted node sets; 1 when both are empty.
double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

struct EvaluationRow {
  std::string method;
  std::string dataset;
  double fidelity = 0.0;
  double sparsity = 0.0;
  std::optional<double> jaccard;
  std::size_t num_targets = 0;
  std::size_t skipped = 0;

  bool operator==(const EvaluationRow&) const = default;
};

// Explains every test-mask node with each method and aggregates the metrics.
// Targets that cannot be explained (isolated nodes, path budget overruns)
// are skipped and counted; a method where every target fails throws.
std::vector<EvaluationRow> evaluate(const Explainable& model, const GraphBundle& bundle,
                                    std::span<const MethodConfig> methods, double threshold = kDefaultThreshold);

}  // namespace gbig
