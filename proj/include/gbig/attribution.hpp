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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbig/explainable.hpp"
#include "gbig/graph.hpp"
#include "gbig/matrix.hpp"

namespace gbig {

// ---------------------------------------------------------------------------
// Feature baselines
// ---------------------------------------------------------------------------

enum class BaseStrategy { kZero, kUniform, kGaussian, kMaxDistanceEntropy };

struct FeatureRange {
  double min = 0.0;
  double max = 0.0;
};

struct BasePointSpec {
  BaseStrategy strategy = BaseStrategy::kZero;
  double sigma = 1.0;  // gaussian only
  std::uint64_t seed = 0;
  std::vector<FeatureRange> ranges;  // uniform only, one per feature
};

// Per-column min and max of x.
std::vector<FeatureRange> feature_ranges(const Matrix& x);

// Baseline rows for the nodes in `scope`:
//   zero      all zeros
//   uniform   independent draws in [min_j, max_j]
//   gaussian  x + sigma * N(0, 1) per entry
// Node-valued strategies (max-distance-entropy) are rejected here.
Matrix base_point_features(const BasePointSpec& spec, const Matrix& x, std::span<const NodeId> scope);

// ---------------------------------------------------------------------------
// Attributions
// ---------------------------------------------------------------------------

// Per-(node, feature) attribution for one target. Only nodes that received
// a contribution are stored; everything else is implicitly zero.
struct Attribution {
  NodeId target = 0;
  std::size_t cls = 0;
  std::string method;
  std::vector<NodeId> base_nodes;
  std::vector<NodeId> nodes;  // ascending
  Matrix values;              // nodes.size() x num_features

  double at(NodeId v, std::size_t feature) const;
  // Sum of absolute values over features.
  double node_score(NodeId v) const;
  double total() const;
  bool all_finite() const;
};

struct IgOptions {
  std::size_t steps = 64;
  // Explained output; defaults to the predicted class of the target.
  std::optional<std::size_t> cls;
};

// Integrated gradients over the target's receptive field, midpoint rule:
//   (x - b) * (1/m) sum_k grad F(b + (k + 1/2)/m (x - b)).
// `baseline` holds one row per node of the receptive field (ascending ids).
Attribution integrated_gradients(const Explainable& model, const Graph& g, const Matrix& x, NodeId target,
                                 const Matrix& baseline, const IgOptions& opts = {});

// ---------------------------------------------------------------------------
// Path statistics and base-point selection
// ---------------------------------------------------------------------------

// sum_i log2(deg(path_i)) with degrees from the plain adjacency.
double path_information(const Graph& g, const Path& path);
// prod_i 1 / deg(path_i).
double path_probability(const Graph& g, const Path& path);
// sum over paths of p(path) * I(path); 0 for an empty set.
double path_set_entropy(const Graph& g, std::span<const Path> paths);

// Among the nodes at maximal distance from x, the one whose shortest-path
// set into x has the largest entropy. Ties go to the lowest id.
NodeId select_base_point(const Graph& g, NodeId x, PathBudget budget = {});

// ---------------------------------------------------------------------------
// Graph-based integrated gradients
// ---------------------------------------------------------------------------

enum class GbIgMode {
  // Gradient w.r.t. the target's own feature slot, evaluated with the
  // target's row replaced by the feature row of the current path node.
  kTargetSubstitution,
  // Gradient w.r.t. the current path node's row on the unmodified features.
  kPathNode,
};

enum class PathWeighting {
  kPerPath,     // each path's total scaled by 1 / edge count
  kUnweighted,
};

struct GbIgOptions {
  GbIgMode mode = GbIgMode::kTargetSubstitution;
  PathWeighting weighting = PathWeighting::kPerPath;
  PathBudget budget;
  std::optional<std::size_t> cls;
};

struct GbIgTrace {
  Attribution attribution;
  std::vector<Path> paths;
  // Sum of every (weighted) term contributed by each path.
  std::vector<double> path_sums;
};

// Walks every shortest path base -> target. Step i contributes
//   (X(p[i+1]) - X(p[i])) * grad_i
// to node p[i+1].
GbIgTrace gb_ig_trace(const Explainable& model, const Graph& g, const Matrix& x, NodeId target, NodeId base,
                      const GbIgOptions& opts = {});
Attribution gb_ig(const Explainable& model, const Graph& g, const Matrix& x, NodeId target, NodeId base,
                  const GbIgOptions& opts = {});
// Sum of gb_ig over every node at maximal distance from the target.
Attribution gb_ig_multi_base(const Explainable& model, const Graph& g, const Matrix& x, NodeId target,
                             const GbIgOptions& opts = {});

// ---------------------------------------------------------------------------
// Explanation masks
// ---------------------------------------------------------------------------

inline constexpr double kDefaultThreshold = 0.8;

struct ExplanationMask {
  NodeId target = 0;
  double threshold = kDefaultThreshold;
  std::vector<NodeId> scope;     // k-hop neighbourhood of the target, ascending
  std::vector<double> scores;    // min-max normalized node scores, aligned with scope
  std::vector<NodeId> important; // ascending
};

// Node score = L1 norm of the node's attribution row, min-max normalized over
// the target's k-hop neighbourhood; a flat score range normalizes to 1.
ExplanationMask explanation_mask(const Attribution& attr, const Graph& g, double threshold = kDefaultThreshold,
                                 std::size_t hops = 3);

// ---------------------------------------------------------------------------
// Named methods
// ---------------------------------------------------------------------------

enum class Method { kIgZero, kIgUniform, kIgGaussian, kGbIg, kGbIgMulti };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
std::string_view mode_name(GbIgMode m);
GbIgMode parse_mode(std::string_view name);
std::string_view weighting_name(PathWeighting w);
PathWeighting parse_weighting(std::string_view name);

struct MethodConfig {
  Method method = Method::kGbIg;
  std::size_t steps = 64;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  GbIgMode mode = GbIgMode::kTargetSubstitution;
  PathWeighting weighting = PathWeighting::kPerPath;
  PathBudget budget;
};

// Seed for the random baseline of one target.
std::uint64_t target_seed(std::uint64_t seed, NodeId target);

// Runs one named method for one target. `ranges` feeds ig-uniform; when empty
// it is computed from x.
Attribution explain(const Explainable& model, const Graph& g, const Matrix& x, NodeId target,
                    const MethodConfig& cfg, std::span<const FeatureRange> ranges = {});

}  // namespace gbig
