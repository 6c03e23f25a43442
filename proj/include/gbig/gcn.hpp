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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gbig/bundle.hpp"
#include "gbig/explainable.hpp"
#include "gbig/graph.hpp"
#include "gbig/linalg.hpp"
#include "gbig/matrix.hpp"

namespace gbig {

// S = D^-1/2 (A + I) D^-1/2 with D the degree matrix of A + I.
struct NormalizedAdjacency {
  CsrMatrix s;

  std::size_t size() const noexcept { return s.size; }
  double at(NodeId u, NodeId v) const { return s.at(u, v); }

  // Principal submatrix over `nodes` (ascending). Entries keep the
  // normalization of the full graph.
  NormalizedAdjacency restrict_to(std::span<const NodeId> nodes) const;
};

NormalizedAdjacency normalize_adjacency(const Graph& g);

// Graph convolutional classifier: rectifier between layers, softmax output.
class GcnModel {
 public:
  static constexpr std::size_t kDefaultHidden = 64;
  static constexpr std::size_t kDefaultLayers = 3;

  GcnModel() = default;
  // Throws kDimensionMismatch unless consecutive weights chain.
  explicit GcnModel(std::vector<Matrix> weights);

  // Uniform in +-sqrt(6 / (fan_in + fan_out)).
  static GcnModel glorot_uniform(std::size_t input_dim, std::size_t num_classes, std::uint64_t seed,
                                 std::size_t hidden = kDefaultHidden, std::size_t layers = kDefaultLayers);
  static GcnModel zeros(std::size_t input_dim, std::size_t num_classes, std::size_t hidden = kDefaultHidden,
                        std::size_t layers = kDefaultLayers);

  const std::vector<Matrix>& weights() const noexcept { return weights_; }
  std::size_t num_layers() const noexcept { return weights_.size(); }
  std::size_t input_dim() const { return weights_.front().rows(); }
  std::size_t num_classes() const { return weights_.back().cols(); }

  bool operator==(const GcnModel&) const = default;

 private:
  std::vector<Matrix> weights_;
};

// Row-stochastic class probabilities for every node.
Matrix forward(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s);

// G(v, j) = d P(target, cls) / d x(v, j), computed by reverse mode over the
// whole graph. Rectifier subgradient at 0 is 0.
Matrix grad_input(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s, NodeId target,
                  std::size_t cls);

Prediction predict_class(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s, NodeId target);

double accuracy(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s,
                std::span<const std::size_t> labels, std::span<const NodeId> nodes);

struct TrainConfig {
  double learning_rate = 0.01;
  std::size_t epochs = 200;
  double weight_decay = 5e-4;
  std::uint64_t seed = 0;
  std::string init = "glorot-uniform";
  std::size_t hidden = GcnModel::kDefaultHidden;
};

struct TrainResult {
  GcnModel model;
  // Objective (mean train cross-entropy + L2 penalty) before each update.
  std::vector<double> loss_history;
};

// Full-batch gradient descent on the train mask.
TrainResult train(GcnModel model, const GraphBundle& bundle, const TrainConfig& cfg);
// Initializes from cfg.seed, then trains.
TrainResult train(const GraphBundle& bundle, const TrainConfig& cfg);

// Binds a model to a graph for attribution. Keeps references to both.
class GcnExplainable final : public Explainable {
 public:
  GcnExplainable(const GcnModel& model, const Graph& graph);

  std::size_t num_classes() const override { return model_->num_classes(); }
  std::size_t receptive_hops() const override { return model_->num_layers(); }
  std::unique_ptr<LocalModel> localize(NodeId target) const override;

  const NormalizedAdjacency& adjacency() const noexcept { return adjacency_; }

 private:
  const GcnModel* model_;
  const Graph* graph_;
  NormalizedAdjacency adjacency_;
};

}  // namespace gbig
