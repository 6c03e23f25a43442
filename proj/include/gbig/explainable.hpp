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

// Model abstraction consumed by the attribution methods and metrics.
//
// Attribution only ever needs a model's class scores for one target node and
// the gradient of one score with respect to node features. For message
// passing models both depend on the target's receptive field alone, so a
// model is "localized" to a target first: the LocalModel works on the feature
// rows of `scope()` (ascending global ids) and nothing else.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "gbig/graph.hpp"
#include "gbig/matrix.hpp"

namespace gbig {

class LocalModel {
 public:
  virtual ~LocalModel() = default;

  virtual std::span<const NodeId> scope() const = 0;
  // Row of the target inside scope().
  virtual std::size_t target_index() const = 0;

  // Class scores of the target given the scope's feature rows.
  virtual std::vector<double> scores(const Matrix& local_x) const = 0;
  // d scores[cls] / d local_x, shaped like local_x.
  virtual Matrix gradient(const Matrix& local_x, std::size_t cls) const = 0;
};

class Explainable {
 public:
  virtual ~Explainable() = default;

  virtual std::size_t num_classes() const = 0;
  virtual std::size_t receptive_hops() const = 0;
  virtual std::unique_ptr<LocalModel> localize(NodeId target) const = 0;
};

struct Prediction {
  std::size_t cls = 0;
  double probability = 0.0;
};

// Argmax with lowest-index tie-break.
Prediction argmax(std::span<const double> scores);

// Row index of each global id in `scope`; kUnreachable when absent.
std::size_t index_in_scope(std::span<const NodeId> scope, NodeId v);

// Linear class scores: score_c(X) = sum over scope rows v, features j of
// coefficients[c](v, j) * X(v, j). Scope is the k-hop neighbourhood.
class LinearSurrogate final : public Explainable {
 public:
  LinearSurrogate(const Graph& graph, std::vector<Matrix> coefficients, std::size_t hops = 3);

  std::size_t num_classes() const override { return coefficients_.size(); }
  std::size_t receptive_hops() const override { return hops_; }
  std::unique_ptr<LocalModel> localize(NodeId target) const override;

 private:
  const Graph* graph_;
  std::vector<Matrix> coefficients_;
  std::size_t hops_;
};

// alpha * F + beta * G; both models must share receptive fields.
class BlendedModel final : public Explainable {
 public:
  BlendedModel(const Explainable& f, double alpha, const Explainable& g, double beta);

  std::size_t num_classes() const override { return f_->num_classes(); }
  std::size_t receptive_hops() const override { return f_->receptive_hops(); }
  std::unique_ptr<LocalModel> localize(NodeId target) const override;

 private:
  const Explainable* f_;
  const Explainable* g_;
  double alpha_;
  double beta_;
};

}  // namespace gbig
