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

#include "gbig/explainable.hpp"

#include <algorithm>
#include <string>

#include "gbig/error.hpp"
#include "gbig/kernels.hpp"
#include "gbig/linalg.hpp"

namespace gbig {

Prediction argmax(std::span<const double> scores) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "argmax of empty score vector");
  Prediction best{0, scores[0]};
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > best.probability) best = {c, scores[c]};
  }
  return best;
}

std::size_t index_in_scope(std::span<const NodeId> scope, NodeId v) {
  const auto it = std::lower_bound(scope.begin(), scope.end(), v);
  if (it == scope.end() || *it != v) return kUnreachable;
  return static_cast<std::size_t>(it - scope.begin());
}

namespace {

class LinearLocal final : public LocalModel {
 public:
  LinearLocal(std::vector<NodeId> scope, std::size_t target_index, std::vector<Matrix> coefficients)
      : scope_(std::move(scope)), target_index_(target_index), coefficients_(std::move(coefficients)) {}

  std::span<const NodeId> scope() const override { return scope_; }
  std::size_t target_index() const override { return target_index_; }

  std::vector<double> scores(const Matrix& local_x) const override {
    std::vector<double> out;
    out.reserve(coefficients_.size());
    for (const Matrix& coef : coefficients_) out.push_back(kernels::dot(coef.values(), local_x.values()));
    return out;
  }

  Matrix gradient(const Matrix& /*local_x*/, std::size_t cls) const override { return coefficients_.at(cls); }

 private:
  std::vector<NodeId> scope_;
  std::size_t target_index_;
  std::vector<Matrix> coefficients_;
};

class BlendedLocal final : public LocalModel {
 public:
  BlendedLocal(std::unique_ptr<LocalModel> f, double alpha, std::unique_ptr<LocalModel> g, double beta)
      : f_(std::move(f)), g_(std::move(g)), alpha_(alpha), beta_(beta) {}

  std::span<const NodeId> scope() const override { return f_->scope(); }
  std::size_t target_index() const override { return f_->target_index(); }

  std::vector<double> scores(const Matrix& local_x) const override {
    auto a = f_->scores(local_x);
    const auto b = g_->scores(local_x);
    for (std::size_t c = 0; c < a.size(); ++c) a[c] = alpha_ * a[c] + beta_ * b[c];
    return a;
  }

  Matrix gradient(const Matrix& local_x, std::size_t cls) const override {
    Matrix a = f_->gradient(local_x, cls);
    const Matrix b = g_->gradient(local_x, cls);
    kernels::scale(alpha_, a.values());
    kernels::axpy(beta_, b.values(), a.values());
    return a;
  }

 private:
  std::unique_ptr<LocalModel> f_;
  std::unique_ptr<LocalModel> g_;
  double alpha_;
  double beta_;
};

}  // namespace

LinearSurrogate::LinearSurrogate(const Graph& graph, std::vector<Matrix> coefficients, std::size_t hops)
    : graph_(&graph), coefficients_(std::move(coefficients)), hops_(hops) {
  if (coefficients_.empty()) throw Error(ErrorCode::kEmptyInput, "linear surrogate needs at least one class");
  for (const Matrix& c : coefficients_) {
    if (c.rows() != graph.num_nodes() || c.cols() != coefficients_.front().cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "surrogate coefficients must be num_nodes x d for every class");
    }
  }
}

std::unique_ptr<LocalModel> LinearSurrogate::localize(NodeId target) const {
  auto scope = k_hop_nodes(*graph_, target, hops_);
  std::vector<Matrix> local;
  local.reserve(coefficients_.size());
  for (const Matrix& c : coefficients_) local.push_back(gather_rows(c, scope));
  const std::size_t t = index_in_scope(scope, target);
  return std::make_unique<LinearLocal>(std::move(scope), t, std::move(local));
}

BlendedModel::BlendedModel(const Explainable& f, double alpha, const Explainable& g, double beta)
    : f_(&f), g_(&g), alpha_(alpha), beta_(beta) {
  if (f.num_classes() != g.num_classes() || f.receptive_hops() != g.receptive_hops()) {
    throw Error(ErrorCode::kDimensionMismatch, "blended models must agree on classes and receptive field");
  }
}

std::unique_ptr<LocalModel> BlendedModel::localize(NodeId target) const {
  auto f = f_->localize(target);
  auto g = g_->localize(target);
  if (!std::equal(f->scope().begin(), f->scope().end(), g->scope().begin(), g->scope().end())) {
    throw Error(ErrorCode::kDimensionMismatch, "blended models localized to different scopes");
  }
  return std::make_unique<BlendedLocal>(std::move(f), alpha_, std::move(g), beta_);
}

}  // namespace gbig
