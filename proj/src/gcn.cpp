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

#include "gbig/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gbig/error.hpp"
#include "gbig/kernels.hpp"

namespace gbig {

NormalizedAdjacency normalize_adjacency(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> inv_sqrt(n);
  for (NodeId v = 0; v < n; ++v) inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v) + 1));

  NormalizedAdjacency out;
  out.s.size = n;
  out.s.row_ptr.assign(1, 0);
  out.s.col.reserve(n + 2 * g.num_edges());
  out.s.val.reserve(n + 2 * g.num_edges());
  for (NodeId u = 0; u < n; ++u) {
    bool self_done = false;
    for (NodeId v : g.neighbors(u)) {
      if (!self_done && v > u) {
        out.s.col.push_back(u);
        out.s.val.push_back(inv_sqrt[u] * inv_sqrt[u]);
        self_done = true;
      }
      out.s.col.push_back(v);
      out.s.val.push_back(inv_sqrt[u] * inv_sqrt[v]);
    }
    if (!self_done) {
      out.s.col.push_back(u);
      out.s.val.push_back(inv_sqrt[u] * inv_sqrt[u]);
    }
    out.s.row_ptr.push_back(out.s.col.size());
  }
  return out;
}

NormalizedAdjacency NormalizedAdjacency::restrict_to(std::span<const NodeId> nodes) const {
  NormalizedAdjacency out;
  out.s.size = nodes.size();
  out.s.row_ptr.assign(1, 0);
  for (NodeId u : nodes) {
    for (std::size_t e = s.row_ptr.at(u); e < s.row_ptr[u + 1]; ++e) {
      const std::size_t local = index_in_scope(nodes, s.col[e]);
      if (local == kUnreachable) continue;
      out.s.col.push_back(local);
      out.s.val.push_back(s.val[e]);
    }
    out.s.row_ptr.push_back(out.s.col.size());
  }
  return out;
}

GcnModel::GcnModel(std::vector<Matrix> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::kDimensionMismatch, "model needs at least one layer");
  for (std::size_t l = 0; l + 1 < weights_.size(); ++l) {
    if (weights_[l].cols() != weights_[l + 1].rows()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "layer " + std::to_string(l) + " has " + std::to_string(weights_[l].cols()) +
                      " outputs but layer " + std::to_string(l + 1) + " expects " +
                      std::to_string(weights_[l + 1].rows()));
    }
  }
}

namespace {

std::vector<std::size_t> layer_dims(std::size_t input_dim, std::size_t num_classes, std::size_t hidden,
                                    std::size_t layers) {
  if (layers == 0 || input_dim == 0 || num_classes == 0 || hidden == 0) {
    throw Error(ErrorCode::kInvalidArgument, "model dimensions must be positive");
  }
  std::vector<std::size_t> dims{input_dim};
  for (std::size_t l = 1; l < layers; ++l) dims.push_back(hidden);
  dims.push_back(num_classes);
  return dims;
}

}  // namespace

GcnModel GcnModel::glorot_uniform(std::size_t input_dim, std::size_t num_classes, std::uint64_t seed,
                                  std::size_t hidden, std::size_t layers) {
  const auto dims = layer_dims(input_dim, num_classes, hidden, layers);
  std::mt19937_64 rng(seed);
  std::vector<Matrix> weights;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double limit = std::sqrt(6.0 / static_cast<double>(dims[l] + dims[l + 1]));
    std::uniform_real_distribution<double> dist(-limit, limit);
    Matrix w(dims[l], dims[l + 1]);
    for (double& v : w.values()) v = dist(rng);
    weights.push_back(std::move(w));
  }
  return GcnModel(std::move(weights));
}

GcnModel GcnModel::zeros(std::size_t input_dim, std::size_t num_classes, std::size_t hidden, std::size_t layers) {
  const auto dims = layer_dims(input_dim, num_classes, hidden, layers);
  std::vector<Matrix> weights;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) weights.emplace_back(dims[l], dims[l + 1]);
  return GcnModel(std::move(weights));
}

namespace {

struct Activations {
  // inputs[l] feeds layer l; inputs[0] is x.
  std::vector<Matrix> inputs;
  // Pre-activations of every hidden layer.
  std::vector<Matrix> pre;
  Matrix probs;
};

void softmax_rows(Matrix& z) {
  for (std::size_t r = 0; r < z.rows(); ++r) {
    auto row = z.row(r);
    const double peak = *std::max_element(row.begin(), row.end());
    double total = 0.0;
    for (double& v : row) {
      v = std::exp(v - peak);
      total += v;
    }
    for (double& v : row) v /= total;
  }
}

void check_input(const GcnModel& model, const Matrix& x, const CsrMatrix& s) {
  if (model.num_layers() == 0) throw Error(ErrorCode::kDimensionMismatch, "empty model");
  if (x.rows() != s.size) {
    throw Error(ErrorCode::kDimensionMismatch, "feature rows " + std::to_string(x.rows()) +
                                                   " vs adjacency size " + std::to_string(s.size));
  }
  if (x.cols() != model.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature dim " + std::to_string(x.cols()) + " vs model input " +
                                                   std::to_string(model.input_dim()));
  }
}

Activations run_forward(const GcnModel& model, const Matrix& x, const CsrMatrix& s) {
  check_input(model, x, s);
  const auto& w = model.weights();
  Activations acts;
  acts.inputs.reserve(w.size());
  acts.inputs.push_back(x);
  for (std::size_t l = 0; l < w.size(); ++l) {
    Matrix z = spmm(s, matmul(acts.inputs[l], w[l]));
    if (l + 1 == w.size()) {
      softmax_rows(z);
      acts.probs = std::move(z);
    } else {
      Matrix h = z;
      kernels::relu(h.values());
      acts.pre.push_back(std::move(z));
      acts.inputs.push_back(std::move(h));
    }
  }
  return acts;
}

// Back-propagates d(objective)/d(logits) through the layers. S is symmetric,
// so S^T = S.
void run_backward(const GcnModel& model, const Activations& acts, const CsrMatrix& s, Matrix d_logits,
                  std::vector<Matrix>* d_weights, Matrix* d_input) {
  const auto& w = model.weights();
  if (d_weights) d_weights->assign(w.size(), Matrix{});
  Matrix d = std::move(d_logits);
  for (std::size_t l = w.size(); l-- > 0;) {
    const Matrix sd = spmm(s, d);
    if (d_weights) (*d_weights)[l] = matmul_tn(acts.inputs[l], sd);
    if (l == 0) {
      if (d_input) *d_input = matmul_nt(sd, w[0]);
      break;
    }
    Matrix dh = matmul_nt(sd, w[l]);
    kernels::relu_backward(acts.pre[l - 1].values(), dh.values());
    d = std::move(dh);
  }
}

// d P(row, cls) / d logits(row, .) for softmax.
Matrix softmax_seed(const Matrix& probs, std::size_t row, std::size_t cls) {
  Matrix d(probs.rows(), probs.cols());
  const double pc = probs(row, cls);
  for (std::size_t k = 0; k < probs.cols(); ++k) d(row, k) = pc * ((k == cls ? 1.0 : 0.0) - probs(row, k));
  return d;
}

void check_target(const Matrix& x, const GcnModel& model, NodeId target, std::size_t cls) {
  if (target >= x.rows()) throw Error(ErrorCode::kIndexOutOfRange, "target " + std::to_string(target));
  if (cls >= model.num_classes()) throw Error(ErrorCode::kIndexOutOfRange, "class " + std::to_string(cls));
}

class GcnLocal final : public LocalModel {
 public:
  GcnLocal(const GcnModel& model, std::vector<NodeId> scope, std::size_t target_index, NormalizedAdjacency s)
      : model_(&model), scope_(std::move(scope)), target_index_(target_index), s_(std::move(s)) {}

  std::span<const NodeId> scope() const override { return scope_; }
  std::size_t target_index() const override { return target_index_; }

  std::vector<double> scores(const Matrix& local_x) const override {
    const auto acts = run_forward(*model_, local_x, s_.s);
    const auto row = acts.probs.row(target_index_);
    return {row.begin(), row.end()};
  }

  Matrix gradient(const Matrix& local_x, std::size_t cls) const override {
    check_target(local_x, *model_, target_index_, cls);
    const auto acts = run_forward(*model_, local_x, s_.s);
    Matrix dx;
    run_backward(*model_, acts, s_.s, softmax_seed(acts.probs, target_index_, cls), nullptr, &dx);
    return dx;
  }

 private:
  const GcnModel* model_;
  std::vector<NodeId> scope_;
  std::size_t target_index_;
  NormalizedAdjacency s_;
};

}  // namespace

Matrix forward(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s) {
  return run_forward(model, x, s.s).probs;
}

Matrix grad_input(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s, NodeId target,
                  std::size_t cls) {
  check_input(model, x, s.s);
  check_target(x, model, target, cls);
  const auto acts = run_forward(model, x, s.s);
  Matrix dx;
  run_backward(model, acts, s.s, softmax_seed(acts.probs, target, cls), nullptr, &dx);
  return dx;
}

Prediction predict_class(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s, NodeId target) {
  if (target >= x.rows()) throw Error(ErrorCode::kIndexOutOfRange, "target " + std::to_string(target));
  const Matrix probs = forward(model, x, s);
  return argmax(probs.row(target));
}

double accuracy(const GcnModel& model, const Matrix& x, const NormalizedAdjacency& s,
                std::span<const std::size_t> labels, std::span<const NodeId> nodes) {
  if (nodes.empty()) return 0.0;
  const Matrix probs = forward(model, x, s);
  std::size_t correct = 0;
  for (NodeId v : nodes) correct += argmax(probs.row(v)).cls == labels[v] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(nodes.size());
}

TrainResult train(GcnModel model, const GraphBundle& bundle, const TrainConfig& cfg) {
  if (bundle.masks.train.empty()) throw Error(ErrorCode::kEmptyInput, "train mask is empty");
  if (!(cfg.learning_rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "learning rate must be positive");
  if (cfg.epochs == 0) throw Error(ErrorCode::kInvalidArgument, "epochs must be at least 1");
  if (bundle.num_classes() > model.num_classes()) {
    throw Error(ErrorCode::kDimensionMismatch, "bundle has more classes than the model outputs");
  }

  const NormalizedAdjacency s = normalize_adjacency(bundle.graph);
  const auto& train_nodes = bundle.masks.train;
  const double inv_m = 1.0 / static_cast<double>(train_nodes.size());
  std::vector<Matrix> weights = model.weights();

  TrainResult result;
  result.loss_history.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const GcnModel current(weights);
    const auto acts = run_forward(current, bundle.features, s.s);

    double loss = 0.0;
    Matrix d_logits(acts.probs.rows(), acts.probs.cols());
    for (NodeId v : train_nodes) {
      const std::size_t y = bundle.labels[v];
      loss -= std::log(std::max(acts.probs(v, y), 1e-300));
      for (std::size_t k = 0; k < acts.probs.cols(); ++k) {
        d_logits(v, k) = (acts.probs(v, k) - (k == y ? 1.0 : 0.0)) * inv_m;
      }
    }
    loss *= inv_m;
    double penalty = 0.0;
    for (const Matrix& w : weights) penalty += kernels::dot(w.values(), w.values());
    result.loss_history.push_back(loss + 0.5 * cfg.weight_decay * penalty);

    std::vector<Matrix> grads;
    run_backward(current, acts, s.s, std::move(d_logits), &grads, nullptr);
    for (std::size_t l = 0; l < weights.size(); ++l) {
      kernels::axpy(cfg.weight_decay, weights[l].values(), grads[l].values());
      kernels::axpy(-cfg.learning_rate, grads[l].values(), weights[l].values());
    }
  }
  result.model = GcnModel(std::move(weights));
  return result;
}

TrainResult train(const GraphBundle& bundle, const TrainConfig& cfg) {
  if (cfg.init != "glorot-uniform") throw Error(ErrorCode::kInvalidArgument, "unknown init rule '" + cfg.init + "'");
  if (bundle.num_classes() == 0) throw Error(ErrorCode::kEmptyInput, "bundle has no labels");
  auto model = GcnModel::glorot_uniform(bundle.num_features(), bundle.num_classes(), cfg.seed, cfg.hidden);
  return train(std::move(model), bundle, cfg);
}

GcnExplainable::GcnExplainable(const GcnModel& model, const Graph& graph)
    : model_(&model), graph_(&graph), adjacency_(normalize_adjacency(graph)) {}

std::unique_ptr<LocalModel> GcnExplainable::localize(NodeId target) const {
  auto scope = k_hop_nodes(*graph_, target, model_->num_layers());
  const std::size_t t = index_in_scope(scope, target);
  auto s = adjacency_.restrict_to(scope);
  return std::make_unique<GcnLocal>(*model_, std::move(scope), t, std::move(s));
}

}  // namespace gbig
