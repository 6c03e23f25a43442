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

#include "gbig/attribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "gbig/error.hpp"
#include "gbig/kernels.hpp"
#include "gbig/linalg.hpp"

namespace gbig {

// ---------------------------------------------------------------------------
// Baselines

std::vector<FeatureRange> feature_ranges(const Matrix& x) {
  if (x.rows() == 0) throw Error(ErrorCode::kEmptyInput, "feature_ranges of an empty matrix");
  std::vector<FeatureRange> ranges(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) ranges[j] = {x(0, j), x(0, j)};
  for (std::size_t r = 1; r < x.rows(); ++r) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      ranges[j].min = std::min(ranges[j].min, x(r, j));
      ranges[j].max = std::max(ranges[j].max, x(r, j));
    }
  }
  return ranges;
}

Matrix base_point_features(const BasePointSpec& spec, const Matrix& x, std::span<const NodeId> scope) {
  if (scope.empty()) throw Error(ErrorCode::kEmptyInput, "baseline scope is empty");
  Matrix out(scope.size(), x.cols());
  std::mt19937_64 rng(spec.seed);
  switch (spec.strategy) {
    case BaseStrategy::kZero:
      break;
    case BaseStrategy::kUniform: {
      if (spec.ranges.size() != x.cols()) {
        throw Error(ErrorCode::kInvalidArgument, "uniform baseline needs one range per feature (" +
                                                     std::to_string(spec.ranges.size()) + " given, " +
                                                     std::to_string(x.cols()) + " features)");
      }
      for (const auto& r : spec.ranges) {
        if (!(r.min <= r.max)) throw Error(ErrorCode::kInvalidArgument, "feature range with min > max");
      }
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t r = 0; r < scope.size(); ++r) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
          const auto& range = spec.ranges[j];
          const double u = unit(rng);
          out(r, j) = range.min == range.max ? range.min : range.min + u * (range.max - range.min);
        }
      }
      break;
    }
    case BaseStrategy::kGaussian: {
      if (!(spec.sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "gaussian sigma must be >= 0");
      std::normal_distribution<double> normal(0.0, 1.0);
      for (std::size_t r = 0; r < scope.size(); ++r) {
        if (scope[r] >= x.rows()) throw Error(ErrorCode::kIndexOutOfRange, "scope node " + std::to_string(scope[r]));
        for (std::size_t j = 0; j < x.cols(); ++j) out(r, j) = x(scope[r], j) + spec.sigma * normal(rng);
      }
      break;
    }
    case BaseStrategy::kMaxDistanceEntropy:
      throw Error(ErrorCode::kInvalidArgument, "max-distance-entropy selects a node, not a feature baseline");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Attribution accessors

double Attribution::at(NodeId v, std::size_t feature) const {
  const std::size_t r = index_in_scope(nodes, v);
  return r == kUnreachable ? 0.0 : values(r, feature);
}

double Attribution::node_score(NodeId v) const {
  const std::size_t r = index_in_scope(nodes, v);
  if (r == kUnreachable) return 0.0;
  double s = 0.0;
  for (double a : values.row(r)) s += std::abs(a);
  return s;
}

double Attribution::total() const {
  double s = 0.0;
  for (double a : values.values()) s += a;
  return s;
}

bool Attribution::all_finite() const {
  return std::all_of(values.values().begin(), values.values().end(), [](double a) { return std::isfinite(a); });
}

namespace {

void check_features(const Graph& g, const Matrix& x) {
  if (x.rows() != g.num_nodes()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature rows " + std::to_string(x.rows()) + " vs " +
                                                   std::to_string(g.num_nodes()) + " nodes");
  }
}

std::size_t resolve_class(const LocalModel& local, const Matrix& local_x, std::optional<std::size_t> cls) {
  if (cls) return *cls;
  return argmax(local.scores(local_x)).cls;
}

// Sparse row accumulator keyed by node id; iteration order is ascending.
class RowAccumulator {
 public:
  explicit RowAccumulator(std::size_t cols) : cols_(cols) {}

  std::span<double> row(NodeId v) {
    auto [it, inserted] = rows_.try_emplace(v);
    if (inserted) it->second.assign(cols_, 0.0);
    return it->second;
  }

  void add(const Attribution& a) {
    for (std::size_t r = 0; r < a.nodes.size(); ++r) kernels::axpy(1.0, a.values.row(r), row(a.nodes[r]));
  }

  void fill(Attribution& out) const {
    out.nodes.clear();
    out.values = Matrix(rows_.size(), cols_);
    std::size_t r = 0;
    for (const auto& [node, values] : rows_) {
      out.nodes.push_back(node);
      std::copy(values.begin(), values.end(), out.values.row(r++).begin());
    }
  }

 private:
  std::size_t cols_;
  std::map<NodeId, std::vector<double>> rows_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Integrated gradients

Attribution integrated_gradients(const Explainable& model, const Graph& g, const Matrix& x, NodeId target,
                                 const Matrix& baseline, const IgOptions& opts) {
  check_features(g, x);
  if (opts.steps == 0) throw Error(ErrorCode::kInvalidArgument, "integrated gradients needs at least one step");
  const auto local = model.localize(target);
  const auto scope = local->scope();
  const Matrix lx = gather_rows(x, scope);
  if (baseline.rows() != lx.rows() || baseline.cols() != lx.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "baseline is " + std::to_string(baseline.rows()) + "x" + std::to_string(baseline.cols()) +
                    ", receptive field is " + std::to_string(lx.rows()) + "x" + std::to_string(lx.cols()));
  }
  const std::size_t cls = resolve_class(*local, lx, opts.cls);

  Matrix delta = lx;
  kernels::axpy(-1.0, baseline.values(), delta.values());

  Matrix avg_grad(lx.rows(), lx.cols());
  Matrix point(lx.rows(), lx.cols());
  const double m = static_cast<double>(opts.steps);
  for (std::size_t k = 0; k < opts.steps; ++k) {
    const double alpha = (static_cast<double>(k) + 0.5) / m;
    std::copy(baseline.values().begin(), baseline.values().end(), point.values().begin());
    kernels::axpy(alpha, delta.values(), point.values());
    const Matrix grad = local->gradient(point, cls);
    kernels::axpy(1.0, grad.values(), avg_grad.values());
  }
  kernels::scale(1.0 / m, avg_grad.values());

  Attribution out;
  out.target = target;
  out.cls = cls;
  out.method = "ig";
  out.nodes.assign(scope.begin(), scope.end());
  out.values = std::move(delta);
  for (std::size_t i = 0; i < out.values.values().size(); ++i) out.values.values()[i] *= avg_grad.values()[i];
  return out;
}

// ---------------------------------------------------------------------------
// Path statistics

double path_information(const Graph& g, const Path& path) {
  double bits = 0.0;
  for (NodeId v : path.nodes) bits += std::log2(static_cast<double>(g.degree(v)));
  return bits;
}

double path_probability(const Graph& g, const Path& path) {
  double p = 1.0;
  for (NodeId v : path.nodes) p /= static_cast<double>(g.degree(v));
  return p;
}

double path_set_entropy(const Graph& g, std::span<const Path> paths) {
  double e = 0.0;
  for (const Path& path : paths) e += path_probability(g, path) * path_information(g, path);
  return e;
}

NodeId select_base_point(const Graph& g, NodeId x, PathBudget budget) {
  const auto candidates = max_distance_set(g, x);
  NodeId best = candidates.front();
  double best_entropy = -1.0;
  for (NodeId b : candidates) {
    const auto paths = shortest_paths(g, b, x, budget);
    const double e = path_set_entropy(g, paths);
    if (e > best_entropy) {
      best_entropy = e;
      best = b;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// GB-IG

GbIgTrace gb_ig_trace(const Explainable& model, const Graph& g, const Matrix& x, NodeId target, NodeId base,
                      const GbIgOptions& opts) {
  check_features(g, x);
  const auto local = model.localize(target);
  const auto scope = local->scope();
  const std::size_t t_row = local->target_index();
  const Matrix lx = gather_rows(x, scope);
  const std::size_t cls = resolve_class(*local, lx, opts.cls);
  const std::size_t d = x.cols();

  GbIgTrace trace;
  trace.paths = shortest_paths(g, base, target, opts.budget);

  // Gradient rows depend only on the path node, not on the path; cache them.
  std::map<NodeId, std::vector<double>> grad_rows;
  Matrix path_node_grad;
  if (opts.mode == GbIgMode::kPathNode) path_node_grad = local->gradient(lx, cls);
  const auto gradient_row = [&](NodeId u) -> const std::vector<double>& {
    auto [it, inserted] = grad_rows.try_emplace(u);
    if (!inserted) return it->second;
    if (opts.mode == GbIgMode::kTargetSubstitution) {
      Matrix substituted = lx;
      std::copy(x.row(u).begin(), x.row(u).end(), substituted.row(t_row).begin());
      const Matrix grad = local->gradient(substituted, cls);
      it->second.assign(grad.row(t_row).begin(), grad.row(t_row).end());
    } else {
      const std::size_t r = index_in_scope(scope, u);
      if (r == kUnreachable) {
        it->second.assign(d, 0.0);
      } else {
        it->second.assign(path_node_grad.row(r).begin(), path_node_grad.row(r).end());
      }
    }
    return it->second;
  };

  RowAccumulator acc(d);
  trace.path_sums.reserve(trace.paths.size());
  for (const Path& path : trace.paths) {
    const double weight =
        opts.weighting == PathWeighting::kPerPath ? 1.0 / static_cast<double>(path.length()) : 1.0;
    double path_sum = 0.0;
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
      const NodeId from = path.nodes[i];
      const NodeId to = path.nodes[i + 1];
      const auto& grad = gradient_row(from);
      auto dest = acc.row(to);
      for (std::size_t j = 0; j < d; ++j) {
        const double term = weight * (x(to, j) - x(from, j)) * grad[j];
        dest[j] += term;
        path_sum += term;
      }
    }
    trace.path_sums.push_back(path_sum);
  }

  Attribution& out = trace.attribution;
  out.target = target;
  out.cls = cls;
  out.method = "gb-ig";
  out.base_nodes = {base};
  acc.fill(out);
  return trace;
}

Attribution gb_ig(const Explainable& model, const Graph& g, const Matrix& x, NodeId target, NodeId base,
                  const GbIgOptions& opts) {
  return gb_ig_trace(model, g, x, target, base, opts).attribution;
}

Attribution gb_ig_multi_base(const Explainable& model, const Graph& g, const Matrix& x, NodeId target,
                             const GbIgOptions& opts) {
  check_features(g, x);
  const auto bases = max_distance_set(g, target);
  GbIgOptions per_base = opts;
  if (!per_base.cls) {
    const auto local = model.localize(target);
    per_base.cls = argmax(local->scores(gather_rows(x, local->scope()))).cls;
  }
  RowAccumulator acc(x.cols());
  for (NodeId b : bases) acc.add(gb_ig(model, g, x, target, b, per_base));

  Attribution out;
  out.target = target;
  out.cls = *per_base.cls;
  out.method = "gb-ig-multi";
  out.base_nodes = bases;
  acc.fill(out);
  return out;
}

// ---------------------------------------------------------------------------
// Masks

ExplanationMask explanation_mask(const Attribution& attr, const Graph& g, double threshold, std::size_t hops) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in (0, 1]");
  }
  ExplanationMask mask;
  mask.target = attr.target;
  mask.threshold = threshold;
  mask.scope = k_hop_nodes(g, attr.target, hops);
  mask.scores.reserve(mask.scope.size());
  for (NodeId v : mask.scope) mask.scores.push_back(attr.node_score(v));

  const auto [lo_it, hi_it] = std::minmax_element(mask.scores.begin(), mask.scores.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  for (double& s : mask.scores) s = range > 0.0 ? (s - lo) / range : 1.0;
  for (std::size_t i = 0; i < mask.scope.size(); ++i) {
    if (mask.scores[i] >= threshold) mask.important.push_back(mask.scope[i]);
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Named methods

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kIgZero: return "ig-zero";
    case Method::kIgUniform: return "ig-uniform";
    case Method::kIgGaussian: return "ig-gaussian";
    case Method::kGbIg: return "gb-ig";
    case Method::kGbIgMulti: return "gb-ig-multi";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::kIgZero, Method::kIgUniform, Method::kIgGaussian, Method::kGbIg, Method::kGbIgMulti}) {
    if (method_name(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::string_view mode_name(GbIgMode m) {
  return m == GbIgMode::kTargetSubstitution ? "target-substitution" : "path-node";
}

GbIgMode parse_mode(std::string_view name) {
  if (name == "target-substitution") return GbIgMode::kTargetSubstitution;
  if (name == "path-node") return GbIgMode::kPathNode;
  throw Error(ErrorCode::kInvalidArgument, "unknown gb-ig mode '" + std::string(name) + "'");
}

std::string_view weighting_name(PathWeighting w) { return w == PathWeighting::kPerPath ? "per-path" : "unweighted"; }

PathWeighting parse_weighting(std::string_view name) {
  if (name == "per-path") return PathWeighting::kPerPath;
  if (name == "unweighted") return PathWeighting::kUnweighted;
  throw Error(ErrorCode::kInvalidArgument, "unknown weighting '" + std::string(name) + "'");
}

std::uint64_t target_seed(std::uint64_t seed, NodeId target) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(target) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Attribution explain(const Explainable& model, const Graph& g, const Matrix& x, NodeId target,
                    const MethodConfig& cfg, std::span<const FeatureRange> ranges) {
  Attribution out;
  switch (cfg.method) {
    case Method::kIgZero:
    case Method::kIgUniform:
    case Method::kIgGaussian: {
      BasePointSpec spec;
      spec.seed = target_seed(cfg.seed, target);
      spec.sigma = cfg.sigma;
      if (cfg.method == Method::kIgZero) {
        spec.strategy = BaseStrategy::kZero;
      } else if (cfg.method == Method::kIgUniform) {
        spec.strategy = BaseStrategy::kUniform;
        spec.ranges = ranges.empty() ? feature_ranges(x) : std::vector<FeatureRange>(ranges.begin(), ranges.end());
      } else {
        spec.strategy = BaseStrategy::kGaussian;
      }
      const auto scope = k_hop_nodes(g, target, model.receptive_hops());
      const Matrix baseline = base_point_features(spec, x, scope);
      out = integrated_gradients(model, g, x, target, baseline, IgOptions{cfg.steps, std::nullopt});
      break;
    }
    case Method::kGbIg: {
      const GbIgOptions opts{cfg.mode, cfg.weighting, cfg.budget, std::nullopt};
      const NodeId base = select_base_point(g, target, cfg.budget);
      out = gb_ig(model, g, x, target, base, opts);
      break;
    }
    case Method::kGbIgMulti: {
      const GbIgOptions opts{cfg.mode, cfg.weighting, cfg.budget, std::nullopt};
      out = gb_ig_multi_base(model, g, x, target, opts);
      break;
    }
  }
  out.method = std::string(method_name(cfg.method));
  return out;
}

}  // namespace gbig
