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

#include "gbig/metrics.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <string>

#include "gbig/error.hpp"
#include "gbig/linalg.hpp"
#include "gbig/log.hpp"

namespace gbig {

double fidelity_term(const Explainable& model, const Matrix& x, const ExplanationMask& mask) {
  const auto local = model.localize(mask.target);
  const auto scope = local->scope();
  Matrix lx = gather_rows(x, scope);
  const Prediction original = argmax(local->scores(lx));
  for (NodeId v : mask.important) {
    const std::size_t r = index_in_scope(scope, v);
    if (r != kUnreachable) std::fill(lx.row(r).begin(), lx.row(r).end(), 0.0);
  }
  const double occluded = local->scores(lx).at(original.cls);
  return original.probability - occluded;
}

double fidelity(const Explainable& model, const Matrix& x, std::span<const ExplanationMask> masks) {
  if (masks.empty()) throw Error(ErrorCode::kEmptyInput, "fidelity over no masks");
  double total = 0.0;
  for (const auto& mask : masks) total += fidelity_term(model, x, mask);
  return total / static_cast<double>(masks.size());
}

double sparsity(std::span<const ExplanationMask> masks, const Graph& g, std::size_t hops) {
  if (masks.empty()) throw Error(ErrorCode::kEmptyInput, "sparsity over no masks");
  double total = 0.0;
  for (const auto& mask : masks) {
    const double scope = static_cast<double>(k_hop_nodes(g, mask.target, hops).size());
    total += 1.0 - static_cast<double>(mask.important.size()) / scope;
  }
  return total / static_cast<double>(masks.size());
}

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> sa(a.begin(), a.end());
  std::vector<NodeId> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::vector<NodeId> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  const std::size_t unions = sa.size() + sb.size() - common.size();
  return static_cast<double>(common.size()) / static_cast<double>(unions);
}

std::vector<EvaluationRow> evaluate(const Explainable& model, const GraphBundle& bundle,
                                    std::span<const MethodConfig> methods, double threshold) {
  const auto& targets = bundle.masks.test;
  if (targets.empty()) throw Error(ErrorCode::kEmptyInput, "bundle has no test targets");
  const auto ranges = feature_ranges(bundle.features);
  const std::size_t hops = model.receptive_hops();

  std::vector<EvaluationRow> rows;
  for (const MethodConfig& cfg : methods) {
    EvaluationRow row;
    row.method = std::string(method_name(cfg.method));
    row.dataset = bundle.name;

    std::vector<ExplanationMask> masks;
    std::map<ErrorCode, std::size_t> failures;
    double jaccard_total = 0.0;
    std::size_t jaccard_count = 0;
    for (NodeId t : targets) {
      try {
        const Attribution attr = explain(model, bundle.graph, bundle.features, t, cfg, ranges);
        masks.push_back(explanation_mask(attr, bundle.graph, threshold, hops));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kIsolatedNode && e.code() != ErrorCode::kPathBudgetExceeded) throw;
        ++failures[e.code()];
        log()->debug("{}: skipping target {}: {}", row.method, t, e.what());
        continue;
      }
      if (bundle.ground_truth) {
        const auto it = bundle.ground_truth->targets.find(t);
        if (it != bundle.ground_truth->targets.end()) {
          jaccard_total += jaccard(masks.back().important, it->second);
          ++jaccard_count;
        }
      }
    }
    for (const auto& [code, count] : failures) {
      log()->info("{} on {}: skipped {} target(s) ({})", row.method, bundle.name, count, to_string(code));
      row.skipped += count;
    }
    if (masks.empty()) {
      throw Error(ErrorCode::kEmptyInput, row.method + ": no test target could be explained");
    }
    row.num_targets = masks.size();
    row.fidelity = fidelity(model, bundle.features, masks);
    row.sparsity = sparsity(masks, bundle.graph, hops);
    if (jaccard_count > 0) row.jaccard = jaccard_total / static_cast<double>(jaccard_count);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gbig
