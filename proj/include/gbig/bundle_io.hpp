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

// On-disk formats.
//
// A bundle is a directory:
//   graph.json         {"num_nodes": N, "edges": [[u, v], ...], "name": "..."}
//                      edges stored once with u < v unless "storage" is
//                      "symmetric", in which case both directions must appear.
//   features.csv       N rows of d comma-separated decimals
//   labels.csv         N rows, one class index each
//   masks.json         {"train": [...], "val": [...], "test": [...]}
//   ground_truth.json  optional, {"targets": {"<node>": [node, ...]}}
//
// Doubles are written in shortest round-trip form, so write -> read -> write
// is byte-stable.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "gbig/attribution.hpp"
#include "gbig/bundle.hpp"
#include "gbig/gcn.hpp"
#include "gbig/metrics.hpp"

namespace gbig {

// Read errors name the offending file (and line or key where it applies).
GraphBundle read_bundle(const std::filesystem::path& dir);
void write_bundle(const GraphBundle& bundle, const std::filesystem::path& dir);

void save_checkpoint(const GcnModel& model, const std::filesystem::path& file);
GcnModel load_checkpoint(const std::filesystem::path& file);

struct ReportConfig {
  double threshold = kDefaultThreshold;
  std::uint64_t seed = 0;
  std::string mode = "target-substitution";
  std::string weighting = "per-path";
  std::size_t steps = 64;
  double sigma = 1.0;
  std::size_t path_budget = 1024;
};

// results.json: {"config": {...}, "rows": [{method, dataset, fidelity,
// sparsity, jaccard|null, num_targets}, ...]}
void write_report(std::span<const EvaluationRow> rows, const ReportConfig& config,
                  const std::filesystem::path& file);

void write_attribution(const Attribution& attr, const ExplanationMask& mask, const std::filesystem::path& file);

// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace gbig
