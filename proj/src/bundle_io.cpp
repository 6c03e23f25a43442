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

#include "gbig/bundle_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

#include "gbig/error.hpp"
#include "gbig/log.hpp"
#include "json.hpp"

namespace gbig {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

constexpr const char* kCheckpointFormat = "gbig-gcn";
constexpr int kCheckpointVersion = 1;

[[noreturn]] void fail(ErrorCode code, const fs::path& file, const std::string& what) {
  throw Error(code, file.string() + ": " + what);
}

[[noreturn]] void fail_line(ErrorCode code, const fs::path& file, std::size_t line, const std::string& what) {
  throw Error(code, file.string() + ":" + std::to_string(line) + ": " + what);
}

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorCode::kMissingFile, file, "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& file) {
  const std::string text = read_text(file);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kCorruptFile, file, e.what());
  }
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, file, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kIo, file, "write failed");
}

const json& require_key(const json& obj, const char* key, const fs::path& file) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorCode::kCorruptFile, file, std::string("missing key '") + key + "'");
  return obj.at(key);
}

std::size_t as_index(const json& value, const fs::path& file, const std::string& where) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    fail(ErrorCode::kCorruptFile, file, where + ": expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::vector<NodeId> index_list(const json& value, std::size_t n, const fs::path& file, const std::string& key) {
  if (!value.is_array()) fail(ErrorCode::kCorruptFile, file, "'" + key + "' must be an array");
  std::vector<NodeId> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    const std::size_t v = as_index(item, file, "'" + key + "'");
    if (v >= n) fail(ErrorCode::kIndexOutOfRange, file, "'" + key + "' holds node " + std::to_string(v) + " >= " + std::to_string(n));
    out.push_back(v);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> non_empty_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(trim(text.substr(0, nl)));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

Graph read_graph(const fs::path& file, std::string& name) {
  const json doc = read_json(file);
  const std::size_t n = as_index(require_key(doc, "num_nodes", file), file, "'num_nodes'");
  const json& edges = require_key(doc, "edges", file);
  if (!edges.is_array()) fail(ErrorCode::kCorruptFile, file, "'edges' must be an array");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(ErrorCode::kCorruptFile, file, "'name' must be a string");
    name = doc["name"].get<std::string>();
  }
  bool symmetric = false;
  if (doc.contains("storage")) {
    const json& storage = doc["storage"];
    if (storage == "symmetric") {
      symmetric = true;
    } else if (storage != "one-sided") {
      fail(ErrorCode::kCorruptFile, file, "'storage' must be \"one-sided\" or \"symmetric\"");
    }
  }

  std::set<Edge> directed;
  std::vector<Edge> list;
  std::size_t self_loops = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2) fail(ErrorCode::kCorruptFile, file, where + ": expected [u, v]");
    const std::size_t u = as_index(e[0], file, where);
    const std::size_t v = as_index(e[1], file, where);
    if (u >= n || v >= n) {
      fail(ErrorCode::kIndexOutOfRange, file, where + ": node out of range for " + std::to_string(n) + " nodes");
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    const Edge key = symmetric ? Edge{u, v} : Edge{std::min(u, v), std::max(u, v)};
    if (!directed.insert(key).second) {
      fail(ErrorCode::kDuplicateEdge, file, where + ": edge (" + std::to_string(u) + ", " + std::to_string(v) + ") repeated");
    }
    list.push_back(key);
  }
  if (symmetric) {
    for (const auto& [u, v] : directed) {
      if (!directed.contains({v, u})) {
        fail(ErrorCode::kAsymmetricEdge, file,
             "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") has no reverse entry");
      }
    }
  }
  if (self_loops > 0) log()->info("{}: dropped {} self-loop(s)", file.string(), self_loops);
  return Graph::from_edges(n, list);
}

Matrix read_features(const fs::path& file, std::size_t n) {
  const std::string text = read_text(file);
  const auto lines = non_empty_lines(text);
  if (lines.size() != n) {
    fail(ErrorCode::kShapeMismatch, file, std::to_string(lines.size()) + " rows for " + std::to_string(n) + " nodes");
  }
  Matrix x;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::vector<double> row;
    std::string_view rest = lines[r];
    while (true) {
      const auto comma = rest.find(',');
      double v = 0.0;
      if (!parse_number(rest.substr(0, comma), v)) {
        fail_line(ErrorCode::kCorruptFile, file, r + 1, "bad number '" + std::string(rest.substr(0, comma)) + "'");
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (r == 0) x = Matrix(n, row.size());
    if (row.size() != x.cols()) {
      fail_line(ErrorCode::kShapeMismatch, file, r + 1,
                std::to_string(row.size()) + " columns, expected " + std::to_string(x.cols()));
    }
    std::copy(row.begin(), row.end(), x.row(r).begin());
  }
  return x;
}

std::vector<std::size_t> read_labels(const fs::path& file, std::size_t n) {
  const std::string text = read_text(file);
  const auto lines = non_empty_lines(text);
  if (lines.size() != n) {
    fail(ErrorCode::kShapeMismatch, file, std::to_string(lines.size()) + " rows for " + std::to_string(n) + " nodes");
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!parse_number(lines[r], labels[r])) {
      fail_line(ErrorCode::kCorruptFile, file, r + 1, "bad label '" + std::string(lines[r]) + "'");
    }
  }
  return labels;
}

Split read_masks(const fs::path& file, std::size_t n) {
  const json doc = read_json(file);
  Split split;
  split.train = index_list(require_key(doc, "train", file), n, file, "train");
  split.val = index_list(require_key(doc, "val", file), n, file, "val");
  split.test = index_list(require_key(doc, "test", file), n, file, "test");
  std::vector<const char*> owner(n, nullptr);
  const std::pair<const char*, const std::vector<NodeId>*> lists[] = {
      {"train", &split.train}, {"val", &split.val}, {"test", &split.test}};
  for (const auto& [key, nodes] : lists) {
    for (NodeId v : *nodes) {
      if (owner[v] != nullptr) {
        fail(ErrorCode::kOverlappingMasks, file,
             "node " + std::to_string(v) + " listed in '" + owner[v] + "' and '" + key + "'");
      }
      owner[v] = key;
    }
  }
  return split;
}

GroundTruth read_ground_truth(const fs::path& file, std::size_t n) {
  const json doc = read_json(file);
  const json& targets = require_key(doc, "targets", file);
  if (!targets.is_object()) fail(ErrorCode::kCorruptFile, file, "'targets' must be an object");
  GroundTruth truth;
  for (const auto& [key, nodes] : targets.items()) {
    std::size_t target = 0;
    if (!parse_number(key, target)) fail(ErrorCode::kCorruptFile, file, "target key '" + key + "' is not a node index");
    if (target >= n) fail(ErrorCode::kIndexOutOfRange, file, "target " + key + " out of range");
    auto list = index_list(nodes, n, file, "targets." + key);
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    truth.targets[target] = std::move(list);
  }
  return truth;
}

std::string index_array(std::span<const NodeId> nodes) {
  std::string out = "[";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(nodes[i]);
  }
  return out + "]";
}

}  // namespace

GraphBundle read_bundle(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorCode::kMissingFile, dir, "bundle directory does not exist");
  GraphBundle bundle;
  bundle.graph = read_graph(dir / "graph.json", bundle.name);
  if (bundle.name.empty()) bundle.name = dir.filename().string();
  const std::size_t n = bundle.graph.num_nodes();
  bundle.features = read_features(dir / "features.csv", n);
  bundle.labels = read_labels(dir / "labels.csv", n);
  bundle.masks = read_masks(dir / "masks.json", n);
  if (fs::exists(dir / "ground_truth.json")) bundle.ground_truth = read_ground_truth(dir / "ground_truth.json", n);
  return bundle;
}

void write_bundle(const GraphBundle& bundle, const fs::path& dir) {
  bundle.validate();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, dir, ec.message());

  std::string graph = "{\n";
  if (!bundle.name.empty()) graph += "  \"name\": " + json(bundle.name).dump() + ",\n";
  graph += "  \"num_nodes\": " + std::to_string(bundle.num_nodes()) + ",\n  \"edges\": [";
  const auto edges = bundle.graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    graph += i ? ",\n    [" : "\n    [";
    graph += std::to_string(edges[i].first) + ", " + std::to_string(edges[i].second) + "]";
  }
  graph += edges.empty() ? "]\n}\n" : "\n  ]\n}\n";
  write_text(dir / "graph.json", graph);

  std::string features;
  for (std::size_t r = 0; r < bundle.features.rows(); ++r) {
    const auto row = bundle.features.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) features += ',';
      features += format_double(row[j]);
    }
    features += '\n';
  }
  write_text(dir / "features.csv", features);

  std::string labels;
  for (std::size_t y : bundle.labels) labels += std::to_string(y) + "\n";
  write_text(dir / "labels.csv", labels);

  write_text(dir / "masks.json", "{\n  \"train\": " + index_array(bundle.masks.train) + ",\n  \"val\": " +
                                     index_array(bundle.masks.val) + ",\n  \"test\": " +
                                     index_array(bundle.masks.test) + "\n}\n");

  const fs::path truth_file = dir / "ground_truth.json";
  if (bundle.ground_truth) {
    std::string truth = "{\n  \"targets\": {";
    bool first = true;
    for (const auto& [target, nodes] : bundle.ground_truth->targets) {
      truth += first ? "\n    \"" : ",\n    \"";
      truth += std::to_string(target) + "\": " + index_array(nodes);
      first = false;
    }
    truth += first ? "}\n}\n" : "\n  }\n}\n";
    write_text(truth_file, truth);
  } else {
    fs::remove(truth_file, ec);
  }
}

void save_checkpoint(const GcnModel& model, const fs::path& file) {
  ordered_json doc;
  doc["format"] = kCheckpointFormat;
  doc["version"] = kCheckpointVersion;
  ordered_json layers = ordered_json::array();
  for (const Matrix& w : model.weights()) {
    ordered_json layer;
    layer["rows"] = w.rows();
    layer["cols"] = w.cols();
    layer["values"] = std::vector<double>(w.values().begin(), w.values().end());
    layers.push_back(std::move(layer));
  }
  doc["layers"] = std::move(layers);
  write_text(file, doc.dump() + "\n");
}

GcnModel load_checkpoint(const fs::path& file) {
  const json doc = read_json(file);
  if (require_key(doc, "format", file) != kCheckpointFormat) fail(ErrorCode::kCorruptFile, file, "not a gbig checkpoint");
  if (require_key(doc, "version", file) != kCheckpointVersion) fail(ErrorCode::kCorruptFile, file, "unsupported version");
  const json& layers = require_key(doc, "layers", file);
  if (!layers.is_array() || layers.empty()) fail(ErrorCode::kCorruptFile, file, "'layers' must be a non-empty array");
  std::vector<Matrix> weights;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string where = "layers[" + std::to_string(l) + "]";
    const std::size_t rows = as_index(require_key(layers[l], "rows", file), file, where + ".rows");
    const std::size_t cols = as_index(require_key(layers[l], "cols", file), file, where + ".cols");
    const json& values = require_key(layers[l], "values", file);
    if (!values.is_array() || values.size() != rows * cols) {
      fail(ErrorCode::kCorruptFile, file, where + ": expected " + std::to_string(rows * cols) + " values");
    }
    Matrix w(rows, cols);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i].is_number()) fail(ErrorCode::kCorruptFile, file, where + ": non-numeric value");
      w.values()[i] = values[i].get<double>();
    }
    weights.push_back(std::move(w));
  }
  try {
    return GcnModel(std::move(weights));
  } catch (const Error& e) {
    fail(e.code(), file, e.what());
  }
}

void write_report(std::span<const EvaluationRow> rows, const ReportConfig& config, const fs::path& file) {
  ordered_json doc;
  ordered_json& cfg = doc["config"];
  cfg["threshold"] = config.threshold;
  cfg["seed"] = config.seed;
  cfg["mode"] = config.mode;
  cfg["weighting"] = config.weighting;
  cfg["steps"] = config.steps;
  cfg["sigma"] = config.sigma;
  cfg["path_budget"] = config.path_budget;
  ordered_json list = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json item;
    item["method"] = row.method;
    item["dataset"] = row.dataset;
    item["fidelity"] = row.fidelity;
    item["sparsity"] = row.sparsity;
    item["jaccard"] = row.jaccard ? ordered_json(*row.jaccard) : ordered_json(nullptr);
    item["num_targets"] = row.num_targets;
    list.push_back(std::move(item));
  }
  doc["rows"] = std::move(list);
  write_text(file, doc.dump(2) + "\n");
}

void write_attribution(const Attribution& attr, const ExplanationMask& mask, const fs::path& file) {
  ordered_json doc;
  doc["target"] = attr.target;
  doc["method"] = attr.method;
  doc["class"] = attr.cls;
  doc["base_nodes"] = attr.base_nodes;
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < attr.nodes.size(); ++r) {
    ordered_json row;
    row["node"] = attr.nodes[r];
    row["values"] = std::vector<double>(attr.values.row(r).begin(), attr.values.row(r).end());
    rows.push_back(std::move(row));
  }
  doc["attributions"] = std::move(rows);
  ordered_json m;
  m["threshold"] = mask.threshold;
  m["important"] = mask.important;
  ordered_json scores = ordered_json::array();
  for (std::size_t i = 0; i < mask.scope.size(); ++i) scores.push_back({{"node", mask.scope[i]}, {"score", mask.scores[i]}});
  m["scores"] = std::move(scores);
  doc["mask"] = std::move(m);
  write_text(file, doc.dump(2) + "\n");
}

}  // namespace gbig
