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

#include "gbig/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>

#include "CLI11.hpp"
#include "gbig/attribution.hpp"
#include "gbig/bundle_io.hpp"
#include "gbig/error.hpp"
#include "gbig/gcn.hpp"
#include "gbig/log.hpp"
#include "gbig/metrics.hpp"
#include "gbig/synthgen.hpp"

namespace gbig::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kMethodNames = {"ig-zero", "ig-uniform", "ig-gaussian", "gb-ig", "gb-ig-multi"};

struct ExplainFlags {
  double threshold = kDefaultThreshold;
  std::size_t steps = 64;
  double sigma = 1.0;
  std::string mode = "target-substitution";
  std::string weighting = "per-path";
  std::size_t path_budget = 1024;
};

struct RunConfig {
  std::string bundle;
  std::string checkpoint;
  std::string out;
  std::vector<std::string> methods = {"ig-zero", "ig-uniform", "ig-gaussian", "gb-ig"};
  std::uint64_t seed = 0;
  ExplainFlags explain;
  TrainConfig train;
  GenParams gen;
  std::string motif = "house";
  std::size_t target = 0;
};

void add_explain_flags(CLI::App* cmd, ExplainFlags& flags) {
  cmd->add_option("--threshold", flags.threshold, "Normalized importance threshold in (0, 1]")
      ->capture_default_str()
      ->check(CLI::Validator(
          [](std::string& s) {
            const double v = std::stod(s);
            return v > 0.0 && v <= 1.0 ? std::string{} : std::string("threshold must lie in (0, 1]");
          },
          "(0, 1]"));
  cmd->add_option("--steps", flags.steps, "Riemann steps for IG")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--sigma", flags.sigma, "Gaussian baseline scale")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd->add_option("--mode", flags.mode, "GB-IG gradient mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"target-substitution", "path-node"}));
  cmd->add_option("--weighting", flags.weighting, "GB-IG path weighting")
      ->capture_default_str()
      ->check(CLI::IsMember({"per-path", "unweighted"}));
  cmd->add_option("--path-budget", flags.path_budget, "Maximum shortest paths per base point")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

MethodConfig method_config(const std::string& name, const ExplainFlags& flags, std::uint64_t seed) {
  MethodConfig cfg;
  cfg.method = parse_method(name);
  cfg.steps = flags.steps;
  cfg.sigma = flags.sigma;
  cfg.seed = seed;
  cfg.mode = parse_mode(flags.mode);
  cfg.weighting = parse_weighting(flags.weighting);
  cfg.budget.max_paths = flags.path_budget;
  return cfg;
}

void print_table(std::ostream& out, const std::vector<EvaluationRow>& rows) {
  out << std::left << std::setw(14) << "method" << std::setw(22) << "dataset" << std::right << std::setw(10)
      << "fidelity" << std::setw(10) << "sparsity" << std::setw(10) << "jaccard" << std::setw(9) << "targets"
      << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& row : rows) {
    out << std::left << std::setw(14) << row.method << std::setw(22) << row.dataset << std::right << std::setw(10)
        << row.fidelity << std::setw(10) << row.sparsity << std::setw(10);
    if (row.jaccard) {
      out << *row.jaccard;
    } else {
      out << "-";
    }
    out << std::setw(9) << row.num_targets << '\n';
  }
  out << std::defaultfloat;
}

int do_generate(const RunConfig& cfg, std::ostream& out) {
  GenParams params = cfg.gen;
  params.motif = parse_motif(cfg.motif);
  params.seed = cfg.seed;
  const GraphBundle bundle = generate(params);
  write_bundle(bundle, cfg.out);
  out << "wrote " << bundle.name << " (" << bundle.num_nodes() << " nodes, " << bundle.graph.num_edges()
      << " edges) to " << cfg.out << '\n';
  return 0;
}

int do_train(const RunConfig& cfg, std::ostream& out) {
  const GraphBundle bundle = read_bundle(cfg.bundle);
  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  const TrainResult result = train(bundle, tc);

  const NormalizedAdjacency s = normalize_adjacency(bundle.graph);
  const double train_acc = accuracy(result.model, bundle.features, s, bundle.labels, bundle.masks.train);
  const double test_acc = accuracy(result.model, bundle.features, s, bundle.labels, bundle.masks.test);

  save_checkpoint(result.model, cfg.checkpoint);
  const fs::path log_path = cfg.out.empty() ? fs::path(cfg.checkpoint + ".loss.csv") : fs::path(cfg.out);
  std::ofstream log_file(log_path, std::ios::trunc);
  if (!log_file) throw Error(ErrorCode::kIo, log_path.string() + ": cannot open for writing");
  log_file << "epoch,loss\n";
  for (std::size_t e = 0; e < result.loss_history.size(); ++e) {
    log_file << e << ',' << format_double(result.loss_history[e]) << '\n';
  }
  out << "final loss " << result.loss_history.back() << ", train accuracy " << train_acc << ", test accuracy "
      << test_acc << '\n';
  return 0;
}

int do_explain(const RunConfig& cfg, std::ostream& out) {
  const GraphBundle bundle = read_bundle(cfg.bundle);
  const GcnModel model = load_checkpoint(cfg.checkpoint);
  if (cfg.target >= bundle.num_nodes()) {
    throw Error(ErrorCode::kIndexOutOfRange, "target " + std::to_string(cfg.target) + " not in bundle");
  }
  if (cfg.methods.size() != 1) throw Error(ErrorCode::kInvalidArgument, "explain takes exactly one method");
  const MethodConfig mc = method_config(cfg.methods.front(), cfg.explain, cfg.seed);
  const GcnExplainable explainable(model, bundle.graph);
  const Attribution attr = explain(explainable, bundle.graph, bundle.features, cfg.target, mc);
  const ExplanationMask mask = explanation_mask(attr, bundle.graph, cfg.explain.threshold, model.num_layers());
  write_attribution(attr, mask, cfg.out);
  out << attr.method << " for node " << attr.target << " (class " << attr.cls << "): " << mask.important.size()
      << " important node(s)\n";
  return 0;
}

int do_evaluate(const RunConfig& cfg, std::ostream& out) {
  const GraphBundle bundle = read_bundle(cfg.bundle);
  const GcnModel model = load_checkpoint(cfg.checkpoint);
  if (model.input_dim() != bundle.num_features()) {
    throw Error(ErrorCode::kDimensionMismatch, "checkpoint expects " + std::to_string(model.input_dim()) +
                                                   " features, bundle has " + std::to_string(bundle.num_features()));
  }
  std::vector<MethodConfig> methods;
  for (const auto& name : cfg.methods) methods.push_back(method_config(name, cfg.explain, cfg.seed));

  const GcnExplainable explainable(model, bundle.graph);
  const auto rows = evaluate(explainable, bundle, methods, cfg.explain.threshold);

  ReportConfig report;
  report.threshold = cfg.explain.threshold;
  report.seed = cfg.seed;
  report.mode = cfg.explain.mode;
  report.weighting = cfg.explain.weighting;
  report.steps = cfg.explain.steps;
  report.sigma = cfg.explain.sigma;
  report.path_budget = cfg.explain.path_budget;
  write_report(rows, report, cfg.out);
  print_table(out, rows);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Graph-based integrated gradients toolkit", "gbig"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate a synthetic motif bundle");
  gen->add_option("--out", cfg.out, "Output bundle directory")->required();
  gen->add_option("--motif", cfg.motif, "Motif shape")->capture_default_str()->check(CLI::IsMember({"house", "circle"}));
  gen->add_option("--homophily", cfg.gen.homophily, "+1 homophilic or -1 heterophilic")
      ->capture_default_str()
      ->check(CLI::IsMember({1, -1}));
  gen->add_option("--num-subgraphs", cfg.gen.num_subgraphs)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--subgraph-size", cfg.gen.subgraph_size)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--edge-prob", cfg.gen.edge_probability)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--feature-dim", cfg.gen.feature_dim)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--informative-dims", cfg.gen.informative_dims)->capture_default_str();
  gen->add_option("--seed", cfg.seed)->capture_default_str();

  auto* tr = app.add_subcommand("train", "Train a GCN on a bundle");
  tr->add_option("--bundle", cfg.bundle, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  tr->add_option("--checkpoint", cfg.checkpoint, "Checkpoint file to write")->required();
  tr->add_option("--out", cfg.out, "Loss log CSV (default: <checkpoint>.loss.csv)");
  tr->add_option("--lr", cfg.train.learning_rate)->capture_default_str()->check(CLI::PositiveNumber);
  tr->add_option("--epochs", cfg.train.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  tr->add_option("--weight-decay", cfg.train.weight_decay)->capture_default_str()->check(CLI::NonNegativeNumber);
  tr->add_option("--hidden", cfg.train.hidden)->capture_default_str()->check(CLI::PositiveNumber);
  tr->add_option("--seed", cfg.seed)->capture_default_str();

  auto* ex = app.add_subcommand("explain", "Explain one node and dump its attribution");
  ex->add_option("--bundle", cfg.bundle)->required()->check(CLI::ExistingDirectory);
  ex->add_option("--checkpoint", cfg.checkpoint)->required()->check(CLI::ExistingFile);
  ex->add_option("--target", cfg.target, "Node to explain")->required();
  ex->add_option("--out", cfg.out, "Attribution JSON file")->required();
  cfg.methods = {"gb-ig"};
  ex->add_option("--methods", cfg.methods, "Method to run")->check(CLI::IsMember(kMethodNames))->capture_default_str();
  ex->add_option("--seed", cfg.seed)->capture_default_str();
  add_explain_flags(ex, cfg.explain);

  auto* ev = app.add_subcommand("evaluate", "Evaluate explanation methods on a bundle's test nodes");
  ev->add_option("--bundle", cfg.bundle)->required()->check(CLI::ExistingDirectory);
  ev->add_option("--checkpoint", cfg.checkpoint)->required()->check(CLI::ExistingFile);
  ev->add_option("--out", cfg.out, "results.json path")->required();
  ev->add_option("--methods", cfg.methods, "Comma-separated methods")
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodNames));
  ev->add_option("--seed", cfg.seed)->capture_default_str();
  add_explain_flags(ev, cfg.explain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  // The evaluate default applies only when --methods was not given there.
  if (ev->parsed() && ev->count("--methods") == 0) cfg.methods = {"ig-zero", "ig-uniform", "ig-gaussian", "gb-ig"};

  try {
    if (gen->parsed()) return do_generate(cfg, out);
    if (tr->parsed()) return do_train(cfg, out);
    if (ex->parsed()) return do_explain(cfg, out);
    return do_evaluate(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gbig::cli
