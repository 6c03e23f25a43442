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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are fixed below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "axioms.hpp"
#include "gbig/attribution.hpp"
#include "gbig/bundle_io.hpp"
#include "gbig/cli.hpp"
#include "gbig/error.hpp"
#include "gbig/gcn.hpp"
#include "gbig/linalg.hpp"
#include "gbig/metrics.hpp"
#include "gbig/synthgen.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

namespace {

using gbig::GcnModel;
using gbig::Graph;
using gbig::Matrix;
using gbig::NodeId;
using Clock = std::chrono::steady_clock;

constexpr double kGradientRelTol = 1e-5;
constexpr double kGradientStep = 1e-4;
constexpr double kGradientBudgetSeconds = 30.0;
constexpr std::size_t kCompletenessSteps = 256;
constexpr double kCompletenessRel = 1e-3;
constexpr double kCompletenessAbs = 1e-6;
constexpr double kExactTol = 1e-9;
constexpr double kMetricTol = 1e-12;
constexpr double kJaccardFloor = 0.05;
constexpr double kBundleBudgetSeconds = 600.0;

// Bundles for the directional checks: 50 subgraphs of 12 nodes gives 600
// nodes and 120 test targets per bundle.
constexpr std::size_t kBundleSubgraphs = 50;
constexpr std::uint64_t kBundleSeed = 0;
gbig::TrainConfig acceptance_training() {
  gbig::TrainConfig cfg;
  cfg.learning_rate = 0.05;
  cfg.epochs = 300;
  return cfg;
}

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Runs a criterion, turning an unexpected exception into a FAIL line.
void criterion(const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(false, name, std::string("threw ") + e.what());
  }
}

void gradient_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  std::size_t skipped = 0;
  std::size_t checked = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 10 + rng() % 21;  // up to 30 nodes
    const std::size_t d = 2 + rng() % 15;   // up to 16 features
    const std::size_t classes = 2 + rng() % 3;
    const auto g = oracle::random_connected_graph(n, 0.12, rng);
    const auto x = oracle::random_matrix(n, d, rng);
    const auto model = GcnModel::glorot_uniform(d, classes, rng());
    const NodeId t = rng() % n;
    const std::size_t c = rng() % classes;

    const auto grad = gbig::grad_input(model, x, gbig::normalize_adjacency(g), t, c);
    const auto fd = oracle::central_difference(model, g, x, t, c, kGradientStep);
    double scale = 0.0;
    for (std::size_t k = 0; k < grad.values().size(); ++k)
      scale = std::max({scale, std::abs(grad.values()[k]), std::abs(fd.grad.values()[k])});
    const std::set<std::pair<std::size_t, std::size_t>> kinks(fd.kinks.begin(), fd.kinks.end());
    skipped += kinks.size();
    double err = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t j = 0; j < d; ++j) {
        if (kinks.count({v, j})) continue;
        err = std::max(err, std::abs(grad(v, j) - fd.grad(v, j)));
        ++checked;
      }
    }
    worst = std::max(worst, scale > 0.0 ? err / scale : err);
  }
  const double elapsed = seconds_since(start);
  report(worst < kGradientRelTol && elapsed < kGradientBudgetSeconds, "gradient-oracle",
         fmt("20 instances, worst relative error %.3e (tol %.0e), %zu entries checked, %zu at rectifier kinks "
             "skipped, %.1fs (budget %.0fs)",
             worst, kGradientRelTol, checked, skipped, elapsed, kGradientBudgetSeconds));
}

struct TrainedBundle {
  gbig::GraphBundle bundle;
  GcnModel model;
};

TrainedBundle trained(gbig::Motif motif, int homophily) {
  gbig::GenParams p;
  p.motif = motif;
  p.homophily = homophily;
  p.num_subgraphs = kBundleSubgraphs;
  p.seed = kBundleSeed;
  auto bundle = gbig::generate(p);
  auto cfg = acceptance_training();
  cfg.seed = kBundleSeed;
  auto model = gbig::train(bundle, cfg).model;
  return {std::move(bundle), std::move(model)};
}

void ig_completeness(const TrainedBundle& tb) {
  const auto& b = tb.bundle;
  const gbig::GcnExplainable ex(tb.model, b.graph);
  std::size_t passed = 0;
  std::size_t total = 0;
  double worst_excess = 0.0;
  for (NodeId t : b.masks.test) {
    if (total == 60) break;
    const auto scope = gbig::k_hop_nodes(b.graph, t, tb.model.num_layers());
    const auto attr = gbig::integrated_gradients(ex, b.graph, b.features, t, Matrix(scope.size(), b.num_features()),
                                                 {.steps = kCompletenessSteps});
    // F from the dense reference forward on the whole graph, with the scope
    // rows zeroed for the base point.
    Matrix zeroed = b.features;
    for (NodeId v : scope)
      for (double& e : zeroed.row(v)) e = 0.0;
    const double fx = oracle::dense_forward(tb.model, b.graph, b.features).probs[t][attr.cls];
    const double fb = oracle::dense_forward(tb.model, b.graph, zeroed).probs[t][attr.cls];
    const double gap = std::abs(attr.total() - (fx - fb));
    const double allowed = kCompletenessRel * std::abs(fx - fb) + kCompletenessAbs;
    ++total;
    if (gap <= allowed) ++passed;
    worst_excess = std::max(worst_excess, gap / allowed);
  }
  report(passed == total && total >= 50, "ig-completeness",
         fmt("%zu/%zu targets within 1e-3*|F(X)-F(b)|+1e-6 at m=%zu (worst gap/allowed %.3f)", passed, total,
             kCompletenessSteps, worst_excess));
}

void pathwise_completeness() {
  std::mt19937_64 rng(2002);
  double worst = 0.0;
  std::size_t paths = 0;
  std::size_t multi = 0;
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 8 + rng() % 10;
    const auto g = oracle::random_connected_graph(n, 0.2, rng);
    const auto x = oracle::random_matrix(n, 4, rng);
    std::vector<Matrix> coef = {oracle::random_matrix(n, 4, rng), oracle::random_matrix(n, 4, rng)};
    const gbig::LinearSurrogate lin(g, coef);
    const NodeId t = rng() % n;
    const NodeId base = gbig::select_base_point(g, t, {.max_paths = 1u << 20});
    const auto trace = gbig::gb_ig_trace(lin, g, x, t, base,
                                         {.weighting = gbig::PathWeighting::kUnweighted,
                                          .budget = {.max_paths = 1u << 20},
                                          .cls = 1});
    // F is linear, so moving the target slot from X(base) to X(t) changes it by
    // the coefficient row of t dotted with the difference.
    double endpoint = 0.0;
    for (std::size_t j = 0; j < 4; ++j) endpoint += coef[1](t, j) * (x(t, j) - x(base, j));
    for (double s : trace.path_sums) worst = std::max(worst, std::abs(s - endpoint));
    paths += trace.paths.size();
    if (trace.paths.size() > 1) ++multi;
  }
  report(worst <= kExactTol, "pathwise-completeness",
         fmt("40 targets, %zu paths (%zu targets with several), worst |path sum - F difference| %.3e (tol %.0e)",
             paths, multi, worst, kExactTol));
}

void axiom_suite() {
  double worst_null = 0.0, worst_impl = 0.0, worst_lin = 0.0, worst_sym = 0.0;
  bool sensitive = true;
  for (const auto& [name, method] : axioms::methods()) {
    for (std::uint64_t seed = 11; seed < 21; ++seed) {
      worst_null = std::max(worst_null, axioms::nullity(method, seed));
      worst_impl = std::max(worst_impl, axioms::implementation_invariance(method, seed));
      worst_lin = std::max(worst_lin, axioms::linearity(method, seed));
      worst_sym = std::max(worst_sym, axioms::symmetry(method, seed));
      sensitive = sensitive && axioms::sensitivity(name, seed);
    }
  }
  const bool ok = worst_null <= kExactTol && worst_impl <= kExactTol && worst_lin <= kExactTol &&
                  worst_sym <= kExactTol && sensitive;
  report(ok, "axiom-suite",
         fmt("ig-zero, gb-ig, gb-ig/path-node x 10 seeds: nullity %.1e, implementation invariance %.1e, "
             "linearity %.1e, symmetry %.1e (tol %.0e), sensitivity %s",
             worst_null, worst_impl, worst_lin, worst_sym, kExactTol, sensitive ? "held" : "violated"));
}

void path_enumeration() {
  std::mt19937_64 rng(3003);
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + rng() % 11;
    const auto g = oracle::random_graph(n, 0.2 + 0.3 * static_cast<double>(rng() % 100) / 100.0, rng);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto expected = oracle::brute_shortest_paths(g, a, b);
        std::set<std::vector<NodeId>> got;
        try {
          for (const auto& p : gbig::shortest_paths(g, a, b, {.max_paths = 1u << 20})) got.insert(p.nodes);
        } catch (const gbig::Error& e) {
          if (e.code() != gbig::ErrorCode::kNoPath) throw;
        }
        ++pairs;
        if (got != expected) ++mismatches;
      }
    }
  }
  report(mismatches == 0, "path-enumeration",
         fmt("100 graphs (<= 12 nodes), %zu ordered pairs, %zu mismatches against brute-force simple paths", pairs,
             mismatches));
}

void entropy_selection() {
  std::mt19937_64 rng(4004);
  std::size_t queries = 0;
  std::size_t mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 4 + rng() % 12;
    const auto g = oracle::random_graph(n, 0.25, rng);
    const auto d = oracle::all_pairs_hops(g);
    for (NodeId x = 0; x < n; ++x) {
      if (g.degree(x) == 0) continue;
      std::size_t far = 0;
      for (NodeId y = 0; y < n; ++y)
        if (d[x][y] != SIZE_MAX) far = std::max(far, d[x][y]);
      NodeId best = SIZE_MAX;
      double best_e = -1.0;
      for (NodeId y = 0; y < n; ++y) {
        if (d[x][y] != far) continue;
        const double e = oracle::entropy(g, oracle::brute_shortest_paths(g, y, x));
        if (e > best_e) best_e = e, best = y;
      }
      ++queries;
      if (gbig::select_base_point(g, x, {.max_paths = 1u << 20}) != best) ++mismatches;
    }
  }
  report(mismatches == 0, "entropy-selection",
         fmt("50 graphs (<= 15 nodes), %zu targets, %zu mismatches against brute-force argmax", queries, mismatches));
}

struct TableRow {
  std::string bundle;
  std::map<std::string, gbig::EvaluationRow> by_method;
  double seconds = 0.0;
};

std::vector<TableRow> table_one(const std::vector<std::pair<gbig::Motif, int>>& kinds) {
  std::vector<TableRow> out;
  for (auto [motif, homophily] : kinds) {
    const auto start = Clock::now();
    const auto tb = trained(motif, homophily);
    const gbig::GcnExplainable ex(tb.model, tb.bundle.graph);
    std::vector<gbig::MethodConfig> methods;
    for (auto m : {gbig::Method::kIgZero, gbig::Method::kIgUniform, gbig::Method::kIgGaussian, gbig::Method::kGbIg})
      methods.push_back({.method = m, .seed = kBundleSeed});
    TableRow row;
    row.bundle = tb.bundle.name;
    for (auto& r : gbig::evaluate(ex, tb.bundle, methods)) row.by_method[r.method] = r;
    row.seconds = seconds_since(start);
    const auto s = gbig::normalize_adjacency(tb.bundle.graph);
    std::printf("  %-20s test acc %.3f, %zu targets, %.1fs\n", row.bundle.c_str(),
                gbig::accuracy(tb.model, tb.bundle.features, s, tb.bundle.labels, tb.bundle.masks.test),
                row.by_method["gb-ig"].num_targets, row.seconds);
    for (const auto& [name, r] : row.by_method)
      std::printf("    %-12s fidelity %+.4f  sparsity %.4f  jaccard %.4f\n", name.c_str(), r.fidelity, r.sparsity,
                  r.jaccard.value_or(-1.0));
    out.push_back(std::move(row));
  }
  return out;
}

void directional_jaccard(const std::vector<TableRow>& table) {
  std::string detail;
  bool ok = true;
  for (const auto& row : table) {
    const auto& m = row.by_method;
    const double gb = m.at("gb-ig").jaccard.value_or(0.0);
    const bool beats = gb > m.at("ig-zero").jaccard.value_or(0.0) && gb > m.at("ig-uniform").jaccard.value_or(0.0) &&
                       gb > m.at("ig-gaussian").jaccard.value_or(0.0);
    const bool floor = gb >= kJaccardFloor;
    const bool gaussian_low = m.at("ig-gaussian").jaccard.value_or(1.0) <= kJaccardFloor;
    const bool enough = m.at("gb-ig").num_targets >= 100;
    const bool fast = row.seconds < kBundleBudgetSeconds;
    ok = ok && beats && floor && gaussian_low && enough && fast;
    detail += fmt("[%s gb-ig %.4f vs ig best %.4f%s; gb-ig>=%.2f %s; ig-gaussian %.4f<=%.2f %s; %zu targets; %.0fs] ",
                  row.bundle.c_str(), gb,
                  std::max({m.at("ig-zero").jaccard.value_or(0.0), m.at("ig-uniform").jaccard.value_or(0.0),
                            m.at("ig-gaussian").jaccard.value_or(0.0)}),
                  beats ? " ok" : " NOT exceeded", kJaccardFloor, floor ? "ok" : "no",
                  m.at("ig-gaussian").jaccard.value_or(1.0), kJaccardFloor, gaussian_low ? "ok" : "no",
                  m.at("gb-ig").num_targets, row.seconds);
  }
  report(ok, "directional-jaccard", detail);
}

void directional_fidelity(const std::vector<TableRow>& table) {
  std::size_t gb_above = 0;
  std::size_t zero_negative = 0;
  std::string detail;
  for (const auto& row : table) {
    const double gb = row.by_method.at("gb-ig").fidelity;
    const double zero = row.by_method.at("ig-zero").fidelity;
    if (gb > zero) ++gb_above;
    if (zero < 0.0) ++zero_negative;
    detail += fmt("[%s gb-ig %+.4f ig-zero %+.4f] ", row.bundle.c_str(), gb, zero);
  }
  report(gb_above == table.size() && zero_negative >= 3, "directional-fidelity",
         fmt("gb-ig > ig-zero on %zu/%zu, ig-zero < 0 on %zu/%zu (need all, >= 3) ", gb_above, table.size(),
             zero_negative, table.size()) +
             detail);
}

// Hand-checkable two-node model: P(class 0 | target) = sigmoid(a x_t + b x_other).
class LogisticPair final : public gbig::Explainable {
 public:
  LogisticPair(double a, double b) : a_(a), b_(b) {}
  std::size_t num_classes() const override { return 2; }
  std::size_t receptive_hops() const override { return 3; }
  std::unique_ptr<gbig::LocalModel> localize(NodeId t) const override { return std::make_unique<Local>(t, a_, b_); }

 private:
  struct Local final : gbig::LocalModel {
    Local(NodeId t, double a, double b) : t(t), a(a), b(b) {}
    std::span<const NodeId> scope() const override { return nodes; }
    std::size_t target_index() const override { return t; }
    std::vector<double> scores(const Matrix& x) const override {
      const double p = 1.0 / (1.0 + std::exp(-(a * x(t, 0) + b * x(1 - t, 0))));
      return {p, 1.0 - p};
    }
    Matrix gradient(const Matrix& x, std::size_t) const override { return Matrix(x.rows(), x.cols()); }
    std::vector<NodeId> nodes = {0, 1};
    NodeId t;
    double a, b;
  };
  double a_, b_;
};

void metric_examples() {
  const std::vector<NodeId> a = {1, 2}, b = {2, 3};
  const double jac = gbig::jaccard(a, b);

  std::vector<gbig::Edge> star;
  for (NodeId v = 1; v < 10; ++v) star.emplace_back(0, v);
  const auto g = Graph::from_edges(10, star);
  gbig::ExplanationMask two;
  two.target = 0;
  two.important = {0, 5};
  const double spa = gbig::sparsity(std::vector<gbig::ExplanationMask>{two}, g);

  gbig::ExplanationMask occlude;
  occlude.target = 0;
  occlude.important = {1};
  const Matrix ones = Matrix::from_rows({{1.0}, {1.0}});
  const double fid = gbig::fidelity(LogisticPair(std::log(1.5), std::log(6.0)), ones,
                                    std::vector<gbig::ExplanationMask>{occlude});

  const auto zero = GcnModel::zeros(1, 2);
  const auto pair = Graph::from_edges(2, std::vector<gbig::Edge>{{0, 1}});
  const double constant =
      gbig::fidelity(gbig::GcnExplainable(zero, pair), ones, std::vector<gbig::ExplanationMask>{occlude});

  const bool ok = std::abs(jac - 1.0 / 3.0) <= kMetricTol && std::abs(spa - 0.8) <= kMetricTol &&
                  std::abs(fid - 0.3) <= kMetricTol && std::abs(constant) <= kMetricTol;
  report(ok, "metric-examples",
         fmt("jaccard {1,2}/{2,3} = %.15f, sparsity 2 of 10 = %.15f, fidelity 0.9->0.6 = %.15f, constant model "
             "fidelity = %.1e (tol %.0e)",
             jac, spa, fid, constant, kMetricTol));
}

void determinism() {
  std::string reports[2];
  for (int run = 0; run < 2; ++run) {
    const testutil::TempDir dir;
    const std::string bundle = (dir / "bundle").string();
    const std::string ckpt = (dir / "model.json").string();
    const std::string out = (dir / "results.json").string();
    std::ostringstream sink;
    const std::vector<std::vector<std::string>> steps = {
        {"gbig", "generate", "--out", bundle, "--motif", "circle", "--num-subgraphs", "12", "--seed", "5"},
        {"gbig", "train", "--bundle", bundle, "--checkpoint", ckpt, "--seed", "5", "--lr", "0.05"},
        {"gbig", "evaluate", "--bundle", bundle, "--checkpoint", ckpt, "--out", out, "--seed", "5", "--methods",
         "ig-zero,ig-uniform,ig-gaussian,gb-ig,gb-ig-multi"},
    };
    for (const auto& args : steps) {
      if (gbig::cli::run(args, sink, sink) != 0) throw std::runtime_error("pipeline step failed: " + args[1]);
    }
    reports[run] = testutil::slurp(out);
  }
  report(!reports[0].empty() && reports[0] == reports[1], "determinism",
         fmt("two generate/train/evaluate runs, results.json %zu bytes, %s", reports[0].size(),
             reports[0] == reports[1] ? "byte-identical" : "DIFFERENT"));
}

}  // namespace

int main() {
  criterion("gradient-oracle", gradient_oracle);
  criterion("ig-completeness", [] { ig_completeness(trained(gbig::Motif::kHouse, 1)); });
  criterion("pathwise-completeness", pathwise_completeness);
  criterion("axiom-suite", axiom_suite);
  criterion("path-enumeration", path_enumeration);
  criterion("entropy-selection", entropy_selection);
  std::vector<TableRow> table;
  criterion("directional-jaccard", [&] {
    table = table_one({{gbig::Motif::kHouse, 1},
                       {gbig::Motif::kHouse, -1},
                       {gbig::Motif::kCircle, 1},
                       {gbig::Motif::kCircle, -1}});
    directional_jaccard(table);
  });
  criterion("directional-fidelity", [&] {
    if (table.size() != 4) throw std::runtime_error("synthetic table unavailable");
    directional_fidelity(table);
  });
  criterion("metric-examples", metric_examples);
  criterion("determinism", determinism);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
