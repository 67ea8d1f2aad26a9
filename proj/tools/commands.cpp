// Copyright 2026 The TIFA-GCL Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <string>

#include "app.hpp"
#include "tifa/common.hpp"
#include "tifa/distance.hpp"
#include "tifa/rng.hpp"

namespace tifa::app {
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void write_config(const RunConfig& c, const fs::path& dir) {
  fs::create_directories(dir);
  open_out(dir / "config.json") << echo_config(c).dump(2) << '\n';
}

json nan_to_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

std::string_view role_name(SplitRole r) {
  switch (r) {
    case SplitRole::kTrain: return "train";
    case SplitRole::kVal: return "val";
    case SplitRole::kTest: return "test";
    case SplitRole::kNone: break;
  }
  return "none";
}

/// Test nodes when there are any, otherwise every labeled node.
std::vector<NodeId> report_subset(const Graph& g) {
  if (!g.split().test.empty()) return g.split().test;
  std::vector<NodeId> all;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.is_labeled(v)) all.push_back(v);
  }
  return all;
}

json bins_json(const std::vector<BinAccuracy>& bins) {
  json a = json::array();
  for (std::size_t b = 0; b < bins.size(); ++b) {
    a.push_back({{"bin", b}, {"count", bins[b].count}, {"correct", bins[b].correct},
                 {"accuracy", nan_to_null(bins[b].accuracy())}});
  }
  return a;
}

void write_matrix(const Matrix& m, const fs::path& path) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << (j ? "\t" : "") << fmt(m(i, j));
    }
    out << '\n';
  }
}

AnalysisConfig seeded(AnalysisConfig config, std::uint64_t seed) {
  config.pairs.seed = derive_seed(seed, "pairs");
  return config;
}

}  // namespace

Graph load_input_graph(const RunConfig& c) {
  Graph g = c.dataset.empty() ? synth_sbm(c.synth, c.synth_seed) : load_graph(c.dataset);
  return c.normalize_features ? row_normalize_features(g) : g;
}

ModeSummary summarize(TrainMode mode, std::span<const double> accs) {
  ModeSummary s{mode, accs.size(), 0.0, 0.0};
  if (accs.empty()) return s;
  // Shifted by the first value so identical runs give an exact mean and zero spread.
  const double shift = accs.front();
  double sum = 0.0, ss = 0.0;
  for (double a : accs) sum += a - shift;
  const double offset = sum / static_cast<double>(accs.size());
  for (double a : accs) ss += (a - shift - offset) * (a - shift - offset);
  s.mean = shift + offset;
  if (accs.size() > 1) s.std = std::sqrt(ss / static_cast<double>(accs.size() - 1));
  return s;
}

void cmd_synth(const RunConfig& c) {
  const Graph g = synth_sbm(c.synth, c.synth_seed);
  write_config(c, c.out);
  save_graph(g, c.out);
}

void cmd_analyze(const RunConfig& c) {
  const Graph g = load_input_graph(c);
  const std::uint64_t seed = c.seeds.front();
  const Analysis a = analyze(g, seeded(c.analysis, seed), PairPolicy::kTifa);
  write_config(c, c.out);

  {
    auto out = open_out(c.out / "tig.tsv");
    out << "node\tlabel\trole\tintensity\tclarity\ttig\trank\tweight\n";
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      const auto i = static_cast<std::size_t>(v);
      out << v << '\t' << g.label(v) << '\t' << role_name(g.role(v)) << '\t'
          << fmt(a.tig.intensity[i]) << '\t' << fmt(a.tig.clarity[i]) << '\t' << fmt(a.tig.tig[i])
          << '\t' << a.tig.rank[i] << '\t' << fmt(a.tig.weight[i]) << '\n';
    }
  }

  // Grid and bin reports need predictions; a plain GCN supplies them.
  TrainConfig tc = c.train;
  tc.mode = TrainMode::kBaseline;
  tc.seed = seed;
  const TrainResult model = train(g, a, c.perturb, tc);

  const GridReport grid = grid_report(a.tig, model.predictions, g.labels(), c.grid);
  {
    auto out = open_out(c.out / "grid.csv");
    out << "intensity_bin,clarity_bin,count,errors,error_rate\n";
    for (const GridCell& cell : grid.cells) {
      out << cell.intensity_bin << ',' << cell.clarity_bin << ',' << cell.count << ','
          << cell.errors << ',' << fmt(cell.error_rate()) << '\n';
    }
  }

  const std::vector<NodeId> subset = report_subset(g);
  const auto bins = tig_bin_accuracy(a.tig, model.predictions, g.labels(), c.bins, subset);
  {
    auto out = open_out(c.out / "bins.csv");
    out << "bin,count,correct,accuracy\n";
    for (std::size_t b = 0; b < bins.size(); ++b) {
      out << b << ',' << bins[b].count << ',' << bins[b].correct << ','
          << fmt(bins[b].accuracy()) << '\n';
    }
  }

  open_out(c.out / "pairs.json") << json{{"post_end", a.pairs.post_end},
                                         {"negt_beg", a.pairs.negt_beg},
                                         {"negt_end", a.pairs.negt_end},
                                         {"positives", a.pairs.positives},
                                         {"negatives", a.pairs.negatives}}
                                        .dump()
                                 << '\n';

  const DistanceInputs in = prepare_distance_inputs(g, a.lp.z_star);
  {
    auto out = open_out(c.out / "intra_ratio.csv");
    out << "scope,bin,pairs,same_class,ratio\n";
    for (auto [scope, name] : {std::pair{PairScope::kNeighbors, "neighbors"},
                               std::pair{PairScope::kAll, "all"}}) {
      const auto ratio = intra_class_ratio_bins(g, in, c.bins, scope);
      for (std::size_t b = 0; b < ratio.size(); ++b) {
        out << name << ',' << b << ',' << ratio[b].pairs << ',' << ratio[b].same_class << ','
            << fmt(ratio[b].ratio()) << '\n';
      }
    }
  }

  if (c.dump_lp) {
    write_matrix(a.lp.z, c.out / "lp_z.tsv");
    write_matrix(a.lp.z_star, c.out / "lp_z_star.tsv");
  }

  open_out(c.out / "analysis.json") << json{{"nodes", g.num_nodes()},
                                            {"edges", g.num_edges()},
                                            {"lp_iterations", a.lp.iterations_used},
                                            {"warnings", a.lp.warnings},
                                            {"baseline_best_epoch", model.best_epoch},
                                            {"baseline_test_acc", nan_to_null(model.test_acc)}}
                                           .dump(2)
                                    << '\n';
}

void cmd_train(const RunConfig& c) {
  const Graph g = load_input_graph(c);
  write_config(c, c.out);
  const std::vector<NodeId> subset = report_subset(g);
  std::exception_ptr first_error;
  json summary_rows = json::array();
  auto csv = open_out(c.out / "summary.csv");
  csv << "mode,runs,mean_test_acc,std_test_acc\n";

  for (TrainMode mode : c.modes) {
    std::vector<double> accs;
    json failed = json::array();
    for (std::uint64_t seed : c.seeds) {
      const fs::path dir = c.out / std::string(to_string(mode)) / ("seed_" + std::to_string(seed));
      RunConfig run_config = c;
      run_config.modes = {mode};
      run_config.seeds = {seed};
      write_config(run_config, dir);
      try {
        TrainConfig tc = c.train;
        tc.mode = mode;
        tc.seed = seed;
        const Analysis a = analyze(g, seeded(c.analysis, seed), effective_pair_policy(tc));
        const TrainResult r = train(g, a, c.perturb, tc);

        auto metrics = open_out(dir / "metrics.jsonl");
        for (const EpochMetrics& m : r.log) {
          metrics << json{{"epoch", m.epoch},
                          {"lr", m.lr},
                          {"loss_ce", m.loss_ce},
                          {"loss_unsup_mean", m.loss_unsup_mean},
                          {"val_acc", nan_to_null(m.val_acc)},
                          {"test_acc", nan_to_null(m.test_acc)}}
                         .dump()
                  << '\n';
        }
        const auto bins = tig_bin_accuracy(a.tig, r.predictions, g.labels(), c.bins, subset);
        open_out(dir / "report.json") << json{{"mode", to_string(mode)},
                                              {"seed", seed},
                                              {"best_epoch", r.best_epoch},
                                              {"epochs_run", r.epochs_run},
                                              {"best_val_acc", nan_to_null(r.best_val_acc)},
                                              {"test_acc", nan_to_null(r.test_acc)},
                                              {"per_bin_acc", bins_json(bins)},
                                              {"config", echo_config(run_config)}}
                                             .dump(2)
                                      << '\n';
        accs.push_back(r.test_acc);
      } catch (const Error& e) {
        open_out(dir / "error.json")
            << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << '\n';
        failed.push_back(seed);
        if (!first_error) first_error = std::current_exception();
      }
    }
    const ModeSummary s = summarize(mode, accs);
    summary_rows.push_back({{"mode", to_string(mode)},
                            {"runs", s.runs},
                            {"mean_test_acc", s.mean},
                            {"std_test_acc", s.std},
                            {"test_acc", accs},
                            {"failed_seeds", failed}});
    csv << to_string(mode) << ',' << s.runs << ',' << fmt(s.mean) << ',' << fmt(s.std) << '\n';
  }
  open_out(c.out / "summary.json") << json{{"modes", summary_rows}}.dump(2) << '\n';
  if (first_error) std::rethrow_exception(first_error);
}

void cmd_sample(const RunConfig& c) {
  if (!c.saint && !c.perturb_dump) throw ConfigError("sample needs --saint and/or --perturb");
  const Graph g = load_input_graph(c);
  const std::uint64_t seed = c.seeds.front();
  const Analysis a = analyze(g, c.analysis, PairPolicy::kNone);
  write_config(c, c.out);

  if (c.saint) {
    const DistanceInputs in = prepare_distance_inputs(g, a.lp.z_star);
    const TransitionTable table = transition_probs(g, in, c.sampler.sharpen_t, c.sampler.epsilon);
    auto out = open_out(c.out / "subgraphs.jsonl");
    for (int s = 0; s < c.n_subgraphs; ++s) {
      SamplerConfig sc = c.sampler;
      sc.seed = derive_seed(seed, "sampler", static_cast<std::uint64_t>(s));
      const SampledSubgraph sub = sample_subgraph(g, table, sc);
      out << json{{"index", s},
                  {"roots", sub.roots},
                  {"nodes", sub.nodes},
                  {"num_nodes", sub.nodes.size()},
                  {"num_edges", sub.induced.graph.num_edges()},
                  {"intra_class_edge_fraction",
                   nan_to_null(intra_class_edge_fraction(sub.induced.graph))}}
                 .dump()
          << '\n';
    }
  }

  if (c.perturb_dump) {
    TrainConfig tc = c.train;
    const bool uniform = tc.perturb_weighting == PerturbWeighting::kUniform;
    const std::vector<double> weights =
        uniform ? std::vector<double>(static_cast<std::size_t>(g.num_nodes()), 1.0) : a.tig.weight;
    PerturbConfig pc = c.perturb;
    pc.seed = derive_seed(seed, "perturb");
    const PerturbedGraph p = perturb(g, weights, pc);
    auto edges = [&](const std::vector<Edge>& list, const fs::path& path) {
      auto out = open_out(path);
      out << "u\tv\n";
      for (const Edge& e : list) out << e.u << '\t' << e.v << '\n';
    };
    edges(p.added, c.out / "added.tsv");
    edges(p.removed, c.out / "removed.tsv");
    {
      auto out = open_out(c.out / "touched.tsv");
      out << "order\tnode\n";
      for (std::size_t i = 0; i < p.touched.size(); ++i) out << i << '\t' << p.touched[i] << '\n';
    }
    open_out(c.out / "perturb.json") << json{{"gap", p.gap},
                                             {"sigma", p.sigma},
                                             {"exhausted", p.exhausted},
                                             {"touched", p.touched.size()},
                                             {"added", p.added.size()},
                                             {"removed", p.removed.size()},
                                             {"weighting", uniform ? "uniform" : "tig"}}
                                            .dump(2)
                                     << '\n';
  }
}

void run(const RunConfig& c) {
  validate(c);
  if (c.subcommand == "synth") return cmd_synth(c);
  if (c.subcommand == "analyze") return cmd_analyze(c);
  if (c.subcommand == "train") return cmd_train(c);
  if (c.subcommand == "sample") return cmd_sample(c);
  throw ConfigError("unknown subcommand '" + c.subcommand + "'");
}

}  // namespace tifa::app
