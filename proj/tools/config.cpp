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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "app.hpp"
#include "tifa/common.hpp"

namespace tifa::app {
namespace {

constexpr const char* kPublished = "published";
constexpr const char* kImpl = "implementation";

template <class T>
T expect(const json& j, const std::string& key) {
  if constexpr (std::is_same_v<T, bool>) {
    if (j.is_boolean()) return j.get<bool>();
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  } else if constexpr (std::is_integral_v<T>) {
    if (j.is_number_integer()) {
      const auto v = j.get<long long>();
      if (v >= std::numeric_limits<T>::min() && v <= std::numeric_limits<T>::max()) {
        return static_cast<T>(v);
      }
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (j.is_number()) return j.get<T>();
  } else {
    if (j.is_string()) return j.get<T>();
  }
  throw ConfigError("config key '" + key + "': unexpected value " + j.dump());
}

template <class T, class Access>
ConfigField scalar(std::string key, std::string flag, const char* source, std::string help,
                   Access access) {
  ConfigField f;
  f.key = key;
  f.flag = std::move(flag);
  f.is_switch = std::is_same_v<T, bool>;
  f.source = source;
  f.help = std::move(help);
  f.get = [access](const RunConfig& c) { return json(access(c)); };
  f.set = [access, key](RunConfig& c, const json& j) { access(c) = expect<T>(j, key); };
  return f;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

template <class T>
T parse_number(std::string_view text, const std::string& key) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config key '" + key + "': cannot parse '" + std::string(text) + "'");
  }
  return value;
}

json synth_to_json(const SbmParams& p) {
  return {{"classes", p.classes},           {"per_class", p.per_class},
          {"p_in", p.p_in},                 {"p_out", p.p_out},
          {"feature_noise", p.feature_noise}, {"labels_per_class", p.labels_per_class},
          {"val_per_class", p.val_per_class}};
}

void set_synth(RunConfig& c, const json& j) {
  SbmParams p = c.synth;
  if (j.is_string()) {
    const auto parts = split_commas(j.get_ref<const std::string&>());
    if (parts.size() != 6) {
      throw ConfigError("--synth expects k,per_class,p_in,p_out,noise,labels_per_class");
    }
    p.classes = parse_number<int>(parts[0], "synth");
    p.per_class = parse_number<int>(parts[1], "synth");
    p.p_in = parse_number<double>(parts[2], "synth");
    p.p_out = parse_number<double>(parts[3], "synth");
    p.feature_noise = parse_number<double>(parts[4], "synth");
    p.labels_per_class = parse_number<int>(parts[5], "synth");
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "classes") p.classes = expect<int>(v, "synth.classes");
      else if (k == "per_class") p.per_class = expect<int>(v, "synth.per_class");
      else if (k == "p_in") p.p_in = expect<double>(v, "synth.p_in");
      else if (k == "p_out") p.p_out = expect<double>(v, "synth.p_out");
      else if (k == "feature_noise") p.feature_noise = expect<double>(v, "synth.feature_noise");
      else if (k == "labels_per_class") p.labels_per_class = expect<int>(v, "synth.labels_per_class");
      else if (k == "val_per_class") p.val_per_class = expect<int>(v, "synth.val_per_class");
      else throw ConfigError("unknown key 'synth." + k + "'");
    }
  } else {
    throw ConfigError("config key 'synth': unexpected value " + j.dump());
  }
  c.synth = p;
}

void set_seeds(RunConfig& c, const json& j) {
  std::vector<std::uint64_t> seeds;
  if (j.is_string()) {
    for (auto part : split_commas(j.get_ref<const std::string&>())) {
      seeds.push_back(parse_number<std::uint64_t>(part, "seeds"));
    }
  } else if (j.is_array()) {
    for (const auto& v : j) seeds.push_back(expect<std::uint64_t>(v, "seeds"));
  } else {
    seeds.push_back(expect<std::uint64_t>(j, "seeds"));
  }
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  c.seeds = std::move(seeds);
}

void set_modes(RunConfig& c, const json& j) {
  std::vector<TrainMode> modes;
  if (j.is_string()) {
    for (auto part : split_commas(j.get_ref<const std::string&>())) {
      modes.push_back(parse_train_mode(part));
    }
  } else if (j.is_array()) {
    for (const auto& v : j) modes.push_back(parse_train_mode(expect<std::string>(v, "mode")));
  } else {
    throw ConfigError("config key 'mode': unexpected value " + j.dump());
  }
  if (modes.empty()) throw ConfigError("mode must not be empty");
  c.modes = std::move(modes);
}

void set_pairs(RunConfig& c, const json& j) {
  PairWindow w;
  if (j.is_string()) {
    const auto parts = split_commas(j.get_ref<const std::string&>());
    if (parts.empty() || parts.size() > 3) {
      throw ConfigError("--pairs expects post_end[,negt_beg[,negt_end]]");
    }
    w.post_end = parse_number<int>(parts[0], "pairs");
    if (parts.size() > 1) w.negt_beg = parse_number<int>(parts[1], "pairs");
    if (parts.size() > 2) w.negt_end = parse_number<int>(parts[2], "pairs");
  } else if (j.is_object()) {
    w.post_end = expect<int>(j.value("post_end", json(w.post_end)), "pairs.post_end");
    w.negt_beg = expect<int>(j.value("negt_beg", json(w.negt_beg)), "pairs.negt_beg");
    w.negt_end = expect<int>(j.value("negt_end", json(w.negt_end)), "pairs.negt_end");
  } else {
    w.post_end = expect<int>(j, "pairs");
  }
  c.analysis.pairs.window = w;
}

std::optional<PerturbWeighting> parse_weighting(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "tig") return PerturbWeighting::kTig;
  if (s == "uniform") return PerturbWeighting::kUniform;
  throw ConfigError("perturb_weighting must be auto, tig or uniform");
}

std::optional<PairPolicy> parse_policy(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "tifa") return PairPolicy::kTifa;
  if (s == "uniform") return PairPolicy::kUniform;
  throw ConfigError("pair_policy must be auto, tifa or uniform");
}

std::vector<ConfigField> build_fields() {
  std::vector<ConfigField> f;
  auto custom = [&](std::string key, std::string flag, const char* source, std::string help,
                    std::function<json(const RunConfig&)> get,
                    std::function<void(RunConfig&, const json&)> set) {
    ConfigField field;
    field.key = std::move(key);
    field.flag = std::move(flag);
    field.source = source;
    field.help = std::move(help);
    field.get = std::move(get);
    field.set = std::move(set);
    f.push_back(std::move(field));
  };

  custom("dataset", "--dataset", kImpl, "dataset directory (meta.json, edges.tsv, ...)",
         [](const RunConfig& c) { return json(c.dataset.string()); },
         [](RunConfig& c, const json& j) { c.dataset = expect<std::string>(j, "dataset"); });
  f.back().raw_text = true;
  custom("synth", "--synth", kImpl, "SBM graph: k,per_class,p_in,p_out,noise,labels_per_class",
         [](const RunConfig& c) { return synth_to_json(c.synth); }, set_synth);
  f.push_back(scalar<std::uint64_t>("synth_seed", "--synth-seed", kImpl, "SBM generator seed",
                                    [](auto& c) -> auto& { return c.synth_seed; }));
  f.push_back(scalar<bool>("normalize_features", "--normalize-features", kImpl,
                           "row-normalize features before use",
                           [](auto& c) -> auto& { return c.normalize_features; }));
  custom("mode", "--mode", kImpl, "comma list of baseline|uniform-gcl|tifa-gcl",
         [](const RunConfig& c) {
           json a = json::array();
           for (TrainMode m : c.modes) a.push_back(std::string(to_string(m)));
           return a;
         },
         set_modes);
  custom("seeds", "--seeds", kImpl, "comma list of root seeds",
         [](const RunConfig& c) { return json(c.seeds); }, set_seeds);
  custom("out", "--out", kImpl, "output directory",
         [](const RunConfig& c) { return json(c.out.string()); },
         [](RunConfig& c, const json& j) { c.out = expect<std::string>(j, "out"); });
  f.back().raw_text = true;

  // Label propagation and TIG.
  f.push_back(scalar<double>("alpha", "--alpha", kPublished, "LP restart probability",
                             [](auto& c) -> auto& { return c.analysis.lp.alpha; }));
  f.push_back(scalar<int>("lp_max_iter", "", kImpl, "LP iteration cap",
                          [](auto& c) -> auto& { return c.analysis.lp.max_iter; }));
  f.push_back(scalar<double>("lp_tol", "", kImpl, "LP convergence tolerance",
                             [](auto& c) -> auto& { return c.analysis.lp.tol; }));
  f.push_back(scalar<double>("lambda", "--lambda", kPublished, "clarity weight in TIG",
                             [](auto& c) -> auto& { return c.analysis.tig.lambda; }));
  f.push_back(scalar<double>("w_min", "--w-min", kPublished, "smallest contrastive weight",
                             [](auto& c) -> auto& { return c.analysis.tig.w_min; }));
  f.push_back(scalar<double>("w_max", "--w-max", kPublished, "largest contrastive weight",
                             [](auto& c) -> auto& { return c.analysis.tig.w_max; }));

  // Relative distance and pair windows.
  f.push_back(scalar<double>("lambda1", "--lambda1", kPublished, "hop-distance weight",
                             [](auto& c) -> auto& { return c.analysis.distance.lambda1; }));
  f.push_back(scalar<double>("lambda2", "--lambda2", kPublished, "feature-distance weight",
                             [](auto& c) -> auto& { return c.analysis.distance.lambda2; }));
  f.push_back(scalar<int>("hop_cap", "--hop-cap", kImpl, "BFS hop cap for the hop distance",
                          [](auto& c) -> auto& { return c.analysis.distance.hop_cap; }));
  custom("pairs", "--pairs", kImpl, "pair window post_end[,negt_beg[,negt_end]] (-1: derived)",
         [](const RunConfig& c) {
           const PairWindow& w = c.analysis.pairs.window;
           return json{{"post_end", w.post_end}, {"negt_beg", w.negt_beg}, {"negt_end", w.negt_end}};
         },
         set_pairs);
  f.push_back(scalar<NodeId>("full_candidate_limit", "", kImpl,
                             "largest graph ranking all candidates per anchor",
                             [](auto& c) -> auto& { return c.analysis.pairs.full_candidate_limit; }));
  f.push_back(scalar<std::uint64_t>("pool_size", "", kImpl, "candidate pool on large graphs",
                                    [](auto& c) -> auto& { return c.analysis.pairs.pool_size; }));

  // Perturbation.
  f.push_back(scalar<double>("perturb_sharpen_t", "", kImpl, "perturbation selection sharpening",
                             [](auto& c) -> auto& { return c.perturb.sharpen_t; }));
  custom("sigma", "--sigma", kImpl, "Frobenius-gap threshold (null: derived from |E|)",
         [](const RunConfig& c) { return c.perturb.sigma ? json(*c.perturb.sigma) : json(nullptr); },
         [](RunConfig& c, const json& j) {
           if (j.is_null()) c.perturb.sigma.reset();
           else c.perturb.sigma = expect<double>(j, "sigma");
         });
  f.push_back(scalar<int>("n_add", "--n-add", kImpl, "edges added per selected node",
                          [](auto& c) -> auto& { return c.perturb.n_add; }));
  f.push_back(scalar<int>("n_rmv", "--n-rmv", kImpl, "edges removed per selected node",
                          [](auto& c) -> auto& { return c.perturb.n_rmv; }));
  f.push_back(scalar<double>("mask_rate", "--mask-rate", kImpl, "feature mask rate",
                             [](auto& c) -> auto& { return c.perturb.mask_rate; }));
  f.push_back(scalar<int>("decay_hops", "--decay-hops", kImpl, "probability decay hop range",
                          [](auto& c) -> auto& { return c.perturb.decay_hops; }));
  f.push_back(scalar<double>("decay_ratio", "--decay-ratio", kImpl, "probability decay ratio",
                             [](auto& c) -> auto& { return c.perturb.decay_ratio; }));

  // Subgraph sampler.
  f.push_back(scalar<double>("sampler_sharpen_t", "", kPublished, "random-walk sharpening",
                             [](auto& c) -> auto& { return c.sampler.sharpen_t; }));
  f.push_back(scalar<int>("n_roots", "--n-roots", kImpl, "random-walk roots",
                          [](auto& c) -> auto& { return c.sampler.n_roots; }));
  f.push_back(scalar<int>("walk_len", "--walk-len", kPublished, "random-walk length",
                          [](auto& c) -> auto& { return c.sampler.walk_len; }));
  f.push_back(scalar<double>("epsilon", "--epsilon", kImpl, "distance offset in walk weights",
                             [](auto& c) -> auto& { return c.sampler.epsilon; }));
  f.push_back(scalar<int>("n_subgraphs", "--n-subgraphs", kImpl, "subgraphs to sample",
                          [](auto& c) -> auto& { return c.n_subgraphs; }));

  // Training.
  f.push_back(scalar<double>("mu1", "--mu1", kPublished, "negative-pair weight",
                             [](auto& c) -> auto& { return c.train.mu1; }));
  f.push_back(scalar<double>("mu2", "--mu2", kImpl, "pair-loss weight",
                             [](auto& c) -> auto& { return c.train.mu2; }));
  f.push_back(scalar<int>("hidden_dim", "--hidden", kPublished, "GCN hidden width",
                          [](auto& c) -> auto& { return c.train.hidden_dim; }));
  f.push_back(scalar<double>("lr", "--lr", kPublished, "Adam learning rate",
                             [](auto& c) -> auto& { return c.train.lr; }));
  f.push_back(scalar<double>("dropout", "--dropout", kPublished, "dropout rate",
                             [](auto& c) -> auto& { return c.train.dropout; }));
  f.push_back(scalar<double>("weight_decay", "--weight-decay", kPublished, "L2 weight",
                             [](auto& c) -> auto& { return c.train.weight_decay; }));
  f.push_back(scalar<int>("max_epochs", "--max-epochs", kPublished, "epoch cap",
                          [](auto& c) -> auto& { return c.train.max_epochs; }));
  f.push_back(scalar<int>("min_epochs", "--min-epochs", kPublished, "epochs before early stopping",
                          [](auto& c) -> auto& { return c.train.min_epochs; }));
  f.push_back(scalar<int>("patience", "--patience", kPublished, "early-stopping patience",
                          [](auto& c) -> auto& { return c.train.patience; }));
  f.push_back(scalar<int>("lr_decay_start", "", kPublished, "last epoch before lr decay",
                          [](auto& c) -> auto& { return c.train.lr_decay_start; }));
  f.push_back(scalar<double>("lr_decay", "", kPublished, "per-epoch lr factor",
                             [](auto& c) -> auto& { return c.train.lr_decay; }));
  custom("perturb_weighting", "--perturb-weighting", kImpl, "auto|tig|uniform",
         [](const RunConfig& c) {
           return c.train.perturb_weighting ? json(to_string(*c.train.perturb_weighting))
                                            : json("auto");
         },
         [](RunConfig& c, const json& j) {
           c.train.perturb_weighting = parse_weighting(expect<std::string>(j, "perturb_weighting"));
         });
  custom("pair_policy", "--pair-policy", kImpl, "auto|tifa|uniform",
         [](const RunConfig& c) {
           return c.train.pair_policy ? json(to_string(*c.train.pair_policy)) : json("auto");
         },
         [](RunConfig& c, const json& j) {
           c.train.pair_policy = parse_policy(expect<std::string>(j, "pair_policy"));
         });
  f.push_back(scalar<bool>("recompute_analysis", "--recompute-analysis", kImpl,
                           "rebuild LP/TIG/pairs on each perturbed graph",
                           [](auto& c) -> auto& { return c.train.recompute_analysis_per_epoch; }));

  // Outputs.
  f.push_back(scalar<bool>("dump_lp", "--dump-lp", kImpl, "write Z and Z* matrices",
                           [](auto& c) -> auto& { return c.dump_lp; }));
  f.push_back(scalar<int>("grid", "--grid", kImpl, "intensity x clarity grid size",
                          [](auto& c) -> auto& { return c.grid; }));
  f.push_back(scalar<int>("bins", "--bins", kImpl, "TIG accuracy bins",
                          [](auto& c) -> auto& { return c.bins; }));
  f.push_back(scalar<bool>("saint", "--saint", kImpl, "sample: dump random-walk subgraphs",
                           [](auto& c) -> auto& { return c.saint; }));
  f.push_back(scalar<bool>("perturb", "--perturb", kImpl, "sample: dump one perturbation",
                           [](auto& c) -> auto& { return c.perturb_dump; }));
  return f;
}

}  // namespace

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = build_fields();
  return fields;
}

json echo_config(const RunConfig& config) {
  json values = json::object();
  json provenance = json::object();
  for (const ConfigField& f : config_fields()) {
    values[f.key] = f.get(config);
    provenance[f.key] = f.source;
  }
  return {{"subcommand", config.subcommand}, {"config", values}, {"provenance", provenance}};
}

void apply_json(RunConfig& config, const json& object) {
  if (!object.is_object()) throw ConfigError("config must be a JSON object");
  const json& flat = object.contains("config") ? object.at("config") : object;
  if (!flat.is_object()) throw ConfigError("config member must be a JSON object");
  for (const auto& [key, value] : flat.items()) {
    const auto& fields = config_fields();
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const ConfigField& f) { return f.key == key; });
    if (it == fields.end()) throw ConfigError("unknown config key '" + key + "'");
    it->set(config, value);
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  apply_json(config, j);
}

json flag_value(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return json(text);
  return j;
}

void validate(const RunConfig& c) {
  tifa::validate(c.analysis.lp);
  tifa::validate(c.perturb);
  tifa::validate(c.sampler);
  tifa::validate(c.train);
  const TigConfig& tig = c.analysis.tig;
  if (!(tig.lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(tig.w_min <= tig.w_max)) throw ConfigError("w_min must not exceed w_max");
  const DistanceConfig& d = c.analysis.distance;
  if (!(d.lambda1 >= 0.0 && d.lambda2 >= 0.0)) throw ConfigError("lambda1 and lambda2 must be >= 0");
  if (d.hop_cap < 1) throw ConfigError("hop_cap must be >= 1");
  if (c.analysis.pairs.window.post_end < 0) throw ConfigError("pairs post_end must be >= 0");
  if (c.grid < 1 || c.bins < 1) throw ConfigError("grid and bins must be >= 1");
  if (c.n_subgraphs < 1) throw ConfigError("n_subgraphs must be >= 1");
  if (c.dataset.empty()) {
    const SbmParams& s = c.synth;
    if (s.classes < 1 || s.per_class < 1) throw ConfigError("synth needs classes, per_class >= 1");
    if (!(s.p_in >= 0 && s.p_in <= 1 && s.p_out >= 0 && s.p_out <= 1)) {
      throw ConfigError("synth probabilities must lie in [0, 1]");
    }
    if (!(s.feature_noise >= 0)) throw ConfigError("synth noise must be >= 0");
    if (s.labels_per_class < 1 || s.labels_per_class > s.per_class) {
      throw ConfigError("synth labels_per_class must lie in [1, per_class]");
    }
  }
}

}  // namespace tifa::app
