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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tifa/graph.hpp"
#include "tifa/perturb.hpp"
#include "tifa/sampler.hpp"
#include "tifa/trainer.hpp"

namespace tifa::app {

using json = nlohmann::json;

struct RunConfig {
  std::string subcommand;
  std::filesystem::path dataset;  // empty: generate from `synth`
  SbmParams synth;
  std::uint64_t synth_seed = 0;
  bool normalize_features = false;
  std::vector<std::uint64_t> seeds{0};
  std::vector<TrainMode> modes{TrainMode::kBaseline, TrainMode::kUniformGcl,
                               TrainMode::kTifaGcl};
  std::filesystem::path out = "out";

  AnalysisConfig analysis;
  PerturbConfig perturb;
  SamplerConfig sampler;
  TrainConfig train;

  bool dump_lp = false;
  int grid = 10;
  int bins = 5;
  bool saint = false;
  bool perturb_dump = false;
  int n_subgraphs = 1;
};

/// One configurable value: its config-file key, optional command-line flag,
/// and whether its default comes from the published method ("published") or
/// was chosen here ("implementation").
struct ConfigField {
  std::string key;
  std::string flag;
  bool is_switch = false;
  bool raw_text = false;  // flag text is taken verbatim, never parsed as JSON
  std::string source;
  std::string help;
  std::function<json(const RunConfig&)> get;
  std::function<void(RunConfig&, const json&)> set;
};

const std::vector<ConfigField>& config_fields();

/// {"config": {...}, "provenance": {...}} with every field present.
json echo_config(const RunConfig& config);
/// Applies a flat object, or the "config" member of an echo. Unknown keys
/// and ill-typed values raise ConfigError.
void apply_json(RunConfig& config, const json& object);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);
/// Command-line text to a value: JSON when it parses, else a plain string.
json flag_value(const std::string& text);
/// Range checks across all module configs.
void validate(const RunConfig& config);

Graph load_input_graph(const RunConfig& config);

void cmd_synth(const RunConfig& config);
void cmd_analyze(const RunConfig& config);
void cmd_train(const RunConfig& config);
void cmd_sample(const RunConfig& config);
void run(const RunConfig& config);

struct ModeSummary {
  TrainMode mode;
  std::size_t runs = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single run
};
ModeSummary summarize(TrainMode mode, std::span<const double> test_accs);

}  // namespace tifa::app
