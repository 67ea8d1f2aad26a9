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

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "app.hpp"
#include "tifa/common.hpp"

namespace {

using tifa::app::json;

int report_failure(const char* kind, const std::string& message, const std::filesystem::path& out) {
  const json record = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << record.dump() << '\n';
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (!ec) {
    std::ofstream file(out / "error.json");
    if (file) file << record.dump(2) << '\n';
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-aware graph contrastive learning for node classification"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  std::map<std::string, std::string> text;
  std::vector<std::pair<const tifa::app::ConfigField*, CLI::Option*>> bound;
  for (const auto& field : tifa::app::config_fields()) {
    if (field.flag.empty()) continue;
    CLI::Option* opt = field.is_switch ? app.add_flag(field.flag, field.help)
                                       : app.add_option(field.flag, text[field.key], field.help);
    bound.emplace_back(&field, opt);
  }
  double sharpen_t = 0.0;
  CLI::Option* sharpen = app.add_option(
      "--sharpen-t", sharpen_t, "sharpening for both perturbation selection and random walks");

  for (const char* name : {"synth", "analyze", "train", "sample"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("synth")->description("generate an SBM dataset directory");
  app.get_subcommand("analyze")->description("LP, TIG, grid/bin reports and pair sets");
  app.get_subcommand("train")->description("train every mode x seed and summarize");
  app.get_subcommand("sample")->description("dump random-walk subgraphs or a perturbation");

  CLI11_PARSE(app, argc, argv);

  tifa::app::RunConfig config;
  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) tifa::app::apply_config_file(config, config_path);
    for (const auto& [field, opt] : bound) {
      if (opt->count() == 0) continue;
      const std::string& value = text[field->key];
      field->set(config, field->is_switch  ? json(true)
                         : field->raw_text ? json(value)
                                           : tifa::app::flag_value(value));
    }
    if (sharpen->count() > 0) {
      config.perturb.sharpen_t = sharpen_t;
      config.sampler.sharpen_t = sharpen_t;
    }
    tifa::app::run(config);
  } catch (const tifa::Error& e) {
    return report_failure(e.kind(), e.what(), config.out);
  } catch (const std::exception& e) {
    return report_failure("internal_error", e.what(), config.out);
  }
  return 0;
}
