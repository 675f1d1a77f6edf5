// Copyright 2026 The zenogate Authors
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

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "zeno/cli/config.hpp"
#include "zeno/cli/output.hpp"
#include "zeno/cli/scenarios.hpp"
#include "zeno/parallel.hpp"

namespace {

using namespace zeno::cli;

int do_run(const std::string& config, const std::string& out, std::optional<std::size_t> workers, bool hints) {
  ScenarioConfig cfg = load_config(config);
  const std::size_t w = zeno::resolve_workers(workers ? workers : cfg.workers);
  const std::string dir = out.empty() ? cfg.output_dir : out;
  const auto tables = run_scenario(cfg, w);
  const auto files = write_outputs(cfg, tables, dir, hints, w);
  for (const auto& f : files.csv) std::cout << f.string() << "\n";
  std::cout << files.json.string() << "\n";
  return 0;
}

int do_validate(const std::string& config) {
  ScenarioConfig cfg;
  try {
    cfg = load_config(config);
  } catch (const ConfigError& e) {
    std::cout << "violation: " << e.what() << "\nstatus: invalid\n";
    return 1;
  }
  const auto rep = validate_config(cfg);
  std::cout << "scenario: " << cfg.scenario << "\n";
  for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
  if (!rep.ok()) {
    std::cout << "status: invalid\n";
    return 1;
  }
  std::cout << "cells: " << rep.cells << "\n";
  if (rep.max_full_dim > 0)
    std::cout << "full dimension: " << rep.max_full_dim << "\n"
              << "density matrix memory: " << rep.memory_bytes << " bytes (D^2 x 16)\n";
  for (const auto& [label, n] : rep.regimes) std::cout << "regime: " << label << " (" << n << " cells)\n";
  std::cout << "status: ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zenogate scenario runner"};
  app.require_subcommand(1);

  std::string config, out;
  std::optional<std::size_t> workers;
  bool hints = false;
  auto* run = app.add_subcommand("run", "run a scenario and write CSV + JSON");
  run->add_option("--config", config, "scenario INI file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory (overrides output_dir)");
  run->add_option("--workers", workers, "worker threads (default: $ZENO_WORKERS, else 1)")->check(CLI::PositiveNumber);
  run->add_flag("--gnuplot-hints", hints, "add suggested gnuplot commands as comments");

  std::string vconfig;
  auto* val = app.add_subcommand("validate", "check a config without running it");
  val->add_option("--config", vconfig, "scenario INI file")->required()->check(CLI::ExistingFile);

  auto* list = app.add_subcommand("list-scenarios", "print the scenario catalog");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return do_run(config, out, workers, hints);
    if (*val) return do_validate(vconfig);
    if (*list) {
      for (const auto& s : scenario_catalog()) {
        std::cout << s.name << "  " << s.description << "\n";
        for (const auto& k : s.keys)
          std::cout << "    " << k.name << (k.fallback.empty() ? "" : " [default " + k.fallback + "]")
                    << (k.doc.empty() ? "" : "  " + k.doc) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
