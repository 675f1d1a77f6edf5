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

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zeno/cli/config.hpp"

namespace zeno::cli {

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

/// One output panel; rows are rectangular.
struct Table {
  std::string panel;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
};

struct KeySpec {
  std::string name;
  QuantityKind kind;
  std::string doc;
  std::string fallback;  // empty: required
};

/// Resolved parameters: rates in rad/us, times in us.
class Params {
 public:
  double get(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  bool flag(const std::string& key) const { return get(key) != 0.0; }
  void set(const std::string& key, double v) { values_[key] = v; }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct CellContext {
  std::uint64_t seed = 0;
  std::size_t index = 0;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<KeySpec> keys;
  std::function<std::vector<Table>(const Params&, const CellContext&)> run;
  /// Full qudit x cavity dimension for the memory estimate; 0 when no master equation on the cavity.
  std::function<double(const Params&)> full_dim;
  /// Regime label of one cell (see classify_regime); unset when not meaningful.
  std::function<std::string(const Params&)> regime;
};

const std::vector<Scenario>& scenario_catalog();
/// Throws ConfigError for names not in the catalog.
const Scenario& find_scenario(const std::string& name);

struct ResolvedAxis {
  std::string key;
  std::vector<double> values;
  std::vector<std::string> raw;
};

struct ResolvedRun {
  const Scenario* scenario = nullptr;
  FrequencyConvention convention = FrequencyConvention::DividedBy2Pi;
  Params base;  // non-swept keys
  std::vector<ResolvedAxis> axes;
  std::size_t cells() const;
  Params cell(std::size_t index) const;  // first axis varies slowest
};

/// Every schema, unit and sweep problem; empty when the config can run.
std::vector<std::string> config_violations(const ScenarioConfig& cfg);
/// Throws ConfigError carrying the first violation.
ResolvedRun resolve(const ScenarioConfig& cfg);

/// Runs every sweep cell (on `workers` threads) and merges panels in cell order.
/// Swept keys are prepended as columns.
std::vector<Table> run_scenario(const ScenarioConfig& cfg, std::size_t workers = 1);

/// Thresholds on kappa / Omega and Delta chi^2 / (kappa Omega).
std::string classify_regime(double kappa, double omega, double delta_chi);

struct ValidationReport {
  std::vector<std::string> violations;
  std::size_t cells = 0;
  double max_full_dim = 0;
  double memory_bytes = 0;                // D^2 x 16 for the largest cell
  std::map<std::string, std::size_t> regimes;  // label -> number of cells
  bool ok() const { return violations.empty(); }
};
ValidationReport validate_config(const ScenarioConfig& cfg);

}  // namespace zeno::cli
