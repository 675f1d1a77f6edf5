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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How rate fields are read: "1 MHz" is 2 pi rad/us under DividedBy2Pi and
/// 1 rad/us under Angular.
enum class FrequencyConvention { DividedBy2Pi, Angular };

std::string convention_name(FrequencyConvention c);
FrequencyConvention parse_convention(const std::string& s);

enum class QuantityKind {
  Rate,   // needs kHz / MHz / GHz, resolved to rad/us
  Time,   // needs ns / us / µs / ms, resolved to us
  Ratio,  // plain number, no suffix
  Count,  // non-negative integer, no suffix
};

/// Resolves one value. Throws ConfigError on a missing or wrong suffix.
double parse_quantity(const std::string& text, QuantityKind kind, FrequencyConvention conv);

/// Splits "12.5 MHz" into (12.5, "MHz"); the unit may be empty.
std::pair<double, std::string> split_quantity(const std::string& text);

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;  // raw text, units included
};

struct ScenarioConfig {
  std::string scenario;
  std::optional<FrequencyConvention> convention;
  std::map<std::string, std::string> parameters;  // raw text
  std::vector<SweepAxis> sweep;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  std::optional<std::size_t> workers;
};

/// INI layout:
///   [run]         scenario, frequency_convention, output_dir, seed, workers
///   [parameters]  key = value unit
///   [sweep:KEY]   values = a, b, c   or   scale = log|linear, start, stop, points
/// Structural problems throw ConfigError; per-key checks happen in the scenarios.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace zeno::cli
