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

#include "zeno/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace zeno::cli {

namespace pt = boost::property_tree;

std::string convention_name(FrequencyConvention c) {
  return c == FrequencyConvention::Angular ? "angular" : "divided_by_2pi";
}

FrequencyConvention parse_convention(const std::string& s) {
  if (s == "angular") return FrequencyConvention::Angular;
  if (s == "divided_by_2pi") return FrequencyConvention::DividedBy2Pi;
  throw ConfigError("frequency_convention must be 'divided_by_2pi' or 'angular', got '" + s + "'");
}

std::pair<double, std::string> split_quantity(const std::string& text) {
  const std::string t = boost::algorithm::trim_copy(text);
  if (t.empty()) throw ConfigError("empty value");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + t + "'");
  }
  return {v, boost::algorithm::trim_copy(t.substr(used))};
}

double parse_quantity(const std::string& text, QuantityKind kind, FrequencyConvention conv) {
  auto [v, unit] = split_quantity(text);
  if (!std::isfinite(v)) throw ConfigError("non-finite value '" + text + "'");
  switch (kind) {
    case QuantityKind::Rate: {
      double scale = 0;
      if (unit == "kHz") scale = 1e-3;
      else if (unit == "MHz") scale = 1.0;
      else if (unit == "GHz") scale = 1e3;
      else if (unit.empty()) throw ConfigError("missing unit suffix (kHz, MHz or GHz) in '" + text + "'");
      else throw ConfigError("unknown rate unit '" + unit + "' in '" + text + "'");
      return v * scale * (conv == FrequencyConvention::DividedBy2Pi ? 2 * std::numbers::pi : 1.0);
    }
    case QuantityKind::Time:
      if (unit == "ns") return v * 1e-3;
      if (unit == "us" || unit == "µs" || unit == "μs") return v;
      if (unit == "ms") return v * 1e3;
      if (unit.empty()) throw ConfigError("missing unit suffix (ns, us or ms) in '" + text + "'");
      throw ConfigError("unknown time unit '" + unit + "' in '" + text + "'");
    case QuantityKind::Ratio:
      if (!unit.empty()) throw ConfigError("unexpected unit '" + unit + "' on a dimensionless value");
      return v;
    case QuantityKind::Count:
      if (!unit.empty()) throw ConfigError("unexpected unit '" + unit + "' on a count");
      if (v < 0 || v != std::floor(v)) throw ConfigError("count must be a non-negative integer, got '" + text + "'");
      return v;
  }
  return v;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> expand_range(const std::string& key, const pt::ptree& sec) {
  const auto scale = sec.get_optional<std::string>("scale");
  const auto start = sec.get_optional<std::string>("start");
  const auto stop = sec.get_optional<std::string>("stop");
  const auto points = sec.get_optional<std::string>("points");
  if (!scale || !start || !stop || !points)
    throw ConfigError("sweep '" + key + "' needs either 'values' or scale/start/stop/points");
  auto [a, ua] = split_quantity(*start);
  auto [b, ub] = split_quantity(*stop);
  if (ua != ub) throw ConfigError("sweep '" + key + "': start and stop use different units");
  const double n = split_quantity(*points).first;
  if (n < 1 || n != std::floor(n)) throw ConfigError("sweep '" + key + "': points must be a positive integer");
  const bool log = *scale == "log";
  if (!log && *scale != "linear") throw ConfigError("sweep '" + key + "': scale must be log or linear");
  if (log && !(a > 0 && b > 0)) throw ConfigError("sweep '" + key + "': log range needs positive bounds");
  std::vector<std::string> out;
  const auto m = static_cast<int>(n);
  for (int k = 0; k < m; ++k) {
    const double f = m == 1 ? 0.0 : static_cast<double>(k) / (m - 1);
    double v = log ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
    if (k == 0) v = a;
    if (k == m - 1) v = b;
    out.push_back(ua.empty() ? fmt17(v) : fmt17(v) + " " + ua);
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  ScenarioConfig cfg;
  const auto run = tree.get_child_optional("run");
  if (!run) throw ConfigError("missing [run] section");
  for (const auto& [k, v] : *run) {
    const std::string val = boost::algorithm::trim_copy(v.data());
    if (k == "scenario") cfg.scenario = val;
    else if (k == "frequency_convention") cfg.convention = parse_convention(val);
    else if (k == "output_dir") cfg.output_dir = val;
    else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(parse_quantity(val, QuantityKind::Count, {}));
    else if (k == "workers") {
      const auto w = static_cast<std::size_t>(parse_quantity(val, QuantityKind::Count, {}));
      if (w < 1) throw ConfigError("workers must be >= 1");
      cfg.workers = w;
    } else throw ConfigError("unknown key '" + k + "' in [run]");
  }
  if (cfg.scenario.empty()) throw ConfigError("missing key 'scenario' in [run]");
  if (!cfg.convention) throw ConfigError("missing key 'frequency_convention' in [run] (no default)");

  for (const auto& [name, sec] : tree) {
    if (name == "run") continue;
    if (name == "parameters") {
      for (const auto& [k, v] : sec) cfg.parameters[k] = boost::algorithm::trim_copy(v.data());
    } else if (name.rfind("sweep:", 0) == 0) {
      SweepAxis ax;
      ax.key = name.substr(6);
      if (ax.key.empty()) throw ConfigError("sweep section without a key");
      if (const auto vals = sec.get_optional<std::string>("values")) {
        std::vector<std::string> parts;
        boost::algorithm::split(parts, *vals, boost::is_any_of(","));
        for (auto& s : parts) {
          boost::algorithm::trim(s);
          if (!s.empty()) ax.values.push_back(s);
        }
      } else {
        ax.values = expand_range(ax.key, sec);
      }
      if (ax.values.empty()) throw ConfigError("sweep '" + ax.key + "' has no values");
      cfg.sweep.push_back(std::move(ax));
    } else {
      throw ConfigError("unknown section [" + name + "]");
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace zeno::cli
