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

#include "zeno/cli/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef ZENO_VERSION
#define ZENO_VERSION "0.0.0"
#endif

namespace zeno::cli {

const char* code_version() { return ZENO_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string column_label(const Column& c) { return c.name + " [" + c.unit + "]"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string csv_body(const Table& t) {
  std::string out;
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (k) out += ',';
    out += quote(column_label(t.columns[k]));
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string metadata_header(const ScenarioConfig& cfg) {
  const ResolvedRun rr = resolve(cfg);
  std::ostringstream s;
  s << "# zenogate " << code_version() << "\n";
  s << "# scenario = " << cfg.scenario << "\n";
  s << "# frequency_convention = " << convention_name(rr.convention) << "\n";
  s << "# seed = " << cfg.seed << "\n";
  s << "# units: rates in rad/us, times in us\n";
  for (const auto& [k, v] : rr.base.values()) s << "# param " << k << " = " << format_number(v) << "\n";
  for (const auto& ax : rr.axes) {
    s << "# sweep " << ax.key << " =";
    for (double v : ax.values) s << " " << format_number(v);
    s << "\n";
  }
  return s.str();
}

std::string gnuplot_hints(const Table& t, const std::string& file_name) {
  std::ostringstream s;
  s << "# gnuplot: set datafile separator ','\n";
  for (std::size_t k = 1; k < t.columns.size(); ++k)
    s << "# gnuplot: plot '" << file_name << "' every ::1 using 1:" << k + 1 << " with lines title '"
      << t.columns[k].name << "'\n";
  return s.str();
}

WrittenFiles write_outputs(const ScenarioConfig& cfg, const std::vector<Table>& tables,
                           const std::filesystem::path& out_dir, bool with_gnuplot_hints, std::size_t workers) {
  std::filesystem::create_directories(out_dir);
  const std::string meta = metadata_header(cfg);
  const ResolvedRun rr = resolve(cfg);
  WrittenFiles w;
  nlohmann::ordered_json panels = nlohmann::ordered_json::array();
  for (const auto& t : tables) {
    const auto path = out_dir / (t.panel + ".csv");  // panel names carry the scenario prefix
    std::string text = meta;
    if (with_gnuplot_hints) text += gnuplot_hints(t, path.filename().string());
    text += csv_body(t);
    write_file(path, text);
    w.csv.push_back(path);
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    panels.push_back({{"panel", t.panel}, {"file", path.filename().string()}, {"rows", t.rows.size()}, {"columns", cols}});
  }

  nlohmann::ordered_json j;
  j["code_version"] = code_version();
  j["scenario"] = cfg.scenario;
  j["frequency_convention"] = convention_name(rr.convention);
  j["units"] = {{"rate", "rad/us"}, {"time", "us"}};
  j["seed"] = cfg.seed;
  j["workers"] = workers;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rr.base.values()) params[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
  j["parameters"] = params;
  nlohmann::ordered_json raw = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.parameters) raw[k] = v;
  j["parameters_as_given"] = raw;
  nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
  for (const auto& ax : rr.axes) sweep.push_back({{"key", ax.key}, {"values", ax.values}, {"as_given", ax.raw}});
  j["sweep"] = sweep;
  j["panels"] = panels;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  j["generated_at"] = stamp;
  w.json = out_dir / (cfg.scenario + ".json");
  write_file(w.json, j.dump(2) + "\n");
  return w;
}

}  // namespace zeno::cli
