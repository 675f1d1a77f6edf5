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

#include <filesystem>
#include <string>
#include <vector>

#include "zeno/cli/config.hpp"
#include "zeno/cli/scenarios.hpp"

namespace zeno::cli {

const char* code_version();

/// Shortest round-trip decimal ("nan" for NaN).
std::string format_number(double v);

/// Header line plus rows, LF endings, RFC-4180 quoting where needed.
std::string csv_body(const Table& t);

/// "# key = value" lines: version, scenario, convention, seed and every resolved
/// parameter in rad/us and us. No timestamps, so reruns are byte-identical.
std::string metadata_header(const ScenarioConfig& cfg);

/// `# gnuplot:` comment lines suggesting one plot per numeric column.
std::string gnuplot_hints(const Table& t, const std::string& file_name);

struct WrittenFiles {
  std::vector<std::filesystem::path> csv;
  std::filesystem::path json;
};

/// <out>/<panel>.csv per panel and <out>/<scenario>.json.
WrittenFiles write_outputs(const ScenarioConfig& cfg, const std::vector<Table>& tables,
                           const std::filesystem::path& out_dir, bool with_gnuplot_hints = false,
                           std::size_t workers = 1);

}  // namespace zeno::cli
