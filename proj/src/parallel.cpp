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

#include "zeno/parallel.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace zeno {

std::size_t resolve_workers(std::optional<std::size_t> requested) {
  if (requested) {
    if (*requested == 0) throw std::invalid_argument("workers must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("ZENO_WORKERS")) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(env, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("ZENO_WORKERS is not a positive integer: ") + env);
    }
    if (pos != std::string(env).size() || v == 0)
      throw std::invalid_argument(std::string("ZENO_WORKERS is not a positive integer: ") + env);
    return v;
  }
  return 1;
}

}  // namespace zeno
