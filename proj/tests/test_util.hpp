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

#include <random>

#include "zeno/opalg.hpp"

namespace testutil {

inline zeno::Matrix random_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  zeno::Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = zeno::cplx(n(rng), n(rng));
  return m;
}

inline zeno::Matrix random_integer_matrix(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-4, 4);
  zeno::Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = zeno::cplx(u(rng), u(rng));
  return m;
}

inline zeno::Matrix random_hermitian(int d, std::mt19937_64& rng) {
  zeno::Matrix m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

inline zeno::Matrix random_density(int d, std::mt19937_64& rng) {
  zeno::Matrix m = random_matrix(d, rng);
  zeno::Matrix r = m * m.adjoint();
  return r / r.trace().real();
}

// Hamiltonian plus two channels with O(1) rates.
inline zeno::LindbladSpec random_spec(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  const zeno::Dims dims{static_cast<std::size_t>(d)};
  zeno::LindbladSpec spec{zeno::Operator(dims, random_hermitian(d, rng)), {}};
  for (int k = 0; k < 2; ++k)
    spec.channels.push_back({u(rng), zeno::Operator(dims, 0.5 * random_matrix(d, rng))});
  return spec;
}

}  // namespace testutil
