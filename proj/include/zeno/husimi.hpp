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

#include <vector>

#include "zeno/opalg.hpp"

namespace zeno {

/// Phase-space window, alpha = X + i P.
struct HusimiGridSpec {
  double x_min = -8, x_max = 8;
  double p_min = -8, p_max = 8;
  std::size_t resolution = 161;  // points per axis
};

struct HusimiGrid {
  std::vector<double> x, p;
  Eigen::MatrixXd values;      // rows: p, cols: x
  std::size_t unreliable = 0;  // points with |alpha|^2 > n_fock / 2
  double dx() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }
  double dp() const { return p.size() > 1 ? p[1] - p[0] : 0.0; }
  double riemann_sum() const { return values.sum() * dx() * dp(); }
};

/// Q(alpha) = <alpha|rho|alpha> / pi with truncated, renormalized coherent states.
HusimiGrid husimi_q(const Matrix& rho_cavity, const HusimiGridSpec& spec = {});

struct Lobe {
  cplx center;
  double weight = 0.0;
};

/// Least-squares fit of sum_k w_k exp(-|alpha - beta_k|^2) / pi to the grid
/// (1 or 2 lobes), started from the grid moments.
std::vector<Lobe> fit_coherent_lobes(const HusimiGrid& q, std::size_t n_lobes);

}  // namespace zeno
