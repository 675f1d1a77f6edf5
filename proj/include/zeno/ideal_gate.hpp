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

#include <numbers>
#include <string>
#include <vector>

#include "zeno/opalg.hpp"

namespace zeno {

/// Qutrit (levels g, e, f) followed by n_qubits - 1 qubits (g, e).
struct ZenoSystemSpec {
  int n_qubits = 2;
  double omega = 1.0;  // rad/us
  double phi_axis = std::numbers::pi / 2;

  void validate() const;
  Dims dims() const;
  std::size_t dim() const { return product(dims()); }
  double gate_time() const { return 2 * std::numbers::pi / omega; }
};

/// Labels of every basis ket in flat-index order, e.g. "gg","ge","eg",...,"fe".
std::vector<std::string> level_labels(int n_qubits);
std::size_t level_index(const std::string& label);
/// Flat indices of the 2^N computational kets in (g..g, ..., e..e) order.
std::vector<std::size_t> computational_indices(int n_qubits);
/// Index of |f e...e>.
std::size_t blocked_index(int n_qubits);

/// 3x3 qutrit drive Omega{(i/2)(|e><f|-|f><e|) sin(phi) + (1/2)(|e><e|-|f><f|) cos(phi)}.
Matrix qutrit_rabi(double omega, double phi);

Operator projector_N(const ZenoSystemSpec& spec);
Operator rabi_hamiltonian(const ZenoSystemSpec& spec);
Operator zeno_hamiltonian(const ZenoSystemSpec& spec);
/// exp(-i t H_Zeno), assembled from its 2x2 blocks.
Operator ideal_unitary(const ZenoSystemSpec& spec, double t);
/// exp(-i t H) without projection, same block construction.
Operator free_unitary(const ZenoSystemSpec& spec, double t);
/// Free 2pi rotation after the Zeno one, restricted to the computational subspace.
Operator ncphase_target(const ZenoSystemSpec& spec);

/// Sub-block of `op` on the given flat indices (single-factor result).
Matrix restrict(const Matrix& op, const std::vector<std::size_t>& idx);

}  // namespace zeno
