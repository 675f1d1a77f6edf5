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
#include <functional>
#include <random>
#include <vector>

#include "zeno/dispersive.hpp"
#include "zeno/opalg.hpp"

namespace zeno {

struct HaarConfig {
  std::size_t dim = 4;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Standard normals from mt19937_64 via Box-Muller. Bit-identical on every
/// platform, unlike std::normal_distribution.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
  double next();

 private:
  double uniform();  // (0, 1]
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Per-cell seed for sweeps: seed XOR index.
inline std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t index) { return seed ^ index; }

/// Haar-random unit vectors, (a_k + i b_k)/r with 2 dim standard normals each.
std::vector<Vector> sample_haar_states(const HaarConfig& cfg);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};
McEstimate average_fidelity_mc(const std::function<double(const Vector&)>& f, const HaarConfig& cfg);
McEstimate average_fidelity_mc(const std::function<double(const Vector&)>& f, const std::vector<Vector>& states);

enum class UnitaryBasisKind { Pauli, Weyl };
/// d^2 unitaries with tr[U_i U_j^dag] = d delta_ij. Pauli needs d = 2^k; Weyl is X^a Z^b.
std::vector<Matrix> unitary_operator_basis(std::size_t d, UnitaryBasisKind kind = UnitaryBasisKind::Pauli);

/// Linear map on d x d matrices.
using ChannelMap = std::function<Matrix(const Matrix&)>;

/// (sum_i tr[U U_i^dag U^dag E(U_i)] + d^2) / (d^2 (d + 1)). Empty basis picks Pauli
/// when d is a power of two, Weyl otherwise.
double nielsen_average_fidelity(const ChannelMap& channel, const Matrix& target,
                                const std::vector<Matrix>& basis = {});

/// Closed-form average fidelity of the dephasing/phase channel on the
/// computational subspace; X = dchi/kappa, Y = Gamma/Omega.
double fbar_chi(double x, double y);

/// Slow-Markov rates on (gg, ge, eg, ee): shifts chi_j = n_j dchi with excitation
/// numbers (0, 1, 1, 2), drive resonant with n = 3, kappa = Omega = 1,
/// eps^2 = Gamma kappa / 2, approximate steady rates. Applied for one gate period.
RateTable slow_markov_rates(double x, double y);
ChannelMap slow_markov_channel(double x, double y, CoherenceConvention conv);

enum class CombineForm { Product, Subtraction };

/// Heralded: Fbar_chi * F_herald. Unheralded: additionally times F1 with |psi_ee|^2 = 1/4.
/// Subtraction form sums the infidelities instead.
double combined_fidelity(double x, double y, bool heralded, CombineForm form = CombineForm::Product);

struct FidelitySurface {
  std::vector<double> x_axis;
  std::vector<double> y_axis;
  Eigen::MatrixXd values;  // rows: y, cols: x
  bool heralded = true;
};
FidelitySurface combined_fidelity_surface(const std::vector<double>& x_axis, const std::vector<double>& y_axis,
                                          bool heralded, CombineForm form = CombineForm::Product);

}  // namespace zeno
