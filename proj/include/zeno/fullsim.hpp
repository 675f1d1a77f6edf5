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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zeno/dispersive.hpp"
#include "zeno/opalg.hpp"

namespace zeno {

/// Lab-frame coupling sum_j g_j |j><j| (a + a^dag) with cavity frequency omega_c.
struct LongitudinalReadout {
  std::map<std::string, double> g;  // rad/us
  double kappa = 1.0;
  double omega_c = 1.0;
};

using Readout = std::variant<DispersiveParams, LongitudinalReadout>;

/// Qudit (levels with a drive Hamiltonian) coupled to one truncated cavity mode.
/// Full index = qudit_index * n_fock + photon number.
struct FullSimParams {
  std::vector<std::string> levels;
  Matrix drive;  // qudit Hamiltonian, rad/us
  Readout readout;
  std::size_t n_fock = 20;
  double t_final = 0.0;  // us; 0 means one gate period 2 pi / omega
  double omega = 0.0;    // Rabi rate used for the default t_final
  Vector qudit_state;
  cplx alpha0 = 0.0;
  int n_qubits = 0;  // > 0 when levels are level_labels(n_qubits)

  /// Qutrit + (n_qubits - 1) qubits driven by rabi_hamiltonian; equal superposition
  /// over the computational kets.
  static FullSimParams zeno(int n_qubits, Readout readout, double omega, double phi_axis, std::size_t n_fock);
  /// Bare qubit (g, e) with drive (omega/2) sigma_x, starting in (|e> + |g>)/sqrt(2).
  static FullSimParams qubit(Readout readout, double omega, std::size_t n_fock);

  void validate() const;
  std::size_t qudit_dim() const { return levels.size(); }
  std::size_t dim() const { return levels.size() * n_fock; }
  double kappa() const;
  double final_time() const;
};

/// Cavity annihilation operator truncated to n levels.
Matrix annihilation(std::size_t n);
/// Truncated coherent state, renormalized within the n kept levels.
Vector coherent_state(cplx alpha, std::size_t n);

/// Full Hamiltonian; epsilon from the dispersive params is taken at time t.
Operator build_hamiltonian(const FullSimParams& p, double t = 0.0);
LindbladSpec build_spec(const FullSimParams& p, double t = 0.0);
DensityMatrix initial_state(const FullSimParams& p);

/// Bytes for one dense full density matrix.
double memory_estimate_bytes(const FullSimParams& p);

Matrix reduce_to_qudit(const Matrix& full, std::size_t n_fock);
Matrix reduce_to_cavity(const Matrix& full, std::size_t n_fock);

/// 1 - 2^N rho_blocked; with N = 2 the usual 1 - 4 rho_fe,fe.
double xi_fe(const Matrix& qudit_rho, int n_qubits = 2);
/// Wootters concurrence of a (possibly unnormalized) two-qubit block.
double concurrence(const Matrix& rho4);
/// {gg, ge, eg, ee} block of an N = 2 qudit state, not renormalized.
Matrix computational_block(const Matrix& qudit_rho, int n_qubits = 2);

struct MetricsRow {
  double t = 0.0;
  double xi_fe = 0.0;        // NaN when not defined for the level set
  double concurrence = 0.0;  // NaN unless n_qubits == 2
  std::vector<double> pop;
  double trace_defect = 0.0;
  double top_fock = 0.0;  // population of the highest kept Fock level
};

struct FullSimResult {
  std::vector<MetricsRow> rows;
  std::optional<DensityMatrix> final_state;
  std::vector<Matrix> cavity_states;  // reduced cavity state per grid point, if requested
  std::vector<std::string> warnings;
  bool truncation_warning = false;
};

struct FullSimOptions {
  IntegratorConfig integrator{};
  bool keep_final = true;
  bool keep_cavity = false;
  double memory_limit_bytes = 2.0e9;
};

/// Unconditional master equation with one decay channel sqrt(kappa) a.
FullSimResult run_fullsim(const FullSimParams& p, std::span<const double> t_grid, const FullSimOptions& opt = {});

enum class FigureOfMerit { XiHalf, XiFinal, ConcurrenceFinal };

struct FockCertificate {
  std::size_t n_fock = 0;
  std::vector<double> values;       // at n_fock
  std::vector<double> values_next;  // at n_fock + step
  FullSimResult result;             // run at n_fock on {0, T/2, T}
};

/// Smallest n >= start with every figure of merit within 1e-3 of its value at n + step.
/// Throws std::runtime_error when n + step would exceed the ceiling.
FockCertificate fock_convergence(FullSimParams p, const std::vector<FigureOfMerit>& foms, std::size_t step,
                                 std::size_t ceiling, std::size_t start = 2, const FullSimOptions& opt = {});

}  // namespace zeno
