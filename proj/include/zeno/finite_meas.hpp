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

#include <span>
#include <vector>

#include "zeno/ideal_gate.hpp"
#include "zeno/opalg.hpp"

namespace zeno {

/// (|gg> + |ge> + |eg> + |ee>)/2 on the 6-level N=2 space.
Vector equal_superposition();

/// Two-qubit gate (qutrit + one qubit) measured at rate gamma on P_N.
struct FiniteGammaParams {
  double gamma = 10.0;  // 1/us
  double omega = 1.0;   // rad/us
  Vector psi0 = equal_superposition();
  bool purge = false;   // keep measuring for 10/gamma after the gate

  void validate() const;
  double gate_time() const;
  double p_ee() const;  // |psi_ee(0)|^2
  ZenoSystemSpec system() const { return {2, omega, std::numbers::pi / 2}; }
};

struct FidelityReport {
  double f_exact_unheralded = 0;
  double f_first_order = 0;
  double f_first_order_approx = 0;
  double f_herald_exact = 0;
  double f_herald_approx = 0;
  double f_second_order = 0;
  double success_probability = 0;
  double diamond_bound = 0;
};

/// Tolerances used for the closed-form cross checks.
IntegratorConfig tight_integrator();

/// H + gamma D[P] on the 6-level space.
LindbladSpec measured_spec(const FiniteGammaParams& p);
/// Effective qubit {|fe>, |ee>}: H = Omega sigma_y / 2, gamma D[|0><0|].
LindbladSpec leakage_qubit_spec(double gamma, double omega);
/// H - i (gamma/2) |fe><fe|.
Operator no_jump_hamiltonian(const FiniteGammaParams& p);

std::vector<DensityMatrix> evolve_unheralded(const FiniteGammaParams& p, std::span<const double> t_grid,
                                             const IntegratorConfig& cfg = {});

/// Leaked population of the effective qubit after one period 2 pi / omega.
double leakage_probability(double gamma, double omega, bool exact);
/// psi_ee(T_G) / psi_ee(0) under the no-jump evolution.
double herald_amplitude_ratio(double gamma, double omega, bool exact);

/// <psi0| U^dag rho(T) U |psi0> from the full master equation.
double fidelity_exact_unheralded(const FiniteGammaParams& p, const IntegratorConfig& cfg = {});
double fidelity_first_order(const FiniteGammaParams& p, bool exact);

struct HeraldedRun {
  std::vector<Vector> states;  // unnormalized
  std::vector<double> norms;
};
HeraldedRun evolve_heralded(const FiniteGammaParams& p, std::span<const double> t_grid,
                            const IntegratorConfig& cfg = tight_integrator());

/// Overlap modulus of the renormalized heralded state with the ideal output.
double fidelity_herald(const FiniteGammaParams& p, bool exact);
/// Same overlap from the integrated no-jump state (includes the |fe> residue).
double fidelity_herald_numeric(const FiniteGammaParams& p);
/// Squared no-jump norm at the end of the gate (after purging if set).
double herald_success_probability(const FiniteGammaParams& p);

/// F1 + F_herald - 1.
double fidelity_second_order(const FiniteGammaParams& p, bool exact = true);
/// Closed-form expansion: F_herald(approx) - (p_ee/2)(1 - e^{-4 pi Omega/Gamma}).
double fidelity_second_order_expanded(const FiniteGammaParams& p);

double diamond_bound(const FiniteGammaParams& p);

FidelityReport fidelity_report(const FiniteGammaParams& p);

}  // namespace zeno
