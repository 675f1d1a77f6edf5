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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "zeno/opalg.hpp"

namespace zeno {

/// Coherence damping exponent: Bloch damps rho_jl at Gamma, HalfExponent at Gamma/2
/// (and rotates at Upsilon/2).
enum class CoherenceConvention { Bloch, HalfExponent };

/// Drive amplitude held at `epsilon` until `t_end` (us).
struct EpsilonSegment {
  double t_end = 0.0;
  double epsilon = 0.0;
};

/// Coherent-state readout of a qudit through one cavity mode. Rates in rad/us.
struct DispersiveParams {
  std::vector<std::string> levels;
  std::map<std::string, double> chi;
  double kappa = 1.0;
  double epsilon = 0.0;
  double delta_ce = 0.0;  // omega_c - omega_eps
  double phi_drive = std::numbers::pi / 2;
  // Optional piecewise-constant epsilon(t); past the last t_end `epsilon` applies.
  std::vector<EpsilonSegment> segments;

  void validate() const;
  std::size_t size() const { return levels.size(); }
  std::size_t index(const std::string& level) const;
  /// Delta_j = delta_ce + chi_j for every level in order.
  std::vector<double> detunings() const;
  double epsilon_at(double t) const;

  /// Bare qutrit g, e, f with the given shifts.
  static DispersiveParams qutrit(double chi_g, double chi_e, double chi_f, double kappa, double epsilon,
                                 double delta_ce);
  /// Qutrit + (n_qubits-1) qubits, labels from level_labels(); chi from the map.
  static DispersiveParams for_system(int n_qubits, const std::map<std::string, double>& chi, double kappa,
                                     double epsilon, double delta_ce);
};

struct CoherentRecord {
  double t = 0.0;
  std::vector<cplx> alpha;
  std::vector<double> phase;
};

/// Gamma (1/us) is symmetric, Upsilon (rad/us) antisymmetric; diagonals vanish.
struct RateTable {
  std::vector<std::string> levels;
  Eigen::MatrixXd gamma;
  Eigen::MatrixXd upsilon;

  double gamma_of(const std::string& a, const std::string& b) const;
  double upsilon_of(const std::string& a, const std::string& b) const;
};

/// Steady amplitude -2 i eps e^{i phi} / (kappa + 2 i Delta).
cplx steady_alpha(double delta, double kappa, double epsilon, double phi_drive = std::numbers::pi / 2);

/// alpha_j(t) for constant epsilon.
cplx alpha_trajectory(const DispersiveParams& p, const std::string& level, cplx alpha0, double t);
/// phi_j(t) = -int_0^t eps Re[e^{-i phi} alpha_j(s)] ds, closed form per epsilon segment.
double phase_accumulation(const DispersiveParams& p, const std::string& level, double t, cplx alpha0 = 0.0);

struct PairRates {
  double gamma = 0.0;
  double upsilon = 0.0;
};
/// Gamma = (kappa/2)|a_j - a_l|^2; Upsilon = kappa Im[a_j a_l*] - eps Re[e^{-i phi}(a_j - a_l)].
PairRates rates(cplx alpha_j, cplx alpha_l, double kappa, double epsilon,
                double phi_drive = std::numbers::pi / 2);

/// Rates at the steady amplitudes. With `approx`, the leading-order slow-Markov
/// forms (kappa << |Delta| except at one resonant level) are used instead.
RateTable steady_rates(const DispersiveParams& p, bool approx = false);

/// kappa >> |Delta| limit of the steady Gamma: 8 eps^2 (chi_j - chi_l)^2 / kappa^3.
double fast_markov_gamma(const DispersiveParams& p, const std::string& a, const std::string& b);

/// One collision step: diag phases, then M0 rho M0^dag + M1 rho M1^dag with exact
/// coherent-state overlaps for line amplitudes sqrt(kappa dt) alpha_j.
Matrix kraus_step(const Matrix& rho, std::span<const cplx> alpha, double kappa, double epsilon, double phi_drive,
                  double dt);

struct CaOptions {
  bool upsilon_off = false;
  bool steady = false;  // use steady amplitudes instead of the co-integrated ones
  CoherenceConvention convention = CoherenceConvention::Bloch;
  IntegratorConfig integrator{};
};

struct CaResult {
  std::vector<DensityMatrix> states;
  std::vector<CoherentRecord> records;
};

/// Qudit density matrix driven by `h_drive` and dephased/rotated by the cavity
/// pointers; alpha_j and phi_j are integrated alongside rho.
CaResult ca_evolve_naive(const DispersiveParams& p, const Matrix& h_drive, const DensityMatrix& rho0,
                         std::span<const cplx> alpha0, std::span<const double> t_grid, const CaOptions& opt = {});
/// Builds the drive from the level set: 3 levels use qutrit_rabi, larger sets
/// rabi_hamiltonian of the matching ZenoSystemSpec.
CaResult ca_evolve_naive(const DispersiveParams& p, double omega, double phi_axis, const DensityMatrix& rho0,
                         std::span<const cplx> alpha0, std::span<const double> t_grid, const CaOptions& opt = {});

/// Drive Hamiltonian for the level set of p (see ca_evolve_naive).
Matrix drive_for_levels(const DispersiveParams& p, double omega, double phi_axis);

/// Gell-Mann generators in our (g, e, f) basis, numbered as sigma_1..sigma_8
/// (1: f/e diagonal, 2: hypercharge, 3-5: fe, fg, eg real, 6-8: fe, fg, eg imaginary).
const std::vector<Matrix>& gellmann_matrices();
Eigen::VectorXd gellmann_coords(const DensityMatrix& rho);
DensityMatrix from_gellmann(const Eigen::VectorXd& q);

/// Markov evolution with constant rates: d rho_jl += f (i Upsilon_jl - Gamma_jl) rho_jl.
std::vector<DensityMatrix> rate_evolve(const Matrix& h_drive, const RateTable& rates, const DensityMatrix& rho0,
                                       std::span<const double> t_grid,
                                       CoherenceConvention convention = CoherenceConvention::Bloch,
                                       const IntegratorConfig& cfg = {});

/// Steady longitudinal pointers alpha_j = -2 i g_j / (kappa + 2 i omega_c).
RateTable longitudinal_rates(const std::vector<std::string>& levels, const std::map<std::string, double>& g,
                             double kappa, double omega_c);

}  // namespace zeno
