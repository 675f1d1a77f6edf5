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

#include "zeno/finite_meas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zeno {

using std::numbers::pi;

namespace {

constexpr std::size_t kGG = 0, kEE = 3, kFE = 5;

// e^{-a} [cosh(x) + c sinh(x)/x] for complex x without overflow.
double damped_hyperbolic(double a, cplx x, double c) {
  const cplx ep = std::exp(x - a), em = std::exp(-x - a);
  cplx shc;
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    shc = std::exp(-a) * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    shc = (ep - em) / (2.0 * x);
  }
  return (0.5 * (ep + em) + c * shc).real();
}

// e^{-pi G/2W}[cosh(pi R/2W) + (G/R) sinh(pi R/2W)], R = sqrt(G^2 - k W^2)
double two_level_closed_form(double gamma, double omega, double k) {
  const cplx r = std::sqrt(cplx(gamma * gamma - k * omega * omega));
  const double s = pi / (2 * omega);
  return damped_hyperbolic(s * gamma, s * r, gamma * s);
}

Vector ideal_output(const FiniteGammaParams& p) {
  return ideal_unitary(p.system(), p.gate_time()).matrix() * p.psi0;
}

}  // namespace

Vector equal_superposition() {
  Vector v = Vector::Zero(6);
  for (std::size_t k = kGG; k <= kEE; ++k) v(k) = 0.5;
  return v;
}

void FiniteGammaParams::validate() const {
  if (!(gamma > 0)) throw std::invalid_argument("gamma must be > 0");
  if (!(omega > 0)) throw std::invalid_argument("omega must be > 0");
  if (psi0.size() != 6) throw DimensionError("psi0 must have 6 components");
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw std::invalid_argument("psi0 must be normalized");
}

double FiniteGammaParams::gate_time() const { return 2 * pi / omega; }

double FiniteGammaParams::p_ee() const { return std::norm(psi0(kEE)); }

IntegratorConfig tight_integrator() {
  IntegratorConfig c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-14;
  return c;
}

LindbladSpec measured_spec(const FiniteGammaParams& p) {
  auto s = p.system();
  return {rabi_hamiltonian(s), {{p.gamma, projector_N(s)}}};
}

LindbladSpec leakage_qubit_spec(double gamma, double omega) {
  Matrix sy(2, 2);
  sy << 0, -kI, kI, 0;
  return {Operator::from_matrix(0.5 * omega * sy), {{gamma, basis_op(2, 0, 0)}}};
}

Operator no_jump_hamiltonian(const FiniteGammaParams& p) {
  Matrix h = rabi_hamiltonian(p.system()).matrix();
  h(kFE, kFE) -= kI * (0.5 * p.gamma);
  return {p.system().dims(), std::move(h)};
}

std::vector<DensityMatrix> evolve_unheralded(const FiniteGammaParams& p, std::span<const double> t_grid,
                                             const IntegratorConfig& cfg) {
  if (!(p.gamma > 0) || !(p.omega >= 0)) throw std::invalid_argument("need gamma > 0 and omega >= 0");
  // Omega = 0 is allowed here as a no-drive reference
  ZenoSystemSpec s{2, p.omega > 0 ? p.omega : 1.0, pi / 2};
  Operator h = p.omega > 0 ? rabi_hamiltonian(s) : Operator::zero(s.dims());
  LindbladSpec spec{h, {{p.gamma, projector_N(s)}}};
  return evolve_lindblad(spec, DensityMatrix::pure(s.dims(), p.psi0), t_grid, cfg);
}

double leakage_probability(double gamma, double omega, bool exact) {
  if (!(gamma > 0) || !(omega > 0)) throw std::invalid_argument("need gamma, omega > 0");
  if (!exact) return 0.5 * (1 - std::exp(-4 * pi * omega / gamma));
  return 1 - 0.5 * (1 + two_level_closed_form(gamma, omega, 16));
}

double herald_amplitude_ratio(double gamma, double omega, bool exact) {
  if (!(gamma > 0) || !(omega > 0)) throw std::invalid_argument("need gamma, omega > 0");
  if (!exact) return std::exp(-pi * omega / gamma);
  return two_level_closed_form(gamma, omega, 4);
}

double fidelity_exact_unheralded(const FiniteGammaParams& p, const IntegratorConfig& cfg) {
  p.validate();
  const double tg = p.gate_time();
  std::vector<double> grid{0.0, tg};
  Matrix rho = evolve_unheralded(p, grid, cfg).back().matrix();
  if (p.purge) {
    LindbladSpec m{Operator::zero({3, 2}), {{p.gamma, projector_N(p.system())}}};
    std::vector<double> g2{0.0, 10.0 / p.gamma};
    rho = evolve_lindblad(m, DensityMatrix(Operator({3, 2}, rho)), g2, cfg).back().matrix();
  }
  Vector out = ideal_output(p);
  return (out.adjoint() * rho * out)(0, 0).real();
}

double fidelity_first_order(const FiniteGammaParams& p, bool exact) {
  p.validate();
  return 1 - p.p_ee() * leakage_probability(p.gamma, p.omega, exact);
}

HeraldedRun evolve_heralded(const FiniteGammaParams& p, std::span<const double> t_grid,
                            const IntegratorConfig& cfg) {
  p.validate();
  if (std::abs(p.psi0(kFE)) != 0.0) throw std::invalid_argument("heralded evolution needs psi_fe(0) = 0");
  auto samples = evolve_nonhermitian(no_jump_hamiltonian(p), p.psi0, t_grid, cfg);
  HeraldedRun run;
  for (auto& s : samples) {
    run.states.push_back(std::move(s.state));
    run.norms.push_back(s.norm);
  }
  return run;
}

namespace {

Vector heralded_final(const FiniteGammaParams& p) {
  std::vector<double> grid{0.0, p.gate_time()};
  Vector psi = evolve_heralded(p, grid).states.back();
  if (p.purge) psi(kFE) *= std::exp(-0.5 * p.gamma * (10.0 / p.gamma));
  return psi;
}

}  // namespace

double fidelity_herald(const FiniteGammaParams& p, bool exact) {
  p.validate();
  const double q = p.p_ee();
  const double r = herald_amplitude_ratio(p.gamma, p.omega, exact);
  return (1 - q * (1 - r)) / std::sqrt(1 - q * (1 - r * r));
}

double fidelity_herald_numeric(const FiniteGammaParams& p) {
  Vector psi = heralded_final(p);
  return std::abs(ideal_output(p).dot(psi)) / psi.norm();
}

double herald_success_probability(const FiniteGammaParams& p) { return heralded_final(p).squaredNorm(); }

double fidelity_second_order(const FiniteGammaParams& p, bool exact) {
  return fidelity_first_order(p, exact) + fidelity_herald(p, exact) - 1;
}

double fidelity_second_order_expanded(const FiniteGammaParams& p) {
  p.validate();
  return fidelity_herald(p, false) - 0.5 * p.p_ee() * (1 - std::exp(-4 * pi * p.omega / p.gamma));
}

double diamond_bound(const FiniteGammaParams& p) {
  p.validate();
  return 38 * p.omega / p.gamma;
}

FidelityReport fidelity_report(const FiniteGammaParams& p) {
  FidelityReport r;
  r.f_exact_unheralded = fidelity_exact_unheralded(p);
  r.f_first_order = fidelity_first_order(p, true);
  r.f_first_order_approx = fidelity_first_order(p, false);
  r.f_herald_exact = fidelity_herald(p, true);
  r.f_herald_approx = fidelity_herald(p, false);
  r.f_second_order = fidelity_second_order(p, true);
  r.success_probability = herald_success_probability(p);
  r.diamond_bound = diamond_bound(p);
  return r;
}

}  // namespace zeno
