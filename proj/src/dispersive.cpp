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

#include "zeno/dispersive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zeno/ideal_gate.hpp"

namespace zeno {

void DispersiveParams::validate() const {
  if (levels.empty()) throw std::invalid_argument("dispersive params need at least one level");
  if (!(kappa > 0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be > 0");
  if (!(epsilon >= 0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be >= 0");
  for (const auto& l : levels)
    if (!chi.count(l)) throw std::invalid_argument("no dispersive shift for level " + l);
  double prev = 0.0;
  for (const auto& s : segments) {
    if (!(s.t_end > prev)) throw std::invalid_argument("epsilon segments must have increasing t_end > 0");
    if (!(s.epsilon >= 0)) throw std::invalid_argument("segment epsilon must be >= 0");
    prev = s.t_end;
  }
}

std::size_t DispersiveParams::index(const std::string& level) const {
  auto it = std::find(levels.begin(), levels.end(), level);
  if (it == levels.end()) throw std::invalid_argument("unknown level " + level);
  return static_cast<std::size_t>(it - levels.begin());
}

std::vector<double> DispersiveParams::detunings() const {
  std::vector<double> d;
  d.reserve(levels.size());
  for (const auto& l : levels) d.push_back(delta_ce + chi.at(l));
  return d;
}

double DispersiveParams::epsilon_at(double t) const {
  for (const auto& s : segments)
    if (t < s.t_end) return s.epsilon;
  return epsilon;
}

DispersiveParams DispersiveParams::qutrit(double chi_g, double chi_e, double chi_f, double kappa, double epsilon,
                                          double delta_ce) {
  DispersiveParams p;
  p.levels = {"g", "e", "f"};
  p.chi = {{"g", chi_g}, {"e", chi_e}, {"f", chi_f}};
  p.kappa = kappa;
  p.epsilon = epsilon;
  p.delta_ce = delta_ce;
  return p;
}

DispersiveParams DispersiveParams::for_system(int n_qubits, const std::map<std::string, double>& chi, double kappa,
                                              double epsilon, double delta_ce) {
  DispersiveParams p;
  p.levels = level_labels(n_qubits);
  p.chi = chi;
  p.kappa = kappa;
  p.epsilon = epsilon;
  p.delta_ce = delta_ce;
  return p;
}

double RateTable::gamma_of(const std::string& a, const std::string& b) const {
  auto ia = std::find(levels.begin(), levels.end(), a) - levels.begin();
  auto ib = std::find(levels.begin(), levels.end(), b) - levels.begin();
  if (ia >= std::ssize(levels) || ib >= std::ssize(levels)) throw std::invalid_argument("unknown level");
  return gamma(ia, ib);
}

double RateTable::upsilon_of(const std::string& a, const std::string& b) const {
  auto ia = std::find(levels.begin(), levels.end(), a) - levels.begin();
  auto ib = std::find(levels.begin(), levels.end(), b) - levels.begin();
  if (ia >= std::ssize(levels) || ib >= std::ssize(levels)) throw std::invalid_argument("unknown level");
  return upsilon(ia, ib);
}

cplx steady_alpha(double delta, double kappa, double epsilon, double phi_drive) {
  return -2.0 * kI * epsilon * std::exp(kI * phi_drive) / (kappa + 2.0 * kI * delta);
}

namespace {

struct Piece {
  double t0, t1, eps;
};

// Constant-epsilon pieces covering [0, t].
std::vector<Piece> pieces(const DispersiveParams& p, double t) {
  std::vector<Piece> out;
  double t0 = 0.0;
  for (const auto& s : p.segments) {
    if (t0 >= t) break;
    double t1 = std::min(s.t_end, t);
    out.push_back({t0, t1, s.epsilon});
    t0 = s.t_end;
  }
  if (t0 < t) out.push_back({t0, t, p.epsilon});
  return out;
}

}  // namespace

cplx alpha_trajectory(const DispersiveParams& p, const std::string& level, cplx alpha0, double t) {
  if (t < 0) throw std::invalid_argument("alpha_trajectory needs t >= 0");
  const double delta = p.delta_ce + p.chi.at(level);
  const cplx lam = kI * delta + 0.5 * p.kappa;
  cplx a = alpha0;
  for (const auto& pc : pieces(p, t)) {
    cplx abar = steady_alpha(delta, p.kappa, pc.eps, p.phi_drive);
    a = (a - abar) * std::exp(-lam * (pc.t1 - pc.t0)) + abar;
  }
  return a;
}

double phase_accumulation(const DispersiveParams& p, const std::string& level, double t, cplx alpha0) {
  if (t < 0) throw std::invalid_argument("phase_accumulation needs t >= 0");
  const double delta = p.delta_ce + p.chi.at(level);
  const cplx lam = kI * delta + 0.5 * p.kappa;
  const cplx rot = std::exp(-kI * p.phi_drive);
  cplx a = alpha0;
  double phase = 0.0;
  for (const auto& pc : pieces(p, t)) {
    const double tau = pc.t1 - pc.t0;
    cplx abar = steady_alpha(delta, p.kappa, pc.eps, p.phi_drive);
    cplx decay = std::exp(-lam * tau);
    cplx integral = abar * tau + (a - abar) * (1.0 - decay) / lam;
    phase -= pc.eps * std::real(rot * integral);
    a = (a - abar) * decay + abar;
  }
  return phase;
}

PairRates rates(cplx alpha_j, cplx alpha_l, double kappa, double epsilon, double phi_drive) {
  PairRates r;
  r.gamma = 0.5 * kappa * std::norm(alpha_j - alpha_l);
  r.upsilon = kappa * std::imag(alpha_j * std::conj(alpha_l)) -
              epsilon * std::real(std::exp(-kI * phi_drive) * (alpha_j - alpha_l));
  return r;
}

RateTable steady_rates(const DispersiveParams& p, bool approx) {
  p.validate();
  const auto n = static_cast<Eigen::Index>(p.size());
  const auto delta = p.detunings();
  const double k = p.kappa, e = p.epsilon;
  RateTable t;
  t.levels = p.levels;
  t.gamma = Eigen::MatrixXd::Zero(n, n);
  t.upsilon = Eigen::MatrixXd::Zero(n, n);

  if (!approx) {
    std::vector<cplx> a;
    for (double d : delta) a.push_back(steady_alpha(d, k, e, p.phi_drive));
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index l = 0; l < n; ++l) {
        if (j == l) continue;
        auto r = rates(a[j], a[l], k, e, p.phi_drive);
        t.gamma(j, l) = r.gamma;
        t.upsilon(j, l) = r.upsilon;
      }
    return t;
  }

  // leading order in kappa/|Delta| for the off-resonant levels
  double scale = k;
  for (double d : delta) scale = std::max(scale, std::abs(d));
  auto resonant = [&](double d) { return std::abs(d) <= 1e-12 * scale; };
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) {
      if (j == l) continue;
      const double dj = delta[j], dl = delta[l];
      const bool rj = resonant(dj), rl = resonant(dl);
      if (rj && rl) continue;
      if (rj || rl) {
        const double off = rj ? dl : dj;
        t.gamma(j, l) = 2 * e * e / k;
        t.upsilon(j, l) = (rj ? 1.0 : -1.0) * e * e / off;
      } else {
        t.gamma(j, l) = k * e * e * (dj - dl) * (dj - dl) / (2 * dj * dj * dl * dl);
        t.upsilon(j, l) = e * e * (dl - dj) / (dj * dl);
      }
    }
  return t;
}

double fast_markov_gamma(const DispersiveParams& p, const std::string& a, const std::string& b) {
  const double dchi = p.chi.at(a) - p.chi.at(b);
  return 8 * p.epsilon * p.epsilon * dchi * dchi / (p.kappa * p.kappa * p.kappa);
}

Matrix kraus_step(const Matrix& rho, std::span<const cplx> alpha, double kappa, double epsilon, double phi_drive,
                  double dt) {
  const auto n = rho.rows();
  if (static_cast<Eigen::Index>(alpha.size()) != n) throw DimensionError("one amplitude per level required");
  const cplx rot = std::exp(-kI * phi_drive);
  Vector m0(n), m1(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx beta = std::sqrt(kappa * dt) * alpha[j];
    const double overlap = std::exp(-0.5 * std::norm(beta));
    const cplx ph = std::exp(-kI * epsilon * std::real(rot * alpha[j]) * dt);
    m0(j) = overlap * ph;
    m1(j) = overlap * beta * ph;
  }
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l)
      out(j, l) = (m0(j) * std::conj(m0(l)) + m1(j) * std::conj(m1(l))) * rho(j, l);
  return out;
}

Matrix drive_for_levels(const DispersiveParams& p, double omega, double phi_axis) {
  if (p.levels == std::vector<std::string>{"g", "e", "f"}) return qutrit_rabi(omega, phi_axis);
  for (int nq = 2; nq <= 12; ++nq) {
    if (p.size() < static_cast<std::size_t>(3 << (nq - 1))) break;
    if (p.levels == level_labels(nq)) {
      ZenoSystemSpec s{nq, omega, phi_axis};
      return rabi_hamiltonian(s).matrix();
    }
  }
  throw std::invalid_argument("no drive Hamiltonian known for this level set");
}

CaResult ca_evolve_naive(const DispersiveParams& p, const Matrix& h_drive, const DensityMatrix& rho0,
                         std::span<const cplx> alpha0, std::span<const double> t_grid, const CaOptions& opt) {
  p.validate();
  const auto n = static_cast<Eigen::Index>(p.size());
  if (h_drive.rows() != n || h_drive.cols() != n) throw DimensionError("drive size differs from level count");
  if (rho0.dim() != p.size()) throw DimensionError("initial state size differs from level count");
  if (!alpha0.empty() && static_cast<Eigen::Index>(alpha0.size()) != n)
    throw DimensionError("alpha0 needs one amplitude per level");
  if (t_grid.empty() || t_grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");

  const auto delta = p.detunings();
  const double k = p.kappa;
  const double f = opt.convention == CoherenceConvention::Bloch ? 1.0 : 0.5;
  const cplx rot = std::exp(-kI * p.phi_drive);
  const cplx drive_dir = -kI * std::exp(kI * p.phi_drive);
  const Eigen::Index nn = n * n;

  // layout: rho (column-major), alpha, phase
  Vector y0 = Vector::Zero(nn + 2 * n);
  y0.head(nn) = Eigen::Map<const Vector>(rho0.matrix().data(), nn);
  for (Eigen::Index j = 0; j < n; ++j) y0(nn + j) = alpha0.empty() ? cplx(0.0) : alpha0[j];

  auto amplitudes = [&](double t, const Vector& y, std::vector<cplx>& a) {
    a.resize(n);
    if (opt.steady) {
      const double eps = p.epsilon_at(t);
      for (Eigen::Index j = 0; j < n; ++j) a[j] = steady_alpha(delta[j], k, eps, p.phi_drive);
    } else {
      for (Eigen::Index j = 0; j < n; ++j) a[j] = y(nn + j);
    }
  };

  std::vector<cplx> a;
  Matrix gen(n, n);
  auto rhs = [&](double t, const Vector& y, Vector& dy) {
    const double eps = p.epsilon_at(t);
    amplitudes(t, y, a);
    dy.resize(y.size());
    for (Eigen::Index j = 0; j < n; ++j) {
      dy(nn + j) = opt.steady ? cplx(0.0) : drive_dir * eps - (kI * delta[j] + 0.5 * k) * y(nn + j);
      dy(nn + n + j) = -eps * std::real(rot * a[j]);
    }
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index l = 0; l < n; ++l) {
        if (j == l) {
          gen(j, l) = 0.0;
          continue;
        }
        auto r = rates(a[j], a[l], k, eps, p.phi_drive);
        const double ups = opt.upsilon_off ? 0.0 : r.upsilon;
        gen(j, l) = f * (kI * ups - r.gamma);
      }
    Eigen::Map<const Matrix> rho(y.data(), n, n);
    Eigen::Map<Matrix> drho(dy.data(), n, n);
    drho = -kI * (h_drive * rho - rho * h_drive);
    drho += gen.cwiseProduct(rho);
  };

  CaResult out;
  out.states.reserve(t_grid.size());
  out.records.reserve(t_grid.size());
  const Dims dims{p.size()};
  const double tol = rho0.tolerance();
  integrate<Vector>(
      rhs, y0, t_grid, opt.integrator,
      [&](Vector& y) {
        Eigen::Map<Matrix> rho(y.data(), n, n);
        rho = 0.5 * (rho + rho.adjoint()).eval();
      },
      [&](std::size_t idx, const Vector& y) {
        Matrix rho = Eigen::Map<const Matrix>(y.data(), n, n);
        out.states.emplace_back(Operator(dims, std::move(rho)), tol);
        CoherentRecord rec;
        rec.t = t_grid[idx];
        std::vector<cplx> amp;
        amplitudes(rec.t, y, amp);
        rec.alpha = amp;
        for (Eigen::Index j = 0; j < n; ++j) rec.phase.push_back(std::real(y(nn + n + j)));
        out.records.push_back(std::move(rec));
      });
  return out;
}

CaResult ca_evolve_naive(const DispersiveParams& p, double omega, double phi_axis, const DensityMatrix& rho0,
                         std::span<const cplx> alpha0, std::span<const double> t_grid, const CaOptions& opt) {
  return ca_evolve_naive(p, drive_for_levels(p, omega, phi_axis), rho0, alpha0, t_grid, opt);
}

std::vector<DensityMatrix> rate_evolve(const Matrix& h_drive, const RateTable& rates, const DensityMatrix& rho0,
                                       std::span<const double> t_grid, CoherenceConvention convention,
                                       const IntegratorConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(rates.levels.size());
  if (h_drive.rows() != n || h_drive.cols() != n || rates.gamma.rows() != n || rates.upsilon.rows() != n)
    throw DimensionError("rate table, drive and level count disagree");
  if (rho0.dim() != rates.levels.size()) throw DimensionError("initial state size differs from level count");
  if (t_grid.empty() || t_grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
  const double f = convention == CoherenceConvention::Bloch ? 1.0 : 0.5;
  Matrix gen = f * (kI * rates.upsilon.cast<cplx>() - rates.gamma.cast<cplx>());
  gen.diagonal().setZero();

  std::vector<DensityMatrix> out;
  const Dims dims{rates.levels.size()};
  const double tol = rho0.tolerance();
  integrate<Matrix>(
      [&](double, const Matrix& rho, Matrix& d) {
        d = -kI * (h_drive * rho - rho * h_drive);
        d += gen.cwiseProduct(rho);
      },
      rho0.matrix(), t_grid, cfg, [](Matrix& rho) { rho = 0.5 * (rho + rho.adjoint()).eval(); },
      [&](std::size_t, const Matrix& rho) { out.emplace_back(Operator(dims, rho), tol); });
  return out;
}

const std::vector<Matrix>& gellmann_matrices() {
  static const std::vector<Matrix> mats = [] {
    constexpr int g = 0, e = 1, f = 2;
    std::vector<Matrix> m(8, Matrix::Zero(3, 3));
    m[0](f, f) = 1;
    m[0](e, e) = -1;
    const double s3 = 1.0 / std::sqrt(3.0);
    m[1](f, f) = s3;
    m[1](e, e) = s3;
    m[1](g, g) = -2 * s3;
    auto sym = [](Matrix& x, int a, int b) { x(a, b) = x(b, a) = 1.0; };
    auto asym = [](Matrix& x, int a, int b) {
      x(a, b) = -kI;
      x(b, a) = kI;
    };
    sym(m[2], f, e);
    sym(m[3], f, g);
    sym(m[4], e, g);
    asym(m[5], f, e);
    asym(m[6], f, g);
    asym(m[7], e, g);
    return m;
  }();
  return mats;
}

Eigen::VectorXd gellmann_coords(const DensityMatrix& rho) {
  if (rho.dim() != 3) throw DimensionError("Gell-Mann coordinates need a 3-level state");
  Eigen::VectorXd q(8);
  const auto& m = gellmann_matrices();
  for (int k = 0; k < 8; ++k) q(k) = std::real((m[k] * rho.matrix()).trace());
  return q;
}

DensityMatrix from_gellmann(const Eigen::VectorXd& q) {
  if (q.size() != 8) throw DimensionError("need 8 Gell-Mann coordinates");
  Matrix rho = Matrix::Identity(3, 3) / 3.0;
  const auto& m = gellmann_matrices();
  for (int k = 0; k < 8; ++k) rho += 0.5 * q(k) * m[k];
  return DensityMatrix(Operator(Dims{3}, std::move(rho)));
}

RateTable longitudinal_rates(const std::vector<std::string>& levels, const std::map<std::string, double>& g,
                             double kappa, double omega_c) {
  if (!(omega_c > 0)) throw std::invalid_argument("omega_c must be > 0");
  if (!(kappa > 0)) throw std::invalid_argument("kappa must be > 0");
  const auto n = static_cast<Eigen::Index>(levels.size());
  std::vector<cplx> a;
  std::vector<double> gv;
  for (const auto& l : levels) {
    auto it = g.find(l);
    if (it == g.end()) throw std::invalid_argument("no coupling for level " + l);
    gv.push_back(it->second);
    a.push_back(-2.0 * kI * it->second / (kappa + 2.0 * kI * omega_c));
  }
  RateTable t;
  t.levels = levels;
  t.gamma = Eigen::MatrixXd::Zero(n, n);
  t.upsilon = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) {
      if (j == l) continue;
      // products a_j a_l* are real here, so only the phase-kick term survives
      t.gamma(j, l) = 0.5 * kappa * std::norm(a[j] - a[l]);
      t.upsilon(j, l) = gv[l] * std::real(a[l]) - gv[j] * std::real(a[j]);
    }
  return t;
}

}  // namespace zeno
