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

#include "zeno/fullsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "zeno/ideal_gate.hpp"

namespace zeno {

using std::numbers::pi;

FullSimParams FullSimParams::zeno(int n_qubits, Readout readout, double omega, double phi_axis, std::size_t n_fock) {
  ZenoSystemSpec s{n_qubits, omega, phi_axis};
  s.validate();
  FullSimParams p;
  p.levels = level_labels(n_qubits);
  p.drive = rabi_hamiltonian(s).matrix();
  p.readout = std::move(readout);
  p.n_fock = n_fock;
  p.omega = omega;
  p.n_qubits = n_qubits;
  p.qudit_state = Vector::Zero(static_cast<Eigen::Index>(p.levels.size()));
  const auto comp = computational_indices(n_qubits);
  for (auto i : comp) p.qudit_state(static_cast<Eigen::Index>(i)) = 1.0;
  p.qudit_state /= std::sqrt(static_cast<double>(comp.size()));
  return p;
}

FullSimParams FullSimParams::qubit(Readout readout, double omega, std::size_t n_fock) {
  FullSimParams p;
  p.levels = {"g", "e"};
  p.drive = Matrix::Zero(2, 2);
  p.drive(0, 1) = p.drive(1, 0) = 0.5 * omega;
  p.readout = std::move(readout);
  p.n_fock = n_fock;
  p.omega = omega;
  p.qudit_state = Vector::Constant(2, 1.0 / std::sqrt(2.0));
  return p;
}

double FullSimParams::kappa() const {
  return std::visit([](const auto& r) { return r.kappa; }, readout);
}

double FullSimParams::final_time() const {
  if (t_final > 0) return t_final;
  if (omega > 0) return 2 * pi / omega;
  throw std::invalid_argument("t_final must be set when omega is 0");
}

void FullSimParams::validate() const {
  if (levels.empty()) throw std::invalid_argument("no qudit levels");
  if (n_fock < 2) throw std::invalid_argument("n_fock must be >= 2");
  const auto d = static_cast<Eigen::Index>(levels.size());
  if (drive.rows() != d || drive.cols() != d) throw DimensionError("drive size differs from level count");
  if ((drive - drive.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("drive is not Hermitian");
  if (qudit_state.size() != d) throw DimensionError("qudit state size differs from level count");
  if (std::abs(qudit_state.norm() - 1.0) > 1e-10) throw std::invalid_argument("qudit state must be normalized");
  if (!(t_final >= 0)) throw std::invalid_argument("t_final must be >= 0");
  if (const auto* dp = std::get_if<DispersiveParams>(&readout)) {
    dp->validate();
    if (dp->levels != levels) throw std::invalid_argument("dispersive levels differ from the qudit levels");
  } else {
    const auto& lr = std::get<LongitudinalReadout>(readout);
    if (!(lr.kappa > 0)) throw std::invalid_argument("kappa must be > 0");
    if (!(lr.omega_c > 0)) throw std::invalid_argument("omega_c must be > 0");
    for (const auto& l : levels)
      if (!lr.g.count(l)) throw std::invalid_argument("no coupling for level " + l);
  }
}

Matrix annihilation(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(m, m);
  for (Eigen::Index k = 1; k < m; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Vector coherent_state(cplx alpha, std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  Vector c(m);
  c(0) = 1.0;
  for (Eigen::Index k = 1; k < m; ++k) c(k) = c(k - 1) * alpha / std::sqrt(static_cast<double>(k));
  return c / c.norm();
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Dims full_dims(const FullSimParams& p) { return {p.qudit_dim(), p.n_fock}; }

}  // namespace

Operator build_hamiltonian(const FullSimParams& p, double t) {
  p.validate();
  const auto d = static_cast<Eigen::Index>(p.qudit_dim());
  const auto n = static_cast<Eigen::Index>(p.n_fock);
  const Matrix a = annihilation(p.n_fock);
  const Matrix num = a.adjoint() * a;
  const Matrix idc = Matrix::Identity(n, n);
  Matrix h = kron(p.drive, idc);
  if (const auto* dp = std::get_if<DispersiveParams>(&p.readout)) {
    const auto delta = dp->detunings();
    for (Eigen::Index j = 0; j < d; ++j) h.block(j * n, j * n, n, n) += delta[j] * num;
    const double eps = dp->epsilon_at(t);
    const cplx ph = std::exp(kI * dp->phi_drive);
    const Matrix drive = eps * (ph * a.adjoint() + std::conj(ph) * a);
    for (Eigen::Index j = 0; j < d; ++j) h.block(j * n, j * n, n, n) += drive;
  } else {
    const auto& lr = std::get<LongitudinalReadout>(p.readout);
    const Matrix x = a + a.adjoint();
    for (Eigen::Index j = 0; j < d; ++j)
      h.block(j * n, j * n, n, n) += lr.omega_c * num + lr.g.at(p.levels[j]) * x;
  }
  return {full_dims(p), std::move(h)};
}

LindbladSpec build_spec(const FullSimParams& p, double t) {
  LindbladSpec spec{build_hamiltonian(p, t), {}};
  const Matrix jump = kron(Matrix::Identity(static_cast<Eigen::Index>(p.qudit_dim()), static_cast<Eigen::Index>(p.qudit_dim())),
                           annihilation(p.n_fock));
  spec.channels.push_back({p.kappa(), Operator(full_dims(p), jump)});
  return spec;
}

DensityMatrix initial_state(const FullSimParams& p) {
  p.validate();
  const Vector c = coherent_state(p.alpha0, p.n_fock);
  const auto n = c.size();
  Vector psi(p.qudit_state.size() * n);
  for (Eigen::Index j = 0; j < p.qudit_state.size(); ++j) psi.segment(j * n, n) = p.qudit_state(j) * c;
  return DensityMatrix::pure(full_dims(p), psi);
}

double memory_estimate_bytes(const FullSimParams& p) {
  const double d = static_cast<double>(p.dim());
  return d * d * 16.0;
}

Matrix reduce_to_qudit(const Matrix& full, std::size_t n_fock) {
  const auto n = static_cast<Eigen::Index>(n_fock);
  if (n == 0 || full.rows() % n != 0) throw DimensionError("matrix size is not a multiple of n_fock");
  const Eigen::Index d = full.rows() / n;
  Matrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index l = 0; l < d; ++l) out(j, l) = full.block(j * n, l * n, n, n).trace();
  return out;
}

Matrix reduce_to_cavity(const Matrix& full, std::size_t n_fock) {
  const auto n = static_cast<Eigen::Index>(n_fock);
  if (n == 0 || full.rows() % n != 0) throw DimensionError("matrix size is not a multiple of n_fock");
  const Eigen::Index d = full.rows() / n;
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < d; ++j) out += full.block(j * n, j * n, n, n);
  return out;
}

double xi_fe(const Matrix& qudit_rho, int n_qubits) {
  const auto idx = static_cast<Eigen::Index>(blocked_index(n_qubits));
  if (qudit_rho.rows() != static_cast<Eigen::Index>(3u << (n_qubits - 1))) throw DimensionError("qudit size mismatch");
  return 1.0 - std::ldexp(1.0, n_qubits) * qudit_rho(idx, idx).real();
}

Matrix computational_block(const Matrix& qudit_rho, int n_qubits) {
  if (qudit_rho.rows() != static_cast<Eigen::Index>(3u << (n_qubits - 1))) throw DimensionError("qudit size mismatch");
  return restrict(qudit_rho, computational_indices(n_qubits));
}

double concurrence(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw DimensionError("concurrence needs a 4x4 block");
  if ((rho4 - rho4.adjoint()).cwiseAbs().maxCoeff() > 1e-8) throw std::invalid_argument("block is not Hermitian");
  const Matrix h = 0.5 * (rho4 + rho4.adjoint());
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  // eigenvalues of rho rho~ equal those of sqrt(rho) rho~ sqrt(rho), which is Hermitian PSD
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sq = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  const Matrix tilde = yy * h.conjugate() * yy;
  Matrix m = sq * tilde * sq;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es2(m, Eigen::EigenvaluesOnly);
  Eigen::VectorXd lam = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lam.data(), lam.data() + 4, std::greater<>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

namespace {

MetricsRow metrics(const FullSimParams& p, double t, const Matrix& full) {
  MetricsRow r;
  r.t = t;
  const Matrix q = reduce_to_qudit(full, p.n_fock);
  const auto d = static_cast<Eigen::Index>(p.qudit_dim());
  for (Eigen::Index j = 0; j < d; ++j) r.pop.push_back(q(j, j).real());
  r.trace_defect = std::abs(q.trace() - 1.0);
  const auto n = static_cast<Eigen::Index>(p.n_fock);
  for (Eigen::Index j = 0; j < d; ++j) r.top_fock += full(j * n + n - 1, j * n + n - 1).real();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.xi_fe = p.n_qubits >= 2 ? xi_fe(q, p.n_qubits) : nan;
  r.concurrence = p.n_qubits == 2 ? concurrence(computational_block(q, 2)) : nan;
  return r;
}

}  // namespace

FullSimResult run_fullsim(const FullSimParams& p, std::span<const double> t_grid, const FullSimOptions& opt) {
  p.validate();
  if (t_grid.empty() || t_grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
  if (memory_estimate_bytes(p) * 16 > opt.memory_limit_bytes) {
    std::ostringstream s;
    s << "full dimension " << p.dim() << " needs about " << memory_estimate_bytes(p) * 16 / 1e9
      << " GB of working storage";
    throw std::runtime_error(s.str());
  }

  // piecewise-constant epsilon: integrate each piece with its own Hamiltonian
  std::vector<double> breaks;
  if (const auto* dp = std::get_if<DispersiveParams>(&p.readout))
    for (const auto& s : dp->segments)
      if (s.t_end < t_grid.back()) breaks.push_back(s.t_end);
  breaks.push_back(t_grid.back());

  FullSimResult res;
  DensityMatrix rho = initial_state(p);
  std::size_t next = 0;  // next grid index to report
  double t0 = 0.0;
  auto record = [&](double t, const DensityMatrix& s) {
    res.rows.push_back(metrics(p, t, s.matrix()));
    if (opt.keep_cavity) res.cavity_states.push_back(reduce_to_cavity(s.matrix(), p.n_fock));
  };
  record(0.0, rho);
  next = 1;
  for (double t1 : breaks) {
    if (t1 <= t0) continue;
    std::vector<double> local{0.0};
    std::vector<bool> report{false};
    while (next < t_grid.size() && t_grid[next] <= t1) {
      local.push_back(t_grid[next] - t0);
      report.push_back(true);
      ++next;
    }
    if (local.back() < t1 - t0) {
      local.push_back(t1 - t0);
      report.push_back(false);
    }
    auto states = evolve_lindblad(build_spec(p, t0), rho, local, opt.integrator);
    for (std::size_t k = 1; k < states.size(); ++k)
      if (report[k]) record(t0 + local[k], states[k]);
    rho = states.back();
    t0 = t1;
  }

  double worst = 0.0;
  for (const auto& r : res.rows) worst = std::max(worst, r.top_fock);
  if (worst > 1e-6) {
    res.truncation_warning = true;
    std::ostringstream s;
    s << "top Fock population " << worst << " exceeds 1e-6; n_fock = " << p.n_fock << " may be too small";
    res.warnings.push_back(s.str());
  }
  if (opt.keep_final) res.final_state = rho;
  return res;
}

namespace {

std::vector<double> fom_values(const FullSimResult& r, const std::vector<FigureOfMerit>& foms) {
  std::vector<double> v;
  for (auto f : foms) {
    switch (f) {
      case FigureOfMerit::XiHalf: v.push_back(r.rows[1].xi_fe); break;
      case FigureOfMerit::XiFinal: v.push_back(r.rows[2].xi_fe); break;
      case FigureOfMerit::ConcurrenceFinal: v.push_back(r.rows[2].concurrence); break;
    }
  }
  return v;
}

}  // namespace

FockCertificate fock_convergence(FullSimParams p, const std::vector<FigureOfMerit>& foms, std::size_t step,
                                 std::size_t ceiling, std::size_t start, const FullSimOptions& opt) {
  if (step < 1) throw std::invalid_argument("fock step must be >= 1");
  if (foms.empty()) throw std::invalid_argument("no figures of merit requested");
  if (p.n_qubits < 2) throw std::invalid_argument("fock_convergence needs a Zeno level set");
  const double tf = p.final_time();
  const std::vector<double> grid{0.0, tf / 2, tf};
  FullSimOptions o = opt;
  o.keep_final = false;

  std::size_t n = std::max<std::size_t>(start, 2);
  p.n_fock = n;
  FullSimResult cur = run_fullsim(p, grid, o);
  std::vector<double> vcur = fom_values(cur, foms);
  while (n + step <= ceiling) {
    p.n_fock = n + step;
    FullSimResult nxt = run_fullsim(p, grid, o);
    std::vector<double> vnext = fom_values(nxt, foms);
    bool ok = true;
    for (std::size_t k = 0; k < vcur.size(); ++k) ok = ok && std::abs(vcur[k] - vnext[k]) < 1e-3;
    if (ok) return {n, vcur, vnext, std::move(cur)};
    n += step;
    cur = std::move(nxt);
    vcur = std::move(vnext);
  }
  throw std::runtime_error("Fock truncation did not converge below the ceiling " + std::to_string(ceiling));
}

}  // namespace zeno
