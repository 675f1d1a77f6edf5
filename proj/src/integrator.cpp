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

#include <cmath>
#include <memory>

#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include "zeno/opalg.hpp"

namespace zeno {

namespace {

using Sparse = Eigen::SparseMatrix<cplx>;

// Dense products are faster for small or well-filled operators.
bool prefer_sparse(const Matrix& m) {
  if (m.rows() < 32) return false;
  Eigen::Index nnz = (m.array() != cplx(0.0)).count();
  return static_cast<double>(nnz) < 0.1 * static_cast<double>(m.size());
}

struct Kernel {
  Matrix dense;
  Sparse sparse;
  bool use_sparse = false;

  explicit Kernel(const Matrix& m) : dense(m), use_sparse(prefer_sparse(m)) {
    if (use_sparse) sparse = m.sparseView();
  }
  template <class Rhs>
  Matrix apply(const Rhs& x) const {
    if (use_sparse) return sparse * x;
    return dense * x;
  }
};

class LindbladRhs {
 public:
  explicit LindbladRhs(const LindbladSpec& spec) {
    Matrix heff = spec.hamiltonian.matrix();
    for (const auto& c : spec.channels) {
      if (c.rate == 0.0) continue;
      const Matrix& l = c.jump.matrix();
      heff -= 0.5 * kI * c.rate * (l.adjoint() * l);
      jumps_.emplace_back(std::sqrt(c.rate) * l);
    }
    heff_ = std::make_unique<Kernel>(heff);
  }

  void operator()(double, const Matrix& rho, Matrix& out) const {
    Matrix x = heff_->apply(rho);
    out.noalias() = -kI * x;
    out.noalias() += kI * x.adjoint();
    for (const auto& l : jumps_) {
      Matrix lr = l.apply(rho);
      out.noalias() += l.apply(lr.adjoint());
    }
  }

 private:
  std::unique_ptr<Kernel> heff_;
  std::vector<Kernel> jumps_;
};

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

void LindbladSpec::validate() const {
  if (hamiltonian.dim() == 0) throw DimensionError("empty Hamiltonian");
  if (!hamiltonian.is_hermitian(1e-10)) throw std::invalid_argument("Hamiltonian is not Hermitian");
  for (const auto& c : channels) {
    if (c.jump.dims() != hamiltonian.dims()) throw DimensionError("jump operator dimensions differ from H");
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) throw std::invalid_argument("channel rate must be >= 0");
  }
}

std::vector<DensityMatrix> evolve_lindblad(const LindbladSpec& spec, const DensityMatrix& rho0,
                                           std::span<const double> t_grid, const IntegratorConfig& cfg) {
  spec.validate();
  if (rho0.dims() != spec.dims()) throw DimensionError("initial state dimensions differ from H");
  if (t_grid.empty() || t_grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");

  LindbladRhs rhs(spec);
  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  const Dims dims = spec.dims();
  const double tol = rho0.tolerance();
  integrate<Matrix>(
      rhs, rho0.matrix(), t_grid, cfg,
      [](Matrix& y) { y = 0.5 * (y + y.adjoint()).eval(); },
      [&](std::size_t, const Matrix& y) { out.emplace_back(Operator(dims, y), tol); });
  return out;
}

std::vector<NoJumpSample> evolve_nonhermitian(const Operator& h_eff, const Vector& psi0,
                                              std::span<const double> t_grid, const IntegratorConfig& cfg) {
  if (static_cast<std::size_t>(psi0.size()) != h_eff.dim()) throw DimensionError("state size differs from H_eff");
  if (t_grid.empty() || t_grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
  Kernel k(h_eff.matrix());
  std::vector<NoJumpSample> out;
  out.reserve(t_grid.size());
  integrate<Vector>(
      [&](double, const Vector& y, Vector& dy) { dy = -kI * k.apply(y); }, psi0, t_grid, cfg,
      [](Vector&) {}, [&](std::size_t, const Vector& y) { out.push_back({y, y.norm()}); });
  return out;
}

Matrix liouvillian(const LindbladSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(spec.hamiltonian.dim());
  const Matrix id = Matrix::Identity(n, n);
  const Matrix& h = spec.hamiltonian.matrix();
  Matrix gen = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& c : spec.channels) {
    const Matrix& l = c.jump.matrix();
    Matrix ll = l.adjoint() * l;
    gen += c.rate * (kron(l.conjugate(), l) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id));
  }
  return gen;
}

DensityMatrix expm_liouvillian(const LindbladSpec& spec, const DensityMatrix& rho0, double t) {
  if (spec.hamiltonian.dim() > 12) throw DimensionError("expm_liouvillian is limited to D <= 12");
  if (rho0.dims() != spec.dims()) throw DimensionError("initial state dimensions differ from H");
  const auto n = static_cast<Eigen::Index>(spec.hamiltonian.dim());
  Matrix prop = (liouvillian(spec) * t).exp();
  Vector v = Eigen::Map<const Vector>(rho0.matrix().data(), n * n);
  Vector w = prop * v;
  Matrix rho = Eigen::Map<Matrix>(w.data(), n, n);
  return DensityMatrix(Operator(spec.dims(), rho), rho0.tolerance());
}

}  // namespace zeno
