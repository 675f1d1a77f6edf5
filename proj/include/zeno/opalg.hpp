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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/integrator.hpp"

namespace zeno {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

inline constexpr cplx kI{0.0, 1.0};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense square matrix tagged with the dimensions of its tensor factors.
/// The leftmost factor varies slowest in the flattened index.
class Operator {
 public:
  Operator() = default;
  Operator(Dims dims, Matrix entries);

  static Operator identity(const Dims& dims);
  static Operator zero(const Dims& dims);
  /// Single-factor operator; dims = {rows}.
  static Operator from_matrix(Matrix entries);

  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

  cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  Operator adjoint() const { return {dims_, m_.adjoint()}; }
  cplx trace() const { return m_.trace(); }

  /// max |A - A^dagger| over all entries.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(cplx s);

 private:
  Dims dims_;
  Matrix m_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx s, Operator a);
Operator operator*(Operator a, cplx s);

std::size_t product(const Dims& dims);

/// Kronecker product in the given order.
Operator tensor(std::span<const Operator> ops);
Operator tensor(std::initializer_list<Operator> ops);

/// |i><j| on a single factor of dimension d.
Operator basis_op(std::size_t d, std::size_t i, std::size_t j);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Operator op, double tolerance = 1e-9);

  static DensityMatrix pure(const Dims& dims, const Vector& psi);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const Dims& dims() const { return op_.dims(); }
  std::size_t dim() const { return op_.dim(); }
  double tolerance() const { return tolerance_; }

  double trace_defect() const;
  double min_eigenvalue() const;

  /// Human-readable list of violated state invariants; empty when valid.
  std::vector<std::string> violations() const;

 private:
  Operator op_;
  double tolerance_ = 1e-9;
};

/// Reduced state over the factors listed in `keep` (sorted, deduplicated).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const Matrix& a, const Matrix& b);

struct Channel {
  double rate = 0.0;  // 1/us
  Operator jump;
};

/// d rho/dt = -i[H, rho] + sum_k rate_k D[L_k] rho, angular units (rad/us).
struct LindbladSpec {
  Operator hamiltonian;
  std::vector<Channel> channels;

  const Dims& dims() const { return hamiltonian.dims(); }
  /// Throws DimensionError / std::invalid_argument on a malformed spec.
  void validate() const;
};

/// rho(t) on every point of t_grid. t_grid must start at 0 and increase.
/// Hermiticity is restored after each accepted step.
std::vector<DensityMatrix> evolve_lindblad(const LindbladSpec& spec, const DensityMatrix& rho0,
                                           std::span<const double> t_grid,
                                           const IntegratorConfig& cfg = {});

struct NoJumpSample {
  Vector state;  // unnormalized
  double norm = 1.0;
};

/// Solves d psi/dt = -i H_eff psi without renormalization.
std::vector<NoJumpSample> evolve_nonhermitian(const Operator& h_eff, const Vector& psi0,
                                              std::span<const double> t_grid,
                                              const IntegratorConfig& cfg = {});

/// Column-stacking superoperator of the Lindbladian, size D^2 x D^2.
Matrix liouvillian(const LindbladSpec& spec);

/// Exact propagation exp(L t) rho0. Validation oracle; requires D <= 12.
DensityMatrix expm_liouvillian(const LindbladSpec& spec, const DensityMatrix& rho0, double t);

}  // namespace zeno
