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

#include "zeno/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace zeno {

std::size_t product(const Dims& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

Operator::Operator(Dims dims, Matrix entries) : dims_(std::move(dims)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator matrix must be square");
  if (dims_.empty()) throw DimensionError("operator needs at least one factor");
  for (auto d : dims_)
    if (d == 0) throw DimensionError("zero-dimensional factor");
  if (product(dims_) != static_cast<std::size_t>(m_.rows()))
    throw DimensionError("factor dimensions do not match matrix size");
}

Operator Operator::identity(const Dims& dims) {
  auto n = static_cast<Eigen::Index>(product(dims));
  return {dims, Matrix::Identity(n, n)};
}

Operator Operator::zero(const Dims& dims) {
  auto n = static_cast<Eigen::Index>(product(dims));
  return {dims, Matrix::Zero(n, n)};
}

Operator Operator::from_matrix(Matrix entries) {
  Dims d{static_cast<std::size_t>(entries.rows())};
  return {std::move(d), std::move(entries)};
}

double Operator::hermiticity_defect() const {
  if (m_.size() == 0) return 0.0;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

static void require_same(const Dims& a, const Dims& b) {
  if (a != b) throw DimensionError("operator dimensions differ");
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_same(dims_, rhs.dims_);
  m_ += rhs.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same(dims_, rhs.dims_);
  m_ -= rhs.m_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }
Operator operator*(const Operator& a, const Operator& b) {
  require_same(a.dims(), b.dims());
  return {a.dims(), a.matrix() * b.matrix()};
}
Operator operator*(cplx s, Operator a) { return a *= s; }
Operator operator*(Operator a, cplx s) { return a *= s; }

Operator tensor(std::span<const Operator> ops) {
  if (ops.empty()) throw DimensionError("tensor of an empty list");
  Dims dims = ops[0].dims();
  Matrix acc = ops[0].matrix();
  for (std::size_t k = 1; k < ops.size(); ++k) {
    const Matrix& b = ops[k].matrix();
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
    acc.swap(next);
    dims.insert(dims.end(), ops[k].dims().begin(), ops[k].dims().end());
  }
  return {std::move(dims), std::move(acc)};
}

Operator tensor(std::initializer_list<Operator> ops) {
  return tensor(std::span<const Operator>(ops.begin(), ops.size()));
}

Operator basis_op(std::size_t d, std::size_t i, std::size_t j) {
  if (i >= d || j >= d) throw DimensionError("basis index out of range");
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return {Dims{d}, std::move(m)};
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(Operator op, double tolerance) : op_(std::move(op)), tolerance_(tolerance) {
  if (op_.dim() == 0) throw DimensionError("empty density matrix");
}

DensityMatrix DensityMatrix::pure(const Dims& dims, const Vector& psi) {
  if (product(dims) != static_cast<std::size_t>(psi.size()))
    throw DimensionError("state vector size does not match dims");
  return DensityMatrix(Operator(dims, psi * psi.adjoint()));
}

double DensityMatrix::trace_defect() const { return std::abs(op_.trace() - 1.0); }

double DensityMatrix::min_eigenvalue() const {
  Matrix h = 0.5 * (matrix() + matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<std::string> DensityMatrix::violations() const {
  std::vector<std::string> out;
  auto fmt = [](const char* what, double v) {
    std::ostringstream s;
    s << what << " " << v;
    return s.str();
  };
  double h = op_.hermiticity_defect();
  if (h > tolerance_) out.push_back(fmt("hermiticity defect", h));
  double t = trace_defect();
  if (t > tolerance_) out.push_back(fmt("trace defect", t));
  double e = min_eigenvalue();
  if (e < -tolerance_) out.push_back(fmt("negative eigenvalue", e));
  return out;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  Matrix d = a - b;
  d = 0.5 * (d + d.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep_in) {
  const Dims& dims = rho.dims();
  std::vector<std::size_t> keep(keep_in.begin(), keep_in.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw DimensionError("partial trace must keep at least one factor");
  for (auto k : keep)
    if (k >= dims.size()) throw DimensionError("partial trace index out of range");

  const std::size_t n = rho.dim();
  const std::size_t nf = dims.size();
  std::vector<bool> kept(nf, false);
  for (auto k : keep) kept[k] = true;

  Dims kdims;
  for (auto k : keep) kdims.push_back(dims[k]);
  const std::size_t nk = product(kdims);
  const std::size_t nt = n / nk;

  // split each flat index into (kept, traced) flat indices
  std::vector<std::size_t> ki(n), ti(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rem = i, kstride = 1, tstride = 1, kidx = 0, tidx = 0;
    for (std::size_t f = nf; f-- > 0;) {
      std::size_t digit = rem % dims[f];
      rem /= dims[f];
      if (kept[f]) {
        kidx += digit * kstride;
        kstride *= dims[f];
      } else {
        tidx += digit * tstride;
        tstride *= dims[f];
      }
    }
    ki[i] = kidx;
    ti[i] = tidx;
  }
  std::vector<std::vector<std::size_t>> groups(nt);
  for (std::size_t i = 0; i < n; ++i) groups[ti[i]].push_back(i);

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
  for (const auto& g : groups)
    for (auto a : g)
      for (auto b : g) out(ki[a], ki[b]) += m(a, b);
  return DensityMatrix(Operator(std::move(kdims), std::move(out)), rho.tolerance());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

}  // namespace zeno
