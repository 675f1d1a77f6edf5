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

#include "zeno/ideal_gate.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno {

void ZenoSystemSpec::validate() const {
  if (n_qubits < 2) throw std::invalid_argument("n_qubits must be >= 2");
  if (n_qubits > 12) throw std::invalid_argument("n_qubits too large");
  if (!(omega > 0)) throw std::invalid_argument("omega must be > 0");
  if (!(phi_axis >= 0 && phi_axis <= std::numbers::pi)) throw std::invalid_argument("phi_axis must lie in [0, pi]");
}

Dims ZenoSystemSpec::dims() const {
  Dims d{3};
  for (int k = 1; k < n_qubits; ++k) d.push_back(2);
  return d;
}

std::vector<std::string> level_labels(int n_qubits) {
  const std::size_t nq = static_cast<std::size_t>(n_qubits - 1);
  const std::size_t blk = std::size_t{1} << nq;
  std::vector<std::string> out;
  for (char q : {'g', 'e', 'f'})
    for (std::size_t x = 0; x < blk; ++x) {
      std::string s(1, q);
      for (std::size_t b = nq; b-- > 0;) s.push_back(((x >> b) & 1) ? 'e' : 'g');
      out.push_back(s);
    }
  return out;
}

std::size_t level_index(const std::string& label) {
  if (label.empty()) throw std::invalid_argument("empty level label");
  std::size_t idx;
  switch (label[0]) {
    case 'g': idx = 0; break;
    case 'e': idx = 1; break;
    case 'f': idx = 2; break;
    default: throw std::invalid_argument("bad qutrit level in '" + label + "'");
  }
  for (std::size_t k = 1; k < label.size(); ++k) {
    if (label[k] != 'g' && label[k] != 'e') throw std::invalid_argument("bad qubit level in '" + label + "'");
    idx = 2 * idx + (label[k] == 'e' ? 1 : 0);
  }
  return idx;
}

std::vector<std::size_t> computational_indices(int n_qubits) {
  const std::size_t n = std::size_t{1} << n_qubits;
  std::vector<std::size_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = k;  // g/e qutrit blocks come first
  return out;
}

std::size_t blocked_index(int n_qubits) {
  const std::size_t blk = std::size_t{1} << (n_qubits - 1);
  return 2 * blk + blk - 1;
}

Matrix qutrit_rabi(double omega, double phi) {
  Matrix h = Matrix::Zero(3, 3);
  const double s = std::sin(phi), c = std::cos(phi);
  h(1, 2) = 0.5 * kI * s * omega;
  h(2, 1) = -0.5 * kI * s * omega;
  h(1, 1) = 0.5 * c * omega;
  h(2, 2) = -0.5 * c * omega;
  return h;
}

Operator projector_N(const ZenoSystemSpec& spec) {
  spec.validate();
  Operator p = Operator::identity(spec.dims());
  Matrix m = p.matrix();
  auto b = static_cast<Eigen::Index>(blocked_index(spec.n_qubits));
  m(b, b) = 0.0;
  return {spec.dims(), std::move(m)};
}

Operator rabi_hamiltonian(const ZenoSystemSpec& spec) {
  spec.validate();
  std::vector<Operator> f{Operator::from_matrix(qutrit_rabi(spec.omega, spec.phi_axis))};
  for (int k = 1; k < spec.n_qubits; ++k) f.push_back(Operator::identity({2}));
  return tensor(f);
}

Operator zeno_hamiltonian(const ZenoSystemSpec& spec) {
  Operator p = projector_N(spec);
  return p * rabi_hamiltonian(spec) * p;
}

namespace {

// exp(-i t (Omega/2)(cos(phi) sz - sin(phi) sy)) on the (e, f) pair
Eigen::Matrix2cd pair_propagator(double omega, double phi, double t) {
  const double c = std::cos(0.5 * omega * t), s = std::sin(0.5 * omega * t);
  const double cp = std::cos(phi), sp = std::sin(phi);
  Eigen::Matrix2cd m;
  m << cplx(c, -s * cp), s * sp, -s * sp, cplx(c, s * cp);
  return m;
}

Operator block_unitary(const ZenoSystemSpec& spec, double t, bool projected) {
  spec.validate();
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  const auto n = static_cast<Eigen::Index>(spec.dim());
  const Eigen::Index blk = n / 3;
  Matrix u = Matrix::Identity(n, n);
  auto m = pair_propagator(spec.omega, spec.phi_axis, t);
  for (Eigen::Index x = 0; x < blk; ++x) {
    const Eigen::Index e = blk + x, f = 2 * blk + x;
    if (projected && x == blk - 1) {
      // |f e..e> is removed; |e e..e> only sees its diagonal energy
      u(e, e) = std::exp(-kI * (0.5 * spec.omega * std::cos(spec.phi_axis) * t));
      continue;
    }
    u(e, e) = m(0, 0);
    u(e, f) = m(0, 1);
    u(f, e) = m(1, 0);
    u(f, f) = m(1, 1);
  }
  return {spec.dims(), std::move(u)};
}

}  // namespace

Operator ideal_unitary(const ZenoSystemSpec& spec, double t) { return block_unitary(spec, t, true); }

Operator free_unitary(const ZenoSystemSpec& spec, double t) { return block_unitary(spec, t, false); }

Operator ncphase_target(const ZenoSystemSpec& spec) {
  const double tg = spec.gate_time();
  Operator full = free_unitary(spec, tg) * ideal_unitary(spec, tg);
  Dims d(static_cast<std::size_t>(spec.n_qubits), 2);
  return {d, restrict(full.matrix(), computational_indices(spec.n_qubits))};
}

Matrix restrict(const Matrix& op, const std::vector<std::size_t>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = op(idx[i], idx[j]);
  return out;
}

}  // namespace zeno
