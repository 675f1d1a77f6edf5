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

#include "zeno/haar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zeno/finite_meas.hpp"

namespace zeno {

using std::numbers::pi;

void HaarConfig::validate() const {
  if (dim < 2) throw std::invalid_argument("Haar dimension must be >= 2");
  if (n_samples < 1) throw std::invalid_argument("need at least one Haar sample");
}

double NormalStream::uniform() {
  // 53 random bits, shifted off zero so log() is finite
  return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double th = 2.0 * pi * uniform();
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return r * std::cos(th);
}

std::vector<Vector> sample_haar_states(const HaarConfig& cfg) {
  cfg.validate();
  NormalStream ns(cfg.seed);
  const auto d = static_cast<Eigen::Index>(cfg.dim);
  std::vector<Vector> out;
  out.reserve(cfg.n_samples);
  for (std::size_t s = 0; s < cfg.n_samples; ++s) {
    Vector v(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double a = ns.next();
      const double b = ns.next();
      v(k) = cplx(a, b);
    }
    v /= v.norm();
    out.push_back(std::move(v));
  }
  return out;
}

McEstimate average_fidelity_mc(const std::function<double(const Vector&)>& f, const std::vector<Vector>& states) {
  if (states.empty()) throw std::invalid_argument("no samples");
  // Welford
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (const auto& s : states) {
    const double x = f(s);
    ++n;
    const double dx = x - mean;
    mean += dx / static_cast<double>(n);
    m2 += dx * (x - mean);
  }
  McEstimate e;
  e.mean = mean;
  e.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return e;
}

McEstimate average_fidelity_mc(const std::function<double(const Vector&)>& f, const HaarConfig& cfg) {
  return average_fidelity_mc(f, sample_haar_states(cfg));
}

namespace {

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool power_of_two(std::size_t d) { return d >= 2 && (d & (d - 1)) == 0; }

}  // namespace

std::vector<Matrix> unitary_operator_basis(std::size_t d, UnitaryBasisKind kind) {
  if (d < 2) throw DimensionError("unitary basis needs d >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  if (kind == UnitaryBasisKind::Pauli) {
    if (!power_of_two(d)) throw DimensionError("Pauli basis needs d = 2^k");
    Matrix px(2, 2), py(2, 2), pz(2, 2);
    px << 0, 1, 1, 0;
    py << 0, -kI, kI, 0;
    pz << 1, 0, 0, -1;
    const std::vector<Matrix> single{Matrix::Identity(2, 2), px, py, pz};
    std::vector<Matrix> basis = single;
    for (std::size_t dd = 2; dd < d; dd *= 2) {
      std::vector<Matrix> next;
      for (const auto& a : basis)
        for (const auto& b : single) next.push_back(kron2(a, b));
      basis.swap(next);
    }
    return basis;
  }
  Matrix x = Matrix::Zero(n, n), z = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    x((k + 1) % n, k) = 1.0;
    z(k, k) = std::exp(2.0 * pi * kI * static_cast<double>(k) / static_cast<double>(d));
  }
  std::vector<Matrix> basis;
  Matrix xa = Matrix::Identity(n, n);
  for (std::size_t a = 0; a < d; ++a) {
    Matrix zb = Matrix::Identity(n, n);
    for (std::size_t b = 0; b < d; ++b) {
      basis.push_back(xa * zb);
      zb = zb * z;
    }
    xa = xa * x;
  }
  return basis;
}

double nielsen_average_fidelity(const ChannelMap& channel, const Matrix& target, const std::vector<Matrix>& basis_in) {
  if (target.rows() != target.cols()) throw DimensionError("target unitary must be square");
  const auto d = static_cast<std::size_t>(target.rows());
  const std::vector<Matrix> basis =
      basis_in.empty() ? unitary_operator_basis(d, power_of_two(d) ? UnitaryBasisKind::Pauli : UnitaryBasisKind::Weyl)
                       : basis_in;
  if (basis.size() != d * d) throw DimensionError("unitary basis must have d^2 elements");
  cplx acc = 0.0;
  for (const auto& ui : basis) {
    if (ui.rows() != target.rows() || ui.cols() != target.cols()) throw DimensionError("basis element size");
    acc += (target * ui.adjoint() * target.adjoint() * channel(ui)).trace();
  }
  const double dd = static_cast<double>(d);
  return (acc.real() + dd * dd) / (dd * dd * (dd + 1));
}

double fbar_chi(double x, double y) {
  if (!(x > 0)) throw std::invalid_argument("X must be > 0");
  if (!(y >= 0)) throw std::invalid_argument("Y must be >= 0");
  return 0.5 + 0.1 * std::exp(-pi * y / (9 * x * x)) * std::cos(pi * y / (3 * x)) +
         0.2 * std::exp(-pi * y / (16 * x * x)) * std::cos(pi * y / (4 * x)) +
         0.2 * std::exp(-pi * y / (144 * x * x)) * std::cos(pi * y / (12 * x));
}

RateTable slow_markov_rates(double x, double y) {
  if (!(x > 0) || !(y >= 0)) throw std::invalid_argument("need X > 0 and Y >= 0");
  const double kappa = 1.0, omega = 1.0;
  const double eps = std::sqrt(y * omega * kappa / 2);
  const double dchi = x * kappa;
  DispersiveParams p;
  p.levels = {"gg", "ge", "eg", "ee"};
  p.chi = {{"gg", 0.0}, {"ge", dchi}, {"eg", dchi}, {"ee", 2 * dchi}};
  p.kappa = kappa;
  p.epsilon = eps;
  p.delta_ce = -3 * dchi;
  return steady_rates(p, true);
}

ChannelMap slow_markov_channel(double x, double y, CoherenceConvention conv) {
  const auto table = slow_markov_rates(x, y);
  const double t = 2 * pi;  // one gate period at Omega = 1
  const double f = conv == CoherenceConvention::Bloch ? 1.0 : 0.5;
  Matrix mult(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) mult(j, l) = std::exp(f * cplx(-table.gamma(j, l), table.upsilon(j, l)) * t);
  return [mult](const Matrix& m) -> Matrix {
    if (m.rows() != 4 || m.cols() != 4) throw DimensionError("slow-Markov channel acts on 4x4 operators");
    return mult.cwiseProduct(m);
  };
}

double combined_fidelity(double x, double y, bool heralded, CombineForm form) {
  const double fc = fbar_chi(x, y);
  FiniteGammaParams p;
  p.omega = 1.0;
  p.gamma = y;
  const double fh = fidelity_herald(p, true);
  const double f1 = heralded ? 1.0 : fidelity_first_order(p, true);
  if (form == CombineForm::Product) return fc * fh * f1;
  return fc + fh + f1 - 2.0;
}

FidelitySurface combined_fidelity_surface(const std::vector<double>& x_axis, const std::vector<double>& y_axis,
                                          bool heralded, CombineForm form) {
  auto increasing = [](const std::vector<double>& v) {
    if (v.empty()) return false;
    for (std::size_t k = 1; k < v.size(); ++k)
      if (!(v[k] > v[k - 1])) return false;
    return true;
  };
  if (!increasing(x_axis) || !increasing(y_axis)) throw std::invalid_argument("surface axes must increase strictly");
  FidelitySurface s;
  s.x_axis = x_axis;
  s.y_axis = y_axis;
  s.heralded = heralded;
  s.values.resize(static_cast<Eigen::Index>(y_axis.size()), static_cast<Eigen::Index>(x_axis.size()));
  for (std::size_t i = 0; i < y_axis.size(); ++i)
    for (std::size_t j = 0; j < x_axis.size(); ++j)
      s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          combined_fidelity(x_axis[j], y_axis[i], heralded, form);
  return s;
}

}  // namespace zeno
