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

#include "zeno/husimi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "zeno/fullsim.hpp"

namespace zeno {

using std::numbers::pi;

HusimiGrid husimi_q(const Matrix& rho, const HusimiGridSpec& spec) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) throw DimensionError("cavity state must be square");
  if (spec.resolution < 2) throw std::invalid_argument("Husimi grid needs at least 2 points per axis");
  if (!(spec.x_max > spec.x_min) || !(spec.p_max > spec.p_min)) throw std::invalid_argument("empty Husimi window");
  const auto n = static_cast<std::size_t>(rho.rows());
  const auto r = static_cast<Eigen::Index>(spec.resolution);
  HusimiGrid g;
  for (Eigen::Index k = 0; k < r; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(r - 1);
    g.x.push_back(spec.x_min + (spec.x_max - spec.x_min) * f);
    g.p.push_back(spec.p_min + (spec.p_max - spec.p_min) * f);
  }
  g.values.resize(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) {
      const cplx alpha(g.x[j], g.p[i]);
      if (std::norm(alpha) > 0.5 * static_cast<double>(n)) ++g.unreliable;
      const Vector c = coherent_state(alpha, n);
      g.values(i, j) = std::max(0.0, std::real(c.dot(rho * c))) / pi;
    }
  return g;
}

namespace {

// params: (x_k, p_k, w_k) per lobe
struct LobeFunctor : Eigen::DenseFunctor<double> {
  const HusimiGrid* q;
  std::size_t lobes;
  LobeFunctor(const HusimiGrid* grid, std::size_t k)
      : Eigen::DenseFunctor<double>(static_cast<int>(3 * k), static_cast<int>(grid->values.size())),
        q(grid),
        lobes(k) {}

  int operator()(const Eigen::VectorXd& v, Eigen::VectorXd& fvec) const {
    const auto cols = static_cast<Eigen::Index>(q->x.size());
    for (Eigen::Index i = 0; i < q->values.rows(); ++i)
      for (Eigen::Index j = 0; j < cols; ++j) {
        double model = 0.0;
        for (std::size_t k = 0; k < lobes; ++k) {
          const double dx = q->x[j] - v(3 * k), dp = q->p[i] - v(3 * k + 1);
          model += v(3 * k + 2) * std::exp(-(dx * dx + dp * dp)) / pi;
        }
        fvec(i * cols + j) = model - q->values(i, j);
      }
    return 0;
  }
};

}  // namespace

std::vector<Lobe> fit_coherent_lobes(const HusimiGrid& q, std::size_t n_lobes) {
  if (n_lobes < 1 || n_lobes > 2) throw std::invalid_argument("fit supports 1 or 2 lobes");
  // moments of Q over the window
  double m0 = 0, mx = 0, mp = 0;
  for (Eigen::Index i = 0; i < q.values.rows(); ++i)
    for (Eigen::Index j = 0; j < q.values.cols(); ++j) {
      const double w = q.values(i, j);
      m0 += w;
      mx += w * q.x[j];
      mp += w * q.p[i];
    }
  if (!(m0 > 0)) throw std::runtime_error("Husimi grid carries no weight");
  mx /= m0;
  mp /= m0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (Eigen::Index i = 0; i < q.values.rows(); ++i)
    for (Eigen::Index j = 0; j < q.values.cols(); ++j) {
      const double w = q.values(i, j) / m0;
      const Eigen::Vector2d d(q.x[j] - mx, q.p[i] - mp);
      cov += w * d * d.transpose();
    }
  const double mass = m0 * q.dx() * q.dp();

  Eigen::VectorXd v(3 * n_lobes);
  if (n_lobes == 1) {
    v << mx, mp, mass;
  } else {
    // an equal mixture has covariance I/2 + d d^T / 4 along the separation d
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    const double excess = std::max(es.eigenvalues()(1) - 0.5, 1e-4);
    const Eigen::Vector2d half = std::sqrt(excess) * es.eigenvectors().col(1);
    v << mx + half(0), mp + half(1), 0.5 * mass, mx - half(0), mp - half(1), 0.5 * mass;
  }

  LobeFunctor f(&q, n_lobes);
  Eigen::NumericalDiff<LobeFunctor> nd(f);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<LobeFunctor>> lm(nd);
  lm.setXtol(1e-12);
  lm.setFtol(1e-14);
  lm.setMaxfev(2000);
  lm.minimize(v);

  std::vector<Lobe> out;
  for (std::size_t k = 0; k < n_lobes; ++k) out.push_back({cplx(v(3 * k), v(3 * k + 1)), v(3 * k + 2)});
  return out;
}

}  // namespace zeno
