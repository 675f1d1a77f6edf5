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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "zeno/opalg.hpp"

using namespace zeno;

TEST_CASE("tensor of identities") {
  auto t = tensor({Operator::identity({2}), Operator::identity({3})});
  CHECK(t.dims() == Dims{2, 3});
  CHECK((t.matrix() - Matrix::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("tensor basis bookkeeping") {
  auto t = tensor({basis_op(3, 1, 2), Operator::identity({2})});
  int nnz = 0;
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j)
      if (t.matrix()(i, j) != cplx(0.0)) {
        ++nnz;
        CHECK(t.matrix()(i, j) == cplx(1.0));
      }
  CHECK(nnz == 2);
}

TEST_CASE("tensor matches index loop") {
  std::mt19937_64 rng(7);
  Matrix a = testutil::random_matrix(2, rng), b = testutil::random_matrix(3, rng);
  auto t = tensor({Operator::from_matrix(a), Operator::from_matrix(b)});
  double dev = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) dev = std::max(dev, std::abs(t.matrix()(i * 3 + k, j * 3 + l) - a(i, j) * b(k, l)));
  CHECK(dev == 0.0);
}

TEST_CASE("tensor associativity") {
  // small-integer entries keep every product exact
  std::mt19937_64 rng(8);
  auto a = Operator::from_matrix(testutil::random_integer_matrix(2, rng));
  auto b = Operator::from_matrix(testutil::random_integer_matrix(3, rng));
  auto c = Operator::from_matrix(testutil::random_integer_matrix(2, rng));
  auto l = tensor({a, tensor({b, c})});
  auto r = tensor({tensor({a, b}), c});
  CHECK(l.dims() == r.dims());
  CHECK((l.matrix() - r.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("operator rejects mismatched dims") {
  CHECK_THROWS_AS(Operator(Dims{2, 2}, Matrix::Identity(3, 3)), DimensionError);
  CHECK_THROWS_AS(Operator(Dims{2}, Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("partial trace of product state") {
  std::mt19937_64 rng(1);
  auto ra = testutil::random_density(3, rng), rb = testutil::random_density(2, rng);
  DensityMatrix prod(tensor({Operator::from_matrix(ra), Operator::from_matrix(rb)}));
  auto red_a = partial_trace(prod, {0});
  auto red_b = partial_trace(prod, {1});
  CHECK((red_a.matrix() - ra).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((red_b.matrix() - rb).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace of Bell state") {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  auto rho = DensityMatrix::pure({2, 2}, psi);
  for (std::size_t k : {0u, 1u}) {
    auto r = partial_trace(rho, {k});
    CHECK((r.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("partial trace vs double-loop oracle") {
  std::mt19937_64 rng(2);
  // 6 (x) 4 written as dims [3,2,4]
  Matrix m = testutil::random_density(24, rng);
  DensityMatrix rho(Operator({3, 2, 4}, m));
  auto keep01 = partial_trace(rho, {0, 1});
  auto keep2 = partial_trace(rho, {2});
  Matrix o01 = Matrix::Zero(6, 6), o2 = Matrix::Zero(4, 4);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 4; ++k) o01(i, j) += m(i * 4 + k, j * 4 + k);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 6; ++k) o2(i, j) += m(k * 4 + i, k * 4 + j);
  CHECK((keep01.matrix() - o01).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((keep2.matrix() - o2).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(std::abs(keep2.op().trace() - 1.0) < 1e-12);
  // middle factor: trace out the qutrit and the 4-level factor
  auto keep1 = partial_trace(rho, {1});
  Matrix o1 = Matrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int c = 0; c < 4; ++c) o1(i, j) += m(a * 8 + i * 4 + c, a * 8 + j * 4 + c);
  CHECK((keep1.matrix() - o1).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK_THROWS_AS(partial_trace(rho, {3}), DimensionError);
}

TEST_CASE("analytic dephasing") {
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = 1;
  sz(1, 1) = -1;
  LindbladSpec spec{Operator::zero({2}), {{1.0, Operator::from_matrix(sz)}}};
  Vector psi(2);
  psi << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  auto rho0 = DensityMatrix::pure({2}, psi);
  std::vector<double> grid{0.0, 0.5};
  auto out = evolve_lindblad(spec, rho0, grid);
  CHECK(std::abs(out[1].matrix()(0, 1) - 0.5 * std::exp(-1.0)) < 1e-9);
  CHECK(std::abs(out[1].matrix()(0, 1) - 0.18393972058572117) < 1e-9);
  auto ex = expm_liouvillian(spec, rho0, 0.5);
  CHECK(std::abs(ex.matrix()(0, 1) - 0.5 * std::exp(-1.0)) < 1e-12);
}

TEST_CASE("full Rabi period returns") {
  const double omega = 2.0;
  Matrix sy(2, 2);
  sy << 0, -kI, kI, 0;
  LindbladSpec spec{Operator::from_matrix(0.5 * omega * sy), {}};
  std::mt19937_64 rng(3);
  auto rho0 = DensityMatrix(Operator::from_matrix(testutil::random_density(2, rng)));
  std::vector<double> grid{0.0, 2 * std::numbers::pi / omega};
  auto out = evolve_lindblad(spec, rho0, grid);
  CHECK((out[1].matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("expm oracle closed-system and t=0") {
  std::mt19937_64 rng(4);
  Matrix h = testutil::random_hermitian(4, rng);
  auto rho0 = DensityMatrix(Operator::from_matrix(testutil::random_density(4, rng)));
  LindbladSpec spec{Operator::from_matrix(h), {}};
  auto r0 = expm_liouvillian(spec, rho0, 0.0);
  CHECK((r0.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const double t = 0.7;
  Vector ph = (-kI * t * es.eigenvalues().cast<cplx>()).array().exp();
  Matrix u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  auto rt = expm_liouvillian(spec, rho0, t);
  CHECK((rt.matrix() - u * rho0.matrix() * u.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  LindbladSpec big{Operator::zero({13}), {}};
  auto rho_big = DensityMatrix(Operator::identity({13}) * cplx(1.0 / 13));
  CHECK_THROWS_AS(expm_liouvillian(big, rho_big, 1.0), DimensionError);
}

TEST_CASE("random specs agree with oracle and keep invariants") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 7;
    auto spec = testutil::random_spec(d, rng);
    auto rho0 = DensityMatrix(Operator::from_matrix(testutil::random_density(d, rng)));
    std::vector<double> grid{0.0, 0.1, 0.2, 0.3};
    auto out = evolve_lindblad(spec, rho0, grid);
    auto ex = expm_liouvillian(spec, rho0, 0.3);
    CHECK((out.back().matrix() - ex.matrix()).cwiseAbs().maxCoeff() <= 1e-8);
    for (const auto& r : out) {
      CHECK(r.trace_defect() <= 1e-8);
      CHECK(r.min_eigenvalue() >= -1e-7);
      CHECK(r.op().hermiticity_defect() <= 1e-12);
    }
  }
}

TEST_CASE("linearity of evolution") {
  std::mt19937_64 rng(6);
  auto spec = testutil::random_spec(5, rng);
  Matrix r1 = testutil::random_density(5, rng), r2 = testutil::random_density(5, rng);
  const double a = 0.3;
  std::vector<double> grid{0.0, 0.4};
  auto e1 = evolve_lindblad(spec, DensityMatrix(Operator::from_matrix(r1)), grid);
  auto e2 = evolve_lindblad(spec, DensityMatrix(Operator::from_matrix(r2)), grid);
  auto em = evolve_lindblad(spec, DensityMatrix(Operator::from_matrix(a * r1 + (1 - a) * r2)), grid);
  Matrix mix = a * e1[1].matrix() + (1 - a) * e2[1].matrix();
  CHECK((em[1].matrix() - mix).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("sparse kernel path agrees with fine RK4 reference") {
  // D = 32 with a sparse H triggers the sparse product branch
  std::mt19937_64 rng(9);
  const int d = 32;
  Matrix h = Matrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    h(i, i) = 0.1 * i;
    h(i, i + 1) = cplx(0.3, 0.1);
    h(i + 1, i) = cplx(0.3, -0.1);
  }
  Matrix l = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) l(i - 1, i) = std::sqrt(static_cast<double>(i)) * 0.2;
  LindbladSpec spec{Operator::from_matrix(h), {{0.5, Operator::from_matrix(l)}}};
  auto rho0 = DensityMatrix(Operator::from_matrix(testutil::random_density(d, rng)));
  std::vector<double> grid{0.0, 0.5};
  auto out = evolve_lindblad(spec, rho0, grid);
  Matrix gen = liouvillian(spec);
  Vector v = Eigen::Map<const Vector>(rho0.matrix().data(), d * d);
  const int n = 500;
  const double dt = 0.5 / n;
  for (int s = 0; s < n; ++s) {
    Vector k1 = gen * v, k2 = gen * (v + 0.5 * dt * k1), k3 = gen * (v + 0.5 * dt * k2), k4 = gen * (v + dt * k3);
    v += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  Matrix ref = Eigen::Map<Matrix>(v.data(), d, d);
  CHECK((out[1].matrix() - ref).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("non-Hermitian evolution") {
  std::mt19937_64 rng(10);
  Matrix h = testutil::random_hermitian(3, rng);
  Vector psi = Vector::Zero(3);
  psi(0) = 1;
  std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  IntegratorConfig tight;
  tight.rel_tol = 1e-12;
  tight.abs_tol = 1e-14;
  auto out = evolve_nonhermitian(Operator::from_matrix(h), psi, grid, tight);
  for (const auto& s : out) CHECK(std::abs(s.norm - 1.0) < 1e-10);

  const double g = 1.3;
  Matrix decay = Matrix::Zero(1, 1);
  decay(0, 0) = -kI * (g / 2);
  Vector one = Vector::Ones(1);
  auto dec = evolve_nonhermitian(Operator::from_matrix(decay), one, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(dec[k].norm - std::exp(-g * grid[k] / 2)) < 1e-10);
}

TEST_CASE("integrator errors") {
  LindbladSpec spec{Operator::zero({2}), {}};
  auto rho0 = DensityMatrix(Operator::identity({2}) * cplx(0.5));
  std::vector<double> bad{0.0, 1.0, 0.5};
  CHECK_THROWS(evolve_lindblad(spec, rho0, bad));
  auto wrong = DensityMatrix(Operator::identity({3}) * cplx(1.0 / 3));
  std::vector<double> grid{0.0, 1.0};
  CHECK_THROWS_AS(evolve_lindblad(spec, wrong, grid), DimensionError);
  IntegratorConfig tiny;
  tiny.max_steps = 3;
  tiny.max_step = 1e-3;
  try {
    evolve_lindblad(spec, rho0, grid, tiny);
    CHECK(false);
  } catch (const IntegratorError& e) {
    CHECK(e.time() > 0.0);
  }
  LindbladSpec neg{Operator::zero({2}), {{-1.0, Operator::identity({2})}}};
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}
