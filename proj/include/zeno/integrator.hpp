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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace zeno {

enum class IntegratorMethod { DormandPrince45 };

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;  // us; 0 means unbounded
  double initial_step = 0.0;  // us; 0 picks one automatically
  IntegratorMethod method = IntegratorMethod::DormandPrince45;
  std::size_t max_steps = 50'000'000;
};

class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& what, double t)
      : std::runtime_error(what + " at t=" + std::to_string(t) + " us"), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b*, embedded 4th-order difference
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <class State>
double scaled_error(const State& err, const State& y0, const State& y1, const IntegratorConfig& cfg) {
  auto sc = cfg.abs_tol + cfg.rel_tol * y0.array().abs().max(y1.array().abs());
  return std::sqrt((err.array().abs() / sc).square().mean());
}

}  // namespace detail

/// Adaptive Dormand-Prince integration of y' = f(t, y) over a time grid.
/// `f(t, y, dy)` writes the derivative; `post(y)` runs after every accepted
/// step; `observe(k, y)` is called for every grid point including t_grid[0].
template <class State, class Rhs, class Post, class Observe>
void integrate(Rhs&& f, State y, std::span<const double> t_grid, const IntegratorConfig& cfg,
               Post&& post, Observe&& observe) {
  using D = detail::Dopri;
  if (t_grid.empty()) return;
  if (cfg.rel_tol <= 0 || cfg.abs_tol <= 0) throw std::invalid_argument("tolerances must be positive");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw std::invalid_argument("time grid must be strictly increasing");

  double t = t_grid.front();
  observe(std::size_t{0}, y);
  if (t_grid.size() == 1) return;

  State k1, k2, k3, k4, k5, k6, k7, tmp, ynew, err;
  f(t, y, k1);

  const double span = t_grid.back() - t;
  double h = cfg.initial_step;
  if (h <= 0) {
    // Hairer-Wanner starting guess
    auto sc = cfg.abs_tol + cfg.rel_tol * y.array().abs();
    double d0 = std::sqrt((y.array().abs() / sc).square().mean());
    double d1 = std::sqrt((k1.array().abs() / sc).square().mean());
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, span);
  }
  if (cfg.max_step > 0) h = std::min(h, cfg.max_step);

  std::size_t steps = 0;
  std::size_t next = 1;
  double err_prev = 1e-4;
  while (next < t_grid.size()) {
    const double target = t_grid[next];
    bool clipped = false;
    double step = h;
    if (t + step >= target - 1e-14 * std::max(1.0, std::abs(target))) {
      step = target - t;
      clipped = true;
    }
    if (step < 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw IntegratorError("step size underflow", t);
    if (++steps > cfg.max_steps) throw IntegratorError("step budget exhausted", t);

    tmp = y + step * (D::a21 * k1);
    f(t + D::c2 * step, tmp, k2);
    tmp = y + step * (D::a31 * k1 + D::a32 * k2);
    f(t + D::c3 * step, tmp, k3);
    tmp = y + step * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3);
    f(t + D::c4 * step, tmp, k4);
    tmp = y + step * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4);
    f(t + D::c5 * step, tmp, k5);
    tmp = y + step * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5);
    f(t + step, tmp, k6);
    ynew = y + step * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
    f(t + step, ynew, k7);
    err = step * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);

    const double en = detail::scaled_error(err, y, ynew, cfg);
    if (!std::isfinite(en)) throw IntegratorError("non-finite state", t);

    if (en <= 1.0) {
      t = clipped ? target : t + step;
      y.swap(ynew);
      post(y);
      k1.swap(k7);
      // PI controller
      double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
      fac = std::clamp(fac, 0.2, 5.0);
      double hn = step * fac;
      // a clipped step should not shrink the next proposal
      h = clipped ? std::max(h, hn) : hn;
      if (cfg.max_step > 0) h = std::min(h, cfg.max_step);
      err_prev = std::max(en, 1e-4);
      if (clipped) {
        observe(next, y);
        ++next;
      }
    } else {
      double fac = std::max(0.2, 0.9 * std::pow(en, -0.2));
      h = step * fac;
    }
  }
}

}  // namespace zeno
