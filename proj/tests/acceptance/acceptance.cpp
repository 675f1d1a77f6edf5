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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../test_util.hpp"
#include "zeno/cli/config.hpp"
#include "zeno/cli/output.hpp"
#include "zeno/cli/scenarios.hpp"
#include "zeno/dispersive.hpp"
#include "zeno/finite_meas.hpp"
#include "zeno/fullsim.hpp"
#include "zeno/haar.hpp"
#include "zeno/husimi.hpp"
#include "zeno/ideal_gate.hpp"
#include "zeno/opalg.hpp"

using namespace zeno;
using std::numbers::pi;

namespace {

constexpr double kMHz = 2 * pi;  // 1 MHz as an angular rate in rad/us

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok: " : "FAILED: ") + what);
  }
  void info(const std::string& what) { notes.push_back("info: " + what); }
};

std::string fmt(const char* f, double a) {
  char b[160];
  std::snprintf(b, sizeof b, f, a);
  return b;
}
std::string fmt(const char* f, double a, double c) {
  char b[160];
  std::snprintf(b, sizeof b, f, a, c);
  return b;
}
std::string fmt(const char* f, double a, double c, double d) {
  char b[200];
  std::snprintf(b, sizeof b, f, a, c, d);
  return b;
}

std::vector<double> loggrid(double a, double b, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * k / (n - 1)));
  v.back() = b;
  return v;
}

std::map<std::string, double> uniform(double v) {
  std::map<std::string, double> m;
  for (const auto& l : level_labels(2)) m[l] = v;
  return m;
}

// ---------------------------------------------------------------------------

Outcome c1() {
  Outcome o;
  double worst = 0, worst_gap = 1;
  for (double y : loggrid(1, 1e4, 61)) {
    FiniteGammaParams p;
    p.gamma = y;
    const auto r = fidelity_report(p);
    if (y >= 50) worst = std::max(worst, std::abs(r.f_first_order - r.f_exact_unheralded));
    worst_gap = std::min(worst_gap, r.f_herald_exact - r.f_exact_unheralded);
  }
  o.require(worst <= 5e-3, fmt("max |F1 - F_exact| for Gamma/Omega >= 50 is %.3e (tol 5e-3)", worst));
  o.require(worst_gap > 0, fmt("min (F_herald - F_exact) over the grid is %.3e (> 0)", worst_gap));
  return o;
}

Outcome c2() {
  Outcome o;
  double wl = 0, wr = 0;
  for (double y : {5.0, 10.0, 50.0, 1000.0}) {
    Vector ee(2);
    ee << 0, 1;
    std::vector<double> grid{0.0, 2 * pi};
    auto me = evolve_lindblad(leakage_qubit_spec(y, 1.0), DensityMatrix::pure({2}, ee), grid, tight_integrator());
    wl = std::max(wl, std::abs(me.back().matrix()(0, 0).real() - leakage_probability(y, 1.0, true)));

    FiniteGammaParams p;
    p.gamma = y;
    std::vector<double> tg{0.0, p.gate_time()};
    auto run = evolve_heralded(p, tg);
    const cplx ratio = run.states.back()(3) / p.psi0(3);
    wr = std::max(wr, std::abs(ratio - herald_amplitude_ratio(y, 1.0, true)));
  }
  o.require(wl <= 1e-8, fmt("leakage: closed form vs two-level master equation, max dev %.2e", wl));
  o.require(wr <= 1e-8, fmt("psi_ee ratio: closed form vs no-jump evolution, max dev %.2e", wr));
  return o;
}

Outcome c3() {
  Outcome o;
  const auto samples = sample_haar_states(HaarConfig{4, 20000, 20260415});
  const auto comp = computational_indices(2);
  std::vector<Vector> psi;
  for (const auto& v : samples) {
    Vector f = Vector::Zero(6);
    for (std::size_t k = 0; k < 4; ++k) f(static_cast<Eigen::Index>(comp[k])) = v(static_cast<Eigen::Index>(k));
    psi.push_back(f);
  }
  double worst = 0, worst_y = 0;
  int bad = 0;
  for (double y : loggrid(1, 1e4, 31)) {
    FiniteGammaParams p;
    p.gamma = y;
    const auto mc = average_fidelity_mc(
        [&](const Vector& v) {
          FiniteGammaParams q = p;
          q.psi0 = v;
          return fidelity_herald(q, true);
        },
        psi);
    const double d = std::abs(mc.mean - fidelity_herald(p, true));
    if (d > 2e-3) ++bad;
    if (d > worst) {
      worst = d;
      worst_y = y;
    }
  }
  o.require(worst <= 2e-3, fmt("max |<F_herald>_Haar - F_herald(equal)| = %.2e at Gamma/Omega = %.3g (tol 2e-3)", worst,
                               worst_y) +
                               fmt(", %g of 31 points outside", bad));
  const auto pee = average_fidelity_mc([](const Vector& v) { return std::norm(v(3)); }, samples);
  o.require(std::abs(pee.mean - 0.25) <= 5e-3, fmt("MC mean |psi_ee|^2 = %.5f +- %.5f (target 0.25 +- 0.005)", pee.mean,
                                                   pee.std_error));
  return o;
}

Outcome c4() {
  Outcome o;
  const Matrix id4 = Matrix::Identity(4, 4);
  double wb = 0, wh = 0;
  for (double x : {10.0, 20.0, 50.0})
    for (double y : {5.0, 20.0, 100.0}) {
      const double f = fbar_chi(x, y);
      wb = std::max(wb, std::abs(nielsen_average_fidelity(slow_markov_channel(x, y, CoherenceConvention::Bloch), id4) - f));
      wh = std::max(wh, std::abs(nielsen_average_fidelity(slow_markov_channel(x, y, CoherenceConvention::HalfExponent), id4) - f));
    }
  o.require(wb <= 1e-6, fmt("Nielsen vs fbar_chi under the selected Bloch-rate convention: max dev %.3e (tol 1e-6)", wb));
  o.info(fmt("same check with half-exponent coherence damping: max dev %.3e (the closed form matches this one)", wh));
  FiniteGammaParams p;
  p.gamma = 25;
  const double fh = fidelity_herald(p, true);
  const double s = combined_fidelity(25, 25, true);
  o.require(s >= 0.9, fmt("heralded surface at (X, Y) = (25, 25): %.4f = Fbar_chi %.4f x F_herald %.4f (need >= 0.9)", s,
                          fbar_chi(25, 25), fh));
  return o;
}

Outcome c5() {
  Outcome o;
  std::mt19937_64 rng(20260501);
  double dev = 0, trace = 0, mineig = 0;
  for (int k = 0; k < 50; ++k) {
    const int d = 4 + k % 5;
    auto spec = testutil::random_spec(d, rng);
    auto rho0 = DensityMatrix(Operator::from_matrix(testutil::random_density(d, rng)));
    std::vector<double> grid{0.0, 0.1, 0.25, 0.5};
    auto out = evolve_lindblad(spec, rho0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      dev = std::max(dev, (out[i].matrix() - expm_liouvillian(spec, rho0, grid[i]).matrix()).cwiseAbs().maxCoeff());
      trace = std::max(trace, out[i].trace_defect());
      mineig = std::min(mineig, out[i].min_eigenvalue());
    }
  }
  o.require(dev <= 1e-8, fmt("50 random specs (dims 4-8): max element deviation %.2e (tol 1e-8)", dev));
  o.require(trace <= 1e-8, fmt("max trace defect %.2e", trace));
  o.require(mineig >= -1e-7, fmt("min eigenvalue %.2e", mineig));
  return o;
}

FullSimParams ideal_chi_params(double kappa, double eps, std::size_t n_fock) {
  auto chi = uniform(0.0);
  chi["fe"] = 15 * kMHz;
  return FullSimParams::zeno(2, DispersiveParams::for_system(2, chi, kappa, eps, -15 * kMHz), 1 * kMHz, pi / 2, n_fock);
}

struct GatePoint {
  double xi_half, c_full, c_ca;
  std::size_t n_fock;
};

GatePoint gate_point(double kappa, double eps, bool certify) {
  auto p = ideal_chi_params(kappa, eps, 5);
  FullSimResult r;
  if (certify) {
    auto cert = fock_convergence(p, {FigureOfMerit::XiHalf, FigureOfMerit::ConcurrenceFinal}, 5, 50, 5);
    p.n_fock = cert.n_fock;
    r = std::move(cert.result);
  } else {
    p.n_fock = 20;
    r = run_fullsim(p, std::vector<double>{0.0, 0.5, 1.0});
  }
  std::vector<double> grid{0.0, 0.5, 1.0};
  const auto ca = ca_evolve_naive(std::get<DispersiveParams>(p.readout), p.drive,
                                  DensityMatrix::pure({6}, p.qudit_state), {}, grid);
  return {r.rows[1].xi_fe, r.rows[2].concurrence, concurrence(computational_block(ca.states[2].matrix())), p.n_fock};
}

Outcome c6() {
  Outcome o;
  const double kappa = 20 * kMHz;  // kappa / Omega = 20
  std::vector<GatePoint> pts;
  std::string row;
  for (double e : {3.0, 7.0, 11.0, 15.0, 20.0}) {
    pts.push_back(gate_point(kappa, e * kMHz, true));
    const auto& g = pts.back();
    o.info(fmt("eps/2pi = %4.1f MHz: Xi(T/2) = %.4f, C_full = %.4f", e, g.xi_half, g.c_full) +
           fmt(", C_CA = %.4f, n_fock = %g", g.c_ca, static_cast<double>(g.n_fock)));
  }
  double drop = 0, cmax = 0, gap = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) drop = std::max(drop, pts[k - 1].xi_half - pts[k].xi_half);
    cmax = std::max(cmax, pts[k].c_full);
    gap = std::max(gap, std::abs(pts[k].c_full - pts[k].c_ca));
  }
  o.require(drop <= 0.02, fmt("(a) largest decrease of Xi(T/2) between adjacent eps: %.4f (tol 0.02)", drop));
  o.require(cmax > 0.8, fmt("(b) max concurrence at T_G: %.4f (> 0.8)", cmax));
  o.require(gap <= 0.05, fmt("(c) max |C_full - C_CA|: %.4f (tol 0.05)", gap));

  // shallower cavity, for the record
  double g5 = 0;
  for (double e : {1.0, 3.0, 5.0}) {
    const auto g = gate_point(5 * kMHz, e * kMHz, false);
    g5 = std::max(g5, std::abs(g.c_full - g.c_ca));
  }
  o.info(fmt("at kappa/2pi = 5 MHz the CA model overestimates: max |C_full - C_CA| = %.4f", g5));
  return o;
}

double rabi_deviation(const FullSimParams& p, double t, double* conc) {
  FullSimOptions opt;
  opt.integrator = tight_integrator();
  std::vector<double> grid{0.0, t};
  const auto r = run_fullsim(p, grid, opt);
  const Matrix q = reduce_to_qudit(r.final_state->matrix(), p.n_fock);
  const Vector v = free_unitary(ZenoSystemSpec{2, p.omega, pi / 2}, t).matrix() * p.qudit_state;
  if (conc) *conc = r.rows.back().concurrence;
  return (q - v * v.adjoint()).cwiseAbs().maxCoeff();
}

Outcome c7() {
  Outcome o;
  const double omega = 1 * kMHz;
  auto disp = FullSimParams::zeno(
      2, DispersiveParams::for_system(2, uniform(5 * kMHz), 5 * kMHz, 3 * kMHz, 0.0), omega, pi / 2, 10);
  auto lon = FullSimParams::zeno(2, LongitudinalReadout{uniform(550 * kMHz), 300 * kMHz, 1000 * kMHz}, 10 * kMHz,
                                 pi / 2, 15);
  for (auto* p : {&disp, &lon}) {
    const bool is_d = p == &disp;
    const double tg = p->final_time();
    double c = 1, dev = 0;
    dev = std::max(dev, rabi_deviation(*p, 0.37 * tg, nullptr));
    dev = std::max(dev, rabi_deviation(*p, tg, &c));
    const std::string name = is_d ? "equal chi" : "equal g";
    o.require(c <= 1e-6, name + fmt(": concurrence(T_G) = %.2e (tol 1e-6)", c));
    o.require(dev <= 1e-6, name + fmt(": max deviation from the free Rabi state = %.2e (tol 1e-6)", dev));
  }
  return o;
}

Outcome c8() {
  Outcome o;
  const double omega = 10 * kMHz, wc = 1000 * kMHz;
  const auto levels = level_labels(2);
  const std::vector<std::string> sz{"gg", "ge", "eg", "ee"};
  double within = 0;
  bool reached = false;
  for (double kap : {100.0, 300.0, 1000.0})
    for (double ga : {300.0, 550.0, 800.0}) {
      auto g = uniform(-ga * kMHz);
      g["fe"] = ga * kMHz;
      const auto rt = longitudinal_rates(levels, g, kap * kMHz, wc);
      for (const auto& a : sz)
        for (const auto& b : sz) within = std::max({within, std::abs(rt.gamma_of(a, b)), std::abs(rt.upsilon_of(a, b))});
      auto p = FullSimParams::zeno(2, LongitudinalReadout{g, kap * kMHz, wc}, omega, pi / 2, 15);
      std::vector<double> grid{0.0, p.final_time() / 2, p.final_time()};
      const auto r = run_fullsim(p, grid);
      const auto ca = rate_evolve(p.drive, rt, DensityMatrix::pure({6}, p.qudit_state), grid);
      const double cca = concurrence(computational_block(ca.back().matrix()));
      const double cf = r.rows.back().concurrence;
      if (cf >= 0.9 && cca >= 0.9) reached = true;
      o.info(fmt("kappa/2pi = %6.0f MHz, |g|/2pi = %4.0f MHz: ", kap, ga) +
             fmt("C_full = %.4f, C_CA = %.4f, top Fock %.1e", cf, cca, r.rows.back().top_fock));
    }
  o.require(within == 0.0, fmt("within-S_Z Gamma and Upsilon, max magnitude %.1e (exactly 0)", within));
  o.require(reached, "fullsim concurrence >= 0.9 with the CA prediction also >= 0.9 for some (kappa, |g|)");
  return o;
}

Outcome c9() {
  Outcome o;
  HusimiGridSpec spec;  // [-8, 8]^2, 161 x 161
  Matrix vac = Matrix::Zero(30, 30);
  vac(0, 0) = 1;
  const auto q0 = husimi_q(vac, spec);
  o.require(std::abs(q0.values(80, 80) - 1 / pi) <= 1e-10, fmt("vacuum Q(0) - 1/pi = %.2e", q0.values(80, 80) - 1 / pi));

  for (double kap : {10.0, 1.0, 0.1}) {
    DispersiveParams dp;
    dp.levels = {"g", "e"};
    dp.chi = {{"g", -2 * kMHz}, {"e", 2 * kMHz}};
    dp.kappa = kap * kMHz;
    dp.epsilon = 2 * kMHz;
    auto p = FullSimParams::qubit(dp, 0.0, 30);
    p.t_final = 5.0;
    FullSimOptions opt;
    opt.keep_cavity = true;
    const auto r = run_fullsim(p, std::vector<double>{0.0, 5.0}, opt);
    const auto q = husimi_q(r.cavity_states.back(), spec);
    auto lobes = fit_coherent_lobes(q, 2);
    const cplx ag = alpha_trajectory(dp, "g", 0.0, 5.0), ae = alpha_trajectory(dp, "e", 0.0, 5.0);
    // match lobes to levels by proximity
    if (std::abs(lobes[0].center - ag) + std::abs(lobes[1].center - ae) >
        std::abs(lobes[0].center - ae) + std::abs(lobes[1].center - ag))
      std::swap(lobes[0], lobes[1]);
    double off = 0;
    for (int k = 0; k < 2; ++k) {
      const cplx d = lobes[k].center - (k == 0 ? ag : ae);
      off = std::max({off, std::abs(d.real()) / q.dx(), std::abs(d.imag()) / q.dp()});
    }
    const cplx sg = steady_alpha(dp.detunings()[0], dp.kappa, dp.epsilon);
    o.require(off <= 1.0, fmt("kappa/2pi = %4.1f MHz: lobe offset from CA alpha(T) = %.2e grid cells", kap, off));
    o.info(fmt("kappa/2pi = %4.1f MHz: |alpha_g(T) - steady alpha_g| = %.3e", kap, std::abs(ag - sg)));
  }
  return o;
}

const char* kDeterminismConfigs[] = {
    R"([run]
scenario = fig3
frequency_convention = divided_by_2pi
[parameters]
omega = 1 MHz
gamma_min = 1
gamma_max = 10000
points = 13
)",
    R"([run]
scenario = fig4
frequency_convention = divided_by_2pi
[parameters]
chi_gg = 0 MHz
chi_ge = 4 MHz
chi_eg = 4 MHz
chi_ee = 9 MHz
chi_fg = 9 MHz
chi_fe = 15 MHz
epsilon = 1 MHz
delta_min = -20 MHz
delta_max = 5 MHz
points = 101
delta_ce = -15 MHz
t_max = 10 us
t_points = 21
[sweep:kappa]
values = 2 MHz, 0.2 MHz
)",
    R"([run]
scenario = fig5
frequency_convention = divided_by_2pi
[parameters]
x_min = 1
x_max = 100
x_points = 9
y_min = 1
y_max = 10000
y_points = 9
)",
    R"([run]
scenario = fig6
frequency_convention = divided_by_2pi
[parameters]
chi_gg = 0 MHz
chi_ge = 0 MHz
chi_eg = 0 MHz
chi_ee = 0 MHz
chi_fg = 0 MHz
chi_fe = 15 MHz
delta_ce = -15 MHz
omega = 1 MHz
kappa = 5 MHz
n_fock = 8
[sweep:epsilon]
values = 0.5 MHz, 2 MHz
)",
    R"([run]
scenario = fig7
frequency_convention = divided_by_2pi
[parameters]
chi_gg = 0 MHz
chi_ge = 4 MHz
chi_eg = 4 MHz
chi_ee = 9 MHz
chi_fg = 9 MHz
chi_fe = 15 MHz
delta_ce = -15 MHz
omega = 1 MHz
kappa = 5 MHz
n_fock = 8
[sweep:epsilon]
values = 0.5 MHz, 2 MHz
)",
    R"([run]
scenario = fig8
frequency_convention = divided_by_2pi
[parameters]
chi_gg = 0 MHz
chi_ge = 4 MHz
chi_eg = 4 MHz
chi_ee = 9 MHz
chi_fg = 9 MHz
chi_fe = 15 MHz
delta_ce = -15 MHz
omega = 0.1 MHz
kappa = 1.5 MHz
epsilon = 0.3 MHz
n_fock = 6
fullsim = 0
t_points = 11
)",
    R"([run]
scenario = fig9
frequency_convention = divided_by_2pi
[parameters]
omega = 10 MHz
omega_c = 1 GHz
g_abs = 550 MHz
kappa = 300 MHz
n_fock = 10
)",
    R"([run]
scenario = fig10
frequency_convention = divided_by_2pi
[parameters]
epsilon = 2 MHz
chi = 2 MHz
t_final = 5 us
n_fock = 12
resolution = 41
[sweep:omega]
values = 0 MHz, 5 MHz
[sweep:kappa]
values = 10 MHz
)",
    R"([run]
scenario = fig11
frequency_convention = divided_by_2pi
seed = 99
[parameters]
omega = 1 MHz
y_min = 1
y_max = 10000
points = 7
samples = 2000
)",
};

Outcome c10() {
  Outcome o;
  std::set<std::string> seen;
  for (const char* text : kDeterminismConfigs) {
    const auto cfg = cli::parse_config_text(text);
    seen.insert(cfg.scenario);
    const auto a = cli::run_scenario(cfg, 1);
    const auto b = cli::run_scenario(cfg, 2);
    bool same = a.size() == b.size();
    std::size_t bytes = 0;
    for (std::size_t k = 0; same && k < a.size(); ++k) {
      const auto sa = cli::metadata_header(cfg) + cli::csv_body(a[k]);
      same = sa == cli::metadata_header(cfg) + cli::csv_body(b[k]);
      bytes += sa.size();
    }
    o.require(same, cfg.scenario + fmt(": rerun (1 vs 2 workers) byte-identical over %g bytes", static_cast<double>(bytes)));
  }
  o.require(seen.size() == cli::scenario_catalog().size(), "every catalog scenario exercised");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Crit {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Crit> all{
      {1, "closed-form vs exact master equation", 10, c1},
      {2, "leakage and herald-ratio oracles", 5, c2},
      {3, "Haar average vs equal-superposition input", 60, c3},
      {4, "Fbar_chi oracle and heralded surface", 10, c4},
      {5, "solver vs Liouvillian exponential", 30, c5},
      {6, "full-simulation properties on the ideal chi set", 1800, c6},
      {7, "degenerate readout null test", 120, c7},
      {8, "longitudinal readout", 1800, c8},
      {9, "Husimi checks", 600, c9},
      {10, "determinism of every scenario", 1e9, c10},
  };
  std::set<int> pick;
  for (int k = 1; k < argc; ++k) pick.insert(std::atoi(argv[k]));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s < 1e8) o.require(secs <= c.budget_s, fmt("runtime %.1f s (budget %.0f s)", secs, c.budget_s));
    else o.info(fmt("runtime %.1f s", secs));
    std::printf("CRITERION %d %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed ? 1 : 0;
}
