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

#include "zeno/cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "zeno/dispersive.hpp"
#include "zeno/finite_meas.hpp"
#include "zeno/fullsim.hpp"
#include "zeno/haar.hpp"
#include "zeno/husimi.hpp"
#include "zeno/ideal_gate.hpp"
#include "zeno/parallel.hpp"

namespace zeno::cli {

using std::numbers::pi;

double Params::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

std::size_t Params::count(const std::string& key) const { return static_cast<std::size_t>(get(key)); }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  std::vector<double> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / (n - 1));
  return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  if (!(a > 0 && b > 0)) throw ConfigError("log grid needs positive bounds");
  auto e = linspace(std::log(a), std::log(b), n);
  for (auto& x : e) x = std::exp(x);
  e.front() = a;
  e.back() = b;
  return e;
}

std::vector<double> gate_grid(double t_final, std::size_t points) {
  if (points < 2) throw ConfigError("t_points must be >= 2");
  return linspace(0.0, t_final, points);
}

const std::vector<std::string>& n2_levels() {
  static const auto l = level_labels(2);
  return l;
}

std::vector<KeySpec> chi_keys() {
  std::vector<KeySpec> k;
  for (const auto& l : n2_levels()) k.push_back({"chi_" + l, QuantityKind::Rate, "dispersive shift of |" + l + ">", ""});
  return k;
}

std::map<std::string, double> chi_map(const Params& p) {
  std::map<std::string, double> m;
  for (const auto& l : n2_levels()) m[l] = p.get("chi_" + l);
  return m;
}

double fe_gap(const Params& p) {
  const auto m = chi_map(p);
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& [l, c] : m)
    if (l != "fe") gap = std::min(gap, std::abs(m.at("fe") - c));
  return gap;
}

template <class... Ks>
std::vector<KeySpec> join(std::vector<KeySpec> a, const Ks&... rest) {
  (a.insert(a.end(), rest.begin(), rest.end()), ...);
  return a;
}

// ---- fig3: fidelities vs Gamma / Omega

std::vector<Table> run_fig3(const Params& p, const CellContext&) {
  Table t{"fig3",
          {{"gamma_over_omega", "1"},
           {"f_exact", "1"},
           {"f_first_order", "1"},
           {"f_herald_exact", "1"},
           {"f_herald_approx", "1"},
           {"f_second_order", "1"},
           {"success_probability", "1"},
           {"diamond_bound", "1"}},
          {}};
  for (double y : logspace(p.get("gamma_min"), p.get("gamma_max"), p.count("points"))) {
    FiniteGammaParams fp;
    fp.omega = p.get("omega");
    fp.gamma = y * fp.omega;
    fp.purge = p.flag("purge");
    const auto r = fidelity_report(fp);
    t.rows.push_back({y, r.f_exact_unheralded, r.f_first_order, r.f_herald_exact, r.f_herald_approx,
                      r.f_second_order, r.success_probability, r.diamond_bound});
  }
  return {t};
}

// ---- fig4: steady rates vs drive detuning, and ring-up

std::vector<Table> run_fig4(const Params& p, const CellContext&) {
  const auto chi = chi_map(p);
  const double kappa = p.get("kappa"), eps = p.get("epsilon");
  Table rates{"fig4_rates", {{"delta_ce", "rad/us"}}, {}};
  for (const auto& l : n2_levels())
    if (l != "fe") rates.columns.push_back({"gamma_fe_" + l, "1/us"});
  rates.columns.push_back({"gamma_gg_ee", "1/us"});
  rates.columns.push_back({"upsilon_fe_gg", "rad/us"});
  for (double d : linspace(p.get("delta_min"), p.get("delta_max"), p.count("points"))) {
    const auto rt = steady_rates(DispersiveParams::for_system(2, chi, kappa, eps, d));
    std::vector<double> row{d};
    for (const auto& l : n2_levels())
      if (l != "fe") row.push_back(rt.gamma_of("fe", l));
    row.push_back(rt.gamma_of("gg", "ee"));
    row.push_back(rt.upsilon_of("fe", "gg"));
    rates.rows.push_back(std::move(row));
  }

  const auto dp = DispersiveParams::for_system(2, chi, kappa, eps, p.get("delta_ce"));
  Table ring{"fig4_ringup", {{"t", "us"}}, {}};
  for (const auto& l : n2_levels()) {
    ring.columns.push_back({"re_alpha_" + l, "1"});
    ring.columns.push_back({"im_alpha_" + l, "1"});
  }
  for (double t : linspace(0.0, p.get("t_max"), p.count("t_points"))) {
    std::vector<double> row{t};
    for (const auto& l : n2_levels()) {
      const cplx a = alpha_trajectory(dp, l, 0.0, t);
      row.push_back(a.real());
      row.push_back(a.imag());
    }
    ring.rows.push_back(std::move(row));
  }
  return {rates, ring};
}

// ---- fig5: combined fidelity surfaces

std::vector<Table> run_fig5(const Params& p, const CellContext&) {
  const auto xs = logspace(p.get("x_min"), p.get("x_max"), p.count("x_points"));
  const auto ys = logspace(p.get("y_min"), p.get("y_max"), p.count("y_points"));
  const auto form = p.flag("subtraction") ? CombineForm::Subtraction : CombineForm::Product;
  const auto her = combined_fidelity_surface(xs, ys, true, form);
  const auto unh = combined_fidelity_surface(xs, ys, false, form);
  Table t{"fig5", {{"x", "1"}, {"y", "1"}, {"f_heralded", "1"}, {"f_unheralded", "1"}, {"fbar_chi", "1"}}, {}};
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      t.rows.push_back({xs[j], ys[i], her.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                        unh.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), fbar_chi(xs[j], ys[i])});
  return {t};
}

// ---- fig6/7/8: CA model and full simulation on the N = 2 dispersive system

std::vector<Table> run_dispersive_gate(const std::string& name, const Params& p) {
  const double omega = p.get("omega"), phi = p.get("phi_axis");
  const auto dp = DispersiveParams::for_system(2, chi_map(p), p.get("kappa"), p.get("epsilon"), p.get("delta_ce"));
  auto fp = FullSimParams::zeno(2, dp, omega, phi, p.count("n_fock"));
  const auto grid = gate_grid(fp.final_time(), p.count("t_points"));
  const auto rho0 = DensityMatrix::pure({fp.qudit_dim()}, fp.qudit_state);

  Table ca{name + "_ca",
           {{"t", "us"}, {"xi_fe", "1"}, {"concurrence", "1"}, {"xi_fe_no_upsilon", "1"}, {"concurrence_no_upsilon", "1"}},
           {}};
  CaOptions off;
  off.upsilon_off = true;
  const auto with = ca_evolve_naive(dp, omega, phi, rho0, {}, grid);
  const auto without = ca_evolve_naive(dp, omega, phi, rho0, {}, grid, off);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Matrix& a = with.states[k].matrix();
    const Matrix& b = without.states[k].matrix();
    ca.rows.push_back({grid[k], xi_fe(a), concurrence(computational_block(a)), xi_fe(b),
                       concurrence(computational_block(b))});
  }
  std::vector<Table> out{ca};
  if (!p.flag("fullsim")) return out;

  if (p.count("fock_step") > 0) {
    const auto cert = fock_convergence(fp, {FigureOfMerit::XiHalf, FigureOfMerit::ConcurrenceFinal},
                                       p.count("fock_step"), p.count("fock_ceiling"), p.count("n_fock"));
    fp.n_fock = cert.n_fock;
  }
  FullSimOptions opt;
  opt.keep_final = false;
  const auto r = run_fullsim(fp, grid, opt);
  Table fs{name + "_fullsim",
           {{"t", "us"}, {"xi_fe", "1"}, {"concurrence", "1"}, {"top_fock", "1"}, {"trace_defect", "1"}, {"n_fock", "1"}},
           {}};
  for (const auto& row : r.rows)
    fs.rows.push_back({row.t, row.xi_fe, row.concurrence, row.top_fock, row.trace_defect,
                       static_cast<double>(fp.n_fock)});
  out.push_back(fs);
  return out;
}

std::vector<KeySpec> gate_keys() {
  return join(chi_keys(), std::vector<KeySpec>{
                              {"kappa", QuantityKind::Rate, "cavity linewidth", ""},
                              {"epsilon", QuantityKind::Rate, "readout drive amplitude", ""},
                              {"delta_ce", QuantityKind::Rate, "cavity minus drive frequency", ""},
                              {"omega", QuantityKind::Rate, "Rabi rate", ""},
                              {"phi_axis", QuantityKind::Ratio, "rotation axis angle (rad)", "1.5707963267948966"},
                              {"n_fock", QuantityKind::Count, "Fock truncation (start value when certifying)", ""},
                              {"t_points", QuantityKind::Count, "time points over one gate", "3"},
                              {"fullsim", QuantityKind::Count, "1: also run the full master equation", "1"},
                              {"fock_step", QuantityKind::Count, "0: fixed n_fock; > 0: certify", "0"},
                              {"fock_ceiling", QuantityKind::Count, "largest n_fock tried", "50"},
                          });
}

// ---- fig9: longitudinal readout

std::map<std::string, double> longitudinal_g(const Params& p) {
  std::map<std::string, double> g;
  for (const auto& l : n2_levels()) g[l] = -p.get("g_abs");
  g["fe"] = p.get("g_abs");
  return g;
}

std::vector<Table> run_fig9(const Params& p, const CellContext&) {
  const double omega = p.get("omega"), kappa = p.get("kappa"), wc = p.get("omega_c");
  const auto g = longitudinal_g(p);
  LongitudinalReadout lr{g, kappa, wc};
  auto fp = FullSimParams::zeno(2, lr, omega, pi / 2, p.count("n_fock"));
  const auto grid = gate_grid(fp.final_time(), p.count("t_points"));
  const auto rt = longitudinal_rates(fp.levels, g, kappa, wc);
  const double ga = p.get("g_abs");

  Table rates{"fig9_rates",
              {{"gamma_fe_gg", "1/us"}, {"gamma_gg_ee", "1/us"}, {"upsilon_gg_ee", "rad/us"}, {"gamma_closed_form", "1/us"}},
              {{rt.gamma_of("fe", "gg"), rt.gamma_of("gg", "ee"), rt.upsilon_of("gg", "ee"),
                8 * kappa * ga * ga / (kappa * kappa + 4 * wc * wc)}}};

  const auto rho0 = DensityMatrix::pure({fp.qudit_dim()}, fp.qudit_state);
  const auto ca = rate_evolve(fp.drive, rt, rho0, grid);
  std::vector<MetricsRow> full;
  if (p.flag("fullsim")) {
    FullSimOptions opt;
    opt.keep_final = false;
    full = run_fullsim(fp, grid, opt).rows;
  }
  Table t{"fig9",
          {{"t", "us"}, {"xi_fe_ca", "1"}, {"concurrence_ca", "1"}, {"xi_fe", "1"}, {"concurrence", "1"}, {"top_fock", "1"}},
          {}};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Matrix& q = ca[k].matrix();
    t.rows.push_back({grid[k], xi_fe(q), concurrence(computational_block(q)), full.empty() ? kNaN : full[k].xi_fe,
                      full.empty() ? kNaN : full[k].concurrence, full.empty() ? kNaN : full[k].top_fock});
  }
  return {rates, t};
}

// ---- fig10: Husimi Q of the cavity for a driven qubit

DispersiveParams fig10_readout(const Params& p) {
  DispersiveParams dp;
  dp.levels = {"g", "e"};
  dp.chi = {{"g", -p.get("chi")}, {"e", p.get("chi")}};
  dp.kappa = p.get("kappa");
  dp.epsilon = p.get("epsilon");
  dp.delta_ce = p.get("delta_ce");
  return dp;
}

std::vector<Table> run_fig10(const Params& p, const CellContext&) {
  const auto dp = fig10_readout(p);
  auto fp = FullSimParams::qubit(dp, p.get("omega"), p.count("n_fock"));
  fp.t_final = p.get("t_final");
  FullSimOptions opt;
  opt.keep_final = false;
  opt.keep_cavity = true;
  const auto r = run_fullsim(fp, std::vector<double>{0.0, fp.t_final}, opt);
  HusimiGridSpec spec{p.get("x_min"), p.get("x_max"), p.get("p_min"), p.get("p_max"), p.count("resolution")};
  const auto q = husimi_q(r.cavity_states.back(), spec);

  Table grid{"fig10_q", {{"x", "1"}, {"p", "1"}, {"q", "1"}}, {}};
  for (Eigen::Index i = 0; i < q.values.rows(); ++i)
    for (Eigen::Index j = 0; j < q.values.cols(); ++j) grid.rows.push_back({q.x[j], q.p[i], q.values(i, j)});

  const auto lobes = fit_coherent_lobes(q, 2);
  const cplx ag = alpha_trajectory(dp, "g", 0.0, fp.t_final), ae = alpha_trajectory(dp, "e", 0.0, fp.t_final);
  Table fit{"fig10_lobes",
            {{"re_lobe_1", "1"}, {"im_lobe_1", "1"}, {"weight_1", "1"}, {"re_lobe_2", "1"}, {"im_lobe_2", "1"},
             {"weight_2", "1"}, {"re_alpha_g", "1"}, {"im_alpha_g", "1"}, {"re_alpha_e", "1"}, {"im_alpha_e", "1"},
             {"unreliable_points", "1"}, {"top_fock", "1"}},
            {{lobes[0].center.real(), lobes[0].center.imag(), lobes[0].weight, lobes[1].center.real(),
              lobes[1].center.imag(), lobes[1].weight, ag.real(), ag.imag(), ae.real(), ae.imag(),
              static_cast<double>(q.unreliable), r.rows.back().top_fock}}};
  return {grid, fit};
}

// ---- fig11: Haar average of the heralded fidelity

std::vector<Table> run_fig11(const Params& p, const CellContext& ctx) {
  const auto samples = sample_haar_states(HaarConfig{4, p.count("samples"), cell_seed(ctx.seed, ctx.index)});
  const auto comp = computational_indices(2);
  std::vector<Vector> psi;
  psi.reserve(samples.size());
  for (const auto& v : samples) {
    Vector full = Vector::Zero(6);
    for (std::size_t k = 0; k < comp.size(); ++k) full(static_cast<Eigen::Index>(comp[k])) = v(static_cast<Eigen::Index>(k));
    psi.push_back(full);
  }
  const double omega = p.get("omega");
  Table t{"fig11",
          {{"gamma_over_omega", "1"},
           {"f_herald_mc", "1"},
           {"f_herald_mc_se", "1"},
           {"f_herald_equal", "1"},
           {"f_first_order_mc", "1"},
           {"f_first_order_equal", "1"}},
          {}};
  for (double y : logspace(p.get("y_min"), p.get("y_max"), p.count("points"))) {
    FiniteGammaParams fp;
    fp.omega = omega;
    fp.gamma = y * omega;
    auto avg = [&](auto f) {
      return average_fidelity_mc(
          [&](const Vector& v) {
            FiniteGammaParams q = fp;
            q.psi0 = v;
            return f(q);
          },
          psi);
    };
    const auto h = avg([](const FiniteGammaParams& q) { return fidelity_herald(q, true); });
    const auto f1 = avg([](const FiniteGammaParams& q) { return fidelity_first_order(q, true); });
    t.rows.push_back({y, h.mean, h.std_error, fidelity_herald(fp, true), f1.mean, fidelity_first_order(fp, true)});
  }
  const auto pee = average_fidelity_mc([](const Vector& v) { return std::norm(v(3)); }, samples);
  Table moments{"fig11_pee", {{"p_ee_mc", "1"}, {"p_ee_mc_se", "1"}}, {{pee.mean, pee.std_error}}};
  return {t, moments};
}

std::vector<Scenario> build_catalog() {
  std::vector<Scenario> c;
  const KeySpec omega{"omega", QuantityKind::Rate, "Rabi rate", ""};

  c.push_back({"fig3",
               "ideal-measurement fidelities (exact, first order, heralded, second order) vs Gamma/Omega",
               {omega,
                {"gamma_min", QuantityKind::Ratio, "smallest Gamma/Omega", ""},
                {"gamma_max", QuantityKind::Ratio, "largest Gamma/Omega", ""},
                {"points", QuantityKind::Count, "log-grid points", ""},
                {"purge", QuantityKind::Count, "1: keep measuring 10/Gamma after the gate", "0"}},
               run_fig3,
               {},
               {}});

  c.push_back({"fig4",
               "steady measurement rates vs drive detuning, and cavity ring-up",
               join(chi_keys(), std::vector<KeySpec>{{"kappa", QuantityKind::Rate, "cavity linewidth", ""},
                                                     {"epsilon", QuantityKind::Rate, "readout drive amplitude", ""},
                                                     {"delta_min", QuantityKind::Rate, "scan start (cavity - drive)", ""},
                                                     {"delta_max", QuantityKind::Rate, "scan end", ""},
                                                     {"points", QuantityKind::Count, "scan points", ""},
                                                     {"delta_ce", QuantityKind::Rate, "detuning for the ring-up", ""},
                                                     {"t_max", QuantityKind::Time, "ring-up duration", ""},
                                                     {"t_points", QuantityKind::Count, "ring-up samples", ""}}),
               run_fig4,
               {},
               {}});

  c.push_back({"fig5",
               "combined slow-Markov x finite-Gamma fidelity surfaces over X = dchi/kappa, Y = Gamma/Omega",
               {{"x_min", QuantityKind::Ratio, "", ""},
                {"x_max", QuantityKind::Ratio, "", ""},
                {"x_points", QuantityKind::Count, "", ""},
                {"y_min", QuantityKind::Ratio, "", ""},
                {"y_max", QuantityKind::Ratio, "", ""},
                {"y_points", QuantityKind::Count, "", ""},
                {"subtraction", QuantityKind::Count, "1: add infidelities instead of multiplying", "0"}},
               run_fig5,
               {},
               {}});

  for (const char* name : {"fig6", "fig7", "fig8"}) {
    const std::string n = name;
    c.push_back({n,
                 "xi_fe and concurrence over one gate: CA model (Upsilon on/off) and full simulation",
                 gate_keys(),
                 [n](const Params& p, const CellContext&) { return run_dispersive_gate(n, p); },
                 [](const Params& p) { return p.flag("fullsim") ? 6.0 * static_cast<double>(p.count("n_fock")) : 0.0; },
                 [](const Params& p) { return classify_regime(p.get("kappa"), p.get("omega"), fe_gap(p)); }});
  }

  c.push_back({"fig9",
               "longitudinal readout: rates, CA prediction and full lab-frame simulation",
               {omega,
                {"g_abs", QuantityKind::Rate, "|g|; g_fe = +|g|, others -|g|", ""},
                {"kappa", QuantityKind::Rate, "cavity linewidth", ""},
                {"omega_c", QuantityKind::Rate, "cavity frequency", ""},
                {"n_fock", QuantityKind::Count, "Fock truncation", ""},
                {"t_points", QuantityKind::Count, "time points over one gate", "3"},
                {"fullsim", QuantityKind::Count, "1: also run the full master equation", "1"}},
               run_fig9,
               [](const Params& p) { return p.flag("fullsim") ? 6.0 * static_cast<double>(p.count("n_fock")) : 0.0; },
               [](const Params& p) { return classify_regime(p.get("kappa"), p.get("omega"), 0.0); }});

  c.push_back({"fig10",
               "Husimi Q of the cavity after driving a dispersively read qubit",
               {omega,
                {"epsilon", QuantityKind::Rate, "readout drive amplitude", ""},
                {"chi", QuantityKind::Rate, "chi_e = +chi, chi_g = -chi", ""},
                {"kappa", QuantityKind::Rate, "cavity linewidth", ""},
                {"delta_ce", QuantityKind::Rate, "cavity minus drive frequency", "0 MHz"},
                {"t_final", QuantityKind::Time, "evolution time", ""},
                {"n_fock", QuantityKind::Count, "Fock truncation", ""},
                {"x_min", QuantityKind::Ratio, "", "-8"},
                {"x_max", QuantityKind::Ratio, "", "8"},
                {"p_min", QuantityKind::Ratio, "", "-8"},
                {"p_max", QuantityKind::Ratio, "", "8"},
                {"resolution", QuantityKind::Count, "grid points per axis", "161"}},
               run_fig10,
               [](const Params& p) { return 2.0 * static_cast<double>(p.count("n_fock")); },
               [](const Params& p) { return classify_regime(p.get("kappa"), p.get("omega"), 2 * std::abs(p.get("chi"))); }});

  c.push_back({"fig11",
               "Haar-averaged heralded and first-order fidelities vs the equal-superposition input",
               {omega,
                {"y_min", QuantityKind::Ratio, "smallest Gamma/Omega", ""},
                {"y_max", QuantityKind::Ratio, "largest Gamma/Omega", ""},
                {"points", QuantityKind::Count, "log-grid points", ""},
                {"samples", QuantityKind::Count, "Haar samples", ""}},
               run_fig11,
               {},
               {}});
  return c;
}

std::string axis_unit(QuantityKind k) {
  switch (k) {
    case QuantityKind::Rate: return "rad/us";
    case QuantityKind::Time: return "us";
    default: return "1";
  }
}

const KeySpec* find_key(const Scenario& s, const std::string& key) {
  for (const auto& k : s.keys)
    if (k.name == key) return &k;
  return nullptr;
}

// Resolves what it can and collects every problem.
ResolvedRun resolve_collect(const ScenarioConfig& cfg, std::vector<std::string>& bad) {
  ResolvedRun rr;
  const Scenario* s = nullptr;
  for (const auto& sc : scenario_catalog())
    if (sc.name == cfg.scenario) s = &sc;
  if (!s) {
    bad.push_back("unknown scenario '" + cfg.scenario + "'");
    return rr;
  }
  rr.scenario = s;
  if (!cfg.convention) {
    bad.push_back("missing key 'frequency_convention' (no default)");
    return rr;
  }
  rr.convention = *cfg.convention;

  auto parse = [&](const KeySpec& k, const std::string& raw, const std::string& where) -> std::optional<double> {
    try {
      return parse_quantity(raw, k.kind, rr.convention);
    } catch (const ConfigError& e) {
      bad.push_back(where + " '" + k.name + "': " + e.what());
      return std::nullopt;
    }
  };

  std::set<std::string> swept;
  for (const auto& ax : cfg.sweep) {
    const KeySpec* k = find_key(*s, ax.key);
    if (!k) {
      bad.push_back("sweep axis '" + ax.key + "' is not a parameter of " + s->name);
      continue;
    }
    if (!swept.insert(ax.key).second) {
      bad.push_back("sweep axis '" + ax.key + "' given twice");
      continue;
    }
    if (cfg.parameters.count(ax.key)) bad.push_back("parameter '" + ax.key + "' is both fixed and swept");
    ResolvedAxis ra{ax.key, {}, ax.values};
    for (const auto& v : ax.values)
      if (auto x = parse(*k, v, "sweep value for")) ra.values.push_back(*x);
    rr.axes.push_back(std::move(ra));
  }
  for (const auto& [key, raw] : cfg.parameters) {
    const KeySpec* k = find_key(*s, key);
    if (!k) {
      bad.push_back("unknown parameter '" + key + "' for " + s->name);
      continue;
    }
    if (auto x = parse(*k, raw, "parameter")) rr.base.set(key, *x);
  }
  for (const auto& k : s->keys) {
    if (cfg.parameters.count(k.name) || swept.count(k.name)) continue;
    if (k.fallback.empty()) {
      bad.push_back("missing key '" + k.name + "'");
    } else if (auto x = parse(k, k.fallback, "default for")) {
      rr.base.set(k.name, *x);
    }
  }
  return rr;
}

}  // namespace

const std::vector<Scenario>& scenario_catalog() {
  static const std::vector<Scenario> c = build_catalog();
  return c;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : scenario_catalog())
    if (s.name == name) return s;
  throw ConfigError("unknown scenario '" + name + "'");
}

std::size_t ResolvedRun::cells() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

Params ResolvedRun::cell(std::size_t index) const {
  Params p = base;
  for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
    const std::size_t m = it->values.size();
    p.set(it->key, it->values[index % m]);
    index /= m;
  }
  return p;
}

std::vector<std::string> config_violations(const ScenarioConfig& cfg) {
  std::vector<std::string> bad;
  resolve_collect(cfg, bad);
  return bad;
}

ResolvedRun resolve(const ScenarioConfig& cfg) {
  std::vector<std::string> bad;
  auto rr = resolve_collect(cfg, bad);
  if (!bad.empty()) {
    std::string msg = bad.front();
    for (std::size_t k = 1; k < bad.size(); ++k) msg += "; " + bad[k];
    throw ConfigError(msg);
  }
  return rr;
}

std::vector<Table> run_scenario(const ScenarioConfig& cfg, std::size_t workers) {
  const ResolvedRun rr = resolve(cfg);
  const auto per_cell = parallel_map(rr.cells(), workers, [&](std::size_t i) {
    return rr.scenario->run(rr.cell(i), CellContext{cfg.seed, i});
  });

  std::vector<Table> merged;
  for (std::size_t i = 0; i < per_cell.size(); ++i) {
    const Params cell = rr.cell(i);
    for (const auto& t : per_cell[i]) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const Table& m) { return m.panel == t.panel; });
      if (it == merged.end()) {
        Table m{t.panel, {}, {}};
        for (const auto& ax : rr.axes) m.columns.push_back({ax.key, axis_unit(find_key(*rr.scenario, ax.key)->kind)});
        m.columns.insert(m.columns.end(), t.columns.begin(), t.columns.end());
        merged.push_back(std::move(m));
        it = merged.end() - 1;
      }
      for (const auto& row : t.rows) {
        std::vector<double> r;
        for (const auto& ax : rr.axes) r.push_back(cell.get(ax.key));
        r.insert(r.end(), row.begin(), row.end());
        if (r.size() != it->columns.size()) throw std::logic_error("ragged table in panel " + t.panel);
        it->rows.push_back(std::move(r));
      }
    }
  }
  return merged;
}

std::string classify_regime(double kappa, double omega, double delta_chi) {
  if (!(omega > 0)) return "undriven";
  if (delta_chi > 0 && omega >= 10 * delta_chi * delta_chi / kappa) return "decoupled";
  const double r = kappa / omega;
  if (r >= 10) return "markovian";
  if (r >= 2) return "markovian_shallow_boundary";
  if (r >= 1) return "shallow_nm";
  return "deep_nm";
}

ValidationReport validate_config(const ScenarioConfig& cfg) {
  ValidationReport rep;
  const auto rr = resolve_collect(cfg, rep.violations);
  if (!rep.ok()) return rep;
  rep.cells = rr.cells();
  for (std::size_t i = 0; i < rep.cells; ++i) {
    const Params p = rr.cell(i);
    try {
      if (rr.scenario->full_dim) rep.max_full_dim = std::max(rep.max_full_dim, rr.scenario->full_dim(p));
      if (rr.scenario->regime) ++rep.regimes[rr.scenario->regime(p)];
    } catch (const std::exception& e) {
      rep.violations.push_back(std::string("cell ") + std::to_string(i) + ": " + e.what());
      break;
    }
  }
  rep.memory_bytes = rep.max_full_dim * rep.max_full_dim * 16.0;
  return rep;
}

}  // namespace zeno::cli
