// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Core>

#include "spinboson/contour.hpp"
#include "spinboson/distributions.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/fock.hpp"
#include "spinboson/multiscale.hpp"
#include "spinboson/scattering.hpp"
#include "spinboson/spectral.hpp"

namespace spinboson
{

namespace
{

constexpr double pi = std::numbers::pi;

Check make_check(std::string name, bool pass, double value, double tol, std::string detail = {})
{
  return {std::move(name), pass, value, tol, std::move(detail)};
}

template <class F>
Study timed(const std::string &name, F &&body)
{
  Study s;
  s.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  body(s);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

nlohmann::json cjson(cplx z)
{
  return complex_json(z);
}

std::string fmt(double x)
{
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::shared_ptr<const Model> make_model(const ModelParams &p)
{
  return std::make_shared<const Model>(p);
}

}  // namespace

bool Study::pass() const
{
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

Study ccr_study(const Targets &t, std::uint64_t seed)
{
  return timed("ccr", [&](Study &s) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    CsvTable table({"modes", "n_max", "pair", "defect"});
    double worst = 0.0;
    int pairs = 0;
    for (auto [M, N] : std::vector<std::pair<int, int>>{{4, 2}, {8, 3}, {16, 2}})
    {
      const FockBasis basis(M, N);
      double local = 0.0;
      for (int i = 0; i < 20; ++i)
      {
        std::vector<cplx> h(M), l(M);
        for (int j = 0; j < M; ++j)
        {
          h[j] = {nd(rng), nd(rng)};
          l[j] = {nd(rng), nd(rng)};
        }
        const double d = ccr_defect(basis, h, l);
        local = std::max(local, d);
        table.add({double(M), double(N), double(i), d});
        ++pairs;
      }
      s.results["max_defect_M" + std::to_string(M) + "_N" + std::to_string(N)] = local;
      worst = std::max(worst, local);
    }
    s.results["pairs"] = pairs;
    s.results["max_defect"] = worst;
    s.checks.push_back(make_check("ccr_defect", worst <= t.ccr, worst, t.ccr));
    s.tables.emplace_back("ccr", std::move(table));
  });
}

Study free_study(const RunConfig &c)
{
  return timed("free", [&](Study &s) {
    const Model m(c.model.with_coupling(0.0));
    const ResonanceData rd = eigen_resonances(m, c.resonance);
    const double e1 = c.model.e1;
    const double d0 = std::abs(rd.lambda0), d1 = std::abs(rd.lambda1 - e1);
    BilinearResolvent u = make_u(m, rd);
    double du = 0.0;
    CsvTable table({"z_re", "z_im", "u_re", "u_im", "error"});
    for (int k = 0; k < 10; ++k)
    {
      const cplx z(-0.8 + 0.3 * k, 0.05 + 0.05 * k);
      const cplx v = u(z);
      const double err = std::abs(v - 1.0 / (e1 - z));
      du = std::max(du, err);
      table.add({z.real(), z.imag(), v.real(), v.imag(), err});
    }
    s.results["lambda0"] = cjson(rd.lambda0);
    s.results["lambda1"] = cjson(rd.lambda1);
    s.results["u_max_error"] = du;
    s.checks.push_back(make_check("free_lambda0", d0 <= c.targets.free_eigen, d0, c.targets.free_eigen));
    s.checks.push_back(make_check("free_lambda1", d1 <= c.targets.free_eigen, d1, c.targets.free_eigen));
    s.checks.push_back(make_check("free_u", du <= c.targets.free_u, du, c.targets.free_u));
    s.tables.emplace_back("free_u", std::move(table));
  });
}

Study resonance_study(const RunConfig &c)
{
  return timed("resonance", [&](Study &s) {
    const Model m(c.model);
    const ResonanceData rd = eigen_resonances(m, c.resonance);
    s.results = rd;
    s.checks.push_back(make_check("residual0", rd.residual0 <= c.resonance.tol, rd.residual0, c.resonance.tol));
    s.checks.push_back(make_check("residual1", rd.residual1 <= c.resonance.tol, rd.residual1, c.resonance.tol));
    if (c.model.g > 0.0)
    {
      s.checks.push_back(make_check("im_lambda1_negative", rd.lambda1.imag() < 0.0, rd.lambda1.imag(), 0.0));
    }

    const double lo = c.model.theta.nu_min, hi = pi / 16.0;
    std::vector<cplx> thetas;
    for (double f : {0.3, 0.5, 0.7})
    {
      thetas.emplace_back(0.0, lo + f * (hi - lo));
    }
    const double tol = 1e-6;
    const ThetaReport tr = theta_diagnostics(c.model, thetas, tol, c.resonance);
    CsvTable table({"theta_im", "lambda1_re", "lambda1_im"});
    for (std::size_t k = 0; k < tr.theta.size(); ++k)
    {
      table.add({tr.theta[k].imag(), tr.lambda1[k].real(), tr.lambda1[k].imag()});
    }
    s.results["theta_spread"] = tr.spread;
    s.checks.push_back(make_check("theta_independence", tr.stationary, tr.spread, tol));
    s.tables.emplace_back("theta", std::move(table));

    const RadialGrid &grid = m.grid();
    const auto cj = grid.effective_coupling(c.model.theta.theta);
    CsvTable gt({"r", "w", "c_re", "c_im"});
    for (int j = 0; j < grid.size(); ++j)
    {
      gt.add({grid.nodes()[j], grid.weights()[j], cj[j].real(), cj[j].imag()});
    }
    s.tables.emplace_back("grid", std::move(gt));
  });
}

Study width_scaling_study(const RunConfig &c)
{
  return timed("width_scaling", [&](Study &s) {
    CsvTable table({"modes", "g", "lambda1_re", "lambda1_im"});
    std::vector<double> cs;
    for (int M : {c.model.grid.modes, c.model.grid.modes * c.spectrum.refine_factor})
    {
      std::vector<double> x, y;
      for (double g : c.spectrum.couplings)
      {
        ModelParams p = c.model.with_coupling(g);
        p.grid.modes = M;
        const ResonanceData rd = eigen_resonances(Model(p), c.resonance);
        table.add({double(M), g, rd.lambda1.real(), rd.lambda1.imag()});
        x.push_back(std::log(g));
        y.push_back(std::log(-rd.lambda1.imag()));
      }
      const LineFit f = fit_line(x, y);
      const double cc = std::exp(f.intercept);
      cs.push_back(cc);
      s.results["M" + std::to_string(M)] = {{"p", f.slope}, {"c", cc}};
      const bool ok = f.slope >= c.targets.width_p_lo && f.slope <= c.targets.width_p_hi;
      s.checks.push_back(make_check("width_exponent_M" + std::to_string(M), ok, f.slope, c.targets.width_p_hi,
                                    "p in [" + fmt(c.targets.width_p_lo) + ", " + fmt(c.targets.width_p_hi) + "]"));
    }
    const double drift = std::abs(cs[1] / cs[0] - 1.0);
    s.results["c_relative_drift"] = drift;
    s.checks.push_back(make_check("width_constant_stable", cs[0] > 0.0 && drift <= c.targets.width_c, drift,
                                  c.targets.width_c));
    s.tables.emplace_back("width_scaling", std::move(table));
  });
}

Study laplace_study(const RunConfig &c, int threads)
{
  return timed("laplace", [&](Study &s) {
    CsvTable table({"g", "t", "order", "nodes", "defect", "scale"});
    double worst = 0.0;
    bool monotone = true;
    std::string detail;
    const double band = 1e-10;
    for (double g : c.contour.couplings)
    {
      const LaplaceExperiment ex(c.model.with_coupling(g), c.resonance);
      for (double t : c.contour.times)
      {
        std::vector<double> d;
        for (int lvl = c.contour.refine_levels; lvl >= 0; --lvl)
        {
          GammaSpec spec;
          spec.eps = c.contour.eps;
          spec.R = c.contour.R;
          spec.h = c.contour.h;
          spec.ray_h = c.contour.ray_h;
          spec.grading = c.contour.grading;
          spec.order = std::max(2, c.contour.order >> lvl);
          const LaplaceCheck r = ex.check(t, spec, threads);
          d.push_back(r.defect / r.scale);
          table.add({g, t, double(spec.order), double(r.nodes), r.defect, r.scale});
        }
        worst = std::max(worst, d.back());
        // Strict decrease from the coarsest level, then non-increasing up to the floor band.
        bool ok = d.back() < d.front();
        for (std::size_t k = 1; k < d.size(); ++k)
        {
          ok = ok && d[k] <= d[k - 1] + band;
        }
        if (!ok)
        {
          monotone = false;
          detail += "g=" + fmt(g) + " t=" + fmt(t) + "; ";
        }
        s.results["g" + fmt(g) + "_t" + fmt(t)] = d;
      }
    }
    s.checks.push_back(make_check("laplace_defect", worst <= c.targets.laplace, worst, c.targets.laplace,
                                  "relative to ||phi|| ||psi||"));
    s.checks.push_back(make_check("laplace_node_doubling", monotone, 0.0, band, detail));
    s.tables.emplace_back("laplace", std::move(table));
  });
}

Study plemelj_study(const RunConfig &c)
{
  return timed("plemelj", [&](Study &s) {
    const std::vector<double> alphas{0.1, 0.05, 0.02, 0.01, 0.005};
    CsvTable table({"function", "alpha", "defect"});
    const auto family = test_family();
    double worst_ratio = 0.0, worst_order = 1e300;
    for (std::size_t f = 0; f < family.size(); ++f)
    {
      std::vector<double> x, y;
      for (double a : alphas)
      {
        const double d = sokhotski_defect(family[f], a);
        table.add({double(f), a, d});
        worst_ratio = std::max(worst_ratio, d / a);
        x.push_back(std::log(a));
        y.push_back(std::log(d));
      }
      const double order = fit_line(x, y).slope;
      worst_order = std::min(worst_order, order);
      s.results[family[f].name] = {{"order", order}, {"defect_over_alpha_at_0.005", std::exp(y.back()) / alphas.back()}};
    }
    const std::vector<double> ex{0.08, 0.04, 0.02, 0.01, 0.005};
    std::vector<cplx> vg, vo;
    for (double a : ex)
    {
      vg.push_back(regularized_heaviside(gaussian(), a));
      vo.push_back(regularized_heaviside(odd_gaussian(), a));
    }
    const cplx lg = extrapolate_to_zero(ex, vg), lo = extrapolate_to_zero(ex, vo);
    const double eg = std::abs(lg - pi), eo = std::abs(lo - cplx(0.0, -std::sqrt(pi)));
    s.results["extrapolated_gaussian"] = cjson(lg);
    s.results["extrapolated_odd_gaussian"] = cjson(lo);
    s.checks.push_back(make_check("plemelj_defect_bound", worst_ratio <= c.targets.plemelj_c, worst_ratio,
                                  c.targets.plemelj_c, "max defect / alpha"));
    s.checks.push_back(make_check("plemelj_order", worst_order >= c.targets.plemelj_order, worst_order,
                                  c.targets.plemelj_order));
    s.checks.push_back(make_check("plemelj_gaussian_limit", eg <= c.targets.extrapolation, eg, c.targets.extrapolation));
    s.checks.push_back(make_check("plemelj_odd_limit", eo <= c.targets.extrapolation, eo, c.targets.extrapolation));
    s.tables.emplace_back("plemelj", std::move(table));
  });
}

Study lineshape_study(const RunConfig &c, int threads)
{
  return timed("lineshape", [&](Study &s) {
    const auto m = make_model(c.model.with_coupling(c.lineshape_g));
    const ScatteringContext ctx(m, eigen_resonances(*m, c.resonance));
    const KernelScan scan = ctx.line_shape_scan(c.scan, threads);
    s.results = scan.summary();
    const double off = std::abs(scan.fit.center - scan.lambda1.real());
    const double ratio = scan.fit.width / std::abs(scan.lambda1.imag());
    s.checks.push_back(make_check("lorentz_fit_converged", scan.fit.converged, scan.fit.residual, 0.0));
    s.checks.push_back(make_check("lorentz_center", scan.fit.converged && off <= scan.spacing, off, scan.spacing,
                                  "|c - Re lambda1|"));
    s.checks.push_back(make_check("lorentz_width", scan.fit.converged && std::abs(ratio - 1.0) <= c.targets.lineshape_width,
                                  std::abs(ratio - 1.0), c.targets.lineshape_width, "|w / |Im lambda1| - 1|"));
    s.tables.emplace_back("lineshape", scan.table());
  });
}

Study oracle_study(const RunConfig &c, int threads)
{
  return timed("oracle", [&](Study &s) {
    const auto m = make_model(c.model);
    const ScatteringContext ctx(m, eigen_resonances(*m, c.resonance));
    CsvTable table({"pair", "smeared_re", "smeared_im", "time_re", "time_im", "difference", "tail_estimate"});
    for (std::size_t i = 0; i < c.packets.size(); ++i)
    {
      const auto &[h, l] = c.packets[i];
      const cplx sm = ctx.smeared_T(h, l, threads).kernel_form;
      const TimeDomainResult td = ctx.time_domain_T(h, l, c.time);
      const double diff = std::abs(td.value - sm);
      const double tol = c.targets.oracle_rel * std::abs(sm) + c.targets.oracle_abs;
      table.add({double(i), sm.real(), sm.imag(), td.value.real(), td.value.imag(), diff, td.tail_estimate});
      s.results["pair" + std::to_string(i)] = {{"smeared_T", cjson(sm)},
                                               {"time_domain_T", cjson(td.value)},
                                               {"difference", diff},
                                               {"relative", diff / std::abs(sm)},
                                               {"tail_estimate", td.tail_estimate},
                                               {"warning", td.warning}};
      s.checks.push_back(make_check("oracle_pair" + std::to_string(i), diff <= tol, diff, tol));
    }
    s.tables.emplace_back("oracle", std::move(table));
  });
}

Study kernel_study(const RunConfig &c, int threads)
{
  return timed("kernel", [&](Study &s) {
    const auto m = make_model(c.model);
    const ScatteringContext ctx(m, eigen_resonances(*m, c.resonance));
    CsvTable table({"k", "T_re", "T_im", "T_abs", "mirrored_difference"});
    double tmax = 0.0, dmax = 0.0;
    for (int i = 1; i <= 40; ++i)
    {
      const double k = 0.05 * i;
      const cplx a = ctx.kernel_T(k, k), b = ctx.kernel_T(k, k, SecondTerm::Mirrored);
      tmax = std::max(tmax, std::abs(a));
      dmax = std::max(dmax, std::abs(a - b));
      table.add({k, a.real(), a.imag(), std::abs(a), std::abs(a - b)});
    }
    const double rel = dmax / tmax;
    s.results["second_term_route_difference"] = rel;
    s.checks.push_back(make_check("second_term_routes", rel <= c.targets.kernel_forms, rel, c.targets.kernel_forms));
    for (std::size_t i = 0; i < c.packets.size(); ++i)
    {
      const auto &[h, l] = c.packets[i];
      const SmearedT st = ctx.smeared_T(h, l, threads);
      const double d = std::abs(st.kernel_form - st.resolvent_form) / std::abs(st.kernel_form);
      s.results["pair" + std::to_string(i)] = {{"kernel_form", cjson(st.kernel_form)},
                                               {"resolvent_form", cjson(st.resolvent_form)},
                                               {"T1", cjson(st.T1)},
                                               {"T2", cjson(st.T2)}};
      s.checks.push_back(make_check("smeared_forms_pair" + std::to_string(i), d <= c.targets.kernel_forms, d,
                                    c.targets.kernel_forms));
    }
    s.tables.emplace_back("kernel", std::move(table));
  });
}

Study proof_study(const RunConfig &c, int threads)
{
  return timed("proof", [&](Study &s) {
    const auto m = make_model(c.model);
    const ScatteringContext ctx(m, eigen_resonances(*m, c.resonance));
    const auto &[h, l] = c.packets.front();
    CsvTable table({"q", "T1_re", "T1_im", "T11_re", "T11_im", "T12_re", "T12_im", "relative_defect", "s_max"});
    double worst = 0.0;
    for (double q : c.q_values)
    {
      const ProofTerms pt = ctx.proof_terms(h, l, q, c.proof, threads);
      worst = std::max(worst, pt.relative_defect());
      table.add({q, pt.T1.real(), pt.T1.imag(), pt.T11.real(), pt.T11.imag(), pt.T12.real(), pt.T12.imag(),
                 pt.relative_defect(), pt.s_max});
    }
    s.results["max_relative_defect"] = worst;
    s.checks.push_back(make_check("proof_decomposition", worst <= c.targets.proof_rel, worst, c.targets.proof_rel,
                                  "|T11 + T12 - T1| / |T1|"));

    std::vector<double> qs = c.q_values;
    std::sort(qs.rbegin(), qs.rend());
    const auto rows = ctx.q_limit(h, l, qs);
    bool bounded = true, decreasing = true;
    nlohmann::json jr = nlohmann::json::array();
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
      bounded = bounded && rows[k].defect <= rows[k].bound;
      if (k > 0)
      {
        decreasing = decreasing && rows[k].defect < rows[k - 1].defect;
      }
      jr.push_back({{"q", rows[k].q}, {"defect", rows[k].defect}, {"bound", rows[k].bound}});
    }
    s.results["q_limit"] = jr;
    s.checks.push_back(make_check("q_limit_insensitive", bounded && decreasing, rows.empty() ? 0.0 : rows.back().defect,
                                  rows.empty() ? 0.0 : rows.back().bound, "|T1(q) - T1(0)| <= pi q int z |u G|"));
    s.tables.emplace_back("proof", std::move(table));
  });
}

Study thl12_study(const RunConfig &c, int threads)
{
  return timed("thl12", [&](Study &s) {
    const TestFunction G = bump(c.lemma.probe.center, c.lemma.probe.halfwidth);
    const double e1 = c.model.e1, gam = c.lemma.gamma;
    const ZFunction u = free_resonance_surrogate(e1, gam);
    LemmaOptions opt;
    opt.z_breaks = {e1 - 3 * gam, e1 - gam, e1, e1 + gam, e1 + 3 * gam};
    const double lambda0 = 0.0;
    const Thl12Study st = thl12_rate_study(G, u, lambda0, c.multiscale, c.lemma.plan, opt, threads);

    const auto &pl = c.lemma.plan;
    const double eps = sequences(c.multiscale, pl.n_fixed).eps_n;
    const cplx direct = T_eps_R_eta(G, u, lambda0, eps, pl.R_fixed, pl.eta_fixed, opt);
    const cplx oracle = T_closed_path(G, u, lambda0, eps, pl.R_fixed, pl.eta_fixed, opt);
    const double od = std::abs(direct - oracle);
    s.results["closed_path"] = {{"direct", cjson(direct)}, {"oracle", cjson(oracle)}, {"difference", od}};
    s.checks.push_back(make_check("thl12_closed_path_oracle", od <= 1e-10, od, 1e-10));

    const double mu = c.multiscale.mu, band = c.targets.thl12_band;
    const std::vector<std::tuple<std::string, double, double>> ex{
      {"rho_n", st.exponent_rho, mu / 8.0}, {"inverse_R", st.exponent_invR, 1.0}, {"eta", st.exponent_eta, 1.0}};
    for (const auto &[name, got, want] : ex)
    {
      const double rel = std::abs(got - want) / want;
      s.results["exponent_" + name] = {{"fitted", got}, {"target", want}, {"relative_deviation", rel}};
      s.checks.push_back(make_check("thl12_exponent_" + name, rel <= band, got, want,
                                    "target " + fmt(want) + " +/- " + fmt(100 * band) + "%"));
    }
    auto decreasing = [](const std::vector<Thl12Cell> &v) {
      for (std::size_t k = 1; k < v.size(); ++k)
      {
        if (!(v[k].defect < v[k - 1].defect))
        {
          return false;
        }
      }
      return true;
    };
    s.checks.push_back(make_check("thl12_defect_decreases_n", decreasing(st.n_sweep), 0.0, 0.0));
    s.checks.push_back(make_check("thl12_defect_decreases_R", decreasing(st.R_sweep), 0.0, 0.0));
    s.checks.push_back(make_check("thl12_defect_decreases_eta", decreasing(st.eta_sweep), 0.0, 0.0));
    s.tables.emplace_back("thl12", st.table());
  });
}

Study tail_uniformity_study(const RunConfig &c, int threads)
{
  return timed("tail", [&](Study &s) {
    const ZFunction u = free_resonance_surrogate(c.model.e1, c.lemma.gamma);
    TailOptions opt;
    opt.threads = threads;
    const TailStudy ts = tail_study(gaussian(0.0, c.lemma.zeta_sigma), u, 0.0, c.lemma.q, c.lemma.Q, c.multiscale,
                                    c.lemma.levels, opt);
    nlohmann::json lv = nlohmann::json::array();
    for (const auto &l : ts.levels)
    {
      lv.push_back({{"n", l.n}, {"R", l.R}, {"C", l.C}, {"Q_tail", l.scaled_tail}});
    }
    s.results["levels"] = lv;
    s.results["interchange"] = ts.interchange;
    s.results["C_spread"] = ts.stability;
    s.checks.push_back(make_check("tail_C_stable", ts.stability <= c.targets.tail_band, ts.stability,
                                  c.targets.tail_band, "max C / min C - 1 over (n, R) levels"));
    bool shrinking = true;
    for (std::size_t k = 1; k < ts.interchange.size(); ++k)
    {
      shrinking = shrinking && ts.interchange[k] <= ts.interchange[k - 1];
    }
    s.checks.push_back(make_check("tail_limit_interchange", shrinking, ts.interchange.front(), 0.0,
                                  "|A(Q) - A(Q_max)| non-increasing at the reference level"));
    s.tables.emplace_back("tail", ts.table());
  });
}

bool RunSummary::pass() const
{
  return std::all_of(studies.begin(), studies.end(), [](const Study &s) { return s.pass(); });
}

nlohmann::json RunSummary::to_json(const RunConfig &c, bool deterministic) const
{
  nlohmann::json st = nlohmann::json::object();
  for (const auto &s : studies)
  {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &k : s.checks)
    {
      checks.push_back({{"name", k.name}, {"pass", k.pass}, {"value", k.value}, {"tolerance", k.tolerance},
                        {"detail", k.detail}});
    }
    st[s.name] = {{"results", s.results}, {"checks", checks}, {"pass", s.pass()}};
    if (!deterministic)
    {
      st[s.name]["seconds"] = s.seconds;
    }
  }
  return {{"experiment", to_string(experiment)},
          {"config_hash", config_hash},
          {"versions",
           {{"spinboson", version},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
          {"deterministic", deterministic},
          {"config", c.canonical()},
          {"studies", st},
          {"pass", pass()}};
}

RunSummary run(const RunConfig &c, Experiment e, const RunOptions &opt)
{
  require_valid(c);
  RunSummary sum;
  sum.experiment = e;
  sum.config_hash = c.hash();
  const int th = opt.threads;
  switch (e)
  {
  case Experiment::Spectrum:
    sum.studies.push_back(ccr_study(c.targets));
    sum.studies.push_back(resonance_study(c));
    sum.studies.push_back(free_study(c));
    sum.studies.push_back(width_scaling_study(c));
    break;
  case Experiment::Kernel:
    sum.studies.push_back(kernel_study(c, th));
    sum.studies.push_back(proof_study(c, th));
    break;
  case Experiment::Lineshape:
    sum.studies.push_back(lineshape_study(c, th));
    break;
  case Experiment::LaplaceCheck:
    sum.studies.push_back(laplace_study(c, th));
    break;
  case Experiment::PlemeljCheck:
    sum.studies.push_back(plemelj_study(c));
    break;
  case Experiment::MultiscaleCheck:
    sum.studies.push_back(thl12_study(c, th));
    sum.studies.push_back(tail_uniformity_study(c, th));
    break;
  case Experiment::OracleCheck:
    sum.studies.push_back(oracle_study(c, th));
    break;
  }

  std::filesystem::create_directories(opt.out);
  for (const auto &s : sum.studies)
  {
    for (const auto &[name, table] : s.tables)
    {
      table.write(opt.out / (name + ".csv"));
    }
  }
  auto j = sum.to_json(c, opt.deterministic);
  if (e == Experiment::MultiscaleCheck)
  {
    j["dorm2"] = validate(c).to_json()["dorm2"];
  }
  write_json(opt.out / "summary.json", j);
  return sum;
}

}  // namespace spinboson
