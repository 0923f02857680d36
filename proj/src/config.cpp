// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/config.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "spinboson/contour.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/io.hpp"

namespace spinboson
{

namespace
{

const std::vector<std::pair<Experiment, std::string>> experiment_names{
  {Experiment::Spectrum, "spectrum"},
  {Experiment::Kernel, "kernel"},
  {Experiment::Lineshape, "lineshape"},
  {Experiment::LaplaceCheck, "laplace-check"},
  {Experiment::PlemeljCheck, "plemelj-check"},
  {Experiment::MultiscaleCheck, "multiscale-check"},
  {Experiment::OracleCheck, "oracle-check"}};

std::string join(const std::string &path, const std::string &key)
{
  return path.empty() ? key : path + "." + key;
}

void expect_map(const YAML::Node &n, const std::string &path)
{
  if (!n.IsMap())
  {
    throw ConfigError(path + ": expected a mapping");
  }
}

void check_keys(const YAML::Node &n, const std::string &path, const std::set<std::string> &allowed)
{
  expect_map(n, path.empty() ? "<root>" : path);
  for (const auto &kv : n)
  {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key))
    {
      throw ConfigError(join(path, key) + ": unknown key");
    }
  }
}

template <class T>
void read(const YAML::Node &n, const std::string &key, const std::string &path, T &out)
{
  const YAML::Node v = n[key];
  if (!v)
  {
    return;
  }
  try
  {
    out = v.as<T>();
  }
  catch (const YAML::Exception &)
  {
    throw ConfigError(join(path, key) + ": wrong type");
  }
}

WavePacket read_packet(const YAML::Node &n, const std::string &path)
{
  std::vector<double> cw;
  try
  {
    cw = n.as<std::vector<double>>();
  }
  catch (const YAML::Exception &)
  {
    throw ConfigError(path + ": expected [center, width]");
  }
  if (cw.size() != 2)
  {
    throw ConfigError(path + ": expected [center, width]");
  }
  return {cw[0], cw[1]};
}

nlohmann::json packet_json(const WavePacket &w)
{
  return nlohmann::json::array({w.center, w.halfwidth});
}

}  // namespace

Experiment parse_experiment(const std::string &s)
{
  for (const auto &[e, name] : experiment_names)
  {
    if (name == s)
    {
      return e;
    }
  }
  throw ConfigError("experiment: unknown experiment '" + s + "'");
}

std::string to_string(Experiment e)
{
  for (const auto &[x, name] : experiment_names)
  {
    if (x == e)
    {
      return name;
    }
  }
  return "unknown";
}

RunConfig parse_config(const std::string &yaml)
{
  YAML::Node root;
  try
  {
    root = YAML::Load(yaml);
  }
  catch (const YAML::Exception &e)
  {
    throw ConfigError(std::string("yaml: ") + e.what());
  }
  RunConfig c;
  if (root.IsNull())
  {
    return c;
  }
  check_keys(root, "",
             {"experiment", "output", "model", "grid", "resonance", "spectrum", "contour", "multiscale",
              "packets", "lineshape", "time", "proof", "targets"});
  if (root["experiment"])
  {
    std::string e;
    read(root, "experiment", "", e);
    c.experiment = parse_experiment(e);
  }
  read(root, "output", "", c.output);

  if (const auto m = root["model"])
  {
    check_keys(m, "model", {"e1", "g", "lambda", "mu", "theta", "nu_min", "n_max"});
    read(m, "e1", "model", c.model.e1);
    read(m, "g", "model", c.model.g);
    read(m, "lambda", "model", c.model.form.lambda);
    read(m, "mu", "model", c.model.form.mu);
    read(m, "nu_min", "model", c.model.theta.nu_min);
    read(m, "n_max", "model", c.model.n_max);
    if (const auto t = m["theta"])
    {
      check_keys(t, "model.theta", {"re", "im"});
      double re = 0.0, im = c.model.theta.theta.imag();
      read(t, "re", "model.theta", re);
      read(t, "im", "model.theta", im);
      c.model.theta.theta = cplx(re, im);
    }
  }
  if (const auto g = root["grid"])
  {
    check_keys(g, "grid", {"modes", "r_min", "r_max", "rule", "panel_order"});
    read(g, "modes", "grid", c.model.grid.modes);
    read(g, "r_min", "grid", c.model.grid.r_min);
    if (g["r_max"] && !g["r_max"].IsNull())
    {
      double r = 0.0;
      read(g, "r_max", "grid", r);
      c.model.grid.r_max = r;
    }
    if (g["rule"])
    {
      std::string r;
      read(g, "rule", "grid", r);
      try
      {
        c.model.grid.rule = parse_grid_rule(r);
      }
      catch (const DomainError &e)
      {
        throw ConfigError(std::string("grid.rule: ") + e.what());
      }
    }
    read(g, "panel_order", "grid", c.model.grid.panel_order);
  }
  if (const auto r = root["resonance"])
  {
    check_keys(r, "resonance", {"homotopy_steps", "krylov", "tol"});
    read(r, "homotopy_steps", "resonance", c.resonance.homotopy_steps);
    read(r, "krylov", "resonance", c.resonance.krylov);
    read(r, "tol", "resonance", c.resonance.tol);
  }
  if (const auto s = root["spectrum"])
  {
    check_keys(s, "spectrum", {"couplings", "refine_factor"});
    read(s, "couplings", "spectrum", c.spectrum.couplings);
    read(s, "refine_factor", "spectrum", c.spectrum.refine_factor);
  }
  if (const auto k = root["contour"])
  {
    check_keys(k, "contour", {"eps", "R", "h", "ray_h", "grading", "order", "refine_levels", "times", "couplings"});
    read(k, "eps", "contour", c.contour.eps);
    read(k, "R", "contour", c.contour.R);
    read(k, "h", "contour", c.contour.h);
    read(k, "ray_h", "contour", c.contour.ray_h);
    read(k, "grading", "contour", c.contour.grading);
    read(k, "order", "contour", c.contour.order);
    read(k, "refine_levels", "contour", c.contour.refine_levels);
    read(k, "times", "contour", c.contour.times);
    read(k, "couplings", "contour", c.contour.couplings);
  }
  if (const auto m = root["multiscale"])
  {
    check_keys(m, "multiscale",
               {"rho0", "rho", "c_bold", "m", "nu", "gamma", "probe", "n", "R", "eta", "n_fixed", "R_fixed",
                "eta_fixed", "q", "Q", "zeta_sigma", "levels"});
    read(m, "rho0", "multiscale", c.multiscale.rho0);
    read(m, "rho", "multiscale", c.multiscale.rho);
    read(m, "c_bold", "multiscale", c.multiscale.c_bold);
    read(m, "m", "multiscale", c.multiscale.m);
    read(m, "nu", "multiscale", c.multiscale.nu);
    read(m, "gamma", "multiscale", c.lemma.gamma);
    if (m["probe"])
    {
      c.lemma.probe = read_packet(m["probe"], "multiscale.probe");
    }
    read(m, "n", "multiscale", c.lemma.plan.n);
    read(m, "R", "multiscale", c.lemma.plan.R);
    read(m, "eta", "multiscale", c.lemma.plan.eta);
    read(m, "n_fixed", "multiscale", c.lemma.plan.n_fixed);
    read(m, "R_fixed", "multiscale", c.lemma.plan.R_fixed);
    read(m, "eta_fixed", "multiscale", c.lemma.plan.eta_fixed);
    read(m, "q", "multiscale", c.lemma.q);
    read(m, "Q", "multiscale", c.lemma.Q);
    read(m, "zeta_sigma", "multiscale", c.lemma.zeta_sigma);
    if (const auto lv = m["levels"])
    {
      if (!lv.IsSequence())
      {
        throw ConfigError("multiscale.levels: expected a list of [n, R]");
      }
      c.lemma.levels.clear();
      for (std::size_t i = 0; i < lv.size(); ++i)
      {
        std::vector<double> nr;
        try
        {
          nr = lv[i].as<std::vector<double>>();
        }
        catch (const YAML::Exception &)
        {
          throw ConfigError("multiscale.levels: expected a list of [n, R]");
        }
        if (nr.size() != 2 || nr[0] != std::floor(nr[0]))
        {
          throw ConfigError("multiscale.levels: expected a list of [n, R] with integer n");
        }
        c.lemma.levels.emplace_back(static_cast<int>(nr[0]), nr[1]);
      }
    }
  }
  if (const auto p = root["packets"])
  {
    if (!p.IsSequence() || p.size() % 2 != 0)
    {
      throw ConfigError("packets: expected an even-length list of [center, width] read as (h, l) pairs");
    }
    c.packets.clear();
    for (std::size_t i = 0; i < p.size(); i += 2)
    {
      c.packets.emplace_back(read_packet(p[i], "packets[" + std::to_string(i) + "]"),
                             read_packet(p[i + 1], "packets[" + std::to_string(i + 1) + "]"));
    }
  }
  if (const auto l = root["lineshape"])
  {
    check_keys(l, "lineshape", {"g", "half_range", "spacing"});
    read(l, "g", "lineshape", c.lineshape_g);
    read(l, "half_range", "lineshape", c.scan.half_range);
    read(l, "spacing", "lineshape", c.scan.spacing);
  }
  if (const auto t = root["time"])
  {
    check_keys(t, "time", {"s_max", "panel", "order"});
    read(t, "s_max", "time", c.time.s_max);
    read(t, "panel", "time", c.time.panel);
    read(t, "order", "time", c.time.order);
  }
  if (const auto p = root["proof"])
  {
    check_keys(p, "proof", {"eps", "R", "z_panel", "q"});
    read(p, "eps", "proof", c.proof.eps);
    read(p, "R", "proof", c.proof.R);
    read(p, "z_panel", "proof", c.proof.z_panel);
    read(p, "q", "proof", c.q_values);
  }
  if (const auto t = root["targets"])
  {
    check_keys(t, "targets",
               {"ccr", "free_eigen", "free_u", "laplace", "plemelj_c", "plemelj_order", "extrapolation",
                "width_p_lo", "width_p_hi", "width_c", "lineshape_width", "oracle_rel", "oracle_abs",
                "thl12_band", "tail_band", "proof_rel", "kernel_forms"});
    auto &g = c.targets;
    read(t, "ccr", "targets", g.ccr);
    read(t, "free_eigen", "targets", g.free_eigen);
    read(t, "free_u", "targets", g.free_u);
    read(t, "laplace", "targets", g.laplace);
    read(t, "plemelj_c", "targets", g.plemelj_c);
    read(t, "plemelj_order", "targets", g.plemelj_order);
    read(t, "extrapolation", "targets", g.extrapolation);
    read(t, "width_p_lo", "targets", g.width_p_lo);
    read(t, "width_p_hi", "targets", g.width_p_hi);
    read(t, "width_c", "targets", g.width_c);
    read(t, "lineshape_width", "targets", g.lineshape_width);
    read(t, "oracle_rel", "targets", g.oracle_rel);
    read(t, "oracle_abs", "targets", g.oracle_abs);
    read(t, "thl12_band", "targets", g.thl12_band);
    read(t, "tail_band", "targets", g.tail_band);
    read(t, "proof_rel", "targets", g.proof_rel);
    read(t, "kernel_forms", "targets", g.kernel_forms);
  }
  c.multiscale.mu = c.model.form.mu;
  c.multiscale.e1 = c.model.e1;
  return c;
}

RunConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot read config file " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::json RunConfig::canonical() const
{
  using nlohmann::json;
  json packs = json::array();
  for (const auto &[h, l] : packets)
  {
    packs.push_back({packet_json(h), packet_json(l)});
  }
  json levels = json::array();
  for (const auto &[n, R] : lemma.levels)
  {
    levels.push_back({n, R});
  }
  const auto &g = model.grid;
  const auto &t = targets;
  return {
    {"experiment", experiment ? to_string(*experiment) : "none"},
    {"model",
     {{"e1", model.e1},
      {"g", model.g},
      {"lambda", model.form.lambda},
      {"mu", model.form.mu},
      {"theta", complex_json(model.theta.theta)},
      {"nu_min", model.theta.nu_min},
      {"n_max", model.n_max}}},
    {"grid",
     {{"modes", g.modes},
      {"r_min", g.r_min},
      {"r_max", g.r_max ? json(*g.r_max) : json(nullptr)},
      {"rule", to_string(g.rule)},
      {"panel_order", g.panel_order}}},
    {"resonance", {{"homotopy_steps", resonance.homotopy_steps}, {"krylov", resonance.krylov}, {"tol", resonance.tol}}},
    {"spectrum", {{"couplings", spectrum.couplings}, {"refine_factor", spectrum.refine_factor}}},
    {"contour",
     {{"eps", contour.eps},
      {"R", contour.R},
      {"h", contour.h},
      {"ray_h", contour.ray_h},
      {"grading", contour.grading},
      {"order", contour.order},
      {"refine_levels", contour.refine_levels},
      {"times", contour.times},
      {"couplings", contour.couplings}}},
    {"multiscale",
     {{"rho0", multiscale.rho0},
      {"rho", multiscale.rho},
      {"c_bold", multiscale.c_bold},
      {"m", multiscale.m},
      {"nu", multiscale.nu},
      {"gamma", lemma.gamma},
      {"probe", packet_json(lemma.probe)},
      {"n", lemma.plan.n},
      {"R", lemma.plan.R},
      {"eta", lemma.plan.eta},
      {"n_fixed", lemma.plan.n_fixed},
      {"R_fixed", lemma.plan.R_fixed},
      {"eta_fixed", lemma.plan.eta_fixed},
      {"q", lemma.q},
      {"Q", lemma.Q},
      {"zeta_sigma", lemma.zeta_sigma},
      {"levels", levels}}},
    {"packets", packs},
    {"lineshape", {{"g", lineshape_g}, {"half_range", scan.half_range}, {"spacing", scan.spacing}}},
    {"time", {{"s_max", time.s_max}, {"panel", time.panel}, {"order", time.order}}},
    {"proof", {{"eps", proof.eps}, {"R", proof.R}, {"z_panel", proof.z_panel}, {"q", q_values}}},
    {"targets",
     {{"ccr", t.ccr},
      {"free_eigen", t.free_eigen},
      {"free_u", t.free_u},
      {"laplace", t.laplace},
      {"plemelj_c", t.plemelj_c},
      {"plemelj_order", t.plemelj_order},
      {"extrapolation", t.extrapolation},
      {"width_p_lo", t.width_p_lo},
      {"width_p_hi", t.width_p_hi},
      {"width_c", t.width_c},
      {"lineshape_width", t.lineshape_width},
      {"oracle_rel", t.oracle_rel},
      {"oracle_abs", t.oracle_abs},
      {"thl12_band", t.thl12_band},
      {"tail_band", t.tail_band},
      {"proof_rel", t.proof_rel},
      {"kernel_forms", t.kernel_forms}}}};
}

std::string RunConfig::hash() const
{
  return hex64(fnv1a(canonical().dump()));
}

nlohmann::json ValidationReport::to_json() const
{
  return {{"ok", ok()},
          {"violations", violations},
          {"dorm2",
           {{"C8_rho0_mu", dorm2.lhs1},
            {"C8_rho_mu", dorm2.lhs2},
            {"C_rho_iota", dorm2.lhs3},
            {"first", dorm2.first},
            {"second", dorm2.second},
            {"third", dorm2.third},
            {"series_partial_sum", dorm2.partial_sums.empty() ? 0.0 : dorm2.partial_sums.back()},
            {"series_tail_bound", dorm2.tail_bound},
            {"series_converges", dorm2.series_converges}}}};
}

ValidationReport validate(const RunConfig &c)
{
  ValidationReport r;
  auto &v = r.violations;
  auto guard = [&](const std::string &where, auto &&f) {
    try
    {
      f();
    }
    catch (const std::exception &e)
    {
      const std::string what = e.what();
      v.push_back(what.starts_with(where + ":") ? what : where + ": " + what);
    }
  };
  auto need = [&](bool ok, const std::string &msg) {
    if (!ok)
    {
      v.push_back(msg);
    }
  };

  guard("model", [&] { c.model.validate(); });
  need(c.model.theta.in_strip(), "model.theta: theta must satisfy |Re theta| < 1e-3 and nu_min < Im theta < pi/16");
  need(c.model.grid.modes > 0, "grid.modes: must be positive");
  need(c.model.grid.r_min > 0.0, "grid.r_min: must be positive");
  need(!c.model.grid.r_max || *c.model.grid.r_max > c.model.grid.r_min, "grid.r_max: must exceed r_min");
  need(c.model.grid.panel_order >= 1, "grid.panel_order: must be at least 1");
  need(c.resonance.homotopy_steps >= 4, "resonance.homotopy_steps: at least 4 are required");
  need(c.resonance.krylov >= 4, "resonance.krylov: at least 4 are required");
  need(c.resonance.tol > 0.0, "resonance.tol: must be positive");
  need(c.spectrum.couplings.size() >= 2, "spectrum.couplings: at least two couplings are needed for a fit");
  for (double g : c.spectrum.couplings)
  {
    need(g > 0.0, "spectrum.couplings: couplings must be positive");
  }
  need(c.spectrum.refine_factor >= 2, "spectrum.refine_factor: must be at least 2");

  need(c.contour.eps > 0.0 && c.contour.R > c.contour.eps, "contour: need 0 < eps < R");
  need(c.contour.h > 0.0 && c.contour.ray_h > 0.0 && c.contour.grading > 0.0,
       "contour: panel lengths must be positive");
  need(c.contour.order >= 2, "contour.order: must be at least 2");
  need(c.contour.refine_levels >= 1, "contour.refine_levels: must be at least 1");
  for (double t : c.contour.times)
  {
    need(t >= t_min, "contour.times: every t must be at least t_min = 0.1");
  }
  for (double g : c.contour.couplings)
  {
    need(g >= 0.0, "contour.couplings: must be non-negative");
  }

  guard("multiscale", [&] { c.multiscale.validate(); });
  r.dorm2 = validate_dorm2(c.multiscale);
  {
    std::ostringstream os;
    if (!r.dorm2.first)
    {
      os.str("");
      os << "dorm2: C^8 rho0^mu = " << r.dorm2.lhs1 << " exceeds 1";
      v.push_back(os.str());
    }
    if (!r.dorm2.second)
    {
      os.str("");
      os << "dorm2: C^8 rho^mu = " << r.dorm2.lhs2 << " exceeds 1/4";
      v.push_back(os.str());
    }
    if (!r.dorm2.third)
    {
      os.str("");
      os << "dorm2: C rho^(iota (1 + mu/4) / 2) = " << r.dorm2.lhs3 << " exceeds 1";
      v.push_back(os.str());
    }
  }
  need(c.lemma.gamma > 0.0, "multiscale.gamma: must be positive");
  guard("multiscale.probe", [&] { c.lemma.probe.validate(); });
  need(!c.lemma.plan.n.empty() && !c.lemma.plan.R.empty() && !c.lemma.plan.eta.empty(),
       "multiscale: n, R and eta sweeps must be non-empty");
  if (c.multiscale.rho > 0.0 && c.multiscale.rho0 > 0.0)
  {
    std::vector<int> ns = c.lemma.plan.n;
    ns.push_back(c.lemma.plan.n_fixed);
    std::vector<double> etas = c.lemma.plan.eta;
    etas.push_back(c.lemma.plan.eta_fixed);
    for (int n : ns)
    {
      if (n < 1)
      {
        v.push_back("multiscale.n: levels start at 1");
        continue;
      }
      const double eps = sequences(c.multiscale, n).eps_n;
      for (double eta : etas)
      {
        if (!(eta > 0.0) || !(c.lemma.probe.kappa() > 2.0 * (eps + eta)))
        {
          std::ostringstream os;
          os << "multiscale: probe support starts at " << c.lemma.probe.kappa() << ", inside 2(eps_" << n
             << " + eta) = " << 2.0 * (eps + eta);
          v.push_back(os.str());
        }
      }
    }
  }
  std::vector<double> Rs = c.lemma.plan.R;
  Rs.push_back(c.lemma.plan.R_fixed);
  for (double R : Rs)
  {
    need(R > c.lemma.probe.upper() + 0.1, "multiscale.R: R must exceed the probe support");
  }
  need(c.lemma.q > 0.0 && c.lemma.q < 1.0, "multiscale.q: must lie in (0, 1)");
  need(!c.lemma.Q.empty() && c.lemma.Q.front() > 1.0 && std::is_sorted(c.lemma.Q.begin(), c.lemma.Q.end()),
       "multiscale.Q: must be ascending and above 1");
  need(c.lemma.zeta_sigma > 0.0, "multiscale.zeta_sigma: must be positive");
  need(c.lemma.levels.size() >= 2, "multiscale.levels: at least two (n, R) levels are needed");
  for (const auto &[n, R] : c.lemma.levels)
  {
    need(n >= 1 && R > 1.0, "multiscale.levels: need n >= 1 and R > 1");
  }

  need(!c.packets.empty(), "packets: at least one (h, l) pair is required");
  for (std::size_t i = 0; i < c.packets.size(); ++i)
  {
    guard("packets[" + std::to_string(i) + "].h", [&] { c.packets[i].first.validate(); });
    guard("packets[" + std::to_string(i) + "].l", [&] { c.packets[i].second.validate(); });
  }
  need(c.lineshape_g >= 0.0, "lineshape.g: must be non-negative");
  need(c.scan.spacing > 0.0 && c.scan.half_range > 0.0, "lineshape: spacing and half_range must be positive");
  need(c.model.e1 > c.scan.half_range, "lineshape: the scan window must stay away from k = 0");
  need(c.time.s_max > 0.0 && c.time.panel > 0.0 && c.time.order >= 2, "time: need s_max, panel > 0 and order >= 2");
  need(c.proof.eps > 0.0 && c.proof.R > c.proof.eps && c.proof.z_panel > 0.0, "proof: need 0 < eps < R and z_panel > 0");
  for (double q : c.q_values)
  {
    need(q >= 0.0, "proof.q: must be non-negative");
  }
  return r;
}

void require_valid(const RunConfig &cfg)
{
  const auto r = validate(cfg);
  if (!r.ok())
  {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto &m : r.violations)
    {
      os << "\n  - " << m;
    }
    throw ConfigError(os.str());
  }
}

}  // namespace spinboson
