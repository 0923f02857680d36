// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spinboson/contour.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/linalg.hpp"

namespace spinboson
{

namespace
{

constexpr double pi = std::numbers::pi;

AdaptiveOptions adaptive(const LemmaOptions &opt, double scale = 1.0)
{
  AdaptiveOptions a;
  a.abs_tol = opt.abs_tol * scale;
  a.rel_tol = opt.rel_tol * scale;
  a.max_subdivisions = 50000;
  return a;
}

// Support of G, or nullopt when G vanishes identically.
std::optional<std::pair<double, double>> compact_support(const TestFunction &G, const char *who)
{
  if (!G.support)
  {
    throw DomainError(std::string(who) + ": G must have compact support");
  }
  auto [a, b] = *G.support;
  if (!(b > a))
  {
    return std::nullopt;
  }
  return std::pair{a, b};
}

void check_hypothesis(double a, double b, double eps, double eta, double lambda0, double R)
{
  const double d = 2.0 * (eps + eta);
  if (b > -d && a < d)
  {
    std::ostringstream os;
    os << "T_n_R_eta: support [" << a << ", " << b << "] of G overlaps [" << -d << ", " << d
       << "] = [-2(eps + eta), 2(eps + eta)]";
    throw DomainError(os.str());
  }
  if (!(R > std::abs(lambda0) + std::max(std::abs(a), std::abs(b)) + eta))
  {
    std::ostringstream os;
    os << "T_n_R_eta: R = " << R << " does not exceed the shifted support of G plus eta";
    throw DomainError(os.str());
  }
}

std::vector<double> inside(std::vector<double> pts, double lo, double hi)
{
  std::vector<double> out{lo};
  for (double x : pts)
  {
    if (x > lo && x < hi)
    {
      out.push_back(x);
    }
  }
  out.push_back(hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double slope_of_differences(const std::vector<double> &param, const std::vector<cplx> &T)
{
  std::vector<double> x, y;
  for (std::size_t k = 0; k + 1 < T.size(); ++k)
  {
    const double d = std::abs(T[k] - T[k + 1]);
    if (d > 0.0)
    {
      x.push_back(std::log(param[k]));
      y.push_back(std::log(d));
    }
  }
  if (x.size() < 2)
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return fit_line(x, y).slope;
}

}  // namespace

void MultiscaleParams::validate() const
{
  if (!(rho0 > 0.0 && rho0 < 1.0))
  {
    throw DomainError("multiscale: rho0 must lie in (0, 1)");
  }
  if (!(rho > 0.0 && rho < std::min(1.0, e1 / 4.0)))
  {
    throw DomainError("multiscale: rho must lie in (0, min(1, e1/4))");
  }
  if (!(mu > 0.0 && mu < 0.5))
  {
    throw DomainError("multiscale: mu must lie in (0, 1/2)");
  }
  if (!(c_bold > 0.0))
  {
    throw DomainError("multiscale: C must be positive");
  }
  if (m < 4)
  {
    throw DomainError("multiscale: m must be at least 4");
  }
  if (!(nu > 0.0 && nu < std::numbers::pi / 16.0))
  {
    throw DomainError("multiscale: nu must lie in (0, pi/16)");
  }
}

double iota(double mu)
{
  return (mu / 4.0) / (1.0 + mu / 4.0);
}

Scales sequences(const MultiscaleParams &p, int n)
{
  if (n < 1)
  {
    throw DomainError("sequences: n must be at least 1");
  }
  const double rn = p.rho0 * std::pow(p.rho, n);
  return {rn, 20.0 * std::pow(rn, 1.0 + p.mu / 4.0)};
}

Dorm2Report validate_dorm2(const MultiscaleParams &p, int terms)
{
  Dorm2Report r;
  const double c8 = std::pow(p.c_bold, 8);
  r.lhs1 = c8 * std::pow(p.rho0, p.mu);
  r.lhs2 = c8 * std::pow(p.rho, p.mu);
  r.lhs3 = p.c_bold * std::pow(p.rho, iota(p.mu) * (1.0 + p.mu / 4.0) / 2.0);
  r.first = r.lhs1 <= 1.0;
  r.second = r.lhs2 <= 0.25;
  r.third = r.lhs3 <= 1.0;

  double sum = 0.0, term = 0.0;
  for (int j = 1; j <= terms; ++j)
  {
    const Scales sj = sequences(p, j);
    const double rnext = sj.rho_n * p.rho;
    term = std::pow(p.c_bold, j + 2) * sj.eps_n / rnext;
    sum += term;
    r.partial_sums.push_back(sum);
  }
  const double ratio = p.c_bold * std::pow(p.rho, p.mu / 4.0);
  r.series_converges = ratio < 1.0;
  r.tail_bound = r.series_converges ? term * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
  return r;
}

ZFunction free_resonance_surrogate(double e1, double gamma)
{
  if (!(gamma > 0.0))
  {
    throw DomainError("free_resonance_surrogate: gamma must be positive");
  }
  const cplx pole(e1, -gamma);
  return [pole](cplx z) { return 1.0 / (pole - z); };
}

cplx T_eps_R_eta(const TestFunction &G, const ZFunction &u, double lambda0, double eps, double R,
                 double eta, const LemmaOptions &opt)
{
  if (!(eps > 0.0) || !(eta > 0.0))
  {
    throw DomainError("T_n_R_eta: eps and eta must be positive");
  }
  const auto supp = compact_support(G, "T_n_R_eta");
  if (!supp)
  {
    return 0.0;
  }
  const auto [a, b] = *supp;
  check_hypothesis(a, b, eps, eta, lambda0, R);

  const AdaptiveOptions inner_opt = adaptive(opt, 0.1);
  auto H = [&](double x) {
    cplx s = 0.0;
    const double lo = std::min(b, x - eta), hi = std::max(a, x + eta);
    auto f = [&](double r) { return G(r) / (x - r); };
    if (lo > a)
    {
      s += integrate_adaptive(f, a, lo, inner_opt).value;
    }
    if (hi < b)
    {
      s += integrate_adaptive(f, hi, b, inner_opt).value;
    }
    return s;
  };
  auto outer = [&](double z) { return u(cplx(z)) * H(z - lambda0); };

  std::vector<double> pts = opt.z_breaks;
  for (double c : {a, b})
  {
    for (double d : {-eta, 0.0, eta})
    {
      pts.push_back(lambda0 + c + d);
    }
  }
  const AdaptiveOptions outer_opt = adaptive(opt);
  return integrate_adaptive(outer, inside(pts, -R, lambda0 - eps), outer_opt).value +
         integrate_adaptive(outer, inside(pts, lambda0 + eps, R), outer_opt).value;
}

cplx T_n_R_eta(const TestFunction &G, const ZFunction &u, double lambda0, const MultiscaleParams &p,
               int n, double R, double eta, const LemmaOptions &opt)
{
  return T_eps_R_eta(G, u, lambda0, sequences(p, n).eps_n, R, eta, opt);
}

cplx T_closed_path(const TestFunction &G, const ZFunction &u, double lambda0, double eps, double R,
                   double eta, const LemmaOptions &opt)
{
  const auto supp = compact_support(G, "T_closed_path");
  if (!supp)
  {
    return 0.0;
  }
  const auto [a, b] = *supp;
  check_hypothesis(a, b, eps, eta, lambda0, R);

  const Rule big = composite_gauss_legendre(0.0, pi, std::max(64, static_cast<int>(4.0 * R)), 16);
  const Rule half = composite_gauss_legendre(0.0, pi, 4, 16);
  const cplx I(0.0, 1.0);

  // Large arc R e^{i phi}, phi from 0 to pi.
  std::vector<cplx> zR(big.x.size()), wR(big.x.size()), uR(big.x.size());
  for (std::size_t k = 0; k < big.x.size(); ++k)
  {
    zR[k] = R * std::exp(I * big.x[k]);
    wR[k] = big.w[k] * I * zR[k];
    uR[k] = u(zR[k]);
  }
  // Gamma_c: lambda0 - eps e^{-it}.
  std::vector<cplx> zc(half.x.size()), wc(half.x.size()), uc(half.x.size());
  for (std::size_t k = 0; k < half.x.size(); ++k)
  {
    const cplx e = std::exp(-I * half.x[k]);
    zc[k] = lambda0 - eps * e;
    wc[k] = half.w[k] * I * eps * e;
    uc[k] = u(zc[k]);
  }

  auto inner = [&](double r) {
    const double x = lambda0 + r;
    cplx s = 0.0;
    for (std::size_t k = 0; k < zR.size(); ++k)
    {
      s += wR[k] * uR[k] / (zR[k] - x);
    }
    for (std::size_t k = 0; k < zc.size(); ++k)
    {
      s += wc[k] * uc[k] / (zc[k] - x);
    }
    // Gamma_(r): x - eta e^{-it}; the integrand reduces to -i u.
    for (std::size_t k = 0; k < half.x.size(); ++k)
    {
      s += -I * half.w[k] * u(x - eta * std::exp(-I * half.x[k]));
    }
    return G(r) * s;
  };
  return -integrate_adaptive(inner, a, b, adaptive(opt)).value;
}

cplx thl12_limit(const TestFunction &G, const ZFunction &u, double lambda0, const LemmaOptions &opt)
{
  const auto range = G.range();
  if (!range)
  {
    throw DomainError("thl12_limit: G needs a finite support or window");
  }
  if (!(range->second > range->first))
  {
    return 0.0;
  }
  auto f = [&](double r) { return G(r) * u(cplx(r + lambda0)); };
  std::vector<double> pts = opt.z_breaks;
  for (double &x : pts)
  {
    x -= lambda0;
  }
  return cplx(0.0, pi) * integrate_adaptive(f, inside(pts, range->first, range->second), adaptive(opt)).value;
}

double thl12_defect(const TestFunction &G, const ZFunction &u, double lambda0, double eps, double R,
                    double eta, const LemmaOptions &opt)
{
  return std::abs(T_eps_R_eta(G, u, lambda0, eps, R, eta, opt) - thl12_limit(G, u, lambda0, opt));
}

CsvTable Thl12Study::table() const
{
  CsvTable t({"sweep", "n", "R", "eta", "eps", "rho_n", "T_re", "T_im", "defect"});
  int sweep = 0;
  for (const auto *cells : {&n_sweep, &R_sweep, &eta_sweep})
  {
    for (const auto &c : *cells)
    {
      t.add({double(sweep), double(c.n), c.R, c.eta, c.eps, c.rho_n, c.T.real(), c.T.imag(), c.defect});
    }
    ++sweep;
  }
  return t;
}

Thl12Study thl12_rate_study(const TestFunction &G, const ZFunction &u, double lambda0,
                            const MultiscaleParams &p, const Thl12Plan &plan,
                            const LemmaOptions &opt, int threads)
{
  p.validate();
  Thl12Study st;
  for (int n : plan.n)
  {
    st.n_sweep.push_back({n, plan.R_fixed, plan.eta_fixed});
  }
  for (double R : plan.R)
  {
    st.R_sweep.push_back({plan.n_fixed, R, plan.eta_fixed});
  }
  for (double eta : plan.eta)
  {
    st.eta_sweep.push_back({plan.n_fixed, plan.R_fixed, eta});
  }
  std::vector<Thl12Cell *> cells;
  for (auto *v : {&st.n_sweep, &st.R_sweep, &st.eta_sweep})
  {
    for (auto &c : *v)
    {
      const Scales s = sequences(p, c.n);
      c.eps = s.eps_n;
      c.rho_n = s.rho_n;
      cells.push_back(&c);
    }
  }
  const cplx limit = thl12_limit(G, u, lambda0, opt);
  parallel_for(cells.size(), threads, [&](std::size_t k, int) {
    Thl12Cell &c = *cells[k];
    c.T = T_eps_R_eta(G, u, lambda0, c.eps, c.R, c.eta, opt);
    c.defect = std::abs(c.T - limit);
  });

  auto collect = [](const std::vector<Thl12Cell> &v, auto param) {
    std::vector<double> x;
    std::vector<cplx> T;
    for (const auto &c : v)
    {
      x.push_back(param(c));
      T.push_back(c.T);
    }
    return std::pair{x, T};
  };
  {
    auto [x, T] = collect(st.n_sweep, [](const Thl12Cell &c) { return c.rho_n; });
    st.exponent_rho = slope_of_differences(x, T);
  }
  {
    auto [x, T] = collect(st.R_sweep, [](const Thl12Cell &c) { return 1.0 / c.R; });
    st.exponent_invR = slope_of_differences(x, T);
  }
  {
    auto [x, T] = collect(st.eta_sweep, [](const Thl12Cell &c) { return c.eta; });
    st.exponent_eta = slope_of_differences(x, T);
  }
  return st;
}

std::vector<cplx> A_Q_eps_R(const TestFunction &zeta, const ZFunction &u, double lambda0, double q,
                            const std::vector<double> &Qs, double eps, double R, const TailOptions &opt)
{
  if (!(q > 0.0 && q < 1.0) || Qs.empty() || !(Qs.front() > 1.0) ||
      !std::is_sorted(Qs.begin(), Qs.end()))
  {
    throw DomainError("A_Q_n_R: need 0 < q < 1 < Q with Q ascending");
  }
  const Contour c = build_gamma_minus(eps, R, lambda0, opt.z_panel, opt.order);
  const std::size_t nz = c.nodes.size();
  std::vector<double> x(nz);
  std::vector<cplx> wu(nz);
  double xmax = 0.0;
  for (std::size_t k = 0; k < nz; ++k)
  {
    x[k] = c.nodes[k].real() - lambda0;
    wu[k] = c.weights[k] * u(c.nodes[k]);
    xmax = std::max(xmax, std::abs(x[k]));
  }
  const double width = pi / xmax;

  std::vector<cplx> out;
  cplx acc = 0.0;
  double lo = q;
  for (double Q : Qs)
  {
    const int panels = std::max(1, static_cast<int>(std::ceil((Q - lo) / width)));
    const Rule s = composite_gauss_legendre(lo, Q, panels, 8);
    std::vector<cplx> part(s.x.size(), 0.0);
    parallel_for(s.x.size(), opt.threads, [&](std::size_t i, int) {
      const cplx z = zeta(s.x[i]);
      if (z == 0.0)
      {
        return;
      }
      cplx f = 0.0;
      for (std::size_t k = 0; k < nz; ++k)
      {
        f += wu[k] * std::polar(1.0, -s.x[i] * x[k]);
      }
      part[i] = s.w[i] * z * f;
    });
    // Sequential sum keeps the result independent of the thread count.
    for (const cplx &v : part)
    {
      acc += v;
    }
    out.push_back(acc);
    lo = Q;
  }
  return out;
}

cplx A_Q_n_R(const TestFunction &zeta, const ZFunction &u, double lambda0, double q, double Q,
             const MultiscaleParams &p, int n, double R, const TailOptions &opt)
{
  return A_Q_eps_R(zeta, u, lambda0, q, {Q}, sequences(p, n).eps_n, R, opt).front();
}

CsvTable TailStudy::table() const
{
  CsvTable t({"n", "R", "Q", "A_re", "A_im", "Q_tail"});
  for (const auto &l : levels)
  {
    for (std::size_t k = 0; k < l.Q.size(); ++k)
    {
      const double tail = k < l.scaled_tail.size() ? l.scaled_tail[k] : std::numeric_limits<double>::quiet_NaN();
      t.add({double(l.n), l.R, l.Q[k], l.A[k].real(), l.A[k].imag(), tail});
    }
  }
  return t;
}

TailStudy tail_study(const TestFunction &zeta, const ZFunction &u, double lambda0, double q,
                     const std::vector<double> &Qs, const MultiscaleParams &p,
                     const std::vector<std::pair<int, double>> &levels, const TailOptions &opt)
{
  if (levels.size() < 2)
  {
    throw DomainError("tail_study: need at least two (n, R) levels");
  }
  TailStudy st;
  for (auto [n, R] : levels)
  {
    TailLevel l;
    l.n = n;
    l.R = R;
    l.Q = Qs;
    l.A = A_Q_eps_R(zeta, u, lambda0, q, Qs, sequences(p, n).eps_n, R, opt);
    for (std::size_t k = 0; k < Qs.size(); ++k)
    {
      const auto it = std::find(Qs.begin(), Qs.end(), 2.0 * Qs[k]);
      if (it == Qs.end())
      {
        break;
      }
      l.scaled_tail.push_back(Qs[k] * std::abs(l.A[it - Qs.begin()] - l.A[k]));
    }
    l.C = l.scaled_tail.empty() ? 0.0 : *std::max_element(l.scaled_tail.begin(), l.scaled_tail.end());
    st.levels.push_back(std::move(l));
  }
  const TailLevel &ref = st.levels.back();
  for (const cplx &a : ref.A)
  {
    st.interchange.push_back(std::abs(a - ref.A.back()));
  }
  double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
  for (const auto &l : st.levels)
  {
    cmin = std::min(cmin, l.C);
    cmax = std::max(cmax, l.C);
  }
  st.stability = cmin > 0.0 ? cmax / cmin - 1.0 : std::numeric_limits<double>::infinity();
  return st;
}

}  // namespace spinboson
