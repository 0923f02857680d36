// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "spinboson/contour.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/linalg.hpp"

namespace spinboson
{

namespace
{

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

AdaptiveOptions tight()
{
  AdaptiveOptions a;
  a.abs_tol = 1e-14;
  a.rel_tol = 1e-12;
  a.max_subdivisions = 50000;
  return a;
}

std::pair<double, double> overlap(const WavePacket &h, const WavePacket &l)
{
  return {std::max(h.kappa(), l.kappa()), std::min(h.upper(), l.upper())};
}

std::pair<double, double> support_of(const TestFunction &G)
{
  if (!G.support)
  {
    throw DomainError("scattering: G must have compact support");
  }
  return *G.support;
}

bool vanishes(const TestFunction &G)
{
  const auto [a, b] = support_of(G);
  return !(b > a);
}

struct Lorentz : Eigen::DenseFunctor<double>
{
  const std::vector<double> &x, &y;
  Lorentz(const std::vector<double> &x_, const std::vector<double> &y_)
    : DenseFunctor<double>(3, static_cast<int>(x_.size())), x(x_), y(y_)
  {
  }
  // p = (A, c, w).
  int operator()(const Eigen::VectorXd &p, Eigen::VectorXd &f) const
  {
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      const double d = x[i] - p(1), w2 = p(2) * p(2);
      f(i) = p(0) * w2 / (d * d + w2) - y[i];
    }
    return 0;
  }
  int df(const Eigen::VectorXd &p, Eigen::MatrixXd &J) const
  {
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      const double d = x[i] - p(1), w2 = p(2) * p(2), den = d * d + w2;
      J(i, 0) = w2 / den;
      J(i, 1) = 2.0 * p(0) * w2 * d / (den * den);
      J(i, 2) = 2.0 * p(0) * p(2) * d * d / (den * den);
    }
    return 0;
  }
};

}  // namespace

void WavePacket::validate() const
{
  if (!(halfwidth > 0.0) || !(kappa() > 0.0))
  {
    std::ostringstream os;
    os << "WavePacket: support [" << kappa() << ", " << upper() << "] must lie in (0, inf)";
    throw DomainError(os.str());
  }
}

double WavePacket::radial(double r) const
{
  const double x = (r - center) / halfwidth;
  return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
}

TestFunction build_G(const WavePacket &h, const WavePacket &l, const FormFactorParams &form)
{
  h.validate();
  l.validate();
  const auto [a, b] = overlap(h, l);
  if (!(b > a) || h.angular == 0.0 || l.angular == 0.0)
  {
    return zero_function();
  }
  TestFunction G;
  G.f = [=](double r) {
    if (!(r > a && r < b))
    {
      return cplx(0.0);
    }
    const double f = form_factor(form, r);
    return 16.0 * pi * pi * std::pow(r, 4) * std::conj(h(r)) * l(r) * f * f;
  };
  G.support = std::pair{a, b};
  G.decay = DecayClass::Compact;
  G.name = "G";
  return G;
}

TestFunction build_W(const WavePacket &h, const WavePacket &l, const FormFactorParams &form)
{
  h.validate();
  l.validate();
  const auto [a, b] = overlap(h, l);
  if (!(b > a) || h.angular == 0.0 || l.angular == 0.0)
  {
    return zero_function();
  }
  TestFunction W;
  W.f = [=](double r) {
    if (!(r > a && r < b))
    {
      return cplx(0.0);
    }
    return 4.0 * pi * r * r * l(r) * std::conj(h(r)) * form_factor(form, r);
  };
  W.support = std::pair{a, b};
  W.decay = DecayClass::Compact;
  W.name = "W";
  return W;
}

cplx w_overlap(const TestFunction &W, const FormFactorParams &form, double s)
{
  const auto [a, b] = support_of(W);
  if (!(b > a))
  {
    return 0.0;
  }
  auto f = [&](double r) {
    return 4.0 * pi * r * r * std::conj(W(r)) * std::exp(I * (s * r)) * form_factor(form, r);
  };
  const int panels = 8 + static_cast<int>(std::ceil((b - a) * std::abs(s) / (2.0 * pi)));
  std::vector<double> br(panels + 1);
  for (int k = 0; k <= panels; ++k)
  {
    br[k] = a + (b - a) * k / panels;
  }
  return integrate_adaptive(f, br, tight()).value;
}

double w_decay_exponent(const TestFunction &W, const FormFactorParams &form, double s0, double s1,
                        int samples)
{
  std::vector<double> x, y;
  for (int k = 0; k < samples; ++k)
  {
    const double s = s0 * std::pow(s1 / s0, double(k) / (samples - 1));
    const double v = std::abs(w_overlap(W, form, s));
    if (v > 0.0)
    {
      x.push_back(std::log(s));
      y.push_back(std::log(v));
    }
  }
  if (x.size() < 2)
  {
    return std::numeric_limits<double>::infinity();
  }
  return -fit_line(x, y).slope;
}

TestFunction build_J(const TestFunction &G, double lambda0, double s_resolve)
{
  const auto [a, b] = support_of(G);
  TestFunction J;
  J.name = "J";
  if (!(b > a))
  {
    J.f = [](double) { return cplx(0.0); };
    J.window = std::pair{0.0, 0.0};
    return J;
  }
  const int panels = 16 + static_cast<int>(std::ceil((b - a) * s_resolve / (2.0 * pi)));
  const Rule rule = composite_gauss_legendre(a, b, panels, 16);
  auto x = std::make_shared<std::vector<double>>(rule.x);
  auto wg = std::make_shared<std::vector<cplx>>(rule.x.size());
  for (std::size_t k = 0; k < rule.x.size(); ++k)
  {
    (*wg)[k] = rule.w[k] * G(rule.x[k]);
  }
  J.f = [x, wg, lambda0](double s) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < x->size(); ++k)
    {
      acc += (*wg)[k] * std::polar(1.0, s * (*x)[k]);
    }
    return std::polar(1.0, s * lambda0) * acc;
  };
  return J;
}

double j_decay_constant(const TestFunction &J, double s0, double s1, int samples)
{
  double c = 0.0;
  for (int k = 0; k < samples; ++k)
  {
    const double s = s0 + (s1 - s0) * k / std::max(1, samples - 1);
    c = std::max(c, std::abs(J(s)) * s * s);
  }
  return c;
}

LorentzFit fit_lorentzian(const std::vector<double> &x, const std::vector<double> &y)
{
  if (x.size() != y.size() || x.size() < 4)
  {
    throw DomainError("fit_lorentzian: need at least four matching samples");
  }
  const auto imax = std::max_element(y.begin(), y.end()) - y.begin();
  const double A0 = y[imax];
  // Half-width from the half-maximum crossings.
  double lo = x.front(), hi = x.back();
  for (auto i = imax; i >= 0; --i)
  {
    if (y[i] < 0.5 * A0)
    {
      lo = x[i];
      break;
    }
  }
  for (std::size_t i = imax; i < y.size(); ++i)
  {
    if (y[i] < 0.5 * A0)
    {
      hi = x[i];
      break;
    }
  }
  Eigen::VectorXd p(3);
  p << A0, x[imax], std::max(0.5 * (hi - lo), x[1] - x[0]);

  Lorentz fun(x, y);
  Eigen::LevenbergMarquardt<Lorentz> lm(fun);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  lm.setMaxfev(2000);
  const auto status = lm.minimize(p);

  LorentzFit fit;
  fit.amplitude = p(0);
  fit.center = p(1);
  fit.width = std::abs(p(2));
  Eigen::VectorXd f(x.size());
  fun(p, f);
  fit.residual = std::sqrt(f.squaredNorm() / f.size()) / std::abs(A0);
  fit.converged = status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters &&
                  status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation && fit.width > 0.0 &&
                  std::isfinite(fit.center);
  return fit;
}

CsvTable KernelScan::table() const
{
  CsvTable t({"k", "T_re", "T_im", "T_abs"});
  for (std::size_t i = 0; i < k.size(); ++i)
  {
    t.add({k[i], T[i].real(), T[i].imag(), std::abs(T[i])});
  }
  return t;
}

nlohmann::json KernelScan::summary() const
{
  return {{"fit",
           {{"center", fit.center},
            {"half_width", fit.width},
            {"amplitude", fit.amplitude},
            {"residual", fit.residual},
            {"converged", fit.converged}}},
          {"lambda0", complex_json(lambda0)},
          {"lambda1", complex_json(lambda1)},
          {"spacing", spacing},
          {"center_minus_re_lambda1", fit.center - lambda1.real()},
          {"width_over_abs_im_lambda1", fit.width / std::abs(lambda1.imag())},
          {"points", k.size()}};
}

ScatteringContext::ScatteringContext(std::shared_ptr<const Model> model, ResonanceData rd)
  : model_(std::move(model)), rd_(std::move(rd)), lambda0_(rd_.lambda0.real()), s1psi_(apply_sigma1(rd_.psi0))
{
  if (!model_)
  {
    throw DomainError("ScatteringContext: null model");
  }
  u_ = std::make_unique<BilinearResolvent>(model_->full().mat, model_->levels(), s1psi_, s1psi_,
                                           std::vector<cplx>{rd_.lambda0, rd_.lambda1});
}

cplx ScatteringContext::u(cplx z) const
{
  return (*u_)(z);
}

cplx ScatteringContext::u_mirror(cplx w, SecondTerm route) const
{
  if (route == SecondTerm::Conjugation)
  {
    return std::conj((*u_)(std::conj(w)));
  }
  if (!mirror_)
  {
    const CVec c = s1psi_.conjugate();
    mirror_ = std::make_unique<BilinearResolvent>(assemble_mirrored(model_->params()).mat, model_->levels(), c, c,
                                                  std::vector<cplx>{std::conj(rd_.lambda0), std::conj(rd_.lambda1)});
  }
  return (*mirror_)(w);
}

cplx ScatteringContext::kernel_T(double k, double kp, SecondTerm route) const
{
  if (!(k > 0.0) || !(kp > 0.0))
  {
    throw DomainError("kernel_T: not defined for k = 0");
  }
  const auto &p = model_->params();
  const double pref = p.g * p.g * form_factor(p.form, k) * form_factor(p.form, kp) / (rd_.norm0 * rd_.norm0);
  return -2.0 * pi * I * pref * (u(lambda0_ + kp) + u_mirror(lambda0_ - kp, route));
}

SmearedT ScatteringContext::smeared_T(const WavePacket &h, const WavePacket &l, int threads) const
{
  const auto &p = model_->params();
  const TestFunction G = build_G(h, l, p.form);
  SmearedT out;
  if (vanishes(G))
  {
    return out;
  }
  const auto [a, b] = support_of(G);

  auto kern = [&](double r) {
    return 16.0 * pi * pi * std::pow(r, 4) * std::conj(h(r)) * l(r) * kernel_T(r, r);
  };
  AdaptiveOptions ao = tight();
  ao.abs_tol = 1e-13;
  out.kernel_form = integrate_adaptive(kern, a, b, ao).value;

  const Rule rule = composite_gauss_legendre(a, b, 32, 16);
  const std::size_t n = rule.x.size();
  std::vector<cplx> t1(n), t2(n);
  std::vector<std::unique_ptr<BilinearResolvent>> us(workers(n, threads));
  for (auto &w : us)
  {
    w = std::make_unique<BilinearResolvent>(*u_);
  }
  parallel_for(n, threads, [&](std::size_t k, int w) {
    const double z = rule.x[k];
    const cplx g = rule.w[k] * G(z);
    t1[k] = g * (*us[w])(lambda0_ + z);
    t2[k] = g * std::conj((*us[w])(lambda0_ - z));
  });
  for (std::size_t k = 0; k < n; ++k)
  {
    out.T1 += -2.0 * pi * t1[k];
    out.T2 += 2.0 * pi * t2[k];
  }
  out.resolvent_form = I * p.g * p.g / (rd_.norm0 * rd_.norm0) * (out.T1 - out.T2);
  return out;
}

ProofTerms ScatteringContext::proof_terms(const WavePacket &h, const WavePacket &l, double q,
                                          const ProofOptions &opt, int threads) const
{
  if (!(q >= 0.0))
  {
    throw DomainError("proof_terms: q must be non-negative");
  }
  const auto &p = model_->params();
  const TestFunction G = build_G(h, l, p.form);
  ProofTerms out;
  out.q = q;
  out.eps = opt.eps;
  out.R = opt.R;
  if (vanishes(G))
  {
    return out;
  }
  const auto [a, b] = support_of(G);
  if (!(opt.eps < a / 4.0) || !(opt.R > std::abs(lambda0_) + b))
  {
    throw DomainError("proof_terms: need eps < kappa / 4 and R > |lambda0| + sup supp G");
  }

  const Contour c = build_gamma_minus(opt.eps, opt.R, lambda0_, opt.z_panel, opt.order);
  const std::size_t nz = c.nodes.size();
  std::vector<double> z(nz);
  std::vector<cplx> wu(nz);
  std::vector<std::unique_ptr<BilinearResolvent>> us(workers(nz, threads));
  for (auto &w : us)
  {
    w = std::make_unique<BilinearResolvent>(*u_);
  }
  parallel_for(nz, threads, [&](std::size_t k, int w) {
    z[k] = c.nodes[k].real();
    wu[k] = c.weights[k] * (*us[w])(c.nodes[k]);
  });

  // Delta and principal-value parts.
  std::vector<cplx> pv(nz);
  parallel_for(nz, threads, [&](std::size_t k, int) {
    const double x = z[k] - lambda0_;
    TestFunction phi;
    phi.f = [&G, x, q](double r) { return G(x - r) * std::polar(1.0, -q * r); };
    phi.support = std::pair{x - b, x - a};
    phi.decay = DecayClass::Compact;
    pv[k] = pv_integral(phi, 0.0, DistOptions{1e-15, 1e-13});
  });
  for (std::size_t k = 0; k < nz; ++k)
  {
    out.T11 += -pi * wu[k] * G(z[k] - lambda0_);
    out.T12 += I * wu[k] * pv[k];
  }

  // s-route: s_max from the decay of J unless given.
  double gnorm = 0.0;
  {
    const Rule r = composite_gauss_legendre(a, b, 16, 16);
    for (std::size_t k = 0; k < r.x.size(); ++k)
    {
      gnorm += r.w[k] * std::abs(G(r.x[k]));
    }
  }
  double s_max = opt.s_max;
  if (!(s_max > 0.0))
  {
    const TestFunction probe = build_J(G, lambda0_, 1e4);
    const double chunk = 50.0;
    for (s_max = chunk; s_max < 1e4; s_max += chunk)
    {
      double m = 0.0;
      for (int k = 0; k <= 100; ++k)
      {
        m = std::max(m, std::abs(probe(s_max - chunk + chunk * k / 100.0)));
      }
      if (m <= opt.s_tol * gnorm)
      {
        break;
      }
    }
  }
  out.s_max = s_max;
  const TestFunction J = build_J(G, lambda0_, s_max);
  double zmax = 0.0;
  for (double x : z)
  {
    zmax = std::max(zmax, std::abs(x - lambda0_));
  }
  const int panels = std::max(1, static_cast<int>(std::ceil((s_max - q) * zmax / pi)));
  const Rule s = composite_gauss_legendre(q, s_max, panels, 16);
  std::vector<cplx> wj(s.x.size());
  parallel_for(s.x.size(), threads, [&](std::size_t i, int) { wj[i] = s.w[i] * J(s.x[i]); });
  std::vector<cplx> t1(nz);
  parallel_for(nz, threads, [&](std::size_t k, int) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < s.x.size(); ++i)
    {
      acc += wj[i] * std::polar(1.0, -s.x[i] * z[k]);
    }
    t1[k] = -wu[k] * acc;
  });
  double wsum = 0.0;
  for (std::size_t k = 0; k < nz; ++k)
  {
    out.T1 += t1[k];
    wsum += std::abs(wu[k]);
  }
  out.tail = std::abs(J(s_max)) * s_max * wsum;
  return out;
}

std::vector<QLimitRow> ScatteringContext::q_limit(const WavePacket &h, const WavePacket &l,
                                                  const std::vector<double> &qs) const
{
  const TestFunction G = build_G(h, l, model_->params().form);
  std::vector<QLimitRow> rows;
  if (vanishes(G))
  {
    for (double q : qs)
    {
      rows.push_back({q});
    }
    return rows;
  }
  const auto [a, b] = support_of(G);
  const Rule rule = composite_gauss_legendre(a, b, 32, 16);
  std::vector<cplx> wug(rule.x.size());
  double moment = 0.0;
  cplx ref = 0.0;
  for (std::size_t k = 0; k < rule.x.size(); ++k)
  {
    wug[k] = rule.w[k] * u(lambda0_ + rule.x[k]) * G(rule.x[k]);
    moment += rule.x[k] * std::abs(wug[k]);
    ref += -2.0 * pi * wug[k];
  }
  for (double q : qs)
  {
    QLimitRow row;
    row.q = q;
    for (std::size_t k = 0; k < rule.x.size(); ++k)
    {
      row.value += -pi * wug[k] * (1.0 + std::polar(1.0, -q * rule.x[k]));
    }
    row.defect = std::abs(row.value - ref);
    row.bound = pi * q * moment;
    rows.push_back(row);
  }
  return rows;
}

TimeDomainResult ScatteringContext::time_domain_T(const WavePacket &h, const WavePacket &l,
                                                  const TimeOptions &opt) const
{
  if (!(opt.s_max > 0.0) || !(opt.panel > 0.0))
  {
    throw DomainError("time_domain_T: s_max and panel must be positive");
  }
  const auto &p = model_->params();
  const TestFunction G = build_G(h, l, p.form);
  TimeDomainResult out;
  out.s_max = opt.s_max;
  if (vanishes(G) || p.g == 0.0)
  {
    return out;
  }
  const Model m0(p.with_theta(0.0));
  const CVec x = apply_sigma1(rd_.psi0_hermitian);
  const HermitianPropagator prop(m0.full().mat, {x});
  const Eigen::VectorXd wt = prop.spectral_weights(x) / (rd_.norm0 * rd_.norm0);
  const Eigen::VectorXd &E = prop.energies();
  const double l0 = rd_.lambda0_hermitian;

  const TestFunction J = build_J(G, l0, opt.s_max);
  const Rule s = composite_gauss_legendre(0.0, opt.s_max, static_cast<int>(std::ceil(opt.s_max / opt.panel)),
                                          opt.order);
  for (std::size_t i = 0; i < s.x.size(); ++i)
  {
    cplx C = 0.0;  // <sigma_1 Psi, e^{-isH} sigma_1 Psi> / ||Psi||^2
    for (Eigen::Index n = 0; n < E.size(); ++n)
    {
      C += wt(n) * std::polar(1.0, -s.x[i] * E(n));
    }
    const cplx wj = s.w[i] * J(s.x[i]);
    out.T1 += -2.0 * pi * I * wj * C;
    out.T2 += -2.0 * pi * I * wj * std::polar(1.0, -2.0 * s.x[i] * l0) * std::conj(C);
  }
  out.value = I * p.g * p.g * (out.T1 - out.T2);
  const double cj = j_decay_constant(J, 0.5 * opt.s_max, opt.s_max);
  out.tail_estimate = 4.0 * pi * p.g * p.g * cj / opt.s_max;
  if (out.tail_estimate > opt.tail_warn * std::abs(out.value))
  {
    std::ostringstream os;
    os << "time_domain_T: s_max = " << opt.s_max << " leaves an estimated tail of " << out.tail_estimate;
    out.warning = os.str();
  }
  return out;
}

KernelScan ScatteringContext::line_shape_scan(const ScanSpec &spec, int threads) const
{
  if (!(spec.spacing > 0.0) || !(spec.half_range > 0.0))
  {
    throw DomainError("line_shape_scan: spacing and half_range must be positive");
  }
  KernelScan scan;
  scan.lambda0 = rd_.lambda0;
  scan.lambda1 = rd_.lambda1;
  scan.spacing = spec.spacing;
  const double c = spec.center > 0.0 ? spec.center : rd_.lambda1.real();
  const int half = static_cast<int>(std::round(spec.half_range / spec.spacing));
  for (int i = -half; i <= half; ++i)
  {
    scan.k.push_back(c + i * spec.spacing);
  }
  if (!(scan.k.front() > 0.0))
  {
    throw DomainError("line_shape_scan: the scan grid must stay away from k = 0");
  }
  const auto &p = model_->params();
  const double pref = p.g * p.g / (rd_.norm0 * rd_.norm0);
  scan.T.resize(scan.k.size());
  std::vector<std::unique_ptr<BilinearResolvent>> us(workers(scan.k.size(), threads));
  for (auto &w : us)
  {
    w = std::make_unique<BilinearResolvent>(*u_);
  }
  parallel_for(scan.k.size(), threads, [&](std::size_t i, int w) {
    const double k = scan.k[i], f = form_factor(p.form, k);
    BilinearResolvent &uu = *us[w];
    scan.T[i] = -2.0 * pi * I * pref * f * f * (uu(lambda0_ + k) + std::conj(uu(lambda0_ - k)));
  });
  std::vector<double> y(scan.k.size());
  for (std::size_t i = 0; i < y.size(); ++i)
  {
    y[i] = std::norm(scan.T[i]);
  }
  try
  {
    scan.fit = fit_lorentzian(scan.k, y);
  }
  catch (const std::exception &)
  {
    scan.fit.converged = false;
  }
  return scan;
}

}  // namespace spinboson
