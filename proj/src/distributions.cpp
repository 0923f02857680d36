// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

AdaptiveOptions adaptive(const DistOptions &opt)
{
  AdaptiveOptions a;
  a.abs_tol = opt.abs_tol;
  a.rel_tol = opt.rel_tol;
  a.max_subdivisions = 50000;
  return a;
}

// Integrate over [a, b] (possibly infinite) with extra interior breakpoints.
cplx integrate(const RealToComplex &f, double a, double b, std::vector<double> extra,
               const DistOptions &opt, const char *who)
{
  std::vector<double> br{a};
  std::sort(extra.begin(), extra.end());
  for (double x : extra)
  {
    if (x > br.back() && x < b)
    {
      br.push_back(x);
    }
  }
  br.push_back(b);
  try
  {
    return integrate_adaptive(f, br, adaptive(opt)).value;
  }
  catch (const NumericalError &e)
  {
    std::ostringstream os;
    os << who << ": quadrature did not converge (tail/error estimate " << e.estimate() << ")";
    throw NumericalError(os.str(), e.estimate());
  }
}

std::pair<double, double> domain(const TestFunction &phi)
{
  const auto r = phi.range();
  return r ? *r : std::pair<double, double>{-inf, inf};
}

}  // namespace

cplx TestFunction::operator()(double s) const
{
  if (support && (s < support->first || s > support->second))
  {
    return 0.0;
  }
  return f(s);
}

cplx TestFunction::derivative_at(double s) const
{
  if (derivative)
  {
    if (support && (s < support->first || s > support->second))
    {
      return 0.0;
    }
    return derivative(s);
  }
  const double h = 1e-5 * std::max(1.0, std::abs(s));
  return ((*this)(s - 2 * h) - 8.0 * (*this)(s - h) + 8.0 * (*this)(s + h) - (*this)(s + 2 * h)) /
         (12.0 * h);
}

std::optional<std::pair<double, double>> TestFunction::range() const
{
  if (support)
  {
    return support;
  }
  return window;
}

TestFunction gaussian(double center, double sigma)
{
  if (!(sigma > 0.0))
  {
    throw DomainError("gaussian: sigma must be positive");
  }
  TestFunction t;
  t.f = [=](double s) { return cplx(std::exp(-std::pow((s - center) / sigma, 2))); };
  t.derivative = [=](double s) {
    const double x = (s - center) / sigma;
    return cplx(-2.0 * x / sigma * std::exp(-x * x));
  };
  t.window = std::pair{center - 9.0 * sigma, center + 9.0 * sigma};
  t.name = center == 0.0 ? "gaussian" : "shifted_gaussian";
  return t;
}

TestFunction odd_gaussian()
{
  TestFunction t;
  t.f = [](double s) { return cplx(s * std::exp(-s * s)); };
  t.derivative = [](double s) { return cplx((1.0 - 2.0 * s * s) * std::exp(-s * s)); };
  t.window = std::pair{-9.0, 9.0};
  t.name = "odd_gaussian";
  return t;
}

TestFunction bump(double center, double halfwidth)
{
  if (!(halfwidth > 0.0))
  {
    throw DomainError("bump: halfwidth must be positive");
  }
  TestFunction t;
  t.f = [=](double s) {
    const double x = (s - center) / halfwidth;
    return std::abs(x) < 1.0 ? cplx(std::exp(-1.0 / (1.0 - x * x))) : cplx(0.0);
  };
  t.derivative = [=](double s) {
    const double x = (s - center) / halfwidth;
    if (std::abs(x) >= 1.0)
    {
      return cplx(0.0);
    }
    const double d = 1.0 - x * x;
    return cplx(std::exp(-1.0 / d) * (-2.0 * x / (d * d)) / halfwidth);
  };
  t.support = std::pair{center - halfwidth, center + halfwidth};
  t.decay = DecayClass::Compact;
  t.name = "bump";
  return t;
}

TestFunction zero_function()
{
  TestFunction t;
  t.f = [](double) { return cplx(0.0); };
  t.derivative = t.f;
  t.support = std::pair{0.0, 0.0};
  t.decay = DecayClass::Compact;
  t.name = "zero";
  return t;
}

std::vector<TestFunction> test_family()
{
  return {gaussian(), gaussian(0.5), bump(0.3, 1.0), odd_gaussian()};
}

cplx fourier(const TestFunction &phi, double x, const DistOptions &opt)
{
  const auto [a, b] = domain(phi);
  if (a >= b)
  {
    return 0.0;
  }
  return integrate([&](double s) { return phi(s) * std::exp(cplx(0.0, -s * x)); }, a, b,
                   {0.0}, opt, "fourier");
}

cplx inverse_fourier(const TestFunction &u, double x, const DistOptions &opt)
{
  const auto [a, b] = domain(u);
  if (a >= b)
  {
    return 0.0;
  }
  return integrate([&](double s) { return u(s) * std::exp(cplx(0.0, s * x)); }, a, b, {0.0}, opt,
                   "inverse_fourier") /
         (2.0 * std::numbers::pi);
}

cplx pv_integral(const TestFunction &phi, double c, const DistOptions &opt)
{
  const cplx fc = phi(c);
  if (!std::isfinite(fc.real()) || !std::isfinite(fc.imag()))
  {
    throw DomainError("pv_integral: test function is not finite at the center");
  }
  const auto [a, b] = domain(phi);
  const double umax = (a >= b) ? 0.0 : std::max(std::abs(b - c), std::abs(c - a));
  if (umax == 0.0)
  {
    return 0.0;
  }
  auto q = [&](double u) {
    if (u == 0.0)
    {
      return 2.0 * phi.derivative_at(c);
    }
    return (phi(c + u) - phi(c - u)) / u;
  };
  std::vector<double> extra;
  if (std::isfinite(a) && std::isfinite(b))
  {
    extra = {std::abs(b - c), std::abs(c - a)};
  }
  return integrate(q, 0.0, umax, extra, opt, "pv_integral");
}

cplx pv_integral_excision(const TestFunction &phi, double c, double eta, const DistOptions &opt)
{
  if (!(eta > 0.0))
  {
    throw DomainError("pv_integral_excision: eta must be positive");
  }
  const auto [a, b] = domain(phi);
  auto f = [&](double s) { return phi(s) / (s - c); };
  cplx v = 0.0;
  if (a < c - eta)
  {
    v += integrate(f, a, std::min(b, c - eta), {}, opt, "pv_integral_excision");
  }
  if (b > c + eta)
  {
    v += integrate(f, std::max(a, c + eta), b, {}, opt, "pv_integral_excision");
  }
  return v;
}

cplx heaviside_pairing(const TestFunction &phi, double q, const DistOptions &opt)
{
  if (!(q >= 0.0))
  {
    throw DomainError("heaviside_pairing: q must be non-negative");
  }
  const auto [a, b] = domain(phi);
  const double lo = std::max(a, q);
  if (lo >= b)
  {
    return 0.0;
  }
  return integrate([&](double s) { return phi(s); }, lo, b, {}, opt, "heaviside_pairing");
}

cplx regularized_heaviside(const TestFunction &phi, double alpha, const DistOptions &opt)
{
  if (!(alpha > 0.0))
  {
    throw DomainError("regularized_heaviside: alpha must be positive");
  }
  const auto [a, b] = domain(phi);
  if (a >= b)
  {
    return 0.0;
  }
  // Resolve the peak of 1/(alpha + is) on nested scales around 0.
  std::vector<double> extra{0.0};
  for (double k = 1.0; k * alpha < 10.0; k *= 10.0)
  {
    extra.push_back(k * alpha);
    extra.push_back(-k * alpha);
  }
  return integrate([&](double s) { return phi(s) / cplx(alpha, s); }, a, b, extra, opt,
                   "regularized_heaviside");
}

cplx sokhotski_limit(const TestFunction &phi, const DistOptions &opt)
{
  return std::numbers::pi * phi(0.0) - cplx(0.0, 1.0) * pv_integral(phi, 0.0, opt);
}

double sokhotski_defect(const TestFunction &phi, double alpha, const DistOptions &opt)
{
  return std::abs(regularized_heaviside(phi, alpha, opt) - sokhotski_limit(phi, opt));
}

cplx extrapolate_to_zero(const std::vector<double> &x, const std::vector<cplx> &values)
{
  if (x.size() != values.size() || x.empty())
  {
    throw DomainError("extrapolate_to_zero: need matching, non-empty samples");
  }
  std::vector<cplx> p = values;
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; m++)
  {
    for (std::size_t i = 0; i + m < n; i++)
    {
      p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
    }
  }
  return p[0];
}

}  // namespace spinboson
