// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/modes.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>

#include "spinboson/errors.hpp"

namespace spinboson
{

void FormFactorParams::validate() const
{
  if (!(lambda > 0.0) || !std::isfinite(lambda))
  {
    throw DomainError("form factor: Lambda must be positive");
  }
  if (!(mu > 0.0 && mu < 0.5))
  {
    throw DomainError("form factor: mu must lie in (0, 1/2)");
  }
}

bool DilationParam::in_strip() const
{
  return std::abs(theta.real()) < 1e-3 && theta.imag() > nu_min &&
         theta.imag() < std::numbers::pi / 16.0;
}

bool DilationParam::admissible() const
{
  return theta == cplx(0.0) || in_strip();
}

double form_factor(const FormFactorParams &p, double r)
{
  if (!(r > 0.0))
  {
    throw DomainError("form_factor: r must be positive");
  }
  return std::exp(-r * r / (p.lambda * p.lambda)) * std::pow(r, -0.5 + p.mu);
}

cplx dilated_form_factor(const FormFactorParams &p, cplx theta, double r)
{
  if (!(r > 0.0))
  {
    throw DomainError("dilated_form_factor: r must be positive");
  }
  // Principal branch: e^{-3 theta / 2} (e^{-theta} r)^{-1/2 + mu} exp(-(e^{-theta} r)^2 / Lambda^2).
  const cplx e2 = std::exp(-2.0 * theta);
  return std::exp(-theta * (1.0 + p.mu)) * std::exp(-e2 * r * r / (p.lambda * p.lambda)) *
         std::pow(r, -0.5 + p.mu);
}

cplx dilated_dispersion(cplx theta, double r)
{
  return std::exp(-theta) * r;
}

double default_r_max(const FormFactorParams &p)
{
  return p.lambda * std::sqrt(12.0 * std::log(10.0));
}

RadialGrid::RadialGrid(const GridSpec &spec, const FormFactorParams &form)
  : form_(form), sqrt4pi_(std::sqrt(4.0 * std::numbers::pi))
{
  form_.validate();
  a_ = spec.r_min;
  b_ = spec.r_max.value_or(default_r_max(form_));
  if (!(a_ > 0.0) || !(b_ > a_))
  {
    throw DomainError("radial grid: need 0 < r_min < r_max");
  }
  if (spec.modes < 1)
  {
    throw DomainError("radial grid: M must be positive");
  }
  Rule rule;
  if (spec.rule == GridRule::GaussLegendre)
  {
    rule = gauss_legendre(spec.modes, a_, b_);
  }
  else
  {
    if (spec.panel_order < 1 || spec.modes % spec.panel_order != 0)
    {
      throw DomainError("radial grid: M must be a multiple of the panel order");
    }
    rule = composite_gauss_legendre(a_, b_, spec.modes / spec.panel_order, spec.panel_order);
  }
  r_ = std::move(rule.x);
  w_ = std::move(rule.w);
  for (std::size_t j = 0; j < r_.size(); j++)
  {
    if (!(r_[j] > 0.0) || (j > 0 && !(r_[j] > r_[j - 1])) || !(w_[j] > 0.0))
    {
      throw NumericalError("radial grid: nodes not strictly increasing and positive");
    }
  }
}

std::vector<cplx> RadialGrid::effective_coupling(cplx theta) const
{
  std::vector<cplx> c(r_.size());
  for (std::size_t j = 0; j < r_.size(); j++)
  {
    c[j] = sqrt4pi_ * r_[j] * std::sqrt(w_[j]) * dilated_form_factor(form_, theta, r_[j]);
  }
  return c;
}

void RadialGrid::write_csv(std::ostream &os, cplx theta) const
{
  const auto c = effective_coupling(theta);
  os << "j,r,w,omega,c_re,c_im\n" << std::setprecision(17);
  for (std::size_t j = 0; j < r_.size(); j++)
  {
    os << j << ',' << r_[j] << ',' << w_[j] << ',' << r_[j] << ',' << c[j].real() << ','
       << c[j].imag() << '\n';
  }
}

GridRule parse_grid_rule(const std::string &s)
{
  if (s == "gauss-legendre")
  {
    return GridRule::GaussLegendre;
  }
  if (s == "composite-gauss-legendre")
  {
    return GridRule::CompositeGaussLegendre;
  }
  throw ConfigError("unknown grid rule '" + s + "'");
}

std::string to_string(GridRule rule)
{
  return rule == GridRule::GaussLegendre ? "gauss-legendre" : "composite-gauss-legendre";
}

}  // namespace spinboson
