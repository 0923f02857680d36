// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_MODES_HPP
#define SPINBOSON_MODES_HPP

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spinboson/quadrature.hpp"

namespace spinboson
{

// Infrared-regular, UV-Gaussian form factor
//   f(k) = exp(-k^2 / Lambda^2) |k|^{-1/2 + mu}.
struct FormFactorParams
{
  double lambda = 1.0;
  double mu = 0.25;
  void validate() const;
};

// Complex dilation parameter theta, with the admissible strip
//   { theta : |Re theta| < 1e-3, nu_min < Im theta < pi/16 }.
struct DilationParam
{
  cplx theta{0.0, 0.0};
  double nu_min = 0.05;
  bool in_strip() const;
  // theta = 0 or theta inside the strip.
  bool admissible() const;
};

// Radial form factor and its analytic continuation f^theta(r) = e^{-3 theta/2} f(e^{-theta} r).
double form_factor(const FormFactorParams &p, double r);
cplx dilated_form_factor(const FormFactorParams &p, cplx theta, double r);
// Dilated dispersion e^{-theta} r.
cplx dilated_dispersion(cplx theta, double r);

enum class GridRule
{
  GaussLegendre,
  CompositeGaussLegendre
};

struct GridSpec
{
  double r_min = 1e-3;
  std::optional<double> r_max;  // defaults to Lambda sqrt(12 ln 10)
  int modes = 400;
  GridRule rule = GridRule::GaussLegendre;
  int panel_order = 16;  // composite rule only
};

// Radial discretization r_1 < ... < r_M with weights w_j; shell j carries the
// angular average of the form factor.
class RadialGrid
{
public:
  RadialGrid(const GridSpec &spec, const FormFactorParams &form);

  int size() const { return static_cast<int>(r_.size()); }
  const std::vector<double> &nodes() const { return r_; }
  const std::vector<double> &weights() const { return w_; }
  double r_min() const { return a_; }
  double r_max() const { return b_; }
  const FormFactorParams &form() const { return form_; }

  // c_j(theta) = sqrt(4 pi) r_j sqrt(w_j) f^theta(r_j).
  std::vector<cplx> effective_coupling(cplx theta) const;

  // Shell coefficients of a radial function: h_j = sqrt(4 pi) r_j sqrt(w_j) h(r_j),
  // so that <h, l> ~ sum conj(h_j) l_j.
  template <class F>
  std::vector<cplx> shell_coefficients(F &&h) const
  {
    std::vector<cplx> out(r_.size());
    for (std::size_t j = 0; j < r_.size(); j++)
    {
      out[j] = sqrt4pi_ * r_[j] * std::sqrt(w_[j]) * cplx(h(r_[j]));
    }
    return out;
  }

  // Columns r_j, w_j, omega_j (theta = 0), Re/Im c_j(theta).
  void write_csv(std::ostream &os, cplx theta) const;

private:
  FormFactorParams form_;
  double a_, b_;
  std::vector<double> r_, w_;
  double sqrt4pi_;
};

double default_r_max(const FormFactorParams &p);
GridRule parse_grid_rule(const std::string &s);
std::string to_string(GridRule rule);

}  // namespace spinboson

#endif  // SPINBOSON_MODES_HPP
