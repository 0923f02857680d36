// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_QUADRATURE_HPP
#define SPINBOSON_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace spinboson
{

using cplx = std::complex<double>;

struct Rule
{
  std::vector<double> x, w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule with n nodes on [a, b].
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Equal panels of `order`-point Gauss-Legendre on [a, b].
Rule composite_gauss_legendre(double a, double b, int panels, int order);

// Panels whose breakpoints are given explicitly (strictly increasing).
Rule panel_rule(const std::vector<double> &breaks, int order);

// Breakpoints on [a, b] starting at `h0` next to `a` and growing geometrically
// by `growth` until the panel length reaches `h`.
std::vector<double> graded_breaks(double a, double b, double h0, double h, double growth = 2.0);

struct QuadResult
{
  cplx value;
  double error = 0.0;
  int evaluations = 0;
};

struct AdaptiveOptions
{
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 20000;
};

using RealToComplex = std::function<cplx(double)>;

// Adaptive Gauss-Kronrod (7/15) integration of a complex integrand over the
// union of [breaks[i], breaks[i+1]]. Infinite endpoints are mapped to finite
// intervals. Throws NumericalError when the tolerance cannot be met.
QuadResult integrate_adaptive(const RealToComplex &f, std::vector<double> breaks,
                              const AdaptiveOptions &opt = {});

inline QuadResult integrate_adaptive(const RealToComplex &f, double a, double b,
                                     const AdaptiveOptions &opt = {})
{
  return integrate_adaptive(f, std::vector<double>{a, b}, opt);
}

// Least-squares slope and intercept of y against x.
struct LineFit
{
  double slope = 0.0, intercept = 0.0;
};
LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace spinboson

#endif  // SPINBOSON_QUADRATURE_HPP
