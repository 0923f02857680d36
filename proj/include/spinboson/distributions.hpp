// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_DISTRIBUTIONS_HPP
#define SPINBOSON_DISTRIBUTIONS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinboson/quadrature.hpp"

namespace spinboson
{

enum class DecayClass
{
  Schwartz,
  Compact
};

struct TestFunction
{
  std::function<cplx(double)> f;
  std::optional<std::pair<double, double>> support;  // required for Compact
  DecayClass decay = DecayClass::Schwartz;
  std::function<cplx(double)> derivative;            // optional
  // Window outside which a Schwartz function is negligible (below 1e-30).
  std::optional<std::pair<double, double>> window;
  std::string name;

  cplx operator()(double s) const;
  cplx derivative_at(double s) const;
  // Finite integration range if one is known.
  std::optional<std::pair<double, double>> range() const;
};

TestFunction gaussian(double center = 0.0, double sigma = 1.0);
// s e^{-s^2}.
TestFunction odd_gaussian();
// exp(-1 / (1 - x^2)), x = (s - center) / halfwidth, supported in [center - halfwidth, center + halfwidth].
TestFunction bump(double center, double halfwidth);
TestFunction zero_function();
// Gaussian, shifted Gaussian, C-infinity bump, s e^{-s^2}.
std::vector<TestFunction> test_family();

struct DistOptions
{
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
};

// F[phi](x) = int phi(s) e^{-isx} ds.
cplx fourier(const TestFunction &phi, double x, const DistOptions &opt = {});
// (2 pi)^{-1} int u(s) e^{isx} ds.
cplx inverse_fourier(const TestFunction &u, double x, const DistOptions &opt = {});

// Principal value int phi(s) / (s - c) ds as int_0^inf (phi(c+u) - phi(c-u)) / u du.
cplx pv_integral(const TestFunction &phi, double c, const DistOptions &opt = {});
// Same integral with the window (c - eta, c + eta) removed (validation path).
cplx pv_integral_excision(const TestFunction &phi, double c, double eta, const DistOptions &opt = {});

// int_q^inf phi.
cplx heaviside_pairing(const TestFunction &phi, double q, const DistOptions &opt = {});

// F[g_alpha](phi) = int phi(s) / (alpha + is) ds.
cplx regularized_heaviside(const TestFunction &phi, double alpha, const DistOptions &opt = {});
// pi phi(0) - i PV int phi(s)/s ds.
cplx sokhotski_limit(const TestFunction &phi, const DistOptions &opt = {});
double sokhotski_defect(const TestFunction &phi, double alpha, const DistOptions &opt = {});

// Polynomial (Neville) extrapolation of values(x) to x = 0.
cplx extrapolate_to_zero(const std::vector<double> &x, const std::vector<cplx> &values);

}  // namespace spinboson

#endif  // SPINBOSON_DISTRIBUTIONS_HPP
