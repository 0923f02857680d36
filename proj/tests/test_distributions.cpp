// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "spinboson/distributions.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/quadrature.hpp"

using namespace spinboson;

namespace
{
const double sqrt_pi = std::sqrt(std::numbers::pi);
}

TEST_SUITE("distributions")
{
  TEST_CASE("fourier transform of a gaussian")
  {
    CHECK(std::abs(fourier(gaussian(), 0.0) - sqrt_pi) < 1e-12);
    // Closed form sqrt(pi) e^{-x^2/4}.
    CHECK(std::abs(fourier(gaussian(), 1.3) - sqrt_pi * std::exp(-1.3 * 1.3 / 4)) < 1e-12);
  }

  TEST_CASE("fourier round trip")
  {
    const TestFunction phi = gaussian(0.5);
    TestFunction hat;
    hat.f = [&](double x) { return fourier(phi, x); };
    hat.window = std::pair{-40.0, 40.0};
    DistOptions loose;
    loose.abs_tol = 1e-11;
    loose.rel_tol = 1e-10;
    for (double x : {0.0, 0.4, 1.1})
    {
      CHECK(std::abs(inverse_fourier(hat, x, loose) - phi(x)) < 1e-8);
    }
  }

  TEST_CASE("compactly supported transform against a quadrature oracle")
  {
    const TestFunction b = bump(1.5, 0.5);
    const Rule r = composite_gauss_legendre(1.0, 2.0, 40, 16);
    for (double x : {0.7, 3.2})
    {
      cplx oracle = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k)
      {
        oracle += r.w[k] * b(r.x[k]) * std::exp(cplx(0.0, -r.x[k] * x));
      }
      CHECK(std::abs(fourier(b, x) - oracle) < 1e-12);
    }
  }

  TEST_CASE("principal value")
  {
    CHECK(std::abs(pv_integral(gaussian(0.7), 0.7)) < 1e-14);
    CHECK(std::abs(pv_integral(odd_gaussian(), 0.0) - sqrt_pi) < 1e-12);
    const TestFunction b = bump(1.5, 0.5);
    const cplx plain = integrate_adaptive([&](double s) { return b(s) / s; }, 1.0, 2.0).value;
    CHECK(std::abs(pv_integral(b, 0.0) - plain) < 1e-12);
    // Excision converges to the same limit; the gap is about 2 eta phi'(c).
    const TestFunction g = gaussian(0.3);
    for (double eta : {1e-3, 1e-5})
    {
      const cplx gap = pv_integral(g, 0.0) - pv_integral_excision(g, 0.0, eta);
      CHECK(std::abs(gap - 2.0 * eta * g.derivative_at(0.0)) < 1e-2 * eta);
    }
    TestFunction bad;
    bad.f = [](double s) { return cplx(1.0 / s); };
    bad.window = std::pair{-1.0, 1.0};
    CHECK_THROWS_AS(pv_integral(bad, 0.0), DomainError);
  }

  TEST_CASE("heaviside pairing")
  {
    CHECK(std::abs(heaviside_pairing(gaussian(), 0.0) - sqrt_pi / 2) < 1e-12);
    CHECK(std::abs(heaviside_pairing(gaussian(), 1.0) - sqrt_pi / 2 * std::erfc(1.0)) < 1e-12);
    CHECK(std::abs(heaviside_pairing(gaussian(), 50.0)) == 0.0);
    CHECK_THROWS_AS(heaviside_pairing(gaussian(), -1.0), DomainError);
  }

  TEST_CASE("Sokhotski-Plemelj limits")
  {
    CHECK(std::abs(sokhotski_limit(gaussian()) - std::numbers::pi) < 1e-12);
    CHECK(std::abs(sokhotski_limit(odd_gaussian()) - cplx(0.0, -sqrt_pi)) < 1e-12);
    for (const auto &phi : test_family())
    {
      double prev = 1e300;
      for (double a : {1e-1, 1e-2, 1e-3, 1e-4})
      {
        const double d = sokhotski_defect(phi, a);
        CHECK(d <= 5.0 * a);
        CHECK(d < prev);
        prev = d;
      }
    }
    CHECK_THROWS_AS(regularized_heaviside(gaussian(), 0.0), DomainError);
  }

  TEST_CASE("test function contracts")
  {
    const TestFunction b = bump(0.0, 1.0);
    CHECK(b(1.5) == cplx(0.0));
    CHECK(b(-1.0) == cplx(0.0));
    CHECK(std::abs(b.derivative_at(0.3) - (b(0.3 + 1e-6) - b(0.3 - 1e-6)) / 2e-6) < 1e-8);
    CHECK(std::abs(fourier(zero_function(), 1.0)) == 0.0);
    CHECK_THROWS_AS(bump(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(gaussian(0.0, -1.0), DomainError);
  }

  TEST_CASE("extrapolation to zero is exact for polynomials")
  {
    const std::vector<double> x{0.4, 0.2, 0.1};
    std::vector<cplx> v;
    for (double a : x)
    {
      v.emplace_back(2.0 + 3.0 * a - a * a, a);
    }
    CHECK(std::abs(extrapolate_to_zero(x, v) - 2.0) < 1e-14);
    CHECK_THROWS_AS(extrapolate_to_zero({}, {}), DomainError);
  }
}
