// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "spinboson/errors.hpp"
#include "spinboson/quadrature.hpp"

using namespace spinboson;

TEST_SUITE("quadrature")
{
  TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly")
  {
    const Rule r = gauss_legendre(6, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k)
    {
      s += r.w[k] * std::pow(r.x[k], 11);
    }
    CHECK(s == doctest::Approx(std::pow(2.0, 12) / 12.0).epsilon(1e-13));
  }

  TEST_CASE("composite rule covers the interval")
  {
    const Rule r = composite_gauss_legendre(-1.0, 3.0, 5, 8);
    CHECK(r.size() == 40);
    double s = 0.0;
    for (double w : r.w)
    {
      s += w;
    }
    CHECK(s == doctest::Approx(4.0).epsilon(1e-14));
  }

  TEST_CASE("adaptive integration with breakpoints")
  {
    const auto q = integrate_adaptive([](double x) { return cplx(std::sqrt(std::abs(x))); }, {-1.0, 0.0, 1.0});
    CHECK(std::abs(q.value - 4.0 / 3.0) < 1e-11);
    const auto g = integrate_adaptive([](double x) { return cplx(std::exp(-x * x), x); }, -9.0, 9.0);
    CHECK(std::abs(g.value - std::sqrt(std::numbers::pi)) < 1e-12);
  }

  TEST_CASE("adaptive integration reports failure")
  {
    AdaptiveOptions opt;
    opt.max_subdivisions = 4;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return cplx(std::sin(1.0 / x)); }, 1e-6, 1.0, opt),
                    NumericalError);
  }

  TEST_CASE("line fit")
  {
    const LineFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
  }
}
