// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "spinboson/errors.hpp"
#include "spinboson/modes.hpp"
#include "spinboson/quadrature.hpp"

using namespace spinboson;

TEST_SUITE("modes")
{
  const FormFactorParams form{1.0, 0.25};

  TEST_CASE("form factor values")
  {
    CHECK(form_factor(form, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(form_factor(form, 1.0) == doctest::Approx(0.3678794).epsilon(1e-7));
    CHECK(form_factor(form, 2.0) == doctest::Approx(0.0154009).epsilon(1e-5));
    CHECK(form_factor(form, 2.0) == doctest::Approx(std::exp(-4.0) * std::pow(2.0, -0.25)).epsilon(1e-15));
    CHECK_THROWS_AS(form_factor(form, 0.0), DomainError);
    // r^-mu growth near the origin.
    CHECK(form_factor(form, 1e-8) / form_factor(form, 1e-6) == doctest::Approx(std::pow(100.0, 0.25)).epsilon(1e-9));
  }

  TEST_CASE("form factor parameter checks")
  {
    CHECK_THROWS_AS((FormFactorParams{1.0, 0.6}.validate()), DomainError);
    CHECK_THROWS_AS((FormFactorParams{-1.0, 0.25}.validate()), DomainError);
    CHECK_NOTHROW(form.validate());
  }

  TEST_CASE("dilated dispersion")
  {
    CHECK(dilated_dispersion(0.0, 2.0) == cplx(2.0));
    const cplx d = dilated_dispersion(cplx(0.0, 0.15), 2.0);
    CHECK(d.real() == doctest::Approx(1.97755).epsilon(1e-5));
    CHECK(d.imag() == doctest::Approx(-0.29888).epsilon(1e-4));
    CHECK(std::abs(dilated_dispersion(cplx(0.0, -0.15), 2.0) - std::conj(d)) < 1e-15);
  }

  TEST_CASE("dilated form factor")
  {
    CHECK(std::abs(dilated_form_factor(form, 0.0, 0.7) - form_factor(form, 0.7)) < 1e-16);
    const cplx th(0.0, 0.15);
    const cplx a = dilated_form_factor(form, th, 1.0);
    CHECK(std::abs(dilated_form_factor(form, std::conj(th), 1.0) - std::conj(a)) < 1e-16);
    // e^{-3 theta/2} f(e^{-theta} r) continued from real theta.
    const cplx expect = std::exp(cplx(0.0, -0.1875)) * std::exp(-std::exp(cplx(0.0, -0.3)));
    CHECK(std::abs(a - expect) < 1e-15);
  }

  TEST_CASE("strip membership")
  {
    CHECK(DilationParam{cplx(0.0, 0.15), 0.05}.in_strip());
    CHECK_FALSE(DilationParam{cplx(0.0, 0.2), 0.05}.in_strip());
    CHECK_FALSE(DilationParam{cplx(0.0, 0.04), 0.05}.in_strip());
    CHECK_FALSE(DilationParam{cplx(2e-3, 0.15), 0.05}.in_strip());
    CHECK(DilationParam{cplx(0.0), 0.05}.admissible());
    CHECK_FALSE(DilationParam{cplx(0.0), 0.05}.in_strip());
  }

  TEST_CASE("effective coupling converges to the continuum norm")
  {
    const double exact = integrate_adaptive(
                           [&](double r) { return cplx(4 * std::numbers::pi * r * r * std::pow(form_factor(form, r), 2)); },
                           {1e-3, 1.0, default_r_max(form)})
                           .value.real();
    double prev = 1e300;
    for (int m : {10, 40, 160})
    {
      GridSpec g;
      g.modes = m;
      const RadialGrid grid(g, form);
      double s = 0.0;
      for (cplx c : grid.effective_coupling(0.0))
      {
        s += std::norm(c);
      }
      const double err = std::abs(s - exact);
      CHECK(err <= prev);
      prev = err;
    }
    CHECK(prev < 1e-10);
  }

  TEST_CASE("effective coupling conjugation and single node")
  {
    GridSpec g;
    g.modes = 50;
    const RadialGrid grid(g, form);
    const auto a = grid.effective_coupling(cplx(0.0, 0.12));
    const auto b = grid.effective_coupling(cplx(0.0, -0.12));
    for (std::size_t j = 0; j < a.size(); ++j)
    {
      CHECK(std::abs(b[j] - std::conj(a[j])) < 1e-15);
    }
    // One shell at r = 1 with unit weight.
    const double c = std::sqrt(4 * std::numbers::pi) * 1.0 * 1.0 * form_factor(form, 1.0);
    CHECK(c == doctest::Approx(std::sqrt(4 * std::numbers::pi) * std::exp(-1.0)));
  }

  TEST_CASE("grid rules")
  {
    CHECK(parse_grid_rule("gauss-legendre") == GridRule::GaussLegendre);
    CHECK(to_string(parse_grid_rule("composite-gauss-legendre")) == "composite-gauss-legendre");
    CHECK_THROWS(parse_grid_rule("simpson"));
    GridSpec g;
    g.rule = GridRule::CompositeGaussLegendre;
    g.modes = 64;
    g.panel_order = 16;
    const RadialGrid grid(g, form);
    CHECK(grid.size() == 64);
    CHECK(grid.nodes().front() > grid.r_min());
    CHECK(grid.nodes().back() < grid.r_max());
  }
}
