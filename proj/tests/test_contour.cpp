// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <numbers>

#include <doctest.h>

#include "spinboson/contour.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/linalg.hpp"
#include "spinboson/spectral.hpp"

using namespace spinboson;

TEST_SUITE("contour")
{
  TEST_CASE("real segments")
  {
    const Contour c = build_gamma_minus(0.1, 5.0, 0.0, 0.05);
    REQUIRE(c.segments.size() == 2);
    CHECK(std::abs(c.segments[0].start() - cplx(-5.0)) < 1e-15);
    CHECK(std::abs(c.segments[0].end() - cplx(-0.1)) < 1e-15);
    CHECK(std::abs(c.segments[1].start() - cplx(0.1)) < 1e-15);
    CHECK(std::abs(c.segments[1].end() - cplx(5.0)) < 1e-15);
    // Total length 9.8.
    CHECK(std::abs(c.integrate([](cplx) { return cplx(1.0); }) - 9.8) < 1e-13);
  }

  TEST_CASE("full contour is a connected chain")
  {
    GammaSpec s;
    s.eps = 0.1;
    s.lambda0 = 0.0;
    const Contour c = build_gamma(s);
    CHECK(c.connection_gap() < 1e-14);
    bool found = false;
    for (const auto &seg : c.segments)
    {
      if (seg.kind == SegmentKind::Arc)
      {
        found = true;
        CHECK(std::abs(seg.start() - cplx(-0.1)) < 1e-15);
        CHECK(std::abs(seg.end() - cplx(0.1)) < 1e-15);
        CHECK(seg.point(0.5 * (seg.from + seg.to)).imag() > 0.0);
      }
    }
    CHECK(found);
  }

  TEST_CASE("closed loop reproduces the residue")
  {
    Contour c;
    c.segments = {make_line(cplx(-1, -1), cplx(1, -1), 4), make_line(cplx(1, -1), cplx(1, 1), 4),
                  make_line(cplx(1, 1), cplx(-1, 1), 4), make_line(cplx(-1, 1), cplx(-1, -1), 4)};
    c.discretize(16);
    CHECK(c.closure_gap() < 1e-15);
    const cplx w(0.2, -0.3);
    const cplx v = c.integrate([&](cplx z) { return 1.0 / (z - w); });
    CHECK(std::abs(v - cplx(0.0, 2 * std::numbers::pi)) < 1e-10);
  }

  TEST_CASE("parameter checks")
  {
    GammaSpec s;
    s.eps = 5.5;
    CHECK_THROWS_AS(build_gamma(s), DomainError);
    GammaSpec t;
    t.t = 0.05;
    CHECK_THROWS_AS(build_gamma(t), DomainError);
  }

  TEST_CASE("free propagator from the contour")
  {
    ModelParams p;
    p.g = 0.0;
    p.grid.modes = 40;
    const Model m(p);
    const ResonanceData rd = eigen_resonances(m);
    GammaSpec s;
    s.t = 1.0;
    s.detours = {1.0};
    const Contour c = build_gamma(s);
    const CVec phi = m.vacuum_state(Upper);
    const cplx v = laplace_propagator(phi, phi, 1.0, m, rd, c);
    CHECK(std::abs(v - std::exp(cplx(0.0, -1.0))) < 1e-8);
  }

  TEST_CASE("direct propagator basics")
  {
    ModelParams p;
    p.g = 0.1;
    p.theta.theta = 0.0;
    p.grid.modes = 40;
    const Model m(p);
    const CVec psi = m.vacuum_state(Lower);
    const HermitianPropagator prop(m.full().mat, {psi});
    CHECK(std::abs(direct_propagator(prop, psi, psi, 0.0) - 1.0) < 1e-13);
    for (double t : {0.5, 3.0, 20.0})
    {
      CHECK(std::abs(direct_propagator(prop, psi, psi, t)) <= 1.0 + 1e-13);
    }
  }

  TEST_CASE("Laplace identity on the desk model")
  {
    ModelParams p;
    const LaplaceExperiment ex(p);
    GammaSpec s;
    const LaplaceCheck r = ex.check(2.0, s);
    CHECK(r.defect <= 1e-6 * r.scale);
  }

  TEST_CASE("Laplace identity at g = 0 and two dilations")
  {
    ModelParams p;
    p.g = 0.0;
    p.grid.modes = 60;
    CHECK(laplace_identity_defect(p, 1.0, 0.05, 5.0) <= 1e-8);
    ModelParams q;
    q.grid.modes = 60;
    const double a = laplace_identity_defect(q, 2.0, 0.05, 5.0);
    const double b = laplace_identity_defect(q.with_theta(cplx(0.0, 0.1)), 2.0, 0.05, 5.0);
    CHECK(std::abs(a - b) <= 1e-7);
  }
}
