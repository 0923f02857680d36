// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "spinboson/errors.hpp"
#include "spinboson/multiscale.hpp"

using namespace spinboson;

namespace
{

LemmaOptions breaks()
{
  LemmaOptions o;
  o.z_breaks = {0.85, 0.95, 1.0, 1.05, 1.15};
  return o;
}

}  // namespace

TEST_SUITE("multiscale")
{
  TEST_CASE("scale sequences")
  {
    MultiscaleParams p;
    p.rho0 = 0.1;
    p.rho = 0.1;
    p.mu = 0.4;
    const Scales s = sequences(p, 1);
    CHECK(s.rho_n == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(s.eps_n == doctest::Approx(0.126191).epsilon(1e-5));
    CHECK(s.eps_n == doctest::Approx(20.0 * std::pow(0.01, 1.1)).epsilon(1e-14));
    CHECK(iota(0.25) == doctest::Approx(0.0588235).epsilon(1e-6));
    // eps_n / rho_n = 20 rho_n^{mu/4} decreases.
    MultiscaleParams q;
    double prev = 1e300;
    for (int n = 1; n < 6; ++n)
    {
      const Scales t = sequences(q, n);
      CHECK(t.eps_n / t.rho_n < prev);
      prev = t.eps_n / t.rho_n;
    }
    CHECK_THROWS_AS(sequences(q, 0), DomainError);
  }

  TEST_CASE("dorm2 inequalities")
  {
    MultiscaleParams p;
    p.rho0 = 0.3;
    const Dorm2Report r = validate_dorm2(p);
    CHECK(r.lhs1 == doctest::Approx(std::pow(1.05, 8) * std::pow(0.3, 0.25)));
    CHECK(r.first == (r.lhs1 <= 1.0));
    CHECK(r.second);
    CHECK(r.lhs3 == doctest::Approx(1.05 * std::pow(1e-4, iota(0.25) * (1.0625) / 2.0)));

    MultiscaleParams unit;
    unit.c_bold = 1.0;
    const Dorm2Report u = validate_dorm2(unit);
    CHECK(u.first);
    CHECK(u.second == (std::pow(unit.rho, unit.mu) <= 0.25));

    const Dorm2Report d = validate_dorm2(MultiscaleParams{});
    CHECK(d.ok());
    CHECK(d.series_converges);
    CHECK(d.tail_bound < 1e-6);
    for (std::size_t k = 1; k < d.partial_sums.size(); ++k)
    {
      CHECK(d.partial_sums[k] >= d.partial_sums[k - 1]);
    }
  }

  TEST_CASE("parameter validation")
  {
    MultiscaleParams p;
    p.mu = 0.6;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.nu = 0.3;
    CHECK_THROWS_AS(p.validate(), DomainError);
  }

  TEST_CASE("T against the closed-path oracle")
  {
    const TestFunction G = bump(0.45, 0.15);
    const ZFunction u = free_resonance_surrogate(1.0, 0.05);
    const cplx t = T_eps_R_eta(G, u, 0.0, 1e-3, 5.0, 1e-3, breaks());
    const cplx c = T_closed_path(G, u, 0.0, 1e-3, 5.0, 1e-3, breaks());
    CHECK(std::abs(t - c) < 1e-10);
    CHECK(std::abs(t - cplx(-0.00843783948887607, 0.381536906284902)) < 1e-10);
  }

  TEST_CASE("T vanishes for G = 0 and rejects overlapping supports")
  {
    const ZFunction u = free_resonance_surrogate(1.0, 0.05);
    CHECK(T_eps_R_eta(zero_function(), u, 0.0, 0.01, 5.0, 0.01) == cplx(0.0));
    CHECK_THROWS_AS(T_eps_R_eta(bump(0.05, 0.04), u, 0.0, 0.01, 5.0, 0.01), DomainError);
  }

  TEST_CASE("successive differences shrink linearly in 1/R and eta")
  {
    const TestFunction G = bump(0.45, 0.15);
    const ZFunction u = free_resonance_surrogate(1.0, 0.05);
    const auto o = breaks();
    const double eps = sequences(MultiscaleParams{}, 2).eps_n;
    auto ratio = [](cplx a, cplx b, cplx c) { return std::log2(std::abs(a - b) / std::abs(b - c)); };
    const cplx r1 = T_eps_R_eta(G, u, 0.0, eps, 10.0, 1e-3, o);
    const cplx r2 = T_eps_R_eta(G, u, 0.0, eps, 20.0, 1e-3, o);
    const cplx r3 = T_eps_R_eta(G, u, 0.0, eps, 40.0, 1e-3, o);
    CHECK(ratio(r1, r2, r3) == doctest::Approx(1.0).epsilon(0.3));
    const cplx e1 = T_eps_R_eta(G, u, 0.0, eps, 40.0, 0.02, o);
    const cplx e2 = T_eps_R_eta(G, u, 0.0, eps, 40.0, 0.01, o);
    const cplx e3 = T_eps_R_eta(G, u, 0.0, eps, 40.0, 0.005, o);
    CHECK(ratio(e1, e2, e3) == doctest::Approx(1.0).epsilon(0.3));
    CHECK(thl12_defect(G, u, 0.0, eps, 40.0, 0.005, o) < thl12_defect(G, u, 0.0, eps, 20.0, 0.02, o));
  }

  TEST_CASE("tail study")
  {
    const ZFunction u = free_resonance_surrogate(1.0, 0.05);
    CHECK(A_Q_n_R(zero_function(), u, 0.0, 0.01, 10.0, MultiscaleParams{}, 1, 10.0) == cplx(0.0));
    const TailStudy ts =
      tail_study(gaussian(0.0, 20.0), u, 0.0, 0.01, {5.0, 10.0, 20.0, 40.0}, MultiscaleParams{}, {{1, 10.0}, {2, 20.0}});
    CHECK(ts.stability <= 0.2);
    for (const auto &l : ts.levels)
    {
      CHECK(l.C > 0.0);
      CHECK(std::isfinite(l.C));
    }
  }
}
