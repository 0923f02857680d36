// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "spinboson/errors.hpp"
#include "spinboson/scattering.hpp"

using namespace spinboson;

namespace
{

const double pi = std::numbers::pi;

const ScatteringContext &desk()
{
  static const ScatteringContext ctx = [] {
    auto m = std::make_shared<const Model>(ModelParams{});
    return ScatteringContext(m, eigen_resonances(*m));
  }();
  return ctx;
}

ScatteringContext context(double g, int modes = 400)
{
  ModelParams p;
  p.g = g;
  p.grid.modes = modes;
  auto m = std::make_shared<const Model>(p);
  return ScatteringContext(m, eigen_resonances(*m));
}

}  // namespace

TEST_SUITE("scattering")
{
  TEST_CASE("packet contracts")
  {
    const WavePacket h{1.0, 0.3};
    CHECK(h.kappa() == doctest::Approx(0.7));
    CHECK(h.radial(0.69) == 0.0);
    CHECK(h.radial(1.0) > 0.0);
    CHECK_THROWS_AS((WavePacket{0.2, 0.3}.validate()), DomainError);
  }

  TEST_CASE("G and W")
  {
    const FormFactorParams f;
    const WavePacket h{1.0, 0.3}, l{1.2, 0.3};
    const TestFunction G = build_G(h, l, f);
    REQUIRE(G.support);
    CHECK(G.support->first == doctest::Approx(0.9));
    CHECK(G.support->second == doctest::Approx(1.3));
    const double r = 1.1;
    const cplx direct = 16 * pi * pi * std::pow(r, 4) * std::conj(h(r)) * l(r) * std::pow(form_factor(f, r), 2);
    CHECK(std::abs(G(r) - direct) < 1e-15);
    const TestFunction W = build_W(h, l, f);
    CHECK(std::abs(W(r) - 4 * pi * r * r * std::conj(h(r)) * l(r) * form_factor(f, r)) < 1e-15);
    CHECK(W(1.6) == cplx(0.0));
    CHECK(w_decay_exponent(W, f) >= 2.0);
  }

  TEST_CASE("J is bounded and decays")
  {
    const FormFactorParams f;
    const TestFunction G = build_G({1.0, 0.3}, {1.0, 0.3}, f);
    const TestFunction J = build_J(G, -0.0143);
    const double bound = std::abs(integrate_adaptive([&](double r) { return cplx(std::abs(G(r))); }, 0.7, 1.3).value);
    for (double s : {0.0, 1.0, 7.5, 40.0})
    {
      CHECK(std::abs(J(s)) <= bound * (1 + 1e-12));
    }
    const double c1 = j_decay_constant(J, 10.0, 100.0);
    const double c2 = j_decay_constant(J, 10.0, 200.0);
    CHECK(std::isfinite(c1));
    CHECK(c2 <= 1.01 * c1);
    CHECK(std::abs(build_J(zero_function(), 0.0)(3.0)) == 0.0);
  }

  TEST_CASE("kernel regression value and route agreement")
  {
    const auto &ctx = desk();
    const cplx t = ctx.kernel_T(0.9, 0.9);
    CHECK(std::abs(t - cplx(0.0356066099869625, -0.0717609707149746)) < 1e-10);
    CHECK(std::abs(ctx.kernel_T(0.9, 0.9, SecondTerm::Mirrored) - t) < 1e-12);
    CHECK(std::abs(ctx.kernel_T(0.8, 0.8) - ctx.kernel_T(0.8, 0.8)) == 0.0);
    CHECK_THROWS_AS(ctx.kernel_T(0.0, 0.5), DomainError);
  }

  TEST_CASE("kernel leading order in g")
  {
    // T / g^2 at g -> 0 against -2 pi i f(k)^2 [1/(e1 - k) + 1/(e1 + k)], Richardson in g^2.
    const double k = 0.5;
    const FormFactorParams f;
    const cplx lim = cplx(0.0, -2 * pi) * std::pow(form_factor(f, k), 2) * (1.0 / (1.0 - k) + 1.0 / (1.0 + k));
    const cplx a = context(0.02, 200).kernel_T(k, k) / 4e-4;
    const cplx b = context(0.01, 200).kernel_T(k, k) / 1e-4;
    const cplx rich = (4.0 * b - a) / 3.0;
    CHECK(std::abs(rich - lim) <= 1e-3 * std::abs(lim));
    CHECK(std::abs(context(0.0, 100).kernel_T(k, k)) == 0.0);
  }

  TEST_CASE("kernel is stable under grid refinement")
  {
    const cplx a = desk().kernel_T(0.9, 0.9);
    const cplx b = context(0.1, 800).kernel_T(0.9, 0.9);
    CHECK(std::abs(a - b) <= 1e-2 * std::abs(a));
  }

  TEST_CASE("smeared T: two forms agree and disjoint packets vanish")
  {
    const auto &ctx = desk();
    const SmearedT s = ctx.smeared_T({1.0, 0.3}, {1.0, 0.3});
    CHECK(std::abs(s.kernel_form - cplx(0.390712774015, -0.118834092515)) < 1e-9);
    CHECK(std::abs(s.kernel_form - s.resolvent_form) <= 1e-8 * std::abs(s.kernel_form));
    const SmearedT z = ctx.smeared_T({0.5, 0.1}, {1.5, 0.1});
    CHECK(std::abs(z.kernel_form) == 0.0);
  }

  TEST_CASE("time-domain oracle")
  {
    const auto &ctx = desk();
    const WavePacket h{0.9, 0.3}, l{1.1, 0.3};
    const cplx sm = ctx.smeared_T(h, l).kernel_form;
    const TimeDomainResult td = ctx.time_domain_T(h, l);
    CHECK(std::abs(td.value - sm) <= 1e-3 * std::abs(sm) + 1e-8);
    CHECK(std::isfinite(td.tail_estimate));
    CHECK(td.tail_estimate >= std::abs(td.value - sm));
    const TimeDomainResult zero = ctx.time_domain_T({0.5, 0.1}, {1.5, 0.1});
    CHECK(std::abs(zero.value) <= 1e-8);
  }

  TEST_CASE("proof decomposition and the q limit")
  {
    const auto &ctx = desk();
    const WavePacket h{1.0, 0.3};
    const ProofTerms pt = ctx.proof_terms(h, h, 1e-3);
    CHECK(pt.relative_defect() <= 1e-8);
    const auto rows = ctx.q_limit(h, h, {1e-1, 1e-2, 1e-3});
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
      CHECK(rows[k].defect <= rows[k].bound);
      if (k > 0)
      {
        CHECK(rows[k].defect < rows[k - 1].defect);
      }
    }
    ProofOptions bad;
    bad.eps = 0.5;
    CHECK_THROWS_AS(ctx.proof_terms(h, h, 1e-3, bad), DomainError);
  }

  TEST_CASE("Lorentzian fit recovers synthetic parameters")
  {
    std::vector<double> x, y;
    for (int i = -40; i <= 40; ++i)
    {
      const double k = 1.0 + 0.0025 * i;
      x.push_back(k);
      y.push_back(2.0 * 0.02 * 0.02 / ((k - 1.01) * (k - 1.01) + 0.02 * 0.02));
    }
    const LorentzFit f = fit_lorentzian(x, y);
    CHECK(f.converged);
    CHECK(f.center == doctest::Approx(1.01).epsilon(1e-8));
    CHECK(f.width == doctest::Approx(0.02).epsilon(1e-8));
    CHECK(f.amplitude == doctest::Approx(2.0).epsilon(1e-8));
  }
}
