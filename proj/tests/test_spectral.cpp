// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numbers>
#include <random>

#include <doctest.h>

#include "spinboson/errors.hpp"
#include "spinboson/linalg.hpp"
#include "spinboson/spectral.hpp"

using namespace spinboson;

namespace
{

ModelParams desk(double g = 0.1)
{
  ModelParams p;
  p.g = g;
  return p;
}

const ResonanceData &desk_resonances()
{
  static const ResonanceData rd = eigen_resonances(Model(desk()));
  return rd;
}

}  // namespace

TEST_SUITE("spectral")
{
  TEST_CASE("free resonances are exact")
  {
    const Model m(desk(0.0));
    const ResonanceData rd = eigen_resonances(m);
    CHECK(std::abs(rd.lambda0) <= 1e-12);
    CHECK(std::abs(rd.lambda1 - 1.0) <= 1e-12);
    CHECK((rd.psi0 - m.vacuum_state(Lower)).norm() <= 1e-12);
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.0, 0.5), cplx(2.0, 1e-3)})
    {
      CHECK(std::abs(u_of_z(m, rd, z) - 1.0 / (1.0 - z)) <= 1e-10);
    }
  }

  TEST_CASE("desk model regression values")
  {
    const ResonanceData &rd = desk_resonances();
    CHECK(rd.lambda0.real() == doctest::Approx(-0.0143391028).epsilon(1e-8));
    CHECK(std::abs(rd.lambda0.imag()) < 1e-9);
    CHECK(std::abs(rd.lambda1 - cplx(1.05470208348, -0.0473176325)) < 1e-9);
    CHECK(rd.norm0 == doctest::Approx(0.995581355281).epsilon(1e-10));
    CHECK(rd.residual0 <= 1e-10);
    CHECK(rd.residual1 <= 1e-10);
    CHECK(rd.lambda1.imag() < 0.0);
    const Model m(desk());
    CHECK(std::abs(u_of_z(m, rd, cplx(0.5, 0.1)) - cplx(1.80957392527, 0.848889259517)) < 1e-9);
  }

  TEST_CASE("tracked eigenvalues match a dense eigensolve")
  {
    ModelParams p = desk();
    p.grid.modes = 120;
    const Model m(p);
    const ResonanceData rd = eigen_resonances(m);
    const auto spec = full_spectrum(m.full());
    auto nearest = [&](cplx z) {
      double d = 1e300;
      for (cplx e : spec)
      {
        d = std::min(d, std::abs(e - z));
      }
      return d;
    };
    CHECK(nearest(rd.lambda0) < 1e-10);
    CHECK(nearest(rd.lambda1) < 1e-10);
  }

  TEST_CASE("dilated eigenstate is invariant under rescaling")
  {
    const ResonanceData &rd = desk_resonances();
    const Model m(desk());
    const CVec target = m.vacuum_state(Upper);
    const CVec a = dilated_eigenstate(rd.v1, target);
    const CVec b = dilated_eigenstate(3.0 * rd.v1, target);
    CHECK((a - b).norm() <= 1e-12 * a.norm());
  }

  TEST_CASE("undilated ground state is real up to phase")
  {
    const ResonanceData &rd = desk_resonances();
    const CVec &psi = rd.psi0_hermitian;
    Eigen::Index k;
    psi.cwiseAbs().maxCoeff(&k);
    const CVec r = psi * std::polar(1.0, -std::arg(psi(k)));
    CHECK(r.imag().norm() <= 1e-12 * r.norm());
    CHECK(psi.norm() == doctest::Approx(rd.norm0).epsilon(1e-12));
  }

  TEST_CASE("resolvent solve at g = 0 and residuals")
  {
    const Model m0(desk(0.0));
    const CVec b = m0.vacuum_state(Upper);
    const cplx z(0.4, 0.3);
    CHECK((resolvent_solve(m0.full(), z, b) - b / (1.0 - z)).norm() <= 1e-14);

    const Model m(desk());
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    CVec x(m.dim());
    for (auto &v : x)
    {
      v = {nd(rng), nd(rng)};
    }
    const cplx w(0.7, -0.01);
    const CVec y = resolvent_solve(m.full(), w, x, {}, m.levels());
    const CVec res = m.full().mat * y - w * y - x;
    CHECK(res.norm() <= 1e-10 * x.norm());
  }

  TEST_CASE("u is finite near the real axis and satisfies Cauchy-Riemann")
  {
    const ResonanceData &rd = desk_resonances();
    const Model m(desk());
    BilinearResolvent u = make_u(m, rd);
    const cplx near = u(cplx(rd.lambda0.real() + 0.05, 0.0));
    CHECK(std::isfinite(near.real()));
    CHECK(std::isfinite(near.imag()));
    const double h = 1e-3;
    auto d = [&](cplx z, cplx e) {
      return (u(z - 2.0 * e) - 8.0 * u(z - e) + 8.0 * u(z + e) - u(z + 2.0 * e)) / (12.0 * h);
    };
    for (cplx z : {cplx(0.3, 0.2), cplx(0.8, 0.1), cplx(1.5, 0.3)})
    {
      const cplx dx = d(z, h);
      const cplx dy = d(z, cplx(0, h));
      CHECK(std::abs(dx - dy / cplx(0, 1)) <= 1e-6);
    }
  }

  TEST_CASE("resonance is independent of theta")
  {
    const ThetaReport r0 = theta_diagnostics(desk(0.0), {cplx(0, 0.08), cplx(0, 0.12), cplx(0, 0.16)});
    CHECK(r0.spread <= 1e-12);
    const ThetaReport r = theta_diagnostics(desk(), {cplx(0, 0.08), cplx(0, 0.12), cplx(0, 0.16)});
    CHECK(r.stationary);
    CHECK(r.spread <= 1e-6);
    CHECK(std::all_of(r.im_negative.begin(), r.im_negative.end(), [](bool b) { return b; }));
  }

  TEST_CASE("region predicates")
  {
    const SpectralRegions sr;
    const cplx l0 = -0.01;
    CHECK(sr.in_cone(l0, l0 + 0.3 * std::polar(1.0, -sr.nu)));
    ModelParams p = desk(0.0);
    p.grid.modes = 40;
    const Model m(p);
    const ResonanceData rd = eigen_resonances(m);
    const RegionReport rep = region_check(rd, sr, full_spectrum(m.full()));
    CHECK(rep.ok());
    CHECK(rep.lambda1_in_B1);
  }

  TEST_CASE("resonance data serializes")
  {
    nlohmann::json j = desk_resonances();
    CHECK(j.contains("lambda1"));
    CHECK(j.contains("norm0"));
  }

  TEST_CASE("singular shift is rejected")
  {
    const Model m0(desk(0.0));
    CHECK_THROWS_AS(resolvent_solve(m0.full(), cplx(1.0), m0.vacuum_state(Upper), {cplx(1.0)}),
                    NumericalError);
  }
}
