// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <doctest.h>

#include "spinboson/errors.hpp"
#include "spinboson/fock.hpp"

using namespace spinboson;

namespace
{

std::vector<cplx> random_coefficients(std::mt19937_64 &rng, int m)
{
  std::normal_distribution<double> nd;
  std::vector<cplx> v(m);
  for (auto &x : v)
  {
    x = {nd(rng), nd(rng)};
  }
  return v;
}

}  // namespace

TEST_SUITE("fock")
{
  TEST_CASE("dimensions")
  {
    CHECK(FockBasis(3, 2).dim() == 10);
    CHECK(FockBasis(2, 0).dim() == 1);
    const FockBasis b(1, 5);
    REQUIRE(b.dim() == 6);
    for (std::size_t i = 0; i < 6; ++i)
    {
      CHECK(b.occupation(i)[0] == i);
      CHECK(b.total(i) == int(i));
    }
    CHECK(FockBasis(400, 1).dim() == 401);
    CHECK_THROWS_AS(FockBasis(2000, 3, 1'000'000), DomainError);
  }

  TEST_CASE("index round trip")
  {
    const FockBasis b(4, 3);
    for (std::size_t i = 0; i < b.dim(); ++i)
    {
      CHECK(b.index_of(b.occupation(i)) == i);
    }
    const std::uint8_t over[] = {2, 2, 0, 0};
    CHECK(b.index_of(over) == b.dim());
  }

  TEST_CASE("single-mode annihilator")
  {
    const FockBasis b(3, 2);
    const OperatorMatrix a = mode_annihilator(b, 1);
    CVec vac = CVec::Zero(b.dim());
    vac(0) = 1.0;
    CHECK((a.mat * vac).norm() == 0.0);
    const SpMat ad = a.adjoint().mat;
    const CVec one = ad * vac;
    CHECK(std::abs(vac.dot(a.mat * one) - 1.0) < 1e-15);
    // a^dagger on a full state leaves the truncation.
    for (std::size_t i = 0; i < b.dim(); ++i)
    {
      if (b.total(i) == 2)
      {
        CVec e = CVec::Zero(b.dim());
        e(i) = 1.0;
        CHECK((ad * e).norm() == 0.0);
      }
    }
  }

  TEST_CASE("smeared operators satisfy the CCR below the cap")
  {
    std::mt19937_64 rng(7);
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {4, 2}, {8, 3}})
    {
      const FockBasis b(m, n);
      const auto h = random_coefficients(rng, m), l = random_coefficients(rng, m);
      CHECK(ccr_defect(b, h, l) <= 1e-12);

      const SpMat ah = smeared_annihilator(b, h).mat, al = smeared_annihilator(b, l).mat;
      const SpMat comm = ah * al - al * ah;
      CHECK(comm.norm() <= 1e-12);
    }
  }

  TEST_CASE("unit vectors give the identity commutator on the vacuum")
  {
    const FockBasis b(2, 3);
    const std::vector<cplx> e1{1.0, 0.0};
    const SpMat a = smeared_annihilator(b, e1).mat;
    const SpMat ad = SpMat(a.adjoint());
    const SpMat c = a * ad - ad * a;
    CHECK(std::abs(c.coeff(0, 0) - 1.0) < 1e-15);
    CHECK(ccr_defect(b, e1, e1) <= 1e-15);
  }

  TEST_CASE("dense oracle for the commutator")
  {
    std::mt19937_64 rng(11);
    const FockBasis b(4, 2);
    const auto h = random_coefficients(rng, 4), l = random_coefficients(rng, 4);
    const Eigen::MatrixXcd ah = Eigen::MatrixXcd(smeared_annihilator(b, h).mat);
    const Eigen::MatrixXcd al = Eigen::MatrixXcd(smeared_annihilator(b, l).mat);
    const Eigen::MatrixXcd c = ah * al.adjoint() - al.adjoint() * ah;
    const cplx hl = inner(h, l);
    for (std::size_t i = 0; i < b.dim(); ++i)
    {
      if (b.total(i) < 2)
      {
        CHECK(std::abs(c(i, i) - hl) < 1e-12);
      }
    }
  }

  TEST_CASE("inner product is antilinear in the first slot")
  {
    const std::vector<cplx> h{cplx(0.0, 1.0)}, l{1.0};
    CHECK(inner(h, l) == cplx(0.0, -1.0));
    CHECK_THROWS_AS(inner(h, {1.0, 2.0}), DomainError);
  }

  TEST_CASE("number operator counts bosons")
  {
    const FockBasis b(3, 3);
    const SpMat n = number_operator(b).mat;
    for (std::size_t i = 0; i < b.dim(); ++i)
    {
      CHECK(n.coeff(i, i) == cplx(b.total(i)));
    }
  }
}
