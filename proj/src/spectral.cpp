// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinboson/errors.hpp"
#include "spinboson/io.hpp"

namespace spinboson
{

namespace
{

struct Level
{
  cplx lambda;
  CVec v;
  double residual = 0.0;
};

// Factorize at z, nudging off an exact eigenvalue if the LU breaks down.
void factorize_near(ShiftedSolver &op, cplx z, double nudge)
{
  try
  {
    op.factorize(z);
  }
  catch (const NumericalError &)
  {
    op.factorize(z + cplx(nudge, nudge));
  }
}

// Inverse iteration at a fixed shift with the bilinear Rayleigh quotient.
Level polish(const SpMat &h, ShiftedSolver &op, cplx lambda, CVec v, double tol_abs)
{
  factorize_near(op, lambda, tol_abs);
  double res = 0.0;
  for (int it = 0; it < 8; it++)
  {
    CVec x = op.solve(v);
    if (!x.allFinite())
    {
      // Shift sits on the eigenvalue to machine precision.
      op.factorize(lambda + cplx(tol_abs, tol_abs));
      x = op.solve(v);
    }
    v = x / x.norm();
    const cplx vv = bilinear(v, v);
    if (std::abs(vv) < 1e-10)
    {
      throw NumericalError("eigen_resonances: quasi-null eigenvector (v^T v ~ 0), defective pair");
    }
    const CVec hv = h * v;
    lambda = bilinear(v, hv) / vv;
    res = (hv - lambda * v).norm();
    if (res <= tol_abs)
    {
      break;
    }
  }
  if (!(res <= tol_abs))
  {
    std::ostringstream os;
    os << "eigen_resonances: eigen-residual " << res << " above tolerance " << tol_abs;
    throw NumericalError(os.str(), res);
  }
  return {lambda, v, res};
}

std::vector<Level> track(const Model &model, const std::vector<Spin> &spins, const ResonanceOptions &opt)
{
  const int steps = opt.homotopy_steps;
  if (steps < 4)
  {
    throw DomainError("eigen_resonances: at least 4 homotopy steps are required");
  }
  const double g = model.params().g;
  std::vector<Level> lv;
  for (auto s : spins)
  {
    lv.push_back({s == Upper ? cplx(model.params().e1) : cplx(0.0), model.vacuum_state(s), 0.0});
  }
  if (g == 0.0)
  {
    return lv;
  }
  for (int k = 1; k <= steps; k++)
  {
    const SpMat h = model.at_coupling(g * k / steps).mat;
    ShiftedSolver opk(h, model.levels());
    const double tol_abs = opt.tol * std::max(1.0, norm_inf(h));
    for (auto &l : lv)
    {
      factorize_near(opk, l.lambda, tol_abs);
      auto cands = shift_invert_arnoldi(opk, l.v, opt.krylov, 4);
      if (cands.empty())
      {
        throw NumericalError("eigen_resonances: Arnoldi produced no Ritz values");
      }
      std::sort(cands.begin(), cands.end(), [&](const RitzPair &a, const RitzPair &b) {
        return std::abs(a.value - l.lambda) < std::abs(b.value - l.lambda);
      });
      if (cands.size() > 1 &&
          std::abs(std::abs(cands[1].value - l.lambda) - std::abs(cands[0].value - l.lambda)) <=
            10.0 * tol_abs)
      {
        std::ostringstream os;
        os << "eigen_resonances: ambiguous continuation at g = " << g * k / steps
           << " (candidates " << cands[0].value << ", " << cands[1].value
           << "); use a finer homotopy";
        throw NumericalError(os.str(), std::abs(cands[1].value - cands[0].value));
      }
      const double overlap = std::abs(cands[0].vector.dot(l.v)) / l.v.norm();
      if (overlap < 0.5)
      {
        std::ostringstream os;
        os << "eigen_resonances: eigenvector jumped at g = " << g * k / steps
           << " (overlap " << overlap << "); use a finer homotopy";
        throw NumericalError(os.str(), overlap);
      }
      l = polish(h, opk, cands[0].value, cands[0].vector, tol_abs);
    }
  }
  return lv;
}

CVec normalize_bilinear(const CVec &v)
{
  const cplx vv = bilinear(v, v);
  if (std::abs(vv) < 1e-10 * v.squaredNorm())
  {
    throw NumericalError("quasi-null vector: v^T v ~ 0", std::abs(vv));
  }
  return v / std::sqrt(vv);
}

}  // namespace

CVec dilated_eigenstate(const CVec &v, const CVec &target)
{
  const cplx vv = bilinear(v, v);
  if (std::abs(vv) < 1e-10 * v.squaredNorm())
  {
    throw NumericalError("dilated_eigenstate: quasi-null eigenvector (v^T v ~ 0)", std::abs(vv));
  }
  return v * (bilinear(v, target) / vv);
}

ResonanceData eigen_resonances(const Model &model, const ResonanceOptions &opt)
{
  const auto lv = track(model, {Lower, Upper}, opt);
  const double hn = std::max(1.0, norm_inf(model.full().mat));
  ResonanceData rd;
  rd.theta = model.params().theta.theta;
  rd.homotopy_steps = opt.homotopy_steps;
  rd.lambda0 = lv[0].lambda;
  rd.lambda1 = lv[1].lambda;
  rd.v0 = normalize_bilinear(lv[0].v);
  rd.v1 = normalize_bilinear(lv[1].v);
  rd.residual0 = (model.full().mat * rd.v0 - rd.lambda0 * rd.v0).norm() / (hn * rd.v0.norm());
  rd.residual1 = (model.full().mat * rd.v1 - rd.lambda1 * rd.v1).norm() / (hn * rd.v1.norm());
  rd.psi0 = dilated_eigenstate(rd.v0, model.vacuum_state(Lower));
  rd.psi1 = dilated_eigenstate(rd.v1, model.vacuum_state(Upper));

  if (rd.theta == cplx(0.0))
  {
    rd.lambda0_hermitian = rd.lambda0.real();
    rd.psi0_hermitian = rd.psi0;
  }
  else
  {
    const Model m0(model.params().with_theta(0.0));
    const auto l0 = track(m0, {Lower}, opt);
    rd.lambda0_hermitian = l0[0].lambda.real();
    rd.psi0_hermitian = dilated_eigenstate(l0[0].v, m0.vacuum_state(Lower));
  }
  rd.norm0 = rd.psi0_hermitian.norm();
  return rd;
}

BilinearResolvent::BilinearResolvent(const SpMat &h, std::vector<int> levels, CVec left, CVec right,
                                     std::vector<cplx> eigenvalues)
  : h_(h), levels_(std::move(levels)), left_(std::move(left)), right_(std::move(right)),
    eigenvalues_(std::move(eigenvalues)), solver_(std::make_unique<ResolventSolver>(h_, levels_, eigenvalues_))
{
  if (left_.size() != h_.rows() || right_.size() != h_.rows())
  {
    throw DomainError("BilinearResolvent: vector dimension mismatch");
  }
}

BilinearResolvent::BilinearResolvent(const BilinearResolvent &o)
  : BilinearResolvent(o.h_, o.levels_, o.left_, o.right_, o.eigenvalues_)
{
}

cplx BilinearResolvent::operator()(cplx z)
{
  return bilinear(left_, solver_->solve(z, right_));
}

CVec resolvent_solve(const OperatorMatrix &h, cplx z, const CVec &b, const std::vector<cplx> &eigenvalues,
                     const std::vector<int> &levels)
{
  ResolventSolver rs(h.mat, levels, eigenvalues);
  return rs.solve(z, b);
}

BilinearResolvent make_u(const Model &model, const ResonanceData &rd)
{
  const CVec s = apply_sigma1(rd.psi0);
  return BilinearResolvent(model.full().mat, model.levels(), s, s, {rd.lambda0, rd.lambda1});
}

cplx u_of_z(const Model &model, const ResonanceData &rd, cplx z)
{
  return make_u(model, rd)(z);
}

ThetaReport theta_diagnostics(const ModelParams &p, const std::vector<cplx> &thetas, double tol,
                              const ResonanceOptions &opt)
{
  if (thetas.size() < 3)
  {
    throw DomainError("theta_diagnostics: need at least three theta values");
  }
  ThetaReport rep;
  for (const auto &th : thetas)
  {
    DilationParam d{th, p.theta.nu_min};
    if (!d.in_strip())
    {
      throw DomainError("theta_diagnostics: theta outside the admissible strip");
    }
    const Model m(p.with_theta(th));
    const auto rd = eigen_resonances(m, opt);
    rep.theta.push_back(th);
    rep.lambda1.push_back(rd.lambda1);
    rep.im_negative.push_back(p.g == 0.0 ? rd.lambda1.imag() <= 0.0 : rd.lambda1.imag() < 0.0);
  }
  for (std::size_t i = 0; i + 1 < thetas.size(); i++)
  {
    rep.derivative.push_back(std::abs(rep.lambda1[i + 1] - rep.lambda1[i]) /
                             std::abs(rep.theta[i + 1] - rep.theta[i]));
  }
  for (std::size_t i = 0; i < thetas.size(); i++)
  {
    for (std::size_t j = i + 1; j < thetas.size(); j++)
    {
      rep.spread = std::max(rep.spread, std::abs(rep.lambda1[i] - rep.lambda1[j]));
    }
  }
  // theta* minimizes the averaged adjacent slopes.
  double best = 1e300;
  for (std::size_t i = 0; i < thetas.size(); i++)
  {
    double d;
    if (i == 0)
    {
      d = rep.derivative.front();
    }
    else if (i + 1 == thetas.size())
    {
      d = rep.derivative.back();
    }
    else
    {
      d = 0.5 * (rep.derivative[i - 1] + rep.derivative[i]);
    }
    if (d < best)
    {
      best = d;
      rep.theta_star = rep.theta[i];
    }
  }
  rep.stationary = rep.spread <= tol * std::max(1.0, std::abs(rep.lambda1.front()));
  return rep;
}

bool SpectralRegions::in_A1(cplx z) const
{
  return z.real() < -delta / 2.0;
}

bool SpectralRegions::in_A2(cplx z) const
{
  return z.imag() > delta * std::sin(nu) / 8.0;
}

bool SpectralRegions::in_A3(cplx z) const
{
  const double x = z.real() - (delta + delta / 2.0);
  return x > 0.0 && z.imag() >= -std::sin(nu / 2.0) * x;
}

bool SpectralRegions::in_B(int i, cplx z) const
{
  const double e = (i == 0) ? 0.0 : delta;
  return std::abs(z.real() - e) <= delta / 2.0 && z.imag() >= -rho1 * std::sin(nu) / 2.0 &&
         z.imag() <= delta * std::sin(nu) / 8.0;
}

bool SpectralRegions::in_cone(cplx apex, cplx z) const
{
  const cplx d = z - apex;
  if (std::abs(d) == 0.0)
  {
    return true;
  }
  // z = apex + x e^{-i alpha}, so alpha = -arg(d).
  const double alpha = -std::arg(d);
  return std::abs(alpha - nu) <= nu / m + 1e-14;
}

bool SpectralRegions::in_resolvent_set_claim(cplx z, cplx lambda0, cplx lambda1) const
{
  return in_A(z) || (in_B(0, z) && !in_cone(lambda0, z)) || (in_B(1, z) && !in_cone(lambda1, z));
}

bool RegionReport::ok() const
{
  return lambda0_in_B0 && lambda1_in_B1 &&
         std::none_of(violates.begin(), violates.end(), [](bool b) { return b; });
}

RegionReport region_check(const ResonanceData &rd, const SpectralRegions &sr,
                          const std::vector<cplx> &spectrum)
{
  if (sr.m < 4)
  {
    throw DomainError("region_check: cone parameter m must be at least 4");
  }
  RegionReport rep;
  rep.eigenvalues = spectrum;
  for (const auto &z : spectrum)
  {
    rep.violates.push_back(sr.in_resolvent_set_claim(z, rd.lambda0, rd.lambda1));
  }
  rep.lambda0_in_B0 = sr.in_B(0, rd.lambda0);
  rep.lambda1_in_B1 = sr.in_B(1, rd.lambda1);
  return rep;
}

std::vector<cplx> full_spectrum(const OperatorMatrix &h, Eigen::Index max_dense)
{
  if (h.dim() > max_dense)
  {
    throw DomainError("full_spectrum: dimension too large for a dense eigensolve");
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(h.mat), false);
  if (es.info() != Eigen::Success)
  {
    throw NumericalError("full_spectrum: dense eigensolve failed");
  }
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return ev;
}

void to_json(nlohmann::json &j, const ResonanceData &rd)
{
  j = {{"theta", complex_json(rd.theta)},
       {"lambda0", complex_json(rd.lambda0)},
       {"lambda1", complex_json(rd.lambda1)},
       {"residual0", rd.residual0},
       {"residual1", rd.residual1},
       {"lambda0_hermitian", rd.lambda0_hermitian},
       {"norm0", rd.norm0},
       {"homotopy_steps", rd.homotopy_steps},
       {"im_lambda1_nonpositive", rd.lambda1.imag() <= 0.0},
       {"abs_im_lambda0", std::abs(rd.lambda0.imag())}};
}

}  // namespace spinboson
