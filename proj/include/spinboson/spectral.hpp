// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_SPECTRAL_HPP
#define SPINBOSON_SPECTRAL_HPP

#include <memory>
#include <vector>

#include <json.hpp>

#include "spinboson/hamiltonian.hpp"
#include "spinboson/linalg.hpp"

namespace spinboson
{

struct ResonanceOptions
{
  int homotopy_steps = 8;   // at least 4
  int krylov = 30;          // Arnoldi subspace size
  double tol = 1e-10;       // eigen-residual relative to ||H||
};

// Ground state and resonance of H^theta with their dilated eigenstates.
struct ResonanceData
{
  cplx theta{0.0};
  cplx lambda0{0.0}, lambda1{0.0};
  CVec v0, v1;       // right eigenvectors with v^T v = 1
  CVec psi0, psi1;   // P_i (phi_i (x) Omega)
  double residual0 = 0.0, residual1 = 0.0;  // ||(H - lambda) v|| / (||H|| ||v||)
  // Undilated ground state: eigenvalue, P_0 (phi_0 (x) Omega) and its norm.
  double lambda0_hermitian = 0.0;
  CVec psi0_hermitian;
  double norm0 = 1.0;
  int homotopy_steps = 0;
};

// Tracks the eigenvalues continued from 0 (phi_0) and e1 (phi_1) along
// g' = g k / steps. Throws NumericalError on ambiguous tracking or quasi-null
// eigenvectors.
ResonanceData eigen_resonances(const Model &model, const ResonanceOptions &opt = {});

// P v (v^T target) / (v^T v); throws NumericalError when v^T v is quasi-null.
CVec dilated_eigenstate(const CVec &v, const CVec &target);

// x^T y without conjugation.
inline cplx bilinear(const CVec &x, const CVec &y)
{
  return (x.transpose() * y)(0, 0);
}

// z -> left^T (H - z)^{-1} right. Not thread-safe; copy per thread.
class BilinearResolvent
{
public:
  BilinearResolvent(const SpMat &h, std::vector<int> levels, CVec left, CVec right,
                    std::vector<cplx> eigenvalues = {});
  BilinearResolvent(const BilinearResolvent &o);
  cplx operator()(cplx z);
  const CVec &left() const { return left_; }
  const CVec &right() const { return right_; }

private:
  SpMat h_;
  std::vector<int> levels_;
  CVec left_, right_;
  std::vector<cplx> eigenvalues_;
  std::unique_ptr<ResolventSolver> solver_;
};

CVec resolvent_solve(const OperatorMatrix &h, cplx z, const CVec &b,
                     const std::vector<cplx> &eigenvalues = {}, const std::vector<int> &levels = {});

// u(z) = (sigma_1 Psi_0)^T (H^theta - z)^{-1} (sigma_1 Psi_0).
BilinearResolvent make_u(const Model &model, const ResonanceData &rd);
cplx u_of_z(const Model &model, const ResonanceData &rd, cplx z);

struct ThetaReport
{
  std::vector<cplx> theta, lambda1;
  std::vector<double> derivative;  // |d lambda1 / d theta| between consecutive thetas
  std::vector<bool> im_negative;
  cplx theta_star{0.0};
  double spread = 0.0;             // max |lambda1(theta_i) - lambda1(theta_j)|
  bool stationary = true;
};

ThetaReport theta_diagnostics(const ModelParams &p, const std::vector<cplx> &thetas,
                              double tol = 1e-6, const ResonanceOptions &opt = {});

struct SpectralRegions
{
  double delta = 1.0;  // e1 - e0
  double nu = 0.15;
  double rho1 = 2e-5;
  int m = 4;

  bool in_A1(cplx z) const;
  bool in_A2(cplx z) const;
  bool in_A3(cplx z) const;
  bool in_A(cplx z) const { return in_A1(z) || in_A2(z) || in_A3(z); }
  bool in_B(int i, cplx z) const;
  bool in_cone(cplx apex, cplx z) const;
  // A, B_0 minus the cone at lambda0, or B_1 minus the cone at lambda1.
  bool in_resolvent_set_claim(cplx z, cplx lambda0, cplx lambda1) const;
};

struct RegionReport
{
  std::vector<cplx> eigenvalues;
  std::vector<bool> violates;  // eigenvalue inside the claimed resolvent region
  bool lambda0_in_B0 = false, lambda1_in_B1 = false;
  bool ok() const;
};

RegionReport region_check(const ResonanceData &rd, const SpectralRegions &sr,
                          const std::vector<cplx> &spectrum);

// All eigenvalues by a dense eigensolve (desk scale only).
std::vector<cplx> full_spectrum(const OperatorMatrix &h, Eigen::Index max_dense = 4000);

void to_json(nlohmann::json &j, const ResonanceData &rd);

}  // namespace spinboson

#endif  // SPINBOSON_SPECTRAL_HPP
