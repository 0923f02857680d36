// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_LINALG_HPP
#define SPINBOSON_LINALG_HPP

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "spinboson/fock.hpp"

namespace spinboson
{

// Largest absolute row sum.
double norm_inf(const SpMat &a);

// Block elimination for matrices whose index set splits into levels
// 0..L such that H couples only adjacent levels and is diagonal inside each
// level (boson-number sectors). The top level is eliminated exactly; the
// lower levels carry dense Schur complements.
class SectorSolver
{
public:
  SectorSolver(const SpMat &h, const std::vector<int> &levels);
  // Throws NumericalError when a Schur complement is singular.
  void factorize(cplx z);
  CVec solve(const CVec &b) const;
  // True when `h` has the required level structure.
  static bool compatible(const SpMat &h, const std::vector<int> &levels);

private:
  int top_ = 0;
  std::vector<std::vector<Eigen::Index>> idx_;
  std::vector<Eigen::VectorXcd> diag_;
  std::vector<SpMat> up_, down_;  // up_[n]: rows n, cols n+1; down_[n]: rows n+1, cols n
  Eigen::VectorXcd inv_top_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
};

// Factorization of (H - z) reused across solves: SectorSolver when a level
// structure is supplied and matches, sparse LU (symbolic analysis done once)
// otherwise.
class ShiftedSolver
{
public:
  explicit ShiftedSolver(const SpMat &h, std::vector<int> levels = {});
  ShiftedSolver(const ShiftedSolver &o) : ShiftedSolver(o.h_, o.levels_) {}

  // Throws NumericalError when the factorization breaks down.
  void factorize(cplx z);
  CVec solve(const CVec &b) const;
  cplx shift() const { return z_; }
  const SpMat &matrix() const { return h_; }
  const std::vector<int> &levels() const { return levels_; }

private:
  SpMat h_, a_;
  std::vector<int> levels_;
  std::unique_ptr<SectorSolver> sector_;
  std::vector<Eigen::Index> diag_;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
  cplx z_{0.0};
};

// Checked solves of (H - z) x = b. Known eigenvalues, when given, are used to
// reject shifts that sit on the spectrum.
class ResolventSolver
{
public:
  ResolventSolver(const SpMat &h, std::vector<int> levels = {}, std::vector<cplx> eigenvalues = {},
                  double tol = 1e-10);

  CVec solve(cplx z, const CVec &b);
  double norm() const { return norm_; }

private:
  ShiftedSolver solver_;
  std::vector<cplx> eigenvalues_;
  double tol_, norm_;
};

struct RitzPair
{
  cplx value;
  CVec vector;
  double residual = 0.0;  // || H v - value v || with || v ||_2 = 1
};

// Arnoldi on (H - sigma)^{-1} started from `start`, with `steps` Krylov
// vectors. Returns the `want` Ritz pairs nearest to sigma, nearest first.
// `op` must be factorized at sigma.
std::vector<RitzPair> shift_invert_arnoldi(const ShiftedSolver &op, const CVec &start, int steps,
                                           int want);

// Eigendecomposition of a Hermitian H restricted to the invariant subspace
// spanned by the connected components (of the sparsity graph) touched by the
// seed vectors.
class HermitianPropagator
{
public:
  HermitianPropagator(const SpMat &h, const std::vector<CVec> &seeds, Eigen::Index max_dense = 8000);

  // <phi, e^{-itH} psi>.
  cplx overlap(const CVec &phi, const CVec &psi, double t) const;
  // Energies and |<n|x>|^2 of the restricted problem.
  const Eigen::VectorXd &energies() const { return energies_; }
  Eigen::VectorXd spectral_weights(const CVec &x) const;
  // Components of x in the eigenbasis, U^* x.
  CVec coefficients(const CVec &x) const;
  Eigen::Index size() const { return static_cast<Eigen::Index>(support_.size()); }

private:
  std::vector<Eigen::Index> support_;
  std::vector<bool> in_support_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

// Runs f(i, worker) for i in [0, n) on up to `threads` workers with static
// contiguous chunking; worker is in [0, workers(n, threads)).
int workers(std::size_t n, int threads);
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, int)> &f);

}  // namespace spinboson

#endif  // SPINBOSON_LINALG_HPP
