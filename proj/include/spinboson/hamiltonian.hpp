// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_HAMILTONIAN_HPP
#define SPINBOSON_HAMILTONIAN_HPP

#include <memory>
#include <ostream>

#include "spinboson/fock.hpp"
#include "spinboson/modes.hpp"

namespace spinboson
{

// Physical and numerical parameters. e0 = 0 < e1.
struct ModelParams
{
  double e1 = 1.0;
  double g = 0.1;
  FormFactorParams form;
  DilationParam theta{cplx(0.0, 0.15), 0.05};
  GridSpec grid;
  int n_max = 1;

  void validate() const;
  ModelParams with_theta(cplx theta_new) const;
  ModelParams with_coupling(double g_new) const;
};

// The spin factor is ordered (phi_1, phi_0), so K = diag(e1, 0) and the
// basis index of phi_s (x) |n> is s * dim_fock + index(n).
enum Spin : int
{
  Upper = 0,
  Lower = 1
};

// Grid, Fock basis and the assembled operators of one parameter set.
class Model
{
public:
  explicit Model(const ModelParams &p);

  const ModelParams &params() const { return p_; }
  const RadialGrid &grid() const { return *grid_; }
  const FockBasis &basis() const { return *basis_; }
  Eigen::Index dim() const { return 2 * static_cast<Eigen::Index>(basis_->dim()); }
  Eigen::Index dim_fock() const { return static_cast<Eigen::Index>(basis_->dim()); }
  Eigen::Index index(Spin s, std::size_t fock) const
  {
    return static_cast<int>(s) * dim_fock() + static_cast<Eigen::Index>(fock);
  }
  // Boson number of each basis index; the solver's level structure.
  const std::vector<int> &levels() const { return levels_; }
  // phi_s (x) Omega.
  CVec vacuum_state(Spin s) const;

  const OperatorMatrix &free() const { return h0_; }
  const OperatorMatrix &interaction() const { return v_; }
  const OperatorMatrix &full() const { return h_; }
  // H0 + g' V on the same pattern.
  OperatorMatrix at_coupling(double g) const;

private:
  ModelParams p_;
  std::shared_ptr<const RadialGrid> grid_;
  std::shared_ptr<const FockBasis> basis_;
  OperatorMatrix h0_, v_, h_;
  std::vector<int> levels_;
};

OperatorMatrix assemble_free(const ModelParams &p);
OperatorMatrix assemble_interaction(const ModelParams &p);
OperatorMatrix assemble_full(const ModelParams &p);
// H at the mirrored dilation conj(theta), assembled from scratch (conj(theta) lies
// outside the strip, so this bypasses Model).
OperatorMatrix assemble_mirrored(const ModelParams &p);

// sigma_1 (x) Id: swaps the two spin blocks.
CVec apply_sigma1(const CVec &x);

// Coordinate-format export ("%%MatrixMarket matrix coordinate complex general").
void write_matrix_market(std::ostream &os, const OperatorMatrix &op);

}  // namespace spinboson

#endif  // SPINBOSON_HAMILTONIAN_HPP
