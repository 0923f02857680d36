// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/hamiltonian.hpp"

#include <cmath>
#include <iomanip>

#include "spinboson/errors.hpp"

namespace spinboson
{

void ModelParams::validate() const
{
  if (!(e1 > 0.0) || !std::isfinite(e1))
  {
    throw DomainError("model: e1 must be positive");
  }
  if (!(g >= 0.0) || !std::isfinite(g))
  {
    throw DomainError("model: g must be non-negative");
  }
  form.validate();
  if (!theta.admissible())
  {
    throw DomainError("model: theta must be 0 or lie in the admissible strip");
  }
  if (n_max < 0)
  {
    throw DomainError("model: N_max must be non-negative");
  }
}

ModelParams ModelParams::with_theta(cplx theta_new) const
{
  ModelParams q = *this;
  q.theta.theta = theta_new;
  return q;
}

ModelParams ModelParams::with_coupling(double g_new) const
{
  ModelParams q = *this;
  q.g = g_new;
  return q;
}

namespace
{

SpMat free_matrix(const RadialGrid &grid, const FockBasis &basis, double e1, cplx theta)
{
  const auto df = static_cast<Eigen::Index>(basis.dim());
  const cplx scale = std::exp(-theta);
  SpMat h(2 * df, 2 * df);
  h.reserve(Eigen::VectorXi::Constant(2 * df, 1));
  const auto &r = grid.nodes();
  for (Eigen::Index i = 0; i < df; i++)
  {
    const auto n = basis.occupation(i);
    double field = 0.0;
    for (int j = 0; j < basis.modes(); j++)
    {
      field += n[j] * r[j];
    }
    // Explicit zeros keep the diagonal in the pattern for shifted solves.
    h.insert(i, i) = e1 + scale * field;
    h.insert(df + i, df + i) = scale * field;
  }
  h.makeCompressed();
  return h;
}

SpMat interaction_matrix(const RadialGrid &grid, const FockBasis &basis, cplx theta)
{
  const auto df = static_cast<Eigen::Index>(basis.dim());
  const SpMat low = lowering_combination(basis, grid.effective_coupling(theta)).mat;
  const SpMat b = low + SpMat(low.transpose());
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(2 * b.nonZeros());
  for (int k = 0; k < b.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(b, k); it; ++it)
    {
      trip.emplace_back(it.row(), df + it.col(), it.value());
      trip.emplace_back(df + it.row(), it.col(), it.value());
    }
  }
  SpMat v(2 * df, 2 * df);
  v.setFromTriplets(trip.begin(), trip.end());
  return v;
}

bool real_theta(const ModelParams &p)
{
  return p.theta.theta.imag() == 0.0;
}

}  // namespace

Model::Model(const ModelParams &p) : p_(p)
{
  p_.validate();
  grid_ = std::make_shared<const RadialGrid>(p_.grid, p_.form);
  basis_ = std::make_shared<const FockBasis>(grid_->size(), p_.n_max);
  const bool herm = real_theta(p_);
  h0_ = {free_matrix(*grid_, *basis_, p_.e1, p_.theta.theta), herm, true};
  v_ = {interaction_matrix(*grid_, *basis_, p_.theta.theta), herm, true};
  h_ = at_coupling(p_.g);
  levels_.resize(dim());
  for (Eigen::Index i = 0; i < dim(); i++)
  {
    levels_[i] = basis_->total(i % dim_fock());
  }
}

OperatorMatrix Model::at_coupling(double g) const
{
  OperatorMatrix h;
  h.mat = h0_.mat + cplx(g) * v_.mat;
  h.mat.makeCompressed();
  h.hermitian = h0_.hermitian;
  h.complex_symmetric = true;
  return h;
}

CVec Model::vacuum_state(Spin s) const
{
  CVec v = CVec::Zero(dim());
  v(index(s, 0)) = 1.0;
  return v;
}

OperatorMatrix assemble_free(const ModelParams &p)
{
  return Model(p).free();
}

OperatorMatrix assemble_interaction(const ModelParams &p)
{
  return Model(p).interaction();
}

OperatorMatrix assemble_full(const ModelParams &p)
{
  return Model(p).full();
}

OperatorMatrix assemble_mirrored(const ModelParams &p)
{
  p.validate();
  const RadialGrid grid(p.grid, p.form);
  const FockBasis basis(grid.size(), p.n_max);
  const cplx th = std::conj(p.theta.theta);
  OperatorMatrix h;
  h.mat = free_matrix(grid, basis, p.e1, th) + cplx(p.g) * interaction_matrix(grid, basis, th);
  h.mat.makeCompressed();
  h.hermitian = real_theta(p);
  h.complex_symmetric = true;
  return h;
}

CVec apply_sigma1(const CVec &x)
{
  if (x.size() % 2 != 0)
  {
    throw DomainError("apply_sigma1: vector length must be even");
  }
  const Eigen::Index h = x.size() / 2;
  CVec y(x.size());
  y.head(h) = x.tail(h);
  y.tail(h) = x.head(h);
  return y;
}

void write_matrix_market(std::ostream &os, const OperatorMatrix &op)
{
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << "% hermitian=" << op.hermitian << " complex_symmetric=" << op.complex_symmetric << '\n';
  os << op.mat.rows() << ' ' << op.mat.cols() << ' ' << op.mat.nonZeros() << '\n';
  os << std::setprecision(17);
  for (int k = 0; k < op.mat.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(op.mat, k); it; ++it)
    {
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value().real() << ' '
         << it.value().imag() << '\n';
    }
  }
}

}  // namespace spinboson
