// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "spinboson/errors.hpp"

namespace spinboson
{

FockBasis::FockBasis(int modes, int n_max, std::size_t max_dim) : m_(modes), n_max_(n_max)
{
  if (modes < 1 || n_max < 0)
  {
    throw DomainError("FockBasis: need M >= 1 and N_max >= 0");
  }
  if (n_max > 255)
  {
    throw DomainError("FockBasis: N_max above 255 is not representable");
  }
  // C(k + n - 1, n) via Pascal's rule, with a saturating guard.
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / 4;
  binom_.assign(m_ + 2, std::vector<std::size_t>(n_max_ + 1, 0));
  for (int k = 1; k <= m_ + 1; k++)
  {
    binom_[k][0] = 1;
    for (int n = 1; n <= n_max_; n++)
    {
      const std::size_t prev = (k == 1) ? 0 : binom_[k - 1][n];
      binom_[k][n] = std::min(cap, prev + binom_[k][n - 1]);
    }
  }
  dim_ = binom_[m_ + 1][n_max_];
  if (dim_ > max_dim)
  {
    throw DomainError("FockBasis: dimension " + std::to_string(dim_) + " exceeds limit " +
                      std::to_string(max_dim));
  }

  occ_.reserve(dim_ * m_);
  total_.reserve(dim_);
  sector_start_.assign(n_max_ + 2, 0);
  std::vector<std::uint8_t> cur(m_, 0);
  // Depth-first generation in descending lexicographic order per sector.
  auto emit = [&](auto &&self, int pos, int rem, int n) -> void {
    if (pos == m_ - 1)
    {
      cur[pos] = static_cast<std::uint8_t>(rem);
      occ_.insert(occ_.end(), cur.begin(), cur.end());
      total_.push_back(n);
      return;
    }
    for (int v = rem; v >= 0; v--)
    {
      cur[pos] = static_cast<std::uint8_t>(v);
      self(self, pos + 1, rem - v, n);
    }
    cur[pos] = 0;
  };
  for (int n = 0; n <= n_max_; n++)
  {
    sector_start_[n] = total_.size();
    emit(emit, 0, n, n);
  }
  sector_start_[n_max_ + 1] = total_.size();
}

std::size_t FockBasis::index_of(std::span<const std::uint8_t> n) const
{
  if (static_cast<int>(n.size()) != m_)
  {
    return dim_;
  }
  int tot = 0;
  for (auto v : n)
  {
    tot += v;
  }
  if (tot > n_max_)
  {
    return dim_;
  }
  std::size_t idx = sector_start_[tot];
  int rem = tot;
  for (int i = 0; i + 1 < m_; i++)
  {
    // States with a larger occupation at position i come first; by the
    // hockey-stick identity their count is C(k + W, W) with k = M - i - 1.
    const int w = rem - n[i] - 1;
    if (w >= 0)
    {
      idx += count(m_ - i, w);
    }
    rem -= n[i];
  }
  return idx;
}

OperatorMatrix OperatorMatrix::adjoint() const
{
  OperatorMatrix out;
  out.mat = mat.adjoint();
  out.hermitian = hermitian;
  out.complex_symmetric = complex_symmetric;
  return out;
}

double OperatorMatrix::hermitian_defect() const
{
  SpMat d = mat - SpMat(mat.adjoint());
  double m = 0.0;
  for (int k = 0; k < d.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(d, k); it; ++it)
    {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

double OperatorMatrix::symmetric_defect() const
{
  SpMat d = mat - SpMat(mat.transpose());
  double m = 0.0;
  for (int k = 0; k < d.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(d, k); it; ++it)
    {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

namespace
{

// Sum over modes of coef_j * a_j, assembled column by column.
SpMat lowering(const FockBasis &basis, const std::vector<cplx> &coef)
{
  const int m = basis.modes();
  std::vector<Eigen::Triplet<cplx>> trip;
  std::vector<std::uint8_t> tmp(m);
  for (std::size_t i = 0; i < basis.dim(); i++)
  {
    const auto n = basis.occupation(i);
    for (int j = 0; j < m; j++)
    {
      if (n[j] == 0 || coef[j] == cplx(0.0))
      {
        continue;
      }
      std::copy(n.begin(), n.end(), tmp.begin());
      tmp[j]--;
      const std::size_t t = basis.index_of(tmp);
      trip.emplace_back(static_cast<int>(t), static_cast<int>(i), coef[j] * std::sqrt(double(n[j])));
    }
  }
  SpMat a(basis.dim(), basis.dim());
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

}  // namespace

OperatorMatrix lowering_combination(const FockBasis &basis, const std::vector<cplx> &coef)
{
  if (static_cast<int>(coef.size()) != basis.modes())
  {
    throw DomainError("lowering_combination: coefficient vector must have length M");
  }
  return {lowering(basis, coef), false, false};
}

OperatorMatrix mode_annihilator(const FockBasis &basis, int j)
{
  if (j < 0 || j >= basis.modes())
  {
    throw DomainError("mode_annihilator: mode index out of range");
  }
  std::vector<cplx> coef(basis.modes(), 0.0);
  coef[j] = 1.0;
  return {lowering(basis, coef), false, false};
}

OperatorMatrix smeared_annihilator(const FockBasis &basis, const std::vector<cplx> &h)
{
  if (static_cast<int>(h.size()) != basis.modes())
  {
    throw DomainError("smeared_annihilator: coefficient vector must have length M");
  }
  std::vector<cplx> coef(h.size());
  for (std::size_t j = 0; j < h.size(); j++)
  {
    coef[j] = std::conj(h[j]);
  }
  return {lowering(basis, coef), false, false};
}

OperatorMatrix number_operator(const FockBasis &basis)
{
  SpMat n(basis.dim(), basis.dim());
  n.reserve(Eigen::VectorXi::Constant(basis.dim(), 1));
  for (std::size_t i = 0; i < basis.dim(); i++)
  {
    n.insert(i, i) = double(basis.total(i));
  }
  n.makeCompressed();
  return {n, true, true};
}

cplx inner(const std::vector<cplx> &h, const std::vector<cplx> &l)
{
  if (h.size() != l.size())
  {
    throw DomainError("inner: length mismatch");
  }
  cplx s = 0.0;
  for (std::size_t j = 0; j < h.size(); j++)
  {
    s += std::conj(h[j]) * l[j];
  }
  return s;
}

double ccr_defect(const FockBasis &basis, const std::vector<cplx> &h, const std::vector<cplx> &l)
{
  if (basis.n_max() == 0)
  {
    return 0.0;
  }
  const SpMat a = smeared_annihilator(basis, h).mat;
  const SpMat ad = SpMat(smeared_annihilator(basis, l).mat.adjoint());
  SpMat c = a * ad - ad * a;
  const auto k = static_cast<Eigen::Index>(basis.sector_end(basis.n_max() - 1));
  SpMat block = c.topLeftCorner(k, k);
  SpMat id(k, k);
  id.setIdentity();
  block -= inner(h, l) * id;
  if (k <= 2000)
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd{Eigen::MatrixXcd(block)};
    return svd.singularValues()(0);
  }
  // Frobenius norm bounds the operator norm from above.
  return block.norm();
}

}  // namespace spinboson
