// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_FOCK_HPP
#define SPINBOSON_FOCK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "spinboson/quadrature.hpp"

namespace spinboson
{

using SpMat = Eigen::SparseMatrix<cplx>;
using CVec = Eigen::VectorXcd;

// Occupation-number basis of the boson Fock space truncated at total number
// n_max. States are ordered by total number, then lexicographically with the
// first mode most significant and larger occupations first, so state 0 is the
// vacuum and the one-boson states are e_0, e_1, ..., e_{M-1}.
class FockBasis
{
public:
  // Throws DomainError when the dimension exceeds `max_dim`.
  FockBasis(int modes, int n_max, std::size_t max_dim = 50'000'000);

  int modes() const { return m_; }
  int n_max() const { return n_max_; }
  std::size_t dim() const { return dim_; }

  std::span<const std::uint8_t> occupation(std::size_t i) const
  {
    return {occ_.data() + i * m_, static_cast<std::size_t>(m_)};
  }
  int total(std::size_t i) const { return total_[i]; }
  // Index of an occupation vector; returns dim() when outside the truncation.
  std::size_t index_of(std::span<const std::uint8_t> n) const;
  // Number of states with total boson number <= n.
  std::size_t sector_end(int n) const { return sector_start_[n + 1]; }

private:
  int m_, n_max_;
  std::size_t dim_;
  std::vector<std::uint8_t> occ_;
  std::vector<int> total_;
  std::vector<std::size_t> sector_start_;
  // binom_[k][n] = C(k + n - 1, n): number of occupations of k modes with total n.
  std::vector<std::vector<std::size_t>> binom_;
  std::size_t count(int k, int n) const { return k == 0 ? (n == 0) : binom_[k][n]; }
};

// Sparse operator on a finite basis with structural flags.
struct OperatorMatrix
{
  SpMat mat;
  bool hermitian = false;
  bool complex_symmetric = false;

  Eigen::Index dim() const { return mat.rows(); }
  OperatorMatrix adjoint() const;
  // Full checks at the given entrywise tolerance.
  double hermitian_defect() const;
  double symmetric_defect() const;
};

// a_j on the Fock space (0-based mode index).
OperatorMatrix mode_annihilator(const FockBasis &basis, int j);
// sum_j coef_j a_j (linear in coef).
OperatorMatrix lowering_combination(const FockBasis &basis, const std::vector<cplx> &coef);
// a(h) = sum_j conj(h_j) a_j.
OperatorMatrix smeared_annihilator(const FockBasis &basis, const std::vector<cplx> &h);
OperatorMatrix number_operator(const FockBasis &basis);

// || [a(h), a*(l)] - <h, l> || restricted to states with total number <= n_max - 1.
double ccr_defect(const FockBasis &basis, const std::vector<cplx> &h, const std::vector<cplx> &l);

// <h, l> with the first slot antilinear.
cplx inner(const std::vector<cplx> &h, const std::vector<cplx> &l);

}  // namespace spinboson

#endif  // SPINBOSON_FOCK_HPP
