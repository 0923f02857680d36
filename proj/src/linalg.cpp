// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "spinboson/errors.hpp"

namespace spinboson
{

double norm_inf(const SpMat &a)
{
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(a, k); it; ++it)
    {
      rows(it.row()) += std::abs(it.value());
    }
  }
  return a.rows() ? rows.maxCoeff() : 0.0;
}

bool SectorSolver::compatible(const SpMat &h, const std::vector<int> &levels)
{
  if (static_cast<Eigen::Index>(levels.size()) != h.rows() || h.rows() != h.cols())
  {
    return false;
  }
  for (int k = 0; k < h.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(h, k); it; ++it)
    {
      const int d = std::abs(levels[it.row()] - levels[it.col()]);
      if (d > 1 || (d == 0 && it.row() != it.col() && it.value() != cplx(0.0)))
      {
        return false;
      }
    }
  }
  return true;
}

SectorSolver::SectorSolver(const SpMat &h, const std::vector<int> &levels)
{
  if (!compatible(h, levels))
  {
    throw DomainError("SectorSolver: matrix does not have the level structure");
  }
  top_ = *std::max_element(levels.begin(), levels.end());
  idx_.assign(top_ + 1, {});
  std::vector<Eigen::Index> pos(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); i++)
  {
    if (levels[i] < 0)
    {
      throw DomainError("SectorSolver: negative level");
    }
    pos[i] = static_cast<Eigen::Index>(idx_[levels[i]].size());
    idx_[levels[i]].push_back(i);
  }
  diag_.resize(top_ + 1);
  for (int n = 0; n <= top_; n++)
  {
    diag_[n] = Eigen::VectorXcd::Zero(idx_[n].size());
  }
  std::vector<std::vector<Eigen::Triplet<cplx>>> tu(top_), td(top_);
  for (int k = 0; k < h.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(h, k); it; ++it)
    {
      const int lr = levels[it.row()], lc = levels[it.col()];
      if (lr == lc)
      {
        if (it.row() == it.col())
        {
          diag_[lr](pos[it.row()]) = it.value();
        }
      }
      else if (lc == lr + 1)
      {
        tu[lr].emplace_back(pos[it.row()], pos[it.col()], it.value());
      }
      else
      {
        td[lc].emplace_back(pos[it.row()], pos[it.col()], it.value());
      }
    }
  }
  up_.resize(top_);
  down_.resize(top_);
  for (int n = 0; n < top_; n++)
  {
    const auto dn = static_cast<Eigen::Index>(idx_[n].size());
    const auto dn1 = static_cast<Eigen::Index>(idx_[n + 1].size());
    up_[n].resize(dn, dn1);
    up_[n].setFromTriplets(tu[n].begin(), tu[n].end());
    down_[n].resize(dn1, dn);
    down_[n].setFromTriplets(td[n].begin(), td[n].end());
  }
  lu_.resize(top_);
}

void SectorSolver::factorize(cplx z)
{
  inv_top_ = diag_[top_].array() - z;
  if ((inv_top_.array() == cplx(0.0)).any())
  {
    throw NumericalError("SectorSolver: z coincides with a top-sector diagonal entry", 0.0);
  }
  inv_top_ = inv_top_.cwiseInverse();
  for (int n = top_ - 1; n >= 0; n--)
  {
    Eigen::MatrixXcd s = Eigen::MatrixXcd(diag_[n].array() - z).asDiagonal();
    if (n == top_ - 1)
    {
      const SpMat scaled = inv_top_.asDiagonal() * down_[n];
      s -= Eigen::MatrixXcd(up_[n] * scaled);
    }
    else
    {
      const Eigen::MatrixXcd y = lu_[n + 1].solve(Eigen::MatrixXcd(down_[n]));
      s -= up_[n] * y;
    }
    lu_[n].compute(s);
    const double rc = lu_[n].rcond();
    const auto piv = lu_[n].matrixLU().diagonal().cwiseAbs();
    if (!(rc > 1e-15) || !(piv.minCoeff() > 0.0) || !piv.allFinite())
    {
      std::ostringstream os;
      os << "SectorSolver: singular Schur complement at z = " << z << " (rcond " << rc << ")";
      throw NumericalError(os.str(), rc);
    }
  }
}

CVec SectorSolver::solve(const CVec &b) const
{
  std::vector<Eigen::VectorXcd> y(top_ + 1), x(top_ + 1);
  for (int n = 0; n <= top_; n++)
  {
    y[n].resize(idx_[n].size());
    for (std::size_t i = 0; i < idx_[n].size(); i++)
    {
      y[n](i) = b(idx_[n][i]);
    }
  }
  // Forward sweep from the top level down.
  for (int n = top_ - 1; n >= 0; n--)
  {
    const Eigen::VectorXcd w =
      (n + 1 == top_) ? Eigen::VectorXcd(inv_top_.cwiseProduct(y[n + 1])) : lu_[n + 1].solve(y[n + 1]);
    y[n] -= up_[n] * w;
  }
  x[0] = top_ == 0 ? Eigen::VectorXcd(inv_top_.cwiseProduct(y[0])) : lu_[0].solve(y[0]);
  for (int n = 1; n <= top_; n++)
  {
    const Eigen::VectorXcd r = y[n] - down_[n - 1] * x[n - 1];
    x[n] = (n == top_) ? Eigen::VectorXcd(inv_top_.cwiseProduct(r)) : lu_[n].solve(r);
  }
  CVec out(b.size());
  for (int n = 0; n <= top_; n++)
  {
    for (std::size_t i = 0; i < idx_[n].size(); i++)
    {
      out(idx_[n][i]) = x[n](i);
    }
  }
  return out;
}

ShiftedSolver::ShiftedSolver(const SpMat &h, std::vector<int> levels) : h_(h), levels_(std::move(levels))
{
  if (h.rows() != h.cols())
  {
    throw DomainError("ShiftedSolver: matrix must be square");
  }
  if (!levels_.empty() && SectorSolver::compatible(h_, levels_))
  {
    sector_ = std::make_unique<SectorSolver>(h_, levels_);
    return;
  }
  levels_.clear();
  a_ = h;
  a_.makeCompressed();
  diag_.assign(a_.rows(), -1);
  for (int k = 0; k < a_.outerSize(); k++)
  {
    for (SpMat::InnerIterator it(a_, k); it; ++it)
    {
      if (it.row() == it.col())
      {
        diag_[k] = &it.valueRef() - a_.valuePtr();
      }
    }
  }
  if (std::find(diag_.begin(), diag_.end(), -1) != diag_.end())
  {
    throw DomainError("ShiftedSolver: diagonal must be structurally present");
  }
  lu_.analyzePattern(a_);
}

void ShiftedSolver::factorize(cplx z)
{
  z_ = z;
  if (sector_)
  {
    sector_->factorize(z);
    return;
  }
  const cplx *h = h_.valuePtr();
  cplx *a = a_.valuePtr();
  for (auto k : diag_)
  {
    a[k] = h[k] - z;
  }
  lu_.factorize(a_);
  if (lu_.info() != Eigen::Success)
  {
    std::ostringstream os;
    os << "resolvent: factorization of H - z failed at z = " << z << " (" << lu_.lastErrorMessage()
       << ")";
    throw NumericalError(os.str(), 0.0);
  }
}

CVec ShiftedSolver::solve(const CVec &b) const
{
  if (sector_)
  {
    return sector_->solve(b);
  }
  return lu_.solve(b);
}

ResolventSolver::ResolventSolver(const SpMat &h, std::vector<int> levels, std::vector<cplx> eigenvalues,
                                 double tol)
  : solver_(h, std::move(levels)), eigenvalues_(std::move(eigenvalues)), tol_(tol), norm_(norm_inf(h))
{
}

CVec ResolventSolver::solve(cplx z, const CVec &b)
{
  const double scale = std::max(norm_, 1.0);
  for (const auto &lam : eigenvalues_)
  {
    if (std::abs(z - lam) <= 1e-12 * scale)
    {
      std::ostringstream os;
      os << "resolvent: z = " << z << " lies on the computed eigenvalue " << lam;
      throw NumericalError(os.str(), std::abs(z - lam));
    }
  }
  solver_.factorize(z);
  const SpMat &h = solver_.matrix();
  CVec x = solver_.solve(b);
  const double nb = b.norm();
  CVec r = h * x - z * x - b;
  if (r.norm() > tol_ * nb)
  {
    x -= solver_.solve(r);
    r = h * x - z * x - b;
  }
  // ||b|| / ||x|| bounds the distance to the spectrum from above for normal H
  // and serves as the estimate otherwise.
  const double dist = x.norm() > 0.0 ? nb / x.norm() : std::numeric_limits<double>::infinity();
  if (!std::isfinite(x.norm()) || r.norm() > tol_ * nb || dist < 1e-13 * scale)
  {
    std::ostringstream os;
    os << "resolvent: near-singular solve at z = " << z << " (residual " << r.norm() / nb
       << ", distance-to-spectrum estimate " << dist << ")";
    throw NumericalError(os.str(), dist);
  }
  return x;
}

std::vector<RitzPair> shift_invert_arnoldi(const ShiftedSolver &op, const CVec &start, int steps,
                                           int want)
{
  const Eigen::Index n = start.size();
  const int m = static_cast<int>(std::min<Eigen::Index>(steps, n));
  Eigen::MatrixXcd v(n, m + 1);
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(m + 1, m);
  if (start.norm() == 0.0)
  {
    throw DomainError("shift_invert_arnoldi: zero start vector");
  }
  v.col(0) = start / start.norm();
  int k = m;
  for (int j = 0; j < m; j++)
  {
    CVec w = op.solve(v.col(j));
    // Classical Gram-Schmidt, applied twice.
    for (int pass = 0; pass < 2; pass++)
    {
      CVec c = v.leftCols(j + 1).adjoint() * w;
      w -= v.leftCols(j + 1) * c;
      hess.col(j).head(j + 1) += c;
    }
    const double beta = w.norm();
    hess(j + 1, j) = beta;
    if (beta <= 1e-14 * hess.col(j).norm())
    {
      k = j + 1;  // invariant subspace found
      break;
    }
    v.col(j + 1) = w / beta;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(hess.topLeftCorner(k, k));
  const SpMat &h = op.matrix();
  std::vector<RitzPair> out;
  for (int i = 0; i < k; i++)
  {
    const cplx mu = es.eigenvalues()(i);
    if (std::abs(mu) == 0.0)
    {
      continue;
    }
    RitzPair rp;
    rp.value = op.shift() + 1.0 / mu;
    rp.vector = v.leftCols(k) * es.eigenvectors().col(i);
    rp.vector /= rp.vector.norm();
    out.push_back(std::move(rp));
  }
  std::sort(out.begin(), out.end(), [&](const RitzPair &a, const RitzPair &b) {
    return std::abs(a.value - op.shift()) < std::abs(b.value - op.shift());
  });
  if (static_cast<int>(out.size()) > want)
  {
    out.resize(want);
  }
  for (auto &rp : out)
  {
    rp.residual = (h * rp.vector - rp.value * rp.vector).norm();
  }
  return out;
}

HermitianPropagator::HermitianPropagator(const SpMat &h, const std::vector<CVec> &seeds,
                                         Eigen::Index max_dense)
{
  const Eigen::Index n = h.rows();
  in_support_.assign(n, false);
  std::deque<Eigen::Index> queue;
  for (const auto &s : seeds)
  {
    if (s.size() != n)
    {
      throw DomainError("HermitianPropagator: seed dimension mismatch");
    }
    for (Eigen::Index i = 0; i < n; i++)
    {
      if (s(i) != cplx(0.0) && !in_support_[i])
      {
        in_support_[i] = true;
        queue.push_back(i);
      }
    }
  }
  // Breadth-first closure over the (symmetric) sparsity graph.
  while (!queue.empty())
  {
    const Eigen::Index c = queue.front();
    queue.pop_front();
    for (SpMat::InnerIterator it(h, c); it; ++it)
    {
      if (!in_support_[it.row()])
      {
        in_support_[it.row()] = true;
        queue.push_back(it.row());
      }
    }
  }
  for (Eigen::Index i = 0; i < n; i++)
  {
    if (in_support_[i])
    {
      support_.push_back(i);
    }
  }
  const auto k = static_cast<Eigen::Index>(support_.size());
  if (k > max_dense)
  {
    throw DomainError("HermitianPropagator: invariant subspace of dimension " + std::to_string(k) +
                      " is too large for dense propagation; use a Krylov propagator");
  }
  std::vector<Eigen::Index> pos(n, -1);
  for (Eigen::Index i = 0; i < k; i++)
  {
    pos[support_[i]] = i;
  }
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; i++)
  {
    for (SpMat::InnerIterator it(h, support_[i]); it; ++it)
    {
      dense(pos[it.row()], i) = it.value();
    }
  }
  if ((dense - dense.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, dense.cwiseAbs().maxCoeff()))
  {
    throw DomainError("HermitianPropagator: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success)
  {
    throw NumericalError("HermitianPropagator: eigendecomposition failed");
  }
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

CVec HermitianPropagator::coefficients(const CVec &x) const
{
  CVec sub(support_.size());
  double outside = 0.0;
  for (Eigen::Index i = 0; i < x.size(); i++)
  {
    if (!in_support_[i])
    {
      outside = std::max(outside, std::abs(x(i)));
    }
  }
  if (outside > 0.0)
  {
    throw DomainError("HermitianPropagator: vector has weight outside the invariant subspace");
  }
  for (std::size_t i = 0; i < support_.size(); i++)
  {
    sub(i) = x(support_[i]);
  }
  return vectors_.adjoint() * sub;
}

Eigen::VectorXd HermitianPropagator::spectral_weights(const CVec &x) const
{
  return coefficients(x).cwiseAbs2();
}

cplx HermitianPropagator::overlap(const CVec &phi, const CVec &psi, double t) const
{
  const CVec a = coefficients(phi), b = coefficients(psi);
  cplx s = 0.0;
  for (Eigen::Index n = 0; n < a.size(); n++)
  {
    s += std::conj(a(n)) * b(n) * std::exp(cplx(0.0, -t * energies_(n)));
  }
  return s;
}

int workers(std::size_t n, int threads)
{
  return static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(std::max(threads, 1), n)));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, int)> &f)
{
  const int w = workers(n, threads);
  if (w == 1)
  {
    for (std::size_t i = 0; i < n; i++)
    {
      f(i, 0);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mtx;
  for (int t = 0; t < w; t++)
  {
    const std::size_t lo = n * t / w, hi = n * (t + 1) / w;
    pool.emplace_back([&, lo, hi, t] {
      try
      {
        for (std::size_t i = lo; i < hi; i++)
        {
          f(i, t);
        }
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(mtx);
        if (!err)
        {
          err = std::current_exception();
        }
      }
    });
  }
  for (auto &th : pool)
  {
    th.join();
  }
  if (err)
  {
    std::rethrow_exception(err);
  }
}

}  // namespace spinboson
