// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_MULTISCALE_HPP
#define SPINBOSON_MULTISCALE_HPP

#include <functional>
#include <string>
#include <vector>

#include "spinboson/distributions.hpp"
#include "spinboson/io.hpp"

namespace spinboson
{

struct MultiscaleParams
{
  double rho0 = 0.2;
  double rho = 1e-4;
  double mu = 0.25;
  double c_bold = 1.05;
  int m = 4;
  double nu = 0.15;
  double e1 = 1.0;  // bounds rho by e1 / 4

  void validate() const;
};

// iota = (mu/4) / (1 + mu/4).
double iota(double mu);

struct Scales
{
  double rho_n, eps_n;
};
// rho_n = rho0 rho^n, eps_n = 20 rho_n^{1 + mu/4}, n >= 1.
Scales sequences(const MultiscaleParams &p, int n);

struct Dorm2Report
{
  double lhs1 = 0.0, lhs2 = 0.0, lhs3 = 0.0;  // C^8 rho0^mu, C^8 rho^mu, C rho^{iota (1 + mu/4) / 2}
  bool first = false, second = false, third = false;
  // Partial sums of sum_j C^{j+2} eps_j / rho_{j+1}, j = 1..J.
  std::vector<double> partial_sums;
  double tail_bound = 0.0;  // geometric bound on the remainder after the last term
  bool series_converges = false;
  bool ok() const { return first && second && third; }
};

Dorm2Report validate_dorm2(const MultiscaleParams &p, int terms = 60);

using ZFunction = std::function<cplx(cplx)>;

// 1/(e1 - i gamma - z): the decoupled u with its pole moved below the axis.
ZFunction free_resonance_surrogate(double e1, double gamma);

struct LemmaOptions
{
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  std::vector<double> z_breaks;  // extra outer breakpoints (e.g. near poles of u)
};

// Double quadrature of int_{Gamma_-(eps, R)} dz u(z) int dr G(r) / (z - lambda0 - r) with the
// window |r - (z - lambda0)| < eta removed.
cplx T_eps_R_eta(const TestFunction &G, const ZFunction &u, double lambda0, double eps, double R,
                 double eta, const LemmaOptions &opt = {});
cplx T_n_R_eta(const TestFunction &G, const ZFunction &u, double lambda0, const MultiscaleParams &p,
               int n, double R, double eta, const LemmaOptions &opt = {});

// Same quantity from Cauchy's theorem: minus the integrals over the large
// upper half circle of radius R, the small half circles about each r, and the
// half circle of radius eps about lambda0.
cplx T_closed_path(const TestFunction &G, const ZFunction &u, double lambda0, double eps, double R,
                   double eta, const LemmaOptions &opt = {});

// pi i int G(r) u(r + lambda0) dr.
cplx thl12_limit(const TestFunction &G, const ZFunction &u, double lambda0, const LemmaOptions &opt = {});
double thl12_defect(const TestFunction &G, const ZFunction &u, double lambda0, double eps, double R,
                    double eta, const LemmaOptions &opt = {});

struct Thl12Cell
{
  int n = 0;
  double R = 0.0, eta = 0.0, eps = 0.0, rho_n = 0.0;
  cplx T{0.0};
  double defect = 0.0;
};

struct Thl12Study
{
  std::vector<Thl12Cell> n_sweep, R_sweep, eta_sweep;
  // Log-log slopes of successive differences |T_k - T_{k+1}| against rho_n, 1/R and eta.
  double exponent_rho = 0.0, exponent_invR = 0.0, exponent_eta = 0.0;
  CsvTable table() const;
};

struct Thl12Plan
{
  std::vector<int> n{1, 2, 3};
  std::vector<double> R{5.0, 10.0, 20.0, 40.0};
  std::vector<double> eta{0.04, 0.02, 0.01, 0.005};
  int n_fixed = 2;
  double R_fixed = 40.0;
  double eta_fixed = 1e-3;
};

Thl12Study thl12_rate_study(const TestFunction &G, const ZFunction &u, double lambda0,
                            const MultiscaleParams &p, const Thl12Plan &plan,
                            const LemmaOptions &opt = {}, int threads = 1);

struct TailOptions
{
  double z_panel = 0.05;   // Gamma_- panel length
  int order = 16;
  int threads = 1;
};

// A(q, Q) = int_q^Q ds zeta(s) int_{Gamma_-(eps, R)} dz e^{-is(z - lambda0)} u(z) for each
// Q in `Qs` (ascending), by one nested pass with the s-integral outermost.
std::vector<cplx> A_Q_eps_R(const TestFunction &zeta, const ZFunction &u, double lambda0, double q,
                            const std::vector<double> &Qs, double eps, double R,
                            const TailOptions &opt = {});
cplx A_Q_n_R(const TestFunction &zeta, const ZFunction &u, double lambda0, double q, double Q,
             const MultiscaleParams &p, int n, double R, const TailOptions &opt = {});

struct TailLevel
{
  int n = 0;
  double R = 0.0;
  std::vector<double> Q;
  std::vector<cplx> A;
  std::vector<double> scaled_tail;  // Q |A(2Q) - A(Q)|
  double C = 0.0;                   // max of scaled_tail
};

struct TailStudy
{
  std::vector<TailLevel> levels;  // the last level is the reference ("infinite") level
  std::vector<double> interchange;  // |A(Q, ref) - A(Q_max, ref)| for each Q
  double stability = 0.0;           // max relative spread of C over the non-reference levels
  CsvTable table() const;
};

TailStudy tail_study(const TestFunction &zeta, const ZFunction &u, double lambda0, double q,
                     const std::vector<double> &Qs, const MultiscaleParams &p,
                     const std::vector<std::pair<int, double>> &levels, const TailOptions &opt = {});

}  // namespace spinboson

#endif  // SPINBOSON_MULTISCALE_HPP
