// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_SCATTERING_HPP
#define SPINBOSON_SCATTERING_HPP

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinboson/distributions.hpp"
#include "spinboson/hamiltonian.hpp"
#include "spinboson/io.hpp"
#include "spinboson/spectral.hpp"

namespace spinboson
{

// Isotropic one-boson packet: angular * bump(center, halfwidth)(|k|).
struct WavePacket
{
  double center = 1.0;
  double halfwidth = 0.3;
  cplx angular{1.0};

  void validate() const;  // kappa = center - halfwidth > 0
  double kappa() const { return center - halfwidth; }
  double upper() const { return center + halfwidth; }
  double radial(double r) const;
  cplx operator()(double r) const { return angular * radial(r); }
};

// G(r) = (4 pi)^2 r^4 conj(h(r)) l(r) f(r)^2 for r > 0, zero otherwise.
TestFunction build_G(const WavePacket &h, const WavePacket &l, const FormFactorParams &form);
// W(r) = 4 pi r^2 l(r) conj(h(r)) f(r), the radial profile of the isotropic W.
TestFunction build_W(const WavePacket &h, const WavePacket &l, const FormFactorParams &form);
// <W_s, f>_2 = 4 pi int r^2 conj(W(r)) e^{isr} f(r) dr.
cplx w_overlap(const TestFunction &W, const FormFactorParams &form, double s);
// Log-log slope of |<W_s, f>| over s in [s0, s1] (negated, so decay ~ s^{-p} gives p).
double w_decay_exponent(const TestFunction &W, const FormFactorParams &form, double s0 = 10.0,
                        double s1 = 100.0, int samples = 16);

// J(s) = int G(r) e^{is(r + lambda0)} dr, by a fixed panel rule on supp G that
// resolves frequencies up to `s_resolve`.
TestFunction build_J(const TestFunction &G, double lambda0, double s_resolve = 2000.0);
// max over s in [s0, s1] of |J(s)| s^2.
double j_decay_constant(const TestFunction &J, double s0, double s1, int samples = 200);

enum class SecondTerm
{
  Conjugation,  // conj(u(conj(lambda0) - r))
  Mirrored      // bilinear resolvent of a separately assembled H at conj(theta)
};

struct SmearedT
{
  cplx kernel_form{0.0};     // radial quadrature of conj(h) l T(r, r)
  cplx resolvent_form{0.0};  // i g^2 N^-2 (T1 - T2)
  cplx T1{0.0}, T2{0.0};
};

struct ProofOptions
{
  double eps = 0.05;
  double R = 3.0;
  double z_panel = 0.05;
  int order = 16;
  double s_max = 0.0;     // 0 picks s_max from the decay of J
  double s_tol = 1e-12;   // |J| target relative to int |G| when s_max is automatic
};

struct ProofTerms
{
  double q = 0.0, eps = 0.0, R = 0.0, s_max = 0.0;
  cplx T1{0.0};   // -int_q^{s_max} ds J(s) int_{Gamma_-} dz e^{-isz} u(z)
  cplx T11{0.0};  // -pi int_{Gamma_-} u(z) G(z - lambda0) dz
  cplx T12{0.0};  // i int_{Gamma_-} u(z) PV int G(z - lambda0 - r) e^{-iqr} / r dr
  double tail = 0.0;  // estimate of the truncated s-tail
  double relative_defect() const { return std::abs(T11 + T12 - T1) / std::abs(T1); }
};

struct QLimitRow
{
  double q = 0.0;
  cplx value{0.0};    // -pi int u(lambda0 + z) G(z) (1 + e^{-iqz}) dz
  double defect = 0.0;  // |value - value(q = 0)|
  double bound = 0.0;   // pi q int z |u G| dz
};

struct TimeOptions
{
  double s_max = 200.0;
  double panel = 0.5;
  int order = 16;
  double tail_warn = 1e-2;  // relative tail estimate that triggers a warning
};

struct TimeDomainResult
{
  cplx value{0.0};
  cplx T1{0.0}, T2{0.0};
  double s_max = 0.0;
  double tail_estimate = 0.0;
  std::string warning;
};

struct LorentzFit
{
  double center = 0.0, width = 0.0, amplitude = 0.0;
  double residual = 0.0;  // rms residual relative to the peak
  bool converged = false;
};

struct KernelScan
{
  std::vector<double> k;
  std::vector<cplx> T;
  LorentzFit fit;
  cplx lambda0{0.0}, lambda1{0.0};
  double spacing = 0.0;
  CsvTable table() const;
  nlohmann::json summary() const;
};

struct ScanSpec
{
  double center = 0.0;  // 0 centers on Re lambda1
  double half_range = 0.1;
  double spacing = 0.0025;
};

// Fits A w^2 / ((x - c)^2 + w^2) to y by Levenberg-Marquardt.
LorentzFit fit_lorentzian(const std::vector<double> &x, const std::vector<double> &y);

class ScatteringContext
{
public:
  ScatteringContext(std::shared_ptr<const Model> model, ResonanceData rd);

  const Model &model() const { return *model_; }
  const ResonanceData &resonances() const { return rd_; }
  double lambda0() const { return lambda0_; }

  // u(z) = (sigma_1 Psi)^T (H^theta - z)^{-1} (sigma_1 Psi).
  cplx u(cplx z) const;
  // <sigma_1 Psi^theta, (H^{conj theta} - w)^{-1} sigma_1 Psi^{conj theta}>.
  cplx u_mirror(cplx w, SecondTerm route = SecondTerm::Conjugation) const;

  cplx kernel_T(double k, double kp, SecondTerm route = SecondTerm::Conjugation) const;
  SmearedT smeared_T(const WavePacket &h, const WavePacket &l, int threads = 1) const;
  ProofTerms proof_terms(const WavePacket &h, const WavePacket &l, double q,
                         const ProofOptions &opt = {}, int threads = 1) const;
  std::vector<QLimitRow> q_limit(const WavePacket &h, const WavePacket &l,
                                 const std::vector<double> &qs) const;
  TimeDomainResult time_domain_T(const WavePacket &h, const WavePacket &l,
                                 const TimeOptions &opt = {}) const;
  KernelScan line_shape_scan(const ScanSpec &spec = {}, int threads = 1) const;

private:
  std::shared_ptr<const Model> model_;
  ResonanceData rd_;
  double lambda0_ = 0.0;
  CVec s1psi_;
  mutable std::unique_ptr<BilinearResolvent> u_;
  mutable std::unique_ptr<BilinearResolvent> mirror_;
};

}  // namespace spinboson

#endif  // SPINBOSON_SCATTERING_HPP
