// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPINBOSON_CONTOUR_HPP
#define SPINBOSON_CONTOUR_HPP

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "spinboson/spectral.hpp"

namespace spinboson
{

enum class SegmentKind
{
  Line,
  Arc,
  Ray
};

// One oriented piece of a contour, parameterized by s running from `from` to
// `to` (either direction):
//   line  z = a + d s,           s in [0, 1]
//   arc   z = c + rho e^{i s}
//   ray   z = a + d s,           |d| = 1
struct Segment
{
  SegmentKind kind = SegmentKind::Line;
  cplx a{0.0}, d{0.0}, c{0.0};
  double rho = 0.0;
  double from = 0.0, to = 1.0;
  // Ascending panel breakpoints covering [min(from,to), max(from,to)].
  std::vector<double> breaks;
  std::string name;

  cplx point(double s) const;
  cplx tangent(double s) const;
  cplx start() const { return point(from); }
  cplx end() const { return point(to); }
};

Segment make_line(cplx a, cplx b, int panels = 1);
// z = c + rho e^{i phi}, phi from phi0 to phi1.
Segment make_arc(cplx c, double rho, double phi0, double phi1, int panels = 1);
Segment make_ray(cplx a, cplx direction, double u0, double u1, int panels = 1);

struct Contour
{
  std::vector<Segment> segments;
  std::vector<cplx> nodes, weights;  // weights include dz/ds
  std::vector<int> segment_of_node;

  // Fills nodes and weights with `order`-point Gauss-Legendre per panel.
  void discretize(int order);
  // Maximal gap between consecutive segment ends.
  double connection_gap() const;
  // Gap between the last end and the first start.
  double closure_gap() const;
  template <class F>
  cplx integrate(F &&f) const
  {
    cplx s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); k++)
    {
      s += weights[k] * f(nodes[k]);
    }
    return s;
  }
  void write_csv(std::ostream &os) const;
};

constexpr double t_min = 0.1;

struct GammaSpec
{
  double eps = 0.05;
  double R = 5.0;
  double nu = 0.15;
  cplx lambda0{0.0};
  double t = 1.0;          // target time, fixes the ray truncation
  double h = 0.05;         // panel length on the real segments
  double ray_h = 0.25;     // initial panel length on the rays
  double grading = 0.25;   // panel length <= grading * distance to lambda0 (or ray start)
  int order = 16;
  int refine = 0;          // each level halves all panel lengths
  // Real points in (l0 + eps, R) bypassed by upper half circles of radius
  // detour_radius; used for eigenvalues on or near the real axis.
  std::vector<double> detours;
  double detour_radius = 0.1;
};

// Ray length beyond which the damping e^{-t u sin(nu/4)} is below 1e-12.
double ray_length(double t, double nu);

// Gamma(eps, R): left ray (inward), [-R, l0 - eps], the upper half circle of
// radius eps about l0 = Re lambda0, [l0 + eps, R], right ray (outward).
// Detours, if any, replace pieces of [l0 + eps, R] by upper half circles.
Contour build_gamma(const GammaSpec &spec);

// Real segments [-R, l0 - eps] and [l0 + eps, R] only, `order`-point panels of
// length at most h.
Contour build_gamma_minus(double eps, double R, double lambda0, double h, int order = 16);

// (1 / 2 pi i) sum_k w_k e^{-i t z_k} psi^T (H - z_k)^{-1} phi.
cplx laplace_propagator(const CVec &phi, const CVec &psi, double t, const Model &model,
                        const ResonanceData &rd, const Contour &c, int threads = 1);

// <phi, e^{-itH} psi> by dense Hermitian eigendecomposition.
cplx direct_propagator(const HermitianPropagator &prop, const CVec &phi, const CVec &psi, double t);

struct LaplaceCheck
{
  double t = 0.0;
  int refine = 0;
  std::size_t nodes = 0;
  cplx contour{0.0}, direct{0.0};
  double defect = 0.0;    // |contour - direct|
  double scale = 1.0;     // ||phi|| ||psi||
};

// Shared state for repeated Laplace checks with phi = psi = sigma_1 Psi_{lambda0}.
class LaplaceExperiment
{
public:
  explicit LaplaceExperiment(const ModelParams &p, const ResonanceOptions &opt = {});
  // Adds a detour around Re lambda1 unless `detour` is false.
  LaplaceCheck check(double t, GammaSpec spec, int threads = 1, bool detour = true) const;
  const Model &model() const { return model_; }
  const ResonanceData &resonances() const { return rd_; }

private:
  Model model_, model0_;
  ResonanceData rd_;
  HermitianPropagator prop_;
  CVec phi_theta_, phi0_;
};

double laplace_identity_defect(const ModelParams &p, double t, double eps, double R, int refine = 0);

}  // namespace spinboson

#endif  // SPINBOSON_CONTOUR_HPP
