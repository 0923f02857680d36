// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/contour.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>

#include "spinboson/errors.hpp"

namespace spinboson
{

namespace
{

std::vector<double> uniform_breaks(double a, double b, int panels)
{
  std::vector<double> br(panels + 1);
  for (int i = 0; i <= panels; i++)
  {
    br[i] = a + (b - a) * i / panels;
  }
  br.back() = b;
  return br;
}

// Breakpoints on [0, len] with panel length min(hmax, max(h0, alpha * s)).
std::vector<double> relative_breaks(double len, double h0, double alpha, double hmax)
{
  std::vector<double> br{0.0};
  while (br.back() < len)
  {
    const double s = br.back();
    const double step = std::min(hmax, std::max(h0, alpha * s));
    if (s + 1.5 * step >= len)
    {
      if (s + step < len)
      {
        br.push_back(0.5 * (s + len));
      }
      br.push_back(len);
      break;
    }
    br.push_back(s + step);
  }
  return br;
}

}  // namespace

cplx Segment::point(double s) const
{
  switch (kind)
  {
  case SegmentKind::Arc:
    return c + rho * std::exp(cplx(0.0, s));
  default:
    return a + d * s;
  }
}

cplx Segment::tangent(double s) const
{
  switch (kind)
  {
  case SegmentKind::Arc:
    return cplx(0.0, rho) * std::exp(cplx(0.0, s));
  default:
    return d;
  }
}

Segment make_line(cplx a, cplx b, int panels)
{
  Segment s;
  s.kind = SegmentKind::Line;
  s.a = a;
  s.d = b - a;
  s.from = 0.0;
  s.to = 1.0;
  s.breaks = uniform_breaks(0.0, 1.0, std::max(1, panels));
  s.name = "line";
  return s;
}

Segment make_arc(cplx c, double rho, double phi0, double phi1, int panels)
{
  if (!(rho > 0.0))
  {
    throw DomainError("make_arc: radius must be positive");
  }
  Segment s;
  s.kind = SegmentKind::Arc;
  s.c = c;
  s.rho = rho;
  s.from = phi0;
  s.to = phi1;
  s.breaks = uniform_breaks(std::min(phi0, phi1), std::max(phi0, phi1), std::max(1, panels));
  s.name = "arc";
  return s;
}

Segment make_ray(cplx a, cplx direction, double u0, double u1, int panels)
{
  Segment s;
  s.kind = SegmentKind::Ray;
  s.a = a;
  s.d = direction / std::abs(direction);
  s.from = u0;
  s.to = u1;
  s.breaks = uniform_breaks(std::min(u0, u1), std::max(u0, u1), std::max(1, panels));
  s.name = "ray";
  return s;
}

void Contour::discretize(int order)
{
  nodes.clear();
  weights.clear();
  segment_of_node.clear();
  for (std::size_t k = 0; k < segments.size(); k++)
  {
    const auto &seg = segments[k];
    const double sign = seg.to >= seg.from ? 1.0 : -1.0;
    const Rule r = panel_rule(seg.breaks, order);
    // Emit nodes in the direction of traversal.
    for (std::size_t i = 0; i < r.size(); i++)
    {
      const std::size_t j = sign > 0 ? i : r.size() - 1 - i;
      nodes.push_back(seg.point(r.x[j]));
      weights.push_back(sign * r.w[j] * seg.tangent(r.x[j]));
      segment_of_node.push_back(static_cast<int>(k));
    }
  }
}

double Contour::connection_gap() const
{
  double gap = 0.0;
  for (std::size_t k = 0; k + 1 < segments.size(); k++)
  {
    gap = std::max(gap, std::abs(segments[k].end() - segments[k + 1].start()));
  }
  return gap;
}

double Contour::closure_gap() const
{
  return segments.empty() ? 0.0 : std::abs(segments.back().end() - segments.front().start());
}

void Contour::write_csv(std::ostream &os) const
{
  os << "segment,name,z_re,z_im,w_re,w_im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < nodes.size(); k++)
  {
    os << segment_of_node[k] << ',' << segments[segment_of_node[k]].name << ',' << nodes[k].real()
       << ',' << nodes[k].imag() << ',' << weights[k].real() << ',' << weights[k].imag() << '\n';
  }
}

double ray_length(double t, double nu)
{
  return 12.0 * std::log(10.0) / (t * std::sin(nu / 4.0));
}

Contour build_gamma(const GammaSpec &spec)
{
  if (!(spec.eps > 0.0))
  {
    throw DomainError("build_gamma: eps must be positive");
  }
  if (!(spec.nu > 0.0 && spec.nu < std::numbers::pi / 16.0))
  {
    throw DomainError("build_gamma: nu must lie in (0, pi/16)");
  }
  if (spec.eps >= spec.R - std::abs(spec.lambda0))
  {
    throw DomainError("build_gamma: eps >= R - |lambda0|, the hole does not fit inside [-R, R]");
  }
  if (!(spec.t >= t_min))
  {
    throw DomainError("build_gamma: t must be at least t_min = 0.1");
  }
  if (spec.order < 1 || spec.refine < -4 || spec.refine > 8)
  {
    throw DomainError("build_gamma: bad order or refinement level");
  }
  const double f = std::ldexp(1.0, -spec.refine);
  const double h = spec.h * f, ray_h = spec.ray_h * f;
  const double l0 = spec.lambda0.real(), eps = spec.eps, R = spec.R, nu = spec.nu;
  const double umax = ray_length(spec.t, nu);
  // Half a wavelength of e^{-itz} along the ray.
  const double wave = std::numbers::pi / spec.t * f;

  Contour c;
  const cplx dl = -std::exp(cplx(0.0, nu / 4.0)), dr = std::exp(cplx(0.0, -nu / 4.0));

  Segment left_ray = make_ray(-R, dl, umax, 0.0);
  left_ray.breaks = relative_breaks(umax, ray_h, spec.grading, std::max(wave, ray_h));
  left_ray.name = "ray_left";

  // Real segments graded toward the hole.
  const double lenl = (l0 - eps) + R;
  const auto bl = relative_breaks(lenl, spec.grading * eps * f, spec.grading, h);
  Segment left = make_line(-R, l0 - eps);
  left.breaks.clear();
  for (auto it = bl.rbegin(); it != bl.rend(); ++it)
  {
    left.breaks.push_back(1.0 - *it / lenl);
  }
  left.breaks.front() = 0.0;
  left.breaks.back() = 1.0;
  left.name = "real_left";

  // lambda0 - eps e^{-it}, t in [0, pi], i.e. phi from pi down to 0.
  const int arc_panels =
    std::max(4, static_cast<int>(std::ceil(std::numbers::pi / std::min(h / eps, nu / 2.0) / (1.0 / f))));
  Segment arc = make_arc(l0, eps, std::numbers::pi, 0.0, arc_panels);
  arc.name = "arc";

  std::vector<double> det = spec.detours;
  std::sort(det.begin(), det.end());
  const double rd = spec.detour_radius;
  double lo = l0 + eps;
  for (std::size_t k = 0; k < det.size(); k++)
  {
    if (!(rd > 0.0) || det[k] - rd <= lo || det[k] + rd >= R)
    {
      throw DomainError("build_gamma: detour does not fit inside (lambda0 + eps, R)");
    }
    lo = det[k] + rd;
  }
  std::vector<Segment> right_parts;
  double a = l0 + eps;
  for (std::size_t k = 0; k <= det.size(); k++)
  {
    const double b = k < det.size() ? det[k] - rd : R;
    const double len = b - a;
    // The first piece is graded toward the hole, later ones toward their ends.
    std::vector<double> br = k == 0 ? relative_breaks(len, spec.grading * eps * f, spec.grading, h)
                                    : relative_breaks(len, std::min(h, spec.grading * rd * f), spec.grading, h);
    Segment line = make_line(a, b);
    line.breaks.clear();
    for (auto x : br)
    {
      line.breaks.push_back(x / len);
    }
    line.breaks.back() = 1.0;
    line.name = "real_right";
    right_parts.push_back(line);
    if (k < det.size())
    {
      Segment d = make_arc(det[k], rd, std::numbers::pi, 0.0,
                           std::max(4, static_cast<int>(std::ceil(std::numbers::pi * rd / h))));
      d.name = "detour";
      right_parts.push_back(d);
      a = det[k] + rd;
    }
  }

  Segment right_ray = make_ray(R, dr, 0.0, umax);
  right_ray.breaks = relative_breaks(umax, ray_h, spec.grading, std::max(wave, ray_h));
  right_ray.name = "ray_right";

  c.segments = {left_ray, left, arc};
  c.segments.insert(c.segments.end(), right_parts.begin(), right_parts.end());
  c.segments.push_back(right_ray);
  c.discretize(spec.order);
  return c;
}

Contour build_gamma_minus(double eps, double R, double lambda0, double h, int order)
{
  if (!(eps > 0.0) || !(R > std::abs(lambda0) + eps) || !(h > 0.0))
  {
    throw DomainError("build_gamma_minus: need eps > 0, R > |lambda0| + eps and h > 0");
  }
  Contour c;
  const double lenl = lambda0 - eps + R, lenr = R - lambda0 - eps;
  c.segments = {make_line(-R, lambda0 - eps, static_cast<int>(std::ceil(lenl / h))),
                make_line(lambda0 + eps, R, static_cast<int>(std::ceil(lenr / h)))};
  c.segments[0].name = "real_left";
  c.segments[1].name = "real_right";
  c.discretize(order);
  return c;
}

cplx laplace_propagator(const CVec &phi, const CVec &psi, double t, const Model &model,
                        const ResonanceData &rd, const Contour &c, int threads)
{
  if (!(t >= t_min))
  {
    throw DomainError("laplace_propagator: t must be at least t_min = 0.1");
  }
  const std::size_t n = c.nodes.size();
  std::vector<cplx> terms(n);
  const int nw = workers(n, threads);
  std::vector<std::unique_ptr<ResolventSolver>> solvers(nw);
  for (auto &s : solvers)
  {
    s = std::make_unique<ResolventSolver>(model.full().mat, model.levels(),
                                          std::vector<cplx>{rd.lambda0, rd.lambda1});
  }
  parallel_for(n, threads, [&](std::size_t k, int w) {
    const cplx z = c.nodes[k];
    terms[k] = c.weights[k] * std::exp(cplx(0.0, -t) * z) * bilinear(psi, solvers[w]->solve(z, phi));
  });
  cplx s = 0.0;
  for (const auto &v : terms)
  {
    s += v;
  }
  return s / cplx(0.0, 2.0 * std::numbers::pi);
}

cplx direct_propagator(const HermitianPropagator &prop, const CVec &phi, const CVec &psi, double t)
{
  return prop.overlap(phi, psi, t);
}

LaplaceExperiment::LaplaceExperiment(const ModelParams &p, const ResonanceOptions &opt)
  : model_(p), model0_(p.with_theta(0.0)), rd_(eigen_resonances(model_, opt)),
    prop_(model0_.full().mat, {apply_sigma1(rd_.psi0_hermitian)}),
    phi_theta_(apply_sigma1(rd_.psi0)), phi0_(apply_sigma1(rd_.psi0_hermitian))
{
}

LaplaceCheck LaplaceExperiment::check(double t, GammaSpec spec, int threads, bool detour) const
{
  spec.t = t;
  if (detour)
  {
    spec.detours = {rd_.lambda1.real()};
  }
  spec.lambda0 = rd_.lambda0;
  spec.nu = model_.params().theta.theta.imag();
  const Contour c = build_gamma(spec);
  LaplaceCheck out;
  out.t = t;
  out.refine = spec.refine;
  out.nodes = c.nodes.size();
  out.contour = laplace_propagator(phi_theta_, phi_theta_, t, model_, rd_, c, threads);
  out.direct = direct_propagator(prop_, phi0_, phi0_, t);
  out.defect = std::abs(out.contour - out.direct);
  out.scale = phi0_.squaredNorm();
  return out;
}

double laplace_identity_defect(const ModelParams &p, double t, double eps, double R, int refine)
{
  LaplaceExperiment ex(p);
  GammaSpec spec;
  spec.eps = eps;
  spec.R = R;
  spec.refine = refine;
  return ex.check(t, spec).defect;
}

}  // namespace spinboson
