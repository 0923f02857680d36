// Copyright 2026 The spinboson Authors.
// SPDX-License-Identifier: Apache-2.0

#include "spinboson/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "spinboson/errors.hpp"

namespace spinboson
{

Rule gauss_legendre(int n, double a, double b)
{
  if (n < 1)
  {
    throw DomainError("gauss_legendre: n must be positive");
  }
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  if (n == 1)
  {
    r.x[0] = mid;
    r.w[0] = 2.0 * half;
    return r;
  }
  // Legendre P_n and its derivative by the three-term recurrence.
  auto legendre = [n](double x, double &dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; k++)
    {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < (n + 1) / 2; i++)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) <= 5e-16)
      {
        break;
      }
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = mid - half * x;
    r.x[n - 1 - i] = mid + half * x;
    r.w[i] = r.w[n - 1 - i] = half * w;
  }
  if (n % 2 == 1)
  {
    r.x[n / 2] = mid;
  }
  return r;
}

Rule panel_rule(const std::vector<double> &breaks, int order)
{
  const Rule ref = gauss_legendre(order);
  Rule r;
  r.x.reserve(order * (breaks.size() - 1));
  r.w.reserve(order * (breaks.size() - 1));
  for (std::size_t p = 0; p + 1 < breaks.size(); p++)
  {
    const double a = breaks[p], b = breaks[p + 1];
    if (!(b > a))
    {
      throw DomainError("panel_rule: breakpoints must be strictly increasing");
    }
    for (int i = 0; i < order; i++)
    {
      r.x.push_back(0.5 * (a + b) + 0.5 * (b - a) * ref.x[i]);
      r.w.push_back(0.5 * (b - a) * ref.w[i]);
    }
  }
  return r;
}

Rule composite_gauss_legendre(double a, double b, int panels, int order)
{
  if (panels < 1)
  {
    throw DomainError("composite_gauss_legendre: panels must be positive");
  }
  std::vector<double> breaks(panels + 1);
  for (int p = 0; p <= panels; p++)
  {
    breaks[p] = a + (b - a) * p / panels;
  }
  breaks.back() = b;
  return panel_rule(breaks, order);
}

std::vector<double> graded_breaks(double a, double b, double h0, double h, double growth)
{
  if (!(b > a) || !(h0 > 0.0) || !(h > 0.0))
  {
    throw DomainError("graded_breaks: need a < b and positive panel lengths");
  }
  std::vector<double> br{a};
  double step = std::min(h0, h);
  while (br.back() + step < b - 0.5 * std::min(step, h))
  {
    br.push_back(br.back() + step);
    step = std::min(step * growth, h);
  }
  br.push_back(b);
  return br;
}

namespace
{

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval
{
  double a, b;
  cplx value;
  double error;
  bool operator<(const Interval &o) const { return error < o.error; }
};

Interval gk15(const RealToComplex &f, double a, double b)
{
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx k = fc * wgk[7], g = fc * wg[3];
  for (int j = 0; j < 7; j++)
  {
    const cplx s = f(c - h * xgk[j]) + f(c + h * xgk[j]);
    k += wgk[j] * s;
    if (j % 2 == 1)
    {
      g += wg[j / 2] * s;
    }
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadResult integrate_adaptive(const RealToComplex &f, std::vector<double> breaks,
                              const AdaptiveOptions &opt)
{
  if (breaks.size() < 2)
  {
    throw DomainError("integrate_adaptive: need at least two breakpoints");
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (breaks.size() == 2 && breaks[0] == -inf && breaks[1] == inf)
  {
    breaks = {-inf, 0.0, inf};
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); i++)
  {
    if (!(breaks[i + 1] > breaks[i]))
    {
      throw DomainError("integrate_adaptive: breakpoints must be strictly increasing");
    }
  }

  // Each piece is integrated on a finite parameter interval; infinite ends
  // use x = a + t/(1-t) or x = b - t/(1-t) with t in [0, 1).
  std::vector<RealToComplex> pieces;
  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < breaks.size(); i++)
  {
    const double a = breaks[i], b = breaks[i + 1];
    if (std::isinf(a) && std::isinf(b))
    {
      throw DomainError("integrate_adaptive: doubly infinite piece must be split");
    }
    if (std::isinf(b))
    {
      pieces.push_back([&f, a](double t) {
        const double s = 1.0 - t;
        return t >= 1.0 ? cplx(0.0) : f(a + t / s) / (s * s);
      });
      spans.emplace_back(0.0, 1.0);
    }
    else if (std::isinf(a))
    {
      pieces.push_back([&f, b](double t) {
        const double s = 1.0 - t;
        return t >= 1.0 ? cplx(0.0) : f(b - t / s) / (s * s);
      });
      spans.emplace_back(0.0, 1.0);
    }
    else
    {
      pieces.push_back(f);
      spans.emplace_back(a, b);
    }
  }

  std::vector<std::priority_queue<Interval>> heaps(pieces.size());
  cplx total = 0.0;
  double err = 0.0;
  int evals = 0;
  for (std::size_t p = 0; p < pieces.size(); p++)
  {
    Interval iv = gk15(pieces[p], spans[p].first, spans[p].second);
    evals += 15;
    total += iv.value;
    err += iv.error;
    heaps[p].push(iv);
  }

  int subdivisions = 0;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)))
  {
    // Split the worst interval over all pieces.
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t p = 0; p < heaps.size(); p++)
    {
      if (!heaps[p].empty() && heaps[p].top().error > worst_err)
      {
        worst_err = heaps[p].top().error;
        worst = p;
      }
    }
    Interval iv = heaps[worst].top();
    const double mid = 0.5 * (iv.a + iv.b);
    if (subdivisions >= opt.max_subdivisions || !(mid > iv.a && mid < iv.b))
    {
      std::ostringstream os;
      os << "integrate_adaptive: tolerance not reached (error estimate " << err << ")";
      throw NumericalError(os.str(), err);
    }
    heaps[worst].pop();
    Interval l = gk15(pieces[worst], iv.a, mid), r = gk15(pieces[worst], mid, iv.b);
    evals += 30;
    subdivisions++;
    total += l.value + r.value - iv.value;
    err += l.error + r.error - iv.error;
    heaps[worst].push(l);
    heaps[worst].push(r);
    if (subdivisions % 64 == 0)
    {
      // Resum to avoid drift in the running totals.
      total = 0.0;
      err = 0.0;
      for (auto h : heaps)
      {
        while (!h.empty())
        {
          total += h.top().value;
          err += h.top().error;
          h.pop();
        }
      }
    }
  }
  return {total, err, evals};
}

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y)
{
  if (x.size() != y.size() || x.size() < 2)
  {
    throw DomainError("fit_line: need at least two points of equal length");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0)
  {
    throw DomainError("fit_line: abscissae are all equal");
  }
  LineFit lf;
  lf.slope = (n * sxy - sx * sy) / den;
  lf.intercept = (sy - lf.slope * sx) / n;
  return lf;
}

}  // namespace spinboson
