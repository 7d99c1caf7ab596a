#include "bandlim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

// Gauss-Kronrod 7-15 abscissae (positive half) and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
};

struct PanelLess {
  bool operator()(const Panel& p, const Panel& q) const { return p.error < q.error; }
};

Panel evaluate_panel(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx kron{0.0, 0.0};
  cplx gauss{0.0, 0.0};
  const cplx fc = f(c);
  kron += kWgk[7] * fc;
  gauss += kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const cplx lo = f(c - half * kXgk[i]);
    const cplx hi = f(c + half * kXgk[i]);
    kron += kWgk[i] * (lo + hi);
    if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
  }
  kron *= half;
  gauss *= half;
  return Panel{a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult integrate_segmented(const std::function<cplx(double)>& f, double a,
                               double b, const std::vector<double>& breakpoints,
                               const QuadOptions& opt) {
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::priority_queue<Panel, std::vector<Panel>, PanelLess> heap;
  cplx total{0.0, 0.0};
  double err = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0.0) continue;
    Panel p = evaluate_panel(f, cuts[i], cuts[i + 1]);
    total += p.value;
    err += p.error;
    heap.push(p);
  }

  int used = 0;
  while (err > opt.abs_tol && !heap.empty()) {
    if (used >= opt.max_subdivisions)
      throw AccuracyError("quadrature did not reach the requested tolerance (" +
                          std::to_string(opt.abs_tol) + "); error estimate " +
                          std::to_string(err));
    Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at the resolution limit; keep its estimate, stop refining it.
      total += worst.value;
      continue;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value;
    err += left.error + right.error;
    heap.push(left);
    heap.push(right);
    ++used;
  }

  QuadResult res;
  res.value = total;
  res.error_estimate = err;
  res.subdivisions = used;
  res.converged = err <= opt.abs_tol;
  return res;
}

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     const QuadOptions& opt) {
  return integrate_segmented(f, a, b, {}, opt);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

cplx poly_osc_integral(const std::vector<cplx>& coef, double a, double b, double tau) {
  if (coef.empty() || b <= a) return {0.0, 0.0};
  const double d = 0.5 * (b - a);
  const double x0 = 0.5 * (a + b);
  const cplx i_tau{0.0, tau};

  if (std::abs(tau) * d < 0.5) {
    // Shift to u = x - x0 (Taylor shift by synthetic division), then expand
    // exp(i tau u); with |tau| d < 1/2 the terms decay factorially.
    std::vector<cplx> shifted = coef;
    for (size_t q = 0; q < shifted.size(); ++q)
      for (size_t r = shifted.size() - 1; r > q; --r)
        shifted[r - 1] += shifted[r] * x0;

    double bound = 0.0;
    for (size_t q = 0; q < shifted.size(); ++q)
      bound = std::max(bound, std::abs(shifted[q]) * std::pow(d, q + 1.0));

    cplx sum{0.0, 0.0};
    cplx term{1.0, 0.0};   // (i tau)^m / m!
    double scale = 1.0;    // |tau d|^m / m!
    for (int mpow = 0; mpow < 48; ++mpow) {
      cplx moment{0.0, 0.0};
      for (size_t q = 0; q < shifted.size(); ++q) {
        const int k = mpow + static_cast<int>(q);
        if (k % 2 == 0) moment += shifted[q] * (2.0 * std::pow(d, k + 1.0) / (k + 1));
      }
      sum += term * moment;
      term *= i_tau / static_cast<double>(mpow + 1);
      scale *= std::abs(tau) * d / (mpow + 1);
      if (scale * bound < 1e-24 * std::max(1.0, std::abs(sum))) break;
    }
    return std::exp(i_tau * x0) * sum;
  }

  // Integration by parts: primitive exp(i tau x) sum_q (-1)^q p^(q)(x) / (i tau)^(q+1).
  auto horner = [](const std::vector<cplx>& c, double x) {
    cplx v{0.0, 0.0};
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  auto primitive = [&](double x) {
    std::vector<cplx> deriv = coef;
    cplx acc{0.0, 0.0};
    cplx denom = i_tau;
    double sign = 1.0;
    while (!deriv.empty()) {
      acc += sign * horner(deriv, x) / denom;
      sign = -sign;
      denom *= i_tau;
      std::vector<cplx> next(deriv.size() > 1 ? deriv.size() - 1 : 0);
      for (size_t r = 1; r < deriv.size(); ++r)
        next[r - 1] = deriv[r] * static_cast<double>(r);
      deriv = std::move(next);
    }
    return std::exp(i_tau * x) * acc;
  };
  return primitive(b) - primitive(a);
}

}  // namespace bandlim
