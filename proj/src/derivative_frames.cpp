#include "bandlim/derivative_frames.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)
constexpr double kTauSwitch = 60.0;

// integral_H^inf exp(i tau x) / (x - pole) dx as an asymptotic expansion in
// 1/tau; usable for |tau| >= kTauSwitch where the smallest term is far below
// machine precision.
cplx tail_asymptotic(cplx pole, double H, double tau) {
  const cplx itau{0.0, tau};
  const cplx z = 1.0 / ((H - pole) * itau);
  cplx sum{0.0, 0.0};
  cplx term = z;  // m! z^(m+1) at m = 0
  for (int m = 0; m < 40; ++m) {
    sum += term;
    term *= z * static_cast<double>(m + 1);
    if (std::abs(term) < 1e-25) break;
  }
  return -std::exp(itau * H) * sum;
}

// integral_H^inf exp(i tau x) / (1 + x^2) dx via partial fractions.
cplx cauchy_tail(double H, double tau) {
  const cplx i{0.0, 1.0};
  return (tail_asymptotic(i, H, tau) - tail_asymptotic(-i, H, tau)) / (2.0 * i);
}

// integral_H^inf x exp(i tau x) / (1 + x^2) dx.
cplx cauchy_tail_x(double H, double tau) {
  const cplx i{0.0, 1.0};
  return 0.5 * (tail_asymptotic(i, H, tau) + tail_asymptotic(-i, H, tau));
}

}  // namespace

double rational_cos_integral(double H, double tau, const QuadOptions& opt) {
  if (H <= 0.0) return 0.0;
  const double t = std::abs(tau);
  if (t < kTauSwitch) {
    auto f = [&](double x) { return cplx{std::cos(t * x) / (1.0 + x * x), 0.0}; };
    return 2.0 * integrate(f, 0.0, H, opt).value.real();
  }
  const cplx v = M_PI * std::exp(-t) - cauchy_tail(H, t) - cauchy_tail(H, -t);
  return v.real();
}

double rational_sin_integral(double H, double tau, const QuadOptions& opt) {
  if (H <= 0.0 || tau == 0.0) return 0.0;
  const double t = std::abs(tau);
  const double sgn = tau > 0.0 ? 1.0 : -1.0;
  if (t < kTauSwitch) {
    auto f = [&](double x) {
      return cplx{x * std::sin(t * x) / (1.0 + x * x), 0.0};
    };
    return sgn * 2.0 * integrate(f, 0.0, H, opt).value.real();
  }
  const cplx full{0.0, M_PI * std::exp(-t)};  // full-line value for t > 0
  const cplx v = full + cauchy_tail_x(H, -t) - cauchy_tail_x(H, t);
  return sgn * v.imag();
}

GeneratorSet derivative_generators(int L, double omega) {
  if (L < 1) throw ConfigError("channel count must be at least 1");
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  GeneratorSet g;
  g.omega = omega;
  g.polynomial_band = true;
  const cplx i{0.0, 1.0};
  cplx ipow{1.0, 0.0};
  for (int l = 1; l <= L; ++l) {
    PolyPiece piece;
    piece.lo = -omega;
    piece.hi = omega;
    piece.coef.assign(l, cplx{0.0, 0.0});
    piece.coef[l - 1] = ipow;
    g.gens.push_back(PiecewisePoly{{piece}});
    ipow *= i;
  }
  return g;
}

cplx vandermonde_minor_det(int n, int r, double x, double h) {
  if (n < 1 || n > 12) throw DomainError("row count must be 1..12");
  if (r < 0 || r > n) throw DomainError("removed power must be 0..n");
  std::vector<cplx> z(n);
  for (int j = 1; j <= n; ++j) z[j - 1] = cplx{0.0, x + j * h};

  // Elementary symmetric polynomials of the nodes.
  std::vector<cplx> e(n + 1, cplx{0.0, 0.0});
  e[0] = cplx{1.0, 0.0};
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k >= 1; --k) e[k] += z[j] * e[k - 1];

  cplx vand{1.0, 0.0};
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) vand *= z[q] - z[p];

  return e[n - r] * vand;
}

namespace {

void require_two_channels(const FrameParams& p) {
  if (p.length != 2)
    throw UnsupportedError("closed-form duals exist for two channels only; got L = " +
                           std::to_string(p.length));
}

}  // namespace

std::pair<cplx, cplx> dual2_fourier(double xi, const FrameParams& p) {
  require_two_channels(p);
  const double h = p.h;
  const double H = h - p.omega;
  const double a = std::abs(xi);
  if (a > p.omega) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  if (a < H) {
    const double den = h * (1.0 + xi * xi);
    return {cplx{1.0 / den, 0.0}, cplx{0.0, xi / den}};
  }
  const double sgn = xi >= 0.0 ? 1.0 : -1.0;
  return {cplx{(1.0 - a / h) / h, 0.0}, cplx{0.0, sgn / (h * h)}};
}

std::pair<double, double> dual2_time(double y, const FrameParams& p,
                                     const QuadOptions& opt) {
  require_two_channels(p);
  const double w = p.omega;
  const double h = p.h;
  const double H = h - w;

  // q1 = (cos(H y) - cos(w y)) / y^2 with a series on the cancellation range.
  double q1;
  if (std::abs(y) < 1e-2) {
    const double y2 = y * y;
    const double w2 = w * w, H2 = H * H;
    q1 = (w2 - H2) / 2.0 - (w2 * w2 - H2 * H2) * y2 / 24.0 +
         (w2 * w2 * w2 - H2 * H2 * H2) * y2 * y2 / 720.0 -
         (w2 * w2 * w2 * w2 - H2 * H2 * H2 * H2) * y2 * y2 * y2 / 40320.0;
  } else {
    q1 = (std::cos(H * y) - std::cos(w * y)) / (y * y);
  }
  const double q2 = -y * q1;

  const double phi1 =
      kInvSqrt2Pi * ((2.0 * w * H / (h * h)) *
                         (sinc_derivative(w * y, 0) - sinc_derivative(H * y, 0)) +
                     (2.0 / (h * h)) * q1 + rational_cos_integral(H, y, opt) / h);
  const double phi2 = kInvSqrt2Pi * ((2.0 / (h * h)) * q2 -
                                     rational_sin_integral(H, y, opt) / h);
  return {phi1, phi2};
}

DualSlice solve_dual_slice(const GeneratorSet& g, const FrameParams& p, double x,
                           double cond_limit) {
  const PreGramianSlice s = pre_gramian_at(g, p, x);
  const int L = p.length;
  const int nr = static_cast<int>(s.rows.size());

  DualSlice d;
  d.rows = s.rows;
  d.vanishing = s.vanishing;
  d.zone = s.zone;

  const Eigen::MatrixXcd A = s.reduced.adjoint();  // L x (effective rows)
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const int k = static_cast<int>(sv.size());
  if (sv(k - 1) <= 0.0 || sv(0) / sv(k - 1) > cond_limit)
    throw IllConditionedError(
        "dual solve at reduced frequency " + std::to_string(x) + " (zone " +
        std::to_string(s.zone) + "): condition number " +
        std::to_string(sv(k - 1) > 0.0 ? sv(0) / sv(k - 1) : INFINITY) +
        " exceeds limit " + std::to_string(cond_limit));
  d.cond = sv(0) / sv(k - 1);

  // Least-norm dual rows: pinv(A) has one row per effective translate.
  Eigen::MatrixXcd pinv =
      svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();

  d.vals = Eigen::MatrixXcd::Zero(nr, L);
  int rr = 0;
  for (int r = 0; r < nr; ++r) {
    if (r == s.vanishing) continue;
    d.vals.row(r) = pinv.row(rr++) / std::sqrt(p.h);
  }
  return d;
}

DualSet closed_form_duals(const FrameParams& p) {
  require_two_channels(p);
  DualSet d;
  d.kind = DualSet::Kind::ClosedForm2;
  d.params = p;
  d.gens = derivative_generators(2, p.omega);
  return d;
}

DualSet numeric_duals(const GeneratorSet& g, const FrameParams& p,
                      int points_per_zone, double cond_limit) {
  if (points_per_zone < 64)
    throw ConfigError("grid needs at least 64 points per zone");
  if (g.length() != p.length)
    throw ConfigError("generator count does not match channel count");

  DualSet d;
  d.kind = DualSet::Kind::NumericGrid;
  d.params = p;
  d.gens = g;
  d.condition_limit = cond_limit;

  const FrequencyPartition part = partition(p);
  const Interval* zones[3] = {&part.left, &part.middle, &part.right};
  for (int z = 0; z < 3; ++z) {
    if (zones[z]->empty()) continue;
    DualZoneGrid zg;
    zg.zone = z;
    zg.range = *zones[z];
    const int np = points_per_zone;
    const double step = zg.range.length() / np;
    for (int i = 0; i < np; ++i) {
      const double x = zg.range.lo + (i + 0.5) * step;
      DualSlice s = solve_dual_slice(g, p, x, cond_limit);
      if (zg.xs.empty()) {
        zg.rows = s.rows;
        zg.vanishing = s.vanishing;
      }
      zg.xs.push_back(x);
      zg.vals.push_back(std::move(s.vals));
      d.max_condition = std::max(d.max_condition, s.cond);
    }
    d.zones.push_back(std::move(zg));
  }
  return d;
}

cplx DualSet::hat(int l, double xi) const {
  if (l < 1 || l > params.length) throw DomainError("dual channel out of range");
  if (kind == Kind::ClosedForm2) {
    const auto [d1, d2] = dual2_fourier(xi, params);
    return l == 1 ? d1 : d2;
  }
  if (std::abs(xi) > params.omega) return {0.0, 0.0};
  int j0 = static_cast<int>(std::floor(xi / params.h));
  double x = xi - j0 * params.h;
  if (x < 0.0) {
    x += params.h;
    --j0;
  }
  if (x >= params.h) {
    x -= params.h;
    ++j0;
  }
  const DualSlice s = solve_dual_slice(gens, params, x, condition_limit);
  for (size_t r = 0; r < s.rows.size(); ++r)
    if (s.rows[r] == j0) return s.vals(static_cast<int>(r), l - 1);
  return {0.0, 0.0};
}

namespace {

// Integral of the sampled segment against exp(i y x) using a sliding cubic
// model on the uniform grid; the cubic's accuracy sets the error, so large
// |y| costs nothing.
// Exact integral of the cubic c[0..3](s) times exp(i tau s) over [sa, sb] by
// parts; rp[q] = (i tau)^-(q+1), ea/eb are the end phases.
cplx cubic_osc_by_parts(const cplx* c, double sa, double sb, cplx ea, cplx eb,
                        const cplx* rp) {
  auto anti = [&](double s) {
    const cplx p0 = ((c[3] * s + c[2]) * s + c[1]) * s + c[0];
    const cplx p1 = (3.0 * c[3] * s + 2.0 * c[2]) * s + c[1];
    const cplx p2 = 6.0 * c[3] * s + 2.0 * c[2];
    return p0 * rp[0] - p1 * rp[1] + p2 * rp[2] - 6.0 * c[3] * rp[3];
  };
  return eb * anti(sb) - ea * anti(sa);
}

// Same integral when |tau (sb-sa)| is small: shift to the midpoint and expand
// the exponential; 14 terms reach machine precision for |tau| d <= 0.25.
// mom[k] = 2 d^{k+1} / (k+1) for even k, 0 for odd; e0 = exp(i tau x0).
cplx cubic_osc_taylor(const cplx* cin, double x0, const double* mom, double tau,
                      cplx e0) {
  cplx c[4] = {cin[0], cin[1], cin[2], cin[3]};
  for (int q = 0; q < 4; ++q)
    for (int r = 3; r > q; --r) c[r - 1] += c[r] * x0;
  cplx sum{0.0, 0.0};
  cplx term{1.0, 0.0};  // (i tau)^m / m!
  for (int m = 0; m < 14; ++m) {
    cplx moment = c[0] * mom[m] + c[1] * mom[m + 1] + c[2] * mom[m + 2] +
                  c[3] * mom[m + 3];
    sum += term * moment;
    term *= cplx{0.0, tau} / static_cast<double>(m + 1);
  }
  return e0 * sum;
}

void fill_moments(double d, double* mom) {
  double dk = d;  // d^{k+1}
  for (int k = 0; k < 18; ++k) {
    mom[k] = (k % 2 == 0) ? 2.0 * dk / (k + 1) : 0.0;
    dk *= d;
  }
}

cplx filon_zone_row(const DualZoneGrid& zg, int r, int l, double y) {
  const int np = static_cast<int>(zg.xs.size());
  const double delta = zg.range.length() / np;
  const double tau = y * delta;
  auto v = [&](int p) { return zg.vals[p](r, l - 1); };

  // Interior subintervals cover s in [1, 2] of their sliding cubic, so every
  // per-subinterval phase is fixed and only e^{i y xs[base]} advances (by a
  // constant factor, refreshed periodically against drift).
  const bool by_parts = std::abs(tau) >= 0.5;
  cplx rp[4], e1{0.0, 0.0}, e2{0.0, 0.0};
  double mom_half[18];
  cplx e15{0.0, 0.0};
  if (by_parts) {
    rp[0] = 1.0 / cplx{0.0, tau};
    rp[1] = rp[0] * rp[0];
    rp[2] = rp[1] * rp[0];
    rp[3] = rp[2] * rp[0];
    e1 = std::exp(cplx{0.0, tau});
    e2 = std::exp(cplx{0.0, 2.0 * tau});
  } else {
    fill_moments(0.5, mom_half);
    e15 = std::exp(cplx{0.0, 1.5 * tau});
  }

  const cplx step = std::exp(cplx{0.0, tau});
  cplx phase = std::exp(cplx{0.0, y * zg.xs[0]});
  int base_cur = 0;
  cplx acc{0.0, 0.0};
  for (int p = -1; p <= np - 1; ++p) {
    const int base = std::clamp(p - 1, 0, np - 4);
    while (base_cur < base) {
      ++base_cur;
      phase = (base_cur & 63) ? phase * step
                              : std::exp(cplx{0.0, y * zg.xs[base_cur]});
    }
    const cplx v0 = v(base), v1 = v(base + 1), v2 = v(base + 2), v3 = v(base + 3);
    const cplx c[4] = {
        v0,
        -11.0 / 6.0 * v0 + 3.0 * v1 - 1.5 * v2 + v3 / 3.0,
        v0 - 2.5 * v1 + 2.0 * v2 - 0.5 * v3,
        -v0 / 6.0 + 0.5 * v1 - 0.5 * v2 + v3 / 6.0};
    cplx piece;
    if (p >= 1 && p <= np - 3) {
      piece = by_parts ? cubic_osc_by_parts(c, 1.0, 2.0, e1, e2, rp)
                       : cubic_osc_taylor(c, 1.5, mom_half, tau, e15);
    } else {
      const double xa = (p < 0) ? zg.range.lo : zg.xs[p];
      const double xb = (p == np - 1) ? zg.range.hi : zg.xs[p + 1];
      const double sa = (xa - zg.xs[base]) / delta;
      const double sb = (xb - zg.xs[base]) / delta;
      if (by_parts) {
        piece = cubic_osc_by_parts(c, sa, sb, std::exp(cplx{0.0, tau * sa}),
                                   std::exp(cplx{0.0, tau * sb}), rp);
      } else {
        double mom[18];
        fill_moments(0.5 * (sb - sa), mom);
        piece = cubic_osc_taylor(c, 0.5 * (sa + sb), mom, tau,
                                 std::exp(cplx{0.0, tau * 0.5 * (sa + sb)}));
      }
    }
    acc += delta * phase * piece;
  }
  return acc;
}

}  // namespace

double DualSet::time_value(int l, double y) const {
  if (l < 1 || l > params.length) throw DomainError("dual channel out of range");
  if (kind == Kind::ClosedForm2) {
    const auto [p1, p2] = dual2_time(y, params);
    return l == 1 ? p1 : p2;
  }
  cplx acc{0.0, 0.0};
  for (const DualZoneGrid& zg : zones) {
    for (size_t r = 0; r < zg.rows.size(); ++r) {
      if (static_cast<int>(r) == zg.vanishing) continue;
      const double jh = zg.rows[r] * params.h;
      acc += std::exp(cplx{0.0, y * jh}) *
             filon_zone_row(zg, static_cast<int>(r), l, y);
    }
  }
  return (kInvSqrt2Pi * acc).real();
}

const char* DualSet::path_name() const {
  return kind == Kind::ClosedForm2 ? "closed-form" : "grid-interpolation";
}

}  // namespace bandlim
