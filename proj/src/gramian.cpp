#include "bandlim/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "bandlim/derivative_frames.hpp"
#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

constexpr int kMaxViolations = 64;

// Translate rows for a zone, plus which translate vanishes there (the one
// whose shifted band copy misses the zone). INT_MIN marks "none".
void zone_rows(const FrameParams& p, int zone, std::vector<int>& rows,
               int& vanishing_translate) {
  rows.clear();
  vanishing_translate = std::numeric_limits<int>::min();
  const int ell = p.ell;
  const bool even = (p.regime == Regime::Even || p.regime == Regime::EndpointEven);
  if (even) {
    for (int j = -ell; j <= ell - 1; ++j) rows.push_back(j);
    if (p.regime == Regime::Even) {
      if (zone == 0) vanishing_translate = -ell;
      if (zone == 2) vanishing_translate = ell - 1;
    }
    return;
  }
  if (zone == 2) {
    for (int j = -ell; j <= ell - 2; ++j) rows.push_back(j);
  } else {
    for (int j = -(ell - 1); j <= ell - 1; ++j) rows.push_back(j);
    if (zone == 1 && p.regime == Regime::Odd) vanishing_translate = ell - 1;
  }
}

bool zone_deficient(const FrameParams& p, int zone) {
  std::vector<int> rows;
  int v;
  zone_rows(p, zone, rows, v);
  return v != std::numeric_limits<int>::min();
}

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Determinant of a small matrix of polynomials by cofactor expansion.
Poly poly_det(const std::vector<std::vector<Poly>>& m) {
  const size_t n = m.size();
  if (n == 0) return Poly{cplx{1.0, 0.0}};
  if (n == 1) return m[0][0];
  Poly acc;
  for (size_t k = 0; k < n; ++k) {
    std::vector<std::vector<Poly>> sub;
    sub.reserve(n - 1);
    for (size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      row.reserve(n - 1);
      for (size_t c = 0; c < n; ++c)
        if (c != k) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    Poly term = poly_mul(m[0][k], poly_det(sub));
    if (k % 2 == 1) term = poly_scale(term, cplx{-1.0, 0.0});
    acc = poly_add(acc, term);
  }
  return acc;
}

}  // namespace

cplx GeneratorSet::hat(int l, double xi) const {
  if (l < 1 || l > length()) throw DomainError("generator index out of range");
  return gens[l - 1].eval(xi);
}

PreGramianSlice pre_gramian_at(const GeneratorSet& g, const FrameParams& p, double x) {
  if (!(x >= 0.0 && x < p.h))
    throw DomainError("frequency " + std::to_string(x) +
                      " outside the fundamental cell [0, " + std::to_string(p.h) + ")");
  if (g.length() != p.length)
    throw ConfigError("generator count " + std::to_string(g.length()) +
                      " does not match channel count " + std::to_string(p.length));

  PreGramianSlice s;
  s.x = x;
  const FrequencyPartition part = partition(p);
  s.zone = part.zone_of(x);

  int vanish_translate;
  zone_rows(p, s.zone, s.rows, vanish_translate);
  const int L = p.length;
  const int nr = static_cast<int>(s.rows.size());
  const double sqh = std::sqrt(p.h);

  s.full = Eigen::MatrixXcd::Zero(nr, L);
  for (int r = 0; r < nr; ++r) {
    const double xi = x + s.rows[r] * p.h;
    for (int l = 1; l <= L; ++l) s.full(r, l - 1) = sqh * g.hat(l, xi);
    if (s.rows[r] == vanish_translate) s.vanishing = r;
  }

  if (s.vanishing >= 0) {
    s.reduced = Eigen::MatrixXcd::Zero(nr - 1, L);
    int rr = 0;
    for (int r = 0; r < nr; ++r)
      if (r != s.vanishing) s.reduced.row(rr++) = s.full.row(r);
  } else {
    s.reduced = s.full;
  }
  return s;
}

double minor_energy(const Eigen::MatrixXcd& m, int n) {
  if (n == 0) return 1.0;
  const int nr = static_cast<int>(m.rows());
  const int nc = static_cast<int>(m.cols());
  if (n > nr || n > nc) return 0.0;
  double sum = 0.0;
  combinations(nr, n, [&](const std::vector<int>& ri) {
    combinations(nc, n, [&](const std::vector<int>& ci) {
      Eigen::MatrixXcd sub(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sub(a, b) = m(ri[a], ci[b]);
      const cplx d = sub.determinant();
      sum += std::norm(d);
    });
  });
  return sum;
}

Eigen::VectorXcd cross_vector(const Eigen::MatrixXcd& reduced, double h) {
  const int L = static_cast<int>(reduced.cols());
  if (reduced.rows() != L - 1)
    throw DomainError("cross vector needs an (L-1) x L matrix");
  const Eigen::MatrixXcd m = reduced / std::sqrt(h);
  Eigen::VectorXcd w(L);
  for (int k = 0; k < L; ++k) {
    Eigen::MatrixXcd sub(L - 1, L - 1);
    int cc = 0;
    for (int c = 0; c < L; ++c) {
      if (c == k) continue;
      sub.col(cc++) = m.col(c);
    }
    const cplx d = (L == 1) ? cplx{1.0, 0.0} : sub.determinant();
    w(k) = (k % 2 == 0) ? d : -d;
  }
  return w;
}

std::vector<Poly> cross_vector_symbolic(const GeneratorSet& g, const FrameParams& p,
                                        int zone) {
  if (!g.polynomial_band)
    throw UnsupportedError("symbolic kernel vector needs polynomial generators");
  if (!zone_deficient(p, zone))
    throw DomainError("zone " + std::to_string(zone) + " has no vanishing row");
  std::vector<int> rows;
  int vanish;
  zone_rows(p, zone, rows, vanish);

  const int L = p.length;
  std::vector<std::vector<Poly>> m;
  for (int j : rows) {
    if (j == vanish) continue;
    std::vector<Poly> row;
    for (int l = 0; l < L; ++l)
      row.push_back(poly_shift(g.gens[l].pieces.front().coef, j * p.h));
    m.push_back(std::move(row));
  }

  std::vector<Poly> w(L);
  for (int k = 0; k < L; ++k) {
    std::vector<std::vector<Poly>> sub;
    for (const auto& row : m) {
      std::vector<Poly> r;
      for (int c = 0; c < L; ++c)
        if (c != k) r.push_back(row[c]);
      sub.push_back(std::move(r));
    }
    Poly d = poly_det(sub);
    if (k % 2 == 1) d = poly_scale(d, cplx{-1.0, 0.0});
    w[k] = std::move(d);
  }
  return w;
}

FrameReport verify_frame(const GeneratorSet& g, const FrameParams& p,
                         double grid_density) {
  const FrequencyPartition part = partition(p);
  if (grid_density <= 0.0) {
    double smallest = p.h;
    for (const Interval* z : {&part.left, &part.middle, &part.right})
      if (!z->empty()) smallest = std::min(smallest, z->length());
    grid_density = 4096.0 / smallest;
  }

  FrameReport rep;
  rep.grid_density = grid_density;

  auto grid = [&](const Interval& z) {
    const int n = std::max(64, static_cast<int>(std::ceil(grid_density * z.length())));
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = z.lo + (i + 0.5) * z.length() / n;
    return xs;
  };

  struct Scan {
    double mn = std::numeric_limits<double>::infinity();
    double mx = 0.0;
    std::vector<std::pair<double, double>> samples;  // (x, value)
    void add(double x, double v) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      samples.emplace_back(x, v);
    }
    bool pass() const { return mx > 0.0 && mn > 1e-10 * mx; }
  };

  auto record = [&](const Scan& s, const char* cond) {
    if (s.pass()) return true;
    const double thr = 1e-10 * s.mx;
    for (const auto& [x, v] : s.samples) {
      if (v <= thr && static_cast<int>(rep.violations.size()) < kMaxViolations)
        rep.violations.push_back(FrameViolation{x, cond});
    }
    return false;
  };

  // Condition 1: generator energy bounded above and away from zero on the band.
  Scan energy;
  {
    const Interval band{-p.omega, p.omega};
    for (double xi : grid(band)) {
      double s = 0.0;
      for (int l = 1; l <= p.length; ++l) s += std::norm(g.hat(l, xi));
      energy.add(xi, s);
    }
  }
  rep.delta = energy.mn;
  rep.gamma = energy.mx;
  const bool c1 = record(energy, "generator-energy");

  // Conditions 2 and 3 over the fundamental cell zones.
  Scan minor, det;
  bool have_deficient = false, have_invertible = false;
  const Interval* zones[3] = {&part.left, &part.middle, &part.right};
  for (int z = 0; z < 3; ++z) {
    if (zones[z]->empty()) continue;
    const bool deficient = zone_deficient(p, z);
    for (double x : grid(*zones[z])) {
      const PreGramianSlice s = pre_gramian_at(g, p, x);
      if (deficient) {
        minor.add(x, minor_energy(s.reduced, p.length - 1));
      } else {
        det.add(x, std::abs(s.full.determinant()));
      }
    }
    (deficient ? have_deficient : have_invertible) = true;
  }
  rep.sigma = have_deficient ? minor.mn : 0.0;
  rep.eta = have_invertible ? det.mn : 0.0;
  const bool c2 = !have_deficient || record(minor, "minor-energy");
  const bool c3 = !have_invertible || record(det, "determinant");

  rep.is_frame = c1 && c2 && c3;
  rep.is_riesz = rep.is_frame && is_endpoint(p.regime);
  return rep;
}

Eigen::MatrixXcd mixed_gramian_at(const GeneratorSet& g, const DualSet& duals,
                                  const FrameParams& p, double x) {
  const int L = p.length;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(L, L);
  const int k_lo = static_cast<int>(std::ceil((-p.omega - x) / p.h - 1e-12));
  const int k_hi = static_cast<int>(std::floor((p.omega - x) / p.h + 1e-12));
  for (int k = k_lo; k <= k_hi; ++k) {
    const double xi = x + k * p.h;
    if (std::abs(xi) > p.omega) continue;
    for (int l = 1; l <= L; ++l) {
      const cplx dv = duals.hat(l, xi);
      if (dv == cplx{0.0, 0.0}) continue;
      for (int j = 1; j <= L; ++j)
        G(j - 1, l - 1) += p.h * dv * std::conj(g.hat(j, xi));
    }
  }
  return G;
}

}  // namespace bandlim
