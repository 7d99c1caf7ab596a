#include "bandlim/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace bandlim {

Poly poly_add(const Poly& p, const Poly& q) {
  Poly r(std::max(p.size(), q.size()), cplx{0.0, 0.0});
  for (size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (size_t i = 0; i < q.size(); ++i) r[i] += q[i];
  return r;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.empty() || q.empty()) return {};
  Poly r(p.size() + q.size() - 1, cplx{0.0, 0.0});
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

Poly poly_scale(const Poly& p, cplx s) {
  Poly r = p;
  for (cplx& c : r) c *= s;
  return r;
}

Poly poly_shift(const Poly& p, double s) {
  // Taylor shift by synthetic division: result[q] = p^(q)(s)/q!.
  Poly r = p;
  for (size_t q = 0; q < r.size(); ++q)
    for (size_t k = r.size() - 1; k > q; --k) r[k - 1] += r[k] * s;
  return r;
}

cplx poly_eval(const Poly& p, cplx x) {
  cplx v{0.0, 0.0};
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

int poly_degree(const Poly& p, double tol) {
  for (size_t i = p.size(); i-- > 0;)
    if (std::abs(p[i]) > tol) return static_cast<int>(i);
  return -1;
}

cplx PiecewisePoly::eval(double x) const {
  for (size_t i = 0; i < pieces.size(); ++i) {
    const PolyPiece& pc = pieces[i];
    const bool last = (i + 1 == pieces.size());
    if (x >= pc.lo && (x < pc.hi || (last && x <= pc.hi)))
      return poly_eval(pc.coef, cplx{x, 0.0});
  }
  return {0.0, 0.0};
}

double PiecewisePoly::support_lo() const {
  return pieces.empty() ? 0.0 : pieces.front().lo;
}

double PiecewisePoly::support_hi() const {
  return pieces.empty() ? 0.0 : pieces.back().hi;
}

}  // namespace bandlim
