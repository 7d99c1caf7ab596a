#pragma once

#include <complex>
#include <vector>

namespace bandlim {

using cplx = std::complex<double>;

// Dense complex polynomial, lowest coefficient first.
using Poly = std::vector<cplx>;

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, cplx s);
// Coefficients of p(x + s).
Poly poly_shift(const Poly& p, double s);
cplx poly_eval(const Poly& p, cplx x);
// Degree with coefficients below tol treated as zero; -1 for the zero polynomial.
int poly_degree(const Poly& p, double tol = 0.0);

// Complex-valued piecewise polynomial on the real line, zero outside its
// pieces. Pieces are disjoint and ascending; each is half-open [lo, hi)
// except the last, which is closed so the overall support is closed.
struct PolyPiece {
  double lo = 0.0, hi = 0.0;
  Poly coef;
};

struct PiecewisePoly {
  std::vector<PolyPiece> pieces;
  cplx eval(double x) const;
  double support_lo() const;
  double support_hi() const;
};

}  // namespace bandlim
