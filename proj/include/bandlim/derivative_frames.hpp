#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "bandlim/core.hpp"
#include "bandlim/gramian.hpp"
#include "bandlim/quadrature.hpp"

namespace bandlim {

// Spectra (i xi)^(l-1) on [-omega, omega] for l = 1..L: the channels sample a
// function and its first L-1 derivatives.
GeneratorSet derivative_generators(int L, double omega);

// Determinant of the n x n matrix with rows (i(x + j h))^q, j = 1..n, over
// powers q = 0..n with power r removed (0 <= r <= n). Closed form: the
// elementary symmetric polynomial e_{n-r} of the nodes times the Vandermonde
// product, so no numerical determinant is involved.
cplx vandermonde_minor_det(int n, int r, double x, double h);

// Integrals over [-H, H] against the Cauchy weight, used by the two-channel
// closed-form duals:
//   rational_cos_integral(H, tau) = integral of cos(tau x) / (1 + x^2),
//   rational_sin_integral(H, tau) = integral of x sin(tau x) / (1 + x^2).
// Adaptive quadrature for |tau| < 60; for larger |tau| the residue value of
// the full-line integral minus an asymptotic tail expansion, accurate to
// machine precision there. Both paths agree near the switch.
double rational_cos_integral(double H, double tau, const QuadOptions& opt = {});
double rational_sin_integral(double H, double tau, const QuadOptions& opt = {});

// Closed-form duals for L = 2 (throws UnsupportedError otherwise).
// Frequency domain at xi; components for channels 1 and 2.
std::pair<cplx, cplx> dual2_fourier(double xi, const FrameParams& p);
// Time domain at y; the oscillatory pieces reduce to explicit sinc and
// cosine-difference terms plus the rational integrals above.
std::pair<double, double> dual2_time(double y, const FrameParams& p,
                                     const QuadOptions& opt = {});

// Dual system evaluated on per-zone frequency grids, or the L = 2 closed
// form. Frequency values are exact (closed form, or a fresh least-squares
// solve of the adjoint pre-Gramian at the query frequency); the stored grid
// feeds the time-domain path and the CSV output.
struct DualZoneGrid {
  int zone = -1;
  Interval range;
  std::vector<int> rows;     // translate indices
  int vanishing = -1;        // position in rows, or -1
  std::vector<double> xs;    // midpoint grid, boundaries never sampled
  // vals[p](r, l-1) = dual_l(xs[p] + rows[r] * h)
  std::vector<Eigen::MatrixXcd> vals;
};

struct DualSet {
  enum class Kind { ClosedForm2, NumericGrid };
  Kind kind = Kind::NumericGrid;
  FrameParams params;
  GeneratorSet gens;
  std::vector<DualZoneGrid> zones;   // NumericGrid only
  double max_condition = 0.0;        // largest solve condition number seen
  double condition_limit = 1e12;

  // Frequency-domain dual of channel l at xi (zero outside the band).
  cplx hat(int l, double xi) const;
  // Time-domain dual of channel l at y. Closed form for two channels;
  // otherwise each stored grid segment is integrated against exp(i xi y)
  // through a local cubic model, so the accuracy is set by the grid step
  // and does not degrade with |y|.
  double time_value(int l, double y) const;
  const char* path_name() const;
};

// Closed-form dual set; requires L = 2.
DualSet closed_form_duals(const FrameParams& p);

// Grid duals for any channel count. points_per_zone >= 64. Throws
// IllConditionedError naming the frequency if a solve exceeds cond_limit.
DualSet numeric_duals(const GeneratorSet& g, const FrameParams& p,
                      int points_per_zone, double cond_limit = 1e12);

// One dual solve at reduced frequency x in [0, h); rows follow the zone's
// translate order and the vanishing row (if any) is identically zero.
struct DualSlice {
  std::vector<int> rows;
  int vanishing = -1;
  Eigen::MatrixXcd vals;  // rows x L
  double cond = 0.0;
  int zone = -1;
};
DualSlice solve_dual_slice(const GeneratorSet& g, const FrameParams& p, double x,
                           double cond_limit = 1e12);

}  // namespace bandlim
