#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace bandlim {

using cplx = std::complex<double>;

struct QuadOptions {
  double abs_tol = 1e-10;
  int max_subdivisions = 4000;
};

struct QuadResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]. Throws AccuracyError when the
// subdivision budget is exhausted before reaching abs_tol.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// Same, but subdivides first at the given interior breakpoints, so piecewise
// integrands converge on each smooth piece independently.
QuadResult integrate_segmented(const std::function<cplx(double)>& f, double a,
                               double b, const std::vector<double>& breakpoints,
                               const QuadOptions& opt = {});

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration.
// Deterministic; accurate to machine precision for n up to a few thousand.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Integral of p(x) * exp(i tau x) over [a, b] where p has complex
// coefficients, lowest order first. Uses integration by parts for
// |tau (b-a)| away from zero and a Taylor expansion of the exponential
// otherwise, so it is stable for every tau.
cplx poly_osc_integral(const std::vector<cplx>& coef, double a, double b, double tau);

}  // namespace bandlim
