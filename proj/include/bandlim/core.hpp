#pragma once

#include <string>
#include <vector>

namespace bandlim {

// Regime of the sampling geometry: h = 2*pi/t0 measured against the band
// radius omega. "Even" means an even channel count L = 2*ell, "Odd" means
// L = 2*ell - 1. The two endpoint regimes sit at h = omega/ell and
// h = omega/(ell - 1/2), both equal to 2*omega/L, where the derivative
// system becomes a Riesz basis and no sample is redundant.
enum class Regime { Even, Odd, EndpointEven, EndpointOdd };

struct FrameParams {
  double omega = 0.0;  // band radius: spectra live on [-omega, omega]
  double t0 = 0.0;     // sample spacing in time
  double h = 0.0;      // frequency step 2*pi/t0
  int ell = 0;         // translate half-count
  int length = 0;      // channel count L
  Regime regime = Regime::Even;
};

bool is_endpoint(Regime r);
std::string regime_name(Regime r);

// Classifies (omega, t0). The ratio omega/h determines ell through the
// strict-floor rule: ell = floor(omega/h) + 1 away from integers, and
// ell = omega/h when the ratio is an integer (within endpoint_rel_tol, in
// which case the geometry is the even endpoint). Throws ConfigError for
// non-positive inputs or h > 2*omega (undersampling: no channel count fits).
FrameParams compute_params(double omega, double t0, double endpoint_rel_tol = 1e-12);

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool empty() const { return hi <= lo; }
  double length() const { return empty() ? 0.0 : hi - lo; }
  bool contains(double x) const { return x >= lo && x < hi; }
};

// The fundamental cell [0, h) splits into three zones. On the middle zone
// the pre-Gramian is square and invertible in the even regime; in the odd
// regime the roles flip: the outer zones are invertible and the middle zone
// loses one translate. Empty zones are collapsed intervals.
struct FrequencyPartition {
  Interval left, middle, right;
  // Zone ids: 0 left, 1 middle, 2 right.
  int zone_of(double x) const;
};

FrequencyPartition partition(const FrameParams& p);

// Finite combination of shifted sinc kernels, band limited to [-omega, omega]:
//   f(x) = sum_i weight_i * sinc(omega * (x - shift_i)),  sinc(u) = sin(u)/u.
struct SincTerm {
  double weight = 0.0;
  double shift = 0.0;
};

struct Signal {
  double omega = 0.0;
  std::vector<SincTerm> terms;
};

// k-th derivative of sinc at u; exact closed forms, k up to 8.
double sinc_derivative(double u, int k);

// k-th derivative of the signal at x (k = 0 is the value).
double eval_signal(const Signal& f, double x, int k = 0);

}  // namespace bandlim
