#include "bandlim/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bandlim/errors.hpp"

namespace bandlim {

bool is_endpoint(Regime r) {
  return r == Regime::EndpointEven || r == Regime::EndpointOdd;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Even: return "even";
    case Regime::Odd: return "odd";
    case Regime::EndpointEven: return "endpoint-even";
    case Regime::EndpointOdd: return "endpoint-odd";
  }
  return "?";
}

FrameParams compute_params(double omega, double t0, double endpoint_rel_tol) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (!(t0 > 0.0)) throw ConfigError("t0 must be positive");
  FrameParams p;
  p.omega = omega;
  p.t0 = t0;
  p.h = 2.0 * M_PI / t0;
  const double r = omega / p.h;
  const double tol = endpoint_rel_tol * std::max(1.0, r);

  const double rint = std::round(r);
  if (rint >= 1.0 && std::abs(r - rint) <= tol) {
    p.ell = static_cast<int>(rint);
    p.regime = Regime::EndpointEven;
    p.length = 2 * p.ell;
    return p;
  }
  if (r < 0.5 - tol)
    throw ConfigError("t0 exceeds the critical spacing: omega/h = " +
                      std::to_string(r) + " < 1/2, no channel count fits");
  p.ell = static_cast<int>(std::floor(r)) + 1;
  const double half = p.ell - 0.5;
  if (std::abs(r - half) <= tol) {
    p.regime = Regime::EndpointOdd;
    p.length = 2 * p.ell - 1;
  } else if (r > half) {
    p.regime = Regime::Even;
    p.length = 2 * p.ell;
  } else {
    p.regime = Regime::Odd;
    p.length = 2 * p.ell - 1;
  }
  return p;
}

int FrequencyPartition::zone_of(double x) const {
  if (!left.empty() && x < left.hi) return 0;
  if (!middle.empty() && x < middle.hi) return 1;
  return 2;
}

FrequencyPartition partition(const FrameParams& p) {
  const double h = p.h;
  double a, b;
  if (p.regime == Regime::Even || p.regime == Regime::EndpointEven) {
    a = -p.omega + p.ell * h;
    b = p.omega - (p.ell - 1) * h;
  } else {
    a = p.omega - (p.ell - 1) * h;
    b = -p.omega + p.ell * h;
  }
  a = std::clamp(a, 0.0, h);
  b = std::clamp(b, 0.0, h);
  b = std::max(a, b);
  FrequencyPartition part;
  part.left = Interval{0.0, a};
  part.middle = Interval{a, b};
  part.right = Interval{b, h};
  return part;
}

namespace {

// sinc^(k)(u) = (A_k(u) sin u + B_k(u) cos u) / u^(k+1) with integer
// polynomials generated by
//   A_{k+1} = u A_k' - u B_k - (k+1) A_k,
//   B_{k+1} = u B_k' + u A_k - (k+1) B_k,   A_0 = 1, B_0 = 0.
constexpr int kMaxDeriv = 8;

struct SincTables {
  std::array<std::vector<double>, kMaxDeriv + 1> A, B;
  SincTables() {
    A[0] = {1.0};
    B[0] = {0.0};
    for (int k = 0; k < kMaxDeriv; ++k) {
      const size_t n = A[k].size();
      std::vector<double> an(n + 1, 0.0), bn(n + 1, 0.0);
      for (size_t j = 0; j < n + 1; ++j) {
        const double aj = j < n ? A[k][j] : 0.0;
        const double bj = j < n ? B[k][j] : 0.0;
        an[j] = j * aj - (k + 1) * aj - (j >= 1 ? B[k][j - 1] : 0.0);
        bn[j] = j * bj - (k + 1) * bj + (j >= 1 ? A[k][j - 1] : 0.0);
      }
      A[k + 1] = std::move(an);
      B[k + 1] = std::move(bn);
    }
  }
};

const SincTables& sinc_tables() {
  static const SincTables t;
  return t;
}

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

}  // namespace

double sinc_derivative(double u, int k) {
  if (k < 0 || k > kMaxDeriv) throw UnsupportedError("sinc derivative order must be 0..8");
  if (std::abs(u) < 2.0) {
    // Taylor series of sin u / u differentiated term by term; alternating
    // with factorial decay, so no cancellation growth on this range.
    double sum = 0.0;
    for (int m = (k + 1) / 2; m < 40; ++m) {
      double falling = 1.0;
      for (int q = 0; q < k; ++q) falling *= 2.0 * m - q;
      if (falling == 0.0) continue;
      double term = falling * ((m % 2 == 0) ? 1.0 : -1.0);
      // u^(2m-k) / (2m+1)!
      for (int q = 0; q < 2 * m - k; ++q) term *= u;
      for (int q = 2; q <= 2 * m + 1; ++q) term /= q;
      sum += term;
      if (std::abs(term) < 1e-22 * std::max(1.0, std::abs(sum)) && 2 * m > k + 4) break;
    }
    return sum;
  }
  const SincTables& t = sinc_tables();
  const double num =
      horner(t.A[k], u) * std::sin(u) + horner(t.B[k], u) * std::cos(u);
  return num / std::pow(u, k + 1.0);
}

double eval_signal(const Signal& f, double x, int k) {
  if (k < 0 || k > kMaxDeriv) throw DomainError("signal derivative order must be 0..8");
  double sum = 0.0;
  const double wk = std::pow(f.omega, k);
  for (const SincTerm& t : f.terms)
    sum += t.weight * wk * sinc_derivative(f.omega * (x - t.shift), k);
  return sum;
}

}  // namespace bandlim
