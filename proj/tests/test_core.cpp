#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "bandlim/core.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "doctest.h"

using namespace bandlim;

namespace {

const double kPi = 3.14159265358979323846;

// Independent route: sinc(u) = int_0^1 cos(u v) dv, so the k-th derivative
// is int_0^1 v^k cos(u v + k pi/2) dv.
double sinc_derivative_oracle(double u, int k) {
  QuadOptions opt;
  opt.abs_tol = 1e-13;
  auto f = [&](double v) {
    return cplx{std::pow(v, k) * std::cos(u * v + k * kPi / 2.0), 0.0};
  };
  return integrate(f, 0.0, 1.0, opt).value.real();
}

Signal two_sinc_signal() {
  Signal f;
  f.omega = kPi;
  f.terms = {{1.0, 2.1}, {-0.7, -1.7}};
  return f;
}

}  // namespace

TEST_CASE("classification: two channels at h = 1.6 omega") {
  const FrameParams p = compute_params(kPi, 1.25);
  CHECK(p.h == doctest::Approx(1.6 * kPi).epsilon(1e-15));
  CHECK(p.ell == 1);
  CHECK(p.length == 2);
  CHECK(p.regime == Regime::Even);
  CHECK_FALSE(is_endpoint(p.regime));
}

TEST_CASE("classification: three channels at h = 0.8 omega") {
  const FrameParams p = compute_params(kPi, 2.5);
  CHECK(p.h == doctest::Approx(0.8 * kPi).epsilon(1e-15));
  CHECK(p.ell == 2);
  CHECK(p.length == 3);
  CHECK(p.regime == Regime::Odd);
}

TEST_CASE("classification: endpoints at h = 2 omega / L") {
  const FrameParams even = compute_params(kPi, 2.0);  // h = omega
  CHECK(even.regime == Regime::EndpointEven);
  CHECK(even.ell == 1);
  CHECK(even.length == 2);
  CHECK(is_endpoint(even.regime));

  const FrameParams odd = compute_params(kPi, 3.0);  // h = 2 omega / 3
  CHECK(odd.regime == Regime::EndpointOdd);
  CHECK(odd.ell == 2);
  CHECK(odd.length == 3);

  const FrameParams one = compute_params(kPi, 1.0);  // h = 2 omega, L = 1
  CHECK(one.regime == Regime::EndpointOdd);
  CHECK(one.ell == 1);
  CHECK(one.length == 1);
}

TEST_CASE("classification rejects unusable geometries") {
  CHECK_THROWS_AS(compute_params(kPi, 0.8), ConfigError);   // h = 2.5 omega
  CHECK_THROWS_AS(compute_params(kPi, 0.99), ConfigError);  // just undersampled
  CHECK_THROWS_AS(compute_params(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(compute_params(-1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(compute_params(kPi, 0.0), ConfigError);
  CHECK_THROWS_AS(compute_params(kPi, -2.0), ConfigError);
}

TEST_CASE("endpoint snapping honors the relative tolerance") {
  const double t0 = 2.0;  // exact even endpoint at omega = pi
  CHECK(compute_params(kPi * (1.0 + 1e-13), t0).regime == Regime::EndpointEven);
  const FrameParams off = compute_params(kPi * (1.0 + 1e-9), t0);
  CHECK(off.regime == Regime::Odd);  // ratio just above 1: three channels
  CHECK(off.length == 3);
  CHECK(compute_params(kPi * (1.0 + 1e-9), t0, 1e-8).regime ==
        Regime::EndpointEven);
}

TEST_CASE("classification is stable under last-bit perturbations") {
  for (double t0 : {1.25, 2.5, 1.7, 3.9}) {
    const FrameParams base = compute_params(kPi, t0);
    for (double eps : {-1e-15, 1e-15}) {
      const FrameParams p = compute_params(kPi * (1.0 + eps), t0);
      CHECK(p.length == base.length);
      CHECK(p.regime == base.regime);
    }
  }
}

TEST_CASE("partition: even regime splits at -omega + h and omega") {
  const FrameParams p = compute_params(kPi, 1.25);  // h = 1.6 pi
  const FrequencyPartition part = partition(p);
  CHECK(part.left.lo == doctest::Approx(0.0));
  CHECK(part.left.hi == doctest::Approx(0.6 * kPi).epsilon(1e-14));
  CHECK(part.middle.hi == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(part.right.hi == doctest::Approx(1.6 * kPi).epsilon(1e-14));
  CHECK(part.zone_of(0.3 * kPi) == 0);
  CHECK(part.zone_of(0.8 * kPi) == 1);
  CHECK(part.zone_of(1.2 * kPi) == 2);
}

TEST_CASE("partition: odd regime splits at omega - h and -omega + 2h") {
  const FrameParams p = compute_params(kPi, 2.5);  // h = 0.8 pi
  const FrequencyPartition part = partition(p);
  CHECK(part.left.hi == doctest::Approx(0.2 * kPi).epsilon(1e-14));
  CHECK(part.middle.hi == doctest::Approx(0.6 * kPi).epsilon(1e-14));
  CHECK(part.right.hi == doctest::Approx(0.8 * kPi).epsilon(1e-14));
  CHECK(part.zone_of(0.1 * kPi) == 0);
  CHECK(part.zone_of(0.4 * kPi) == 1);
  CHECK(part.zone_of(0.7 * kPi) == 2);
}

TEST_CASE("partition: endpoint leaves only the middle zone") {
  const FrameParams p = compute_params(kPi, 2.0);  // h = omega
  const FrequencyPartition part = partition(p);
  CHECK(part.left.empty());
  CHECK(part.right.empty());
  CHECK(part.middle.lo == doctest::Approx(0.0));
  CHECK(part.middle.hi == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("sinc derivatives match the integral representation") {
  for (int k = 0; k <= 8; ++k)
    for (double u : {0.0, 0.3, -0.3, 1.9999, 2.0001, 3.7, -3.7, 10.5, -25.0}) {
      const double expect = sinc_derivative_oracle(u, k);
      CHECK_MESSAGE(std::abs(sinc_derivative(u, k) - expect) < 1e-10,
                    "k=" << k << " u=" << u);
    }
}

TEST_CASE("sinc derivative basics") {
  CHECK(sinc_derivative(0.0, 0) == doctest::Approx(1.0));
  CHECK(sinc_derivative(2.0, 0) ==
        doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
  CHECK(sinc_derivative(1e-9, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sinc_derivative(0.0, 1) == doctest::Approx(0.0));
  // Odd function: even derivatives even, odd derivatives odd.
  for (int k = 0; k <= 8; ++k) {
    const double a = sinc_derivative(1.3, k);
    const double b = sinc_derivative(-1.3, k);
    CHECK(a == doctest::Approx(k % 2 == 0 ? b : -b).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sinc_derivative(1.0, 9), UnsupportedError);
  CHECK_THROWS_AS(sinc_derivative(1.0, -1), UnsupportedError);
}

TEST_CASE("signal evaluation at a kernel center") {
  const Signal f = two_sinc_signal();
  // At x = 2.1 the first kernel peaks and the second contributes
  // -0.7 sinc(3.8 pi), which is positive because sin(3.8 pi) < 0.
  const double cross = std::sin(3.8 * kPi) / (3.8 * kPi);
  const double expect = 1.0 - 0.7 * cross;
  CHECK(expect > 1.0);
  CHECK(eval_signal(f, 2.1) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(eval_signal(f, 2.1) == doctest::Approx(1.0344653946658973).epsilon(1e-12));
}

TEST_CASE("signal derivatives agree with finite differences") {
  const Signal f = two_sinc_signal();
  const double d = 1e-5;
  for (double x : {0.0, 0.8, -2.6, 4.1}) {
    const double fd1 = (eval_signal(f, x + d) - eval_signal(f, x - d)) / (2 * d);
    CHECK(eval_signal(f, x, 1) == doctest::Approx(fd1).epsilon(1e-7));
    const double fd2 = (eval_signal(f, x + d, 1) - eval_signal(f, x - d, 1)) / (2 * d);
    CHECK(eval_signal(f, x, 2) == doctest::Approx(fd2).epsilon(1e-7));
  }
}
