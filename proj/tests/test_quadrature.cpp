#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bandlim/errors.hpp"
#include "bandlim/quadrature.hpp"
#include "doctest.h"

using namespace bandlim;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
}

}  // namespace

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(20, x, w);
  REQUIRE(x.size() == 20);

  double total = 0.0;
  for (double wi : w) total += wi;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));

  // Exact for degree <= 2n - 1 = 39.
  for (int k = 2; k <= 38; k += 6) {
    double s = 0.0;
    for (int i = 0; i < 20; ++i) s += w[i] * std::pow(x[i], k);
    CHECK(s == doctest::Approx(2.0 / (k + 1)).epsilon(1e-12));
  }
  double s39 = 0.0;
  for (int i = 0; i < 20; ++i) s39 += w[i] * std::pow(x[i], 39);
  CHECK(std::abs(s39) < 1e-14);
}

TEST_CASE("gauss_legendre 5-point rule matches tabulated values") {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  CHECK(x[4] == doctest::Approx(0.906179845938664).epsilon(1e-14));
  CHECK(x[3] == doctest::Approx(0.538469310105683).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w[4] == doctest::Approx(0.236926885056189).epsilon(1e-13));
  CHECK(w[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-14));
}

TEST_CASE("adaptive integration reproduces closed forms") {
  auto sq = [](double t) { return cplx{t * t, 0.0}; };
  CHECK(integrate(sq, 0.0, 1.0).value.real() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  auto sine = [](double t) { return cplx{std::sin(t), 0.0}; };
  CHECK(integrate(sine, 0.0, M_PI).value.real() ==
        doctest::Approx(2.0).epsilon(1e-13));

  // Oscillatory: int_0^1 exp(50 i t) dt = (exp(50 i) - 1) / (50 i).
  auto osc = [](double t) { return std::exp(cplx{0.0, 50.0 * t}); };
  const cplx expect = (std::exp(cplx{0.0, 50.0}) - 1.0) / cplx{0.0, 50.0};
  const QuadResult res = integrate(osc, 0.0, 1.0);
  CHECK(std::abs(res.value - expect) < 1e-12);
  CHECK(res.converged);
}

TEST_CASE("segmented integration handles kinks and stray breakpoints") {
  auto f = [](double t) { return cplx{std::abs(t), 0.0}; };
  const QuadResult res = integrate_segmented(f, -1.0, 1.0, {0.0, 5.0, -7.0, 0.0});
  CHECK(res.value.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(res.subdivisions == 0);  // each half is smooth
}

TEST_CASE("exhausted subdivision budget raises an accuracy error") {
  auto rough = [](double t) { return cplx{std::sin(1.0 / (t + 1e-4)), 0.0}; };
  QuadOptions opt;
  opt.abs_tol = 1e-14;
  opt.max_subdivisions = 3;
  CHECK_THROWS_AS(integrate(rough, 0.0, 1.0, opt), AccuracyError);
}

TEST_CASE("poly_osc_integral: constant polynomial against the exponential") {
  const std::vector<cplx> one{cplx{1.0, 0.0}};
  for (double tau : {1e-8, 0.3, 2.0, 50.0, -17.0}) {
    // (e^{i tau b} - e^{i tau a}) / (i tau), written via e^{iu} - 1 =
    // -2 sin^2(u/2) + i sin(u) so small tau stays fully accurate.
    const double w = 1.3;
    const double half = std::sin(0.5 * tau * w);
    const cplx diff{-2.0 * half * half, std::sin(tau * w)};
    const cplx expect = std::exp(cplx{0.0, tau * 0.2}) * diff / cplx{0.0, tau};
    CHECK(std::abs(poly_osc_integral(one, 0.2, 1.5, tau) - expect) < 1e-13);
  }
}

TEST_CASE("poly_osc_integral: tau = 0 reduces to the antiderivative") {
  const std::vector<cplx> p{cplx{1.0, -2.0}, cplx{0.0, 3.0}, cplx{2.0, 0.0}};
  const auto anti = [&](double x) {
    return p[0] * x + p[1] * (x * x / 2.0) + p[2] * (x * x * x / 3.0);
  };
  const cplx expect = anti(1.7) - anti(-0.4);
  CHECK(std::abs(poly_osc_integral(p, -0.4, 1.7, 0.0) - expect) < 1e-14);
}

TEST_CASE("poly_osc_integral agrees with adaptive quadrature on both branches") {
  std::mt19937_64 rng(7);
  QuadOptions opt;
  opt.abs_tol = 1e-13;
  for (int rep = 0; rep < 12; ++rep) {
    std::vector<cplx> p(1 + rep % 5);
    for (cplx& c : p) c = {uniform(rng, -2, 2), uniform(rng, -2, 2)};
    const double a = uniform(rng, -1.5, 0.3);
    const double b = a + uniform(rng, 0.2, 2.0);
    const double d = 0.5 * (b - a);
    // Straddle the Taylor/by-parts switch at |tau| d = 0.5, plus extremes.
    for (double tau : {0.0, 0.45 / d, 0.55 / d, 9.0 / d, -123.0}) {
      auto f = [&](double x) {
        cplx v{0.0, 0.0};
        for (size_t q = p.size(); q-- > 0;) v = v * x + p[q];
        return v * std::exp(cplx{0.0, tau * x});
      };
      const cplx slow = integrate(f, a, b, opt).value;
      const cplx fast = poly_osc_integral(p, a, b, tau);
      CHECK(std::abs(slow - fast) < 1e-11);
    }
  }
}

TEST_CASE("poly_osc_integral is linear in the polynomial") {
  const std::vector<cplx> p{cplx{1.0, 0.5}, cplx{-0.3, 0.0}, cplx{0.0, 2.0}};
  const std::vector<cplx> q{cplx{0.2, -1.0}, cplx{1.1, 0.4}};
  std::vector<cplx> sum{p[0] + q[0], p[1] + q[1], p[2]};
  const double tau = 3.7;
  const cplx lhs = poly_osc_integral(sum, -0.3, 1.1, tau);
  const cplx rhs =
      poly_osc_integral(p, -0.3, 1.1, tau) + poly_osc_integral(q, -0.3, 1.1, tau);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("empty or inverted ranges integrate to zero") {
  CHECK(poly_osc_integral({}, 0.0, 1.0, 2.0) == cplx{0.0, 0.0});
  CHECK(poly_osc_integral({cplx{1.0, 0.0}}, 1.0, 1.0, 2.0) == cplx{0.0, 0.0});
  CHECK(poly_osc_integral({cplx{1.0, 0.0}}, 2.0, 1.0, 2.0) == cplx{0.0, 0.0});
}
