#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "horo/barriers.hpp"
#include "horo/error.hpp"
#include "horo/soliton_operator.hpp"

using namespace horo;

TEST_CASE("F and its inverse") {
  CHECK(F_diffeo(1.0) == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-15));
  // F(s) = int_s^inf dt / (t (1 + t^2))
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double s : {0.01, 0.5, 1.0, 7.0}) {
    const double oracle = ts.integrate([](double t) { return 1.0 / (t * (1.0 + t * t)); }, s,
                                       std::numeric_limits<double>::infinity());
    CHECK(F_diffeo(s) == doctest::Approx(oracle).epsilon(1e-12));
  }
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const double s = std::pow(10.0, -4.0 + 8.0 * i / 99.0);
    CHECK(std::abs(F_inverse(F_diffeo(s)) / s - 1.0) < 1e-12);
    CHECK(F_diffeo(s) < prev);
    prev = F_diffeo(s);
  }
  for (double y : {1e-6, 1e-8, 1e-10}) CHECK(F_inverse(y) * std::sqrt(2.0 * y) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("omega tilde") {
  // closed forms: n = 2 gives 2a sqrt(t/a - 1), n = 3 gives a acosh(t/a)
  const OmegaTilde s{0.1, 1.0};
  CHECK(omega_tilde(1.0, s, 2) == 0.0);
  CHECK(omega_tilde(0.1, s, 2) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(omega_tilde(0.4, s, 2) == doctest::Approx(0.6 - 0.2 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(omega_tilde(0.1, s, 3) == doctest::Approx(0.1 * std::acosh(10.0)).epsilon(1e-12));
  double prev = std::numeric_limits<double>::infinity();
  for (int e = 1; e <= 4; ++e) {
    const double a = std::pow(10.0, -e);
    const double v = omega_tilde(a, OmegaTilde{a, 1.0}, 2);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 0.03);
  // convex and decreasing on [a, d]
  const int m = 60;
  std::vector<double> w(m + 1);
  for (int i = 0; i <= m; ++i) w[i] = omega_tilde(0.1 + 0.9 * i / m, s, 3);
  for (int i = 1; i < m; ++i) {
    CHECK(w[i] < w[i - 1]);
    CHECK(w[i + 1] - 2 * w[i] + w[i - 1] >= -1e-12);
  }
  CHECK_THROWS_AS(omega_tilde(0.05, s, 2), Error);
  CHECK_THROWS_AS(omega_tilde(0.5, OmegaTilde{1.0, 0.5}, 2), Error);
}

TEST_CASE("omega with the zeroth-order correction") {
  const OmegaFull s{0.05, 2.0, 0.7};
  const int n = 3;
  CHECK(omega_full(2.0, s, n) == 0.0);
  const double bound = 2.0 * s.d / (n - 1) * f_rhs(s.u_star, n);
  for (int i = 1; i <= 50; ++i) {
    const double r = s.a + (s.d - s.a) * i / 51.0;
    CHECK(omega_full(r, s, n) >= omega_tilde(r, OmegaTilde{s.a, s.d}, n));
    const double h = 1e-5;
    const double slope = (omega_full(r + h, s, n) - omega_full(r - h, s, n)) / (2 * h);
    CHECK(slope < bound);
    CHECK(-slope == doctest::Approx(omega_full_slope(r, s, n)).epsilon(1e-6));
  }
}

TEST_CASE("lema2 barrier") {
  const Lema2Omega s{2.0, 0.01, 0.5};
  CHECK(lema2_barrier(0.5, s).value == 0.0);
  // int_0^x F^{-1}(theta s) ds = atan(sqrt(e^{2 theta x} - 1)) / theta
  auto closed = [](double th, double x) { return std::atan(std::sqrt(std::expm1(2 * th * x))) / th; };
  const auto v = lema2_barrier(0.2, s);
  CHECK(v.limit == doctest::Approx(closed(2.0, 0.5)).epsilon(1e-12));
  CHECK(v.value == doctest::Approx(closed(2.0, 0.49) - closed(2.0, 0.19)).epsilon(1e-12));
  CHECK(lema2_barrier(0.01, s).value == doctest::Approx(closed(2.0, 0.49)).epsilon(1e-12));
  for (int i = 1; i < 20; ++i) {
    const double r = 0.01 + 0.49 * i / 20.0, h = 1e-6;
    const double slope = -(lema2_barrier(r + h, s).value - lema2_barrier(r - h, s).value) / (2 * h);
    CHECK(slope >= F_inverse(s.theta * s.a0) * (1 - 1e-8));
  }
  CHECK_THROWS_AS(lema2_barrier(0.0, s), Error);
}

TEST_CASE("non-existence bound") {
  CHECK(nonexistence_bound(0.0, 1.0, 2, 1.0) == 25.0);
  CHECK(nonexistence_bound(0.5, 1.0, 2, 1.0) - nonexistence_bound(0.25, 1.0, 2, 1.0) == doctest::Approx(0.5));
  double prev = 0.0;
  for (double c0 : {1e-1, 1e-2, 1e-3}) {
    const double b = nonexistence_bound(0.0, 1.0, 2, c0);
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("collar barrier") {
  const CollarBounds b{2.0, 1.0, 3.0, 3.0};
  const Collar c = collar_barrier_params(2.0, b, 0.25);
  CHECK(collar_psi(c, 0.0) == 0.0);
  CHECK(collar_psi_prime(c, 0.0) == doctest::Approx(c.mu * c.kpar));
  CHECK(c.kpar > 16.0);
  CHECK(c.l == doctest::Approx(1.0 / std::sqrt(c.kpar)));
  // the verified inequality holds on the whole collar
  const double C = b.C2 + b.C_phi;
  for (int i = 0; i <= 100; ++i) {
    const double p = collar_psi_prime(c, c.l * i / 100.0);
    CHECK((-1.0 / c.mu + C) * p * p + b.C3 * p + C * b.C1 < 0.0);
  }
  // mu -> 0 as k grows with B2 fixed
  CHECK(2.0 / std::log1p(std::sqrt(1e12)) < 2.0 / std::log1p(std::sqrt(1e6)));
  CHECK_THROWS_AS(collar_barrier_params(2.0, CollarBounds{1.0, 1e200, 1.0, 1.0}, 0.25), Error);
  try {
    collar_barrier_params(2.0, CollarBounds{1.0, 1e200, 1.0, 1.0}, 0.25);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchExhausted);
  }
}

TEST_CASE("collar barrier is a supersolution on a disk") {
  const DiskData disk{1.0, [](double t) { return 1.0 + 0.2 * std::cos(t); }};
  const double rho = 0.25;
  const CollarBounds b = sample_collar_bounds(disk, rho);
  CHECK(b.C_phi == doctest::Approx(-f_rhs(0.8, 2)).epsilon(1e-12));
  const Collar c = collar_barrier_params(2.0, b, rho);
  const auto chk = collar_residual(c, disk);
  CHECK(chk.negative);
  CHECK(chk.samples == 32 * 64);
}

TEST_CASE("barrier sampling") {
  const auto u = sample_barrier(Constant{2.0}, DomainSpec::interval(0.0, 1.0, 9));
  for (double v : u.values) CHECK(v == 2.0);
  const auto cap = sample_barrier(SphericalCap{{0.0, 0.0}, 2.0}, DomainSpec::ball(1.0, 9));
  CHECK(cap.values[0] == 2.0);
  CHECK_THROWS_AS(sample_barrier(SphericalCap{{}, -1.0}, DomainSpec::ball(1.0, 9)), Error);
  CHECK_THROWS_AS(validate(BarrierSpec{Collar{1.0, 4.0, 0.6, {}}}), Error);
}
