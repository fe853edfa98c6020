#include <cmath>
#include <random>

#include "doctest.h"
#include "horo/error.hpp"
#include "horo/geometry.hpp"

using namespace horo;

namespace {

// Sectional curvature of e^{2 phi} (Euclidean) for orthonormal X = sin t e0 + cos t e1,
// Y = e2, with phi(z) = 1/(k z) - log z differentiated numerically.
double curvature_oracle(double z, double k, double theta) {
  auto phi = [k](double x) { return 1.0 / (k * x) - std::log(x); };
  const double h = 1e-4 * z;
  const double d1 = (phi(z + h) - phi(z - h)) / (2 * h);
  const double d2 = (phi(z + h) - 2 * phi(z) + phi(z - h)) / (h * h);
  const double s = std::sin(theta);
  // Hess(X,X) + Hess(Y,Y) - (X phi)^2 - (Y phi)^2 + |D phi|^2
  const double bracket = s * s * d2 + 0.0 - s * s * d1 * d1 - 0.0 + d1 * d1;
  return -std::exp(-2 * phi(z)) * bracket;
}

}  // namespace

TEST_CASE("soliton params and points enforce their invariants") {
  CHECK_THROWS_AS(SolitonParams(1), Error);
  CHECK_THROWS_AS(SolitonParams(3, 4), Error);
  CHECK_THROWS_AS(SolitonParams(3, 1), Error);
  CHECK(SolitonParams(3).k == 3);
  CHECK_THROWS_AS(Point(0.0, {0.0, 0.0}, SolitonParams(2)), Error);
  CHECK_THROWS_AS(Point(1.0, {0.0}, SolitonParams(2)), Error);
}

TEST_CASE("conformal factor") {
  CHECK(conformal_factor(1.0, 1.0, Base::Hyperbolic) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(conformal_factor(1e12, 2.0, Base::Hyperbolic) == doctest::Approx(1.0).epsilon(1e-11));
  Point p(0.5, {0.0, 0.0}, SolitonParams(2));
  CHECK(conformal_factor(p, SolitonParams(2), Base::Euclidean) ==
        doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("sectional curvature closed forms") {
  const SolitonParams p(2);
  CHECK(sectional_curvature_axis(1.0, p, Plane::VerticalPair) ==
        doctest::Approx(-2.0 / std::exp(1.0)).epsilon(1e-14));
  // approaches 0 from below as x0 -> 0
  double prev = -1e300;
  for (int e = 1; e <= 6; ++e) {
    const double v = sectional_curvature_axis(std::pow(10.0, -e), p, Plane::VerticalPair);
    CHECK(v <= 0.0);
    CHECK(v >= prev);
    if (e <= 2) CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > -1e-100);
  // diverges like -x0 for the horizontal pair
  const double big = sectional_curvature_axis(1e6, p, Plane::HorizontalPair);
  CHECK(big / 1e6 == doctest::Approx(-1.0).epsilon(1e-5));
  const double mixed = sectional_curvature_mixed(1.0, p, M_PI / 4);
  CHECK(mixed == doctest::Approx(-7.0 / (4.0 * std::exp(1.0))).epsilon(1e-14));
  CHECK(sectional_curvature_mixed(1.0, p, M_PI / 2) ==
        doctest::Approx(sectional_curvature_axis(1.0, p, Plane::VerticalPair)).epsilon(1e-15));
  CHECK(sectional_curvature_mixed(1.0, p, 1e-9) ==
        doctest::Approx(sectional_curvature_axis(1.0, p, Plane::HorizontalPair)).epsilon(1e-12));
  CHECK_THROWS_AS(sectional_curvature_mixed(1.0, p, 0.0), Error);
}

TEST_CASE("exact sectional curvatures match the conformal-change formula") {
  std::mt19937 rng(0);
  std::uniform_real_distribution<double> lz(-2.0, 2.0), th(1e-3, 2 * M_PI - 1e-3);
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 50; ++i) {
      const double z = std::pow(10.0, lz(rng)), t = th(rng);
      const double want = curvature_oracle(z, n, t);
      const double got = sectional_curvature_mixed(z, SolitonParams(n), t, CurvatureForm::Exact);
      CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("all sectional curvatures are nonpositive") {
  std::mt19937 rng(0);
  std::uniform_real_distribution<double> th(1e-12, 2 * M_PI - 1e-12);
  for (int n = 2; n <= 4; ++n) {
    const SolitonParams p(n);
    for (int e = 0; e <= 60; ++e) {
      const double x0 = std::pow(10.0, -3.0 + 0.1 * e);
      for (auto form : {CurvatureForm::Tabulated, CurvatureForm::Exact}) {
        CHECK(sectional_curvature_axis(x0, p, Plane::VerticalPair, form) <= 0.0);
        CHECK(sectional_curvature_axis(x0, p, Plane::HorizontalPair, form) <= 0.0);
        for (int i = 0; i < 100; ++i) CHECK(sectional_curvature_mixed(x0, p, th(rng), form) <= 0.0);
      }
    }
  }
}

TEST_CASE("geodesic right-hand side") {
  const auto d = geodesic_rhs(GeodesicState{1.0, 0.0, 0.0, 1.0}, 1.0);
  CHECK(d.ddz == doctest::Approx(-2.0));
  CHECK(d.ddw == 0.0);
  const auto v = geodesic_rhs(GeodesicState{0.7, 0.3, 1.2, 0.0}, SolitonParams(3));
  CHECK(v.ddw == 0.0);
  const auto a = geodesic_rhs(GeodesicState{0.7, 0.3, 0.4, 0.9}, SolitonParams(2));
  const auto b = geodesic_rhs(GeodesicState{0.7, 0.3, -0.4, 0.9}, SolitonParams(2));
  CHECK(a.dz == -b.dz);
  CHECK(a.ddz == b.ddz);
  CHECK(a.ddw == -b.ddw);
  CHECK_THROWS_AS(geodesic_rhs(GeodesicState{0.0, 0.0, 0.0, 1.0}, 2.0), Error);
}

TEST_CASE("vertical geodesics keep w fixed") {
  const auto c = integrate_geodesic({1.0, 0.25, -0.5, 0.0}, SolitonParams(2), -5.0, 5.0, 1e-10);
  CHECK(c.vertical());
  for (const auto& s : c.samples) CHECK(s.state.w == 0.25);
  CHECK(symmetry_defect(c) == 0.0);
}

TEST_CASE("generic geodesics: symmetry, concavity, orthogonal ends") {
  const double tol = 1e-9;
  for (int n = 2; n <= 3; ++n)
    for (double angle : {0.3, 1.0}) {
      const GeodesicState init{1.0, 0.0, std::sin(angle), std::cos(angle)};
      const auto c = integrate_geodesic(init, SolitonParams(n), -50.0, 50.0, tol);
      REQUIRE(c.samples.size() > 20);
      CHECK(symmetry_defect(c) < 10 * tol);
      CHECK(concavity_defect(c) <= 10 * tol);
      const auto e = end_slopes(c);
      CHECK(e.monotone);
      CHECK(e.first < 1e-2);
      CHECK(e.last < 1e-2);
      // state_at reproduces stored samples
      const auto& mid = c.samples[c.samples.size() / 3];
      const auto s = c.state_at(mid.t + 1e-3);
      CHECK(s.z == doctest::Approx(mid.state.z).epsilon(1e-2));
    }
}

TEST_CASE("geodesic floor termination is reported") {
  GeodesicOptions opts;
  opts.z_floor = 0.2;
  const auto c = integrate_geodesic({1.0, 0.0, -1.0, 0.0}, SolitonParams(2), 0.0, 50.0, 1e-9, opts);
  CHECK(c.termination == GeodesicTermination::Floor);
  CHECK(c.samples.back().state.z < 0.2);
}

namespace {

GridFunction plane_sample(int res, double width, double (*f)(double, double)) {
  return GridFunction::sample(DomainSpec::rectangle(width, width, res), f);
}

double wavy(double x, double y) { return 1.0 + 0.3 * std::sin(x) * std::cos(0.7 * y); }

}  // namespace

TEST_CASE("conformal mean curvature check") {
  const SolitonParams p(2);
  SUBCASE("identity conformal change reproduces the hyperbolic curvature") {
    const auto u = plane_sample(21, 2.0, wavy);
    const auto chk = conformal_mean_curvature_check(u, p, u.grid.dx, ConformalTarget::Identity);
    for (std::size_t i = 0; i < chk.h_conformal.size(); ++i) CHECK(chk.h_conformal[i] == chk.h_hyperbolic[i]);
  }
  SUBCASE("constant graph") {
    const auto u = plane_sample(11, 1.0, [](double, double) { return 1.0; });
    const auto chk = conformal_mean_curvature_check(u, p, u.grid.dx);
    for (double h : chk.h_hyperbolic) CHECK(h == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(chk.discrepancy.max_abs < 1e-13);
  }
  SUBCASE("second-order agreement of the two routes") {
    const auto u = plane_sample(65, 2.0, wavy);
    double prev = 0.0;
    for (int m : {4, 2, 1}) {
      // compare on the nodes the widest stencil reaches
      const auto chk = conformal_mean_curvature_check(u, p, m * u.grid.dx);
      double worst = 0.0;
      for (std::size_t i = 0; i < chk.discrepancy.nodes.size(); ++i) {
        auto [a, b] = chk.discrepancy.nodes[i];
        if (a < 4 || b < 4 || a > 60 || b > 60) continue;
        worst = std::max(worst, std::abs(chk.discrepancy.residuals[i]));
      }
      if (m < 4) {
        const double ratio = prev / worst;
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
      }
      prev = worst;
    }
  }
  SUBCASE("stencil requirements") {
    const auto u = plane_sample(21, 2.0, wavy);
    CHECK_THROWS_AS(conformal_mean_curvature_check(u, p, 0.5 * u.grid.dx), Error);
    CHECK_THROWS_AS(conformal_mean_curvature_check(u, p, 1.5 * u.grid.dx), Error);
    const auto coarse = GridFunction::sample(DomainSpec::interval(0.0, 1.0, 8), [](double, double) { return 1.0; });
    CHECK_THROWS_AS(conformal_mean_curvature_check(coarse, p, 4 * coarse.grid.dx), Error);
    try {
      conformal_mean_curvature_check(u, p, 0.5 * u.grid.dx);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateStencil);
    }
  }
}
