#include <cmath>

#include "doctest.h"
#include "horo/error.hpp"
#include "horo/soliton_operator.hpp"

using namespace horo;

TEST_CASE("zeroth-order term") {
  CHECK(f_rhs(1.0, 2) == -3.0);
  CHECK(f_rhs(2.0, 2) == -1.25);
  CHECK(f_rhs(1.0, 2) < f_rhs(2.0, 2));
  CHECK(f_rhs(1e12, 3) < 0.0);
  CHECK(f_rhs(1e12, 3) > -1e-11);
  CHECK_THROWS_AS(f_rhs(0.0, 2), Error);
  try {
    f_rhs(-1.0, 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonpositiveHeight);
  }
}

TEST_CASE("mean curvature of graphs") {
  StencilSample flat{3.0, {0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}};
  CHECK(mean_curvature_graph(flat, 2) == 2.0);
  // bowl tip: u''(0) = -(1 + n h) / (n h^2), H = -1/h
  for (int n : {2, 3})
    for (double h : {0.5, 1.0, 2.0}) {
      const double upp = -(1.0 + n * h) / (n * h * h);
      StencilSample tip{h, std::vector<double>(n, 0.0), std::vector<double>(n * n, 0.0)};
      for (int a = 0; a < n; ++a) tip.hess[a * n + a] = upp;
      CHECK(mean_curvature_graph(tip, n) == doctest::Approx(-1.0 / h).epsilon(1e-14));
      CHECK(q_pointwise(tip, n) == doctest::Approx(0.0).epsilon(1e-14));
    }
  StencilSample bad{1.0, {0.0, 0.0}, {1.0, 0.5, 0.4, 1.0}};
  CHECK_THROWS_AS(mean_curvature_graph(bad, 2), Error);
}

TEST_CASE("divergence term matches a hemisphere in closed form") {
  // u = sqrt(R^2 - |x|^2): div(Du/W) = -n/R, W = R/u
  const double R = 2.0;
  for (double x : {0.1, 0.7, 1.5}) {
    const double y = 0.3, u = std::sqrt(R * R - x * x - y * y);
    StencilSample s{u, {-x / u, -y / u}, {}};
    const double u3 = u * u * u;
    s.hess = {-(R * R - y * y) / u3, -x * y / u3, -x * y / u3, -(R * R - x * x) / u3};
    CHECK(divergence_term(s) == doctest::Approx(-2.0 / R).epsilon(1e-13));
    CHECK(q_pointwise(s, 2) == doctest::Approx(1.0 / (u * R)).epsilon(1e-13));
  }
}

TEST_CASE("residual of constants") {
  for (auto dom : {DomainSpec::interval(0.0, 1.0, 9), DomainSpec::ball(1.0, 17), DomainSpec::annulus(0.5, 1.0, 17),
                   DomainSpec::rectangle(1.0, 2.0, 9), DomainSpec::ball(1.0, 17, true)}) {
    const auto u = GridFunction::sample(dom, [](double, double) { return 1.0; });
    const auto r = q_residual(u, 2);
    CHECK(r.classification == Classification::Subsolution);
    for (double v : r.residuals) CHECK(v == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r.max_abs == doctest::Approx(3.0));
    CHECK(r.nodes.size() == r.residuals.size());
  }
}

TEST_CASE("spherical cap residual equals 1/(uR)") {
  const double R = 1.0;
  auto cap = [R](double x, double y) { return std::sqrt(R * R - x * x - y * y); };
  SUBCASE("radial reduction") {
    const auto u = GridFunction::sample(DomainSpec::ball(0.999 * R, 20001), cap);
    const auto r = q_residual(u, 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
      const double x = u.grid.x(r.nodes[i].first);
      if (x > 0.95 * R) continue;
      const double want = 1.0 / (cap(x, 0.0) * R);
      worst = std::max(worst, std::abs(r.residuals[i] / want - 1.0));
    }
    CHECK(worst < 1e-6);
    CHECK(r.classification == Classification::Subsolution);
  }
  SUBCASE("planar grid") {
    const auto u = GridFunction::sample(DomainSpec::ball(0.95 * R, 201, true), cap);
    const auto r = q_residual(u, 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
      const double x = u.grid.x(r.nodes[i].first), y = u.grid.y(r.nodes[i].second);
      if (std::hypot(x, y) > 0.9 * R) continue;
      const double want = 1.0 / (cap(x, y) * R);
      worst = std::max(worst, std::abs(r.residuals[i] / want - 1.0));
    }
    CHECK(worst < 5e-3);
  }
}

TEST_CASE("classification") {
  CHECK(make_report({0.0, 1e-9}, {{1, 0}, {2, 0}}, 1e-8).classification == Classification::Solution);
  CHECK(make_report({0.0, 1e-6}, {{1, 0}, {2, 0}}, 1e-8).classification == Classification::Subsolution);
  CHECK(make_report({0.0, -1e-6}, {{1, 0}, {2, 0}}, 1e-8).classification == Classification::Supersolution);
  CHECK(make_report({1e-6, -1e-6}, {{1, 0}, {2, 0}}, 1e-8).classification == Classification::Neither);
  CHECK(to_string(Classification::Supersolution) == "supersolution");
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(DomainSpec::interval(0.0, 1.0, 4).validate(), Error);
  CHECK_THROWS_AS(DomainSpec::annulus(1.0, 0.5, 10).validate(), Error);
  auto u = GridFunction::sample(DomainSpec::interval(0.0, 1.0, 9), [](double x, double) { return x - 0.5; });
  CHECK_THROWS_AS(q_residual(u, 2), Error);
}
