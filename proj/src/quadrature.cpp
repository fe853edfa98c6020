#include "horo/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <string>

#include "horo/error.hpp"

namespace horo::quad {

namespace {
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}
}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol) {
  if (a == b) return {};
  double err = 0.0;
  double l1 = 0.0;
  // Boost compares unscaled error estimates against scaled tolerances, so
  // short intervals would never converge; map onto [0, 1] first.
  const double len = b - a;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double t) { return len * f(a + len * t); }, 0.0, 1.0, 18, rel_tol, &err, &l1);
  if (!std::isfinite(value) || err > std::max(rel_tol * l1, abs_tol)) {
    throw Error(ErrorKind::QuadratureFailure,
                "error estimate " + fmt(err) + " exceeds tolerance on [" + fmt(a) + ", " + fmt(b) + "]");
  }
  return {value, err};
}

Result integrate_sqrt_endpoint(const std::function<double(double)>& g, double length,
                               double rel_tol, double abs_tol) {
  if (length <= 0.0) return {};
  auto h = [&](double sigma) { return 2.0 * sigma * g(sigma * sigma); };
  return integrate(h, 0.0, std::sqrt(length), rel_tol, abs_tol);
}

}  // namespace horo::quad
