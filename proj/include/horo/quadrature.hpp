#pragma once

#include <functional>

namespace horo::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (31-point) on [a, b]. Throws QuadratureFailure when
/// the error estimate exceeds max(rel_tol * |I|_1, abs_tol).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, double abs_tol = 1e-15);

/// Integral over a segment of length L whose left endpoint carries an
/// inverse-square-root singularity. `g` receives the distance `d` from that
/// endpoint, so callers never form t - a themselves. The substitution
/// d = sigma^2 turns the integrand analytic before Gauss-Kronrod is applied.
Result integrate_sqrt_endpoint(const std::function<double(double)>& g, double length,
                               double rel_tol = 1e-13, double abs_tol = 1e-15);

}  // namespace horo::quad
