#pragma once

// Comparison objects for the soliton operator: spherical caps and constants
// (subsolutions), the boundary collar psi(r) = mu log(1 + k r) (upper
// barrier near the boundary), and the one-dimensional barriers used to show
// non-existence for large boundary data.

#include <functional>
#include <variant>
#include <vector>

#include "horo/grid.hpp"

namespace horo {

struct SphericalCap {
  std::vector<double> center;  // horizontal coordinates, padded with zeros
  double R = 1.0;
};
struct Constant {
  double c = 1.0;
};
struct Collar {
  double mu = 1.0;
  double kpar = 1.0;
  double l = 1.0;  // collar width, at most kpar^{-1/2}
  std::function<double(double, double)> phi_hat;  // boundary data extended along normals (optional)
};
struct OmegaTilde {
  double a = 0.1;
  double d = 1.0;
};
struct OmegaFull {
  double a = 0.1;
  double d = 1.0;
  double u_star = 1.0;
};
struct Lema2Omega {
  double theta = 1.0;
  double delta = 0.0;
  double a0 = 1.0;
};

using BarrierSpec = std::variant<SphericalCap, Constant, Collar, OmegaTilde, OmegaFull, Lema2Omega>;

/// Throws InvalidArgument on a violated invariant (R > 0, l <= kpar^{-1/2}, 0 < a < d, ...).
void validate(const BarrierSpec& b);

/// Samples a cap or a constant on the nodes of `d`. Other barriers are
/// one-dimensional profiles; use their dedicated functions.
GridFunction sample_barrier(const BarrierSpec& b, const DomainSpec& d);

/// F(s) = log sqrt(1 + s^-2), a decreasing diffeomorphism of (0, inf).
double F_diffeo(double s);
/// F^{-1}(y) = 1 / sqrt(e^{2y} - 1).
double F_inverse(double y);

/// int_r^d F^{-1}((n-1)/2 log(t/a)) dt, a <= r <= d.
double omega_tilde(double r, const OmegaTilde& spec, int n);
/// omega_tilde(r) - 2d/(n-1) f(u_star) (d - r).
double omega_full(double r, const OmegaFull& spec, int n);
/// -omega_full'(r).
double omega_full_slope(double r, const OmegaFull& spec, int n);

struct Lema2Value {
  double value = 0.0;  // int_r^{a0} F^{-1}(theta (t - delta)) dt
  double limit = 0.0;  // int_0^{a0} F^{-1}(theta s) ds, the delta -> 0 bound
};
/// delta <= r <= a0, theta > 0.
Lema2Value lema2_barrier(double r, const Lema2Omega& spec);

/// 2 eps + c0 - c f(c0, n) with c = 2 d^2 / (n - 1), d = 2 diam.
double nonexistence_bound(double epsilon, double diam, int n, double c0);

struct CollarBounds {
  double C1 = 1.0;
  double C2 = 1.0;
  double C3 = 1.0;
  double C_phi = 1.0;
};

/// psi(r) = mu log(1 + k r), mu = B2 / log(1 + sqrt k), with k the first value of
/// a doubling search from 2 rho^-2 for which
///   (-1/mu + C) p^2 + C3 p + C C1 < 0,  C = C2 + C_phi,
/// for every p = psi'(r), r in [0, k^{-1/2}]. Throws SearchExhausted past 2^60 rho^-2.
Collar collar_barrier_params(double B2, const CollarBounds& bounds, double rho);

double collar_psi(const Collar& c, double r);
double collar_psi_prime(const Collar& c, double r);

/// Boundary data phi(theta) on the circle of radius `radius` (n = 2), extended
/// constantly along inward normals.
struct DiskData {
  double radius = 1.0;
  std::function<double(double)> phi;
};

/// Samples 1 + |D phi_hat|^2 + |D^2 phi_hat|^2, |Delta phi_hat| + |D^2 phi_hat|,
/// and the curvature of the distance function on the collar of width rho, by
/// central differences. Sampled, not certified; `margin` scales the maxima.
CollarBounds sample_collar_bounds(const DiskData& data, double rho, int samples = 64,
                                  double margin = 1.1);

struct CollarCheck {
  double max_q = 0.0;  // largest Q[psi + phi_hat] over the samples
  int samples = 0;
  bool negative = false;
};

/// Evaluates Q[psi + phi_hat] (n = 2) at a polar lattice of the collar
/// 0 < r <= l and reports its largest value.
CollarCheck collar_residual(const Collar& c, const DiskData& data, int radial = 32,
                            int angular = 64);

}  // namespace horo
