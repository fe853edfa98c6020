#pragma once

// Generating curves of symmetric solitons in the (x0, x1) half-plane:
// the grim reaper (translation invariant, closed-form quadrature), the bowl
// (rotational, meets the axis) and the winglike catenoid (rotational, two
// branches from a tip away from the axis).
//
// Curves are parametrized by Euclidean arclength s with tangent
// (z', rho') = (cos alpha, sin alpha), so alpha = pi/2 points away from the
// axis horizontally and alpha = +-pi points straight down.

#include <optional>
#include <utility>
#include <vector>

#include "horo/geometry.hpp"

namespace horo {

enum class ProfileKind { GrimReaper, Bowl, WingUpper, WingLower, Geodesic };

const char* to_string(ProfileKind k);

struct ProfileSample {
  double s = 0.0;      // arclength from the tip (affine parameter for geodesics)
  double z = 0.0;      // height x0
  double rho = 0.0;    // radial (or x1) coordinate
  double alpha = 0.0;  // tangent angle
};

struct ProfileCurve {
  ProfileKind kind = ProfileKind::Bowl;
  int n = 2;
  double h = 1.0;  // maximal height
  double R = 0.0;  // tip radius: 0 for bowls and grim reapers
  std::optional<double> r2;  // extinction radius (outer end for wings)
  std::vector<ProfileSample> samples;

  std::optional<double> lambda0;                      // inflection height of the lower wing branch
  std::optional<std::pair<double, double>> endpoints;  // (q1, q2) on the boundary at infinity
  std::optional<std::pair<double, double>> min_point;  // (z, rho) where the lower branch is closest to the axis
  double residual_max = 0.0;
};

struct ShootingConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double z_floor = 1e-6;
  std::size_t max_steps = 4'000'000;
  double series_radius = 0.0;  // 0 selects 1e-3 min(h, 1)
  int samples_per_decade = 100;  // output density below the chart switch

  /// Throws InvalidArgument unless all positive and series_radius < 0.1 h.
  void validate(double h) const;
  double series_radius_for(double h) const;
};

// --- grim reaper -----------------------------------------------------------

/// phi(z) = int_z^h {(h/t)^{2n} e^{2/t - 2/h} - 1}^{-1/2} dt for 0 < z <= h.
double grim_phi(double z, double h, int n);
/// phi'(z) = -{(h/z)^{2n} e^{2/z - 2/h} - 1}^{-1/2}.
double grim_phi_prime(double z, double h, int n);
/// Distance 2 phi(0+) between the two ends on the boundary at infinity.
double grim_width(double h, int n);
/// Inverse of grim_width. Throws BracketFailure outside h in [1e-6, 1e6].
double grim_height_for_width(double w, int n, double tol = 1e-12);
/// Height of the grim reaper over the horizontal position x (|x| < width / 2).
double grim_u(double x, double h, int n);
/// Arclength from the tip down to height z.
double grim_arclength(double z, double h, int n);
/// max |phi''/(1 + phi'^2) - (n z + 1) phi' / z^2| over `points` heights in
/// [0.05 h, 0.8 h], with both derivatives from fourth-order differences of grim_phi.
double grim_ode_residual(double h, int n, int points = 100);
/// Right half of the profile: z = h (1 - sigma^2) for uniform sigma in [0, 1).
ProfileCurve grim_curve(double h, int n, int samples);

// --- arclength system ------------------------------------------------------

struct ArcState {
  double z = 1.0;
  double rho = 0.0;
  double alpha = 0.0;
};

/// (z', rho', alpha') with alpha' = (1 + n z) sin(alpha) / z^2 + [rotational] (n - 1) cos(alpha) / rho.
ArcState arclength_rhs(const ArcState& s, int n, bool rotational);

// --- bowl -------------------------------------------------------------------

/// Series coefficients of u(rho) = h + a rho^2 + b rho^4 at the axis.
std::pair<double, double> bowl_series(double h, int n);

ProfileCurve bowl_shoot(double h, int n, const ShootingConfig& cfg = {});

/// Height and slope (u, u') of the bowl of tip height h at the given radii
/// (each below r2), from the graph form of the rotational equation.
std::vector<std::pair<double, double>> bowl_graph(double h, int n, const std::vector<double>& rho,
                                                  const ShootingConfig& cfg = {});

/// u''(0) estimated from the integrated curve (extrapolated from the first
/// samples past the series patch), for comparison with the series value.
double bowl_tip_curvature(const ProfileCurve& bowl);

double r2_of_h(double h, int n, const ShootingConfig& cfg = {});
/// Throws BracketFailure when no tip height in [1e-6, 1e6] reaches r.
double h_of_r2(double r, int n, double tol = 1e-10, const ShootingConfig& cfg = {});

// --- wings -------------------------------------------------------------------

struct WingPair {
  ProfileCurve upper;  // outer branch, concave graph rho = phi2(z)
  ProfileCurve lower;  // inner branch, convex then concave graph rho = phi1(z)
};

/// Shoots both branches from the tip (z, rho) = (h, R). Throws
/// BranchMisclassified if the branch shapes contradict the expected structure.
WingPair wing_shoot(double R, double h, int n, const ShootingConfig& cfg = {});

// --- diagnostics -------------------------------------------------------------

struct CubicFit {
  double phi0 = 0.0;       // extrapolated phi(0+)
  double coefficient = 0.0;  // c in phi(z) = phi0 - c z^3
  double target = 0.0;     // (n - 1) / (3 phi0)
  double rel_error = 0.0;
};

/// Least-squares fit of phi(z) = phi0 - c z^3 over samples with z in
/// [z_min, 5 z_min], z_min the lowest sample. Throws InsufficientSamples with
/// fewer than 5 such samples.
CubicFit cubic_asymptote_check(const ProfileCurve& curve);

enum class Coord { S, Z, Rho };

/// Interpolates `wanted` where `known` takes `value`, using cubic Hermite
/// interpolation in s (derivatives from alpha). `known` must be monotone
/// along the samples. Returns nullopt outside the sampled range.
std::optional<double> interpolate(const ProfileCurve& c, Coord known, double value, Coord wanted);

/// max |alpha'(s) - rhs| over samples with z > 0.05 h, alpha' from local
/// quartic fits in s. Needs only the samples, so it can be recomputed from a file.
double sample_residual(const ProfileCurve& c);

/// Sign changes of phi'' along the curve (z descending), skipping the tip.
int curvature_sign_changes(const ProfileCurve& c);

/// Converts a geodesic: s = parameter, rho = w, alpha = atan2(dw, dz).
ProfileCurve to_profile_curve(const GeodesicCurve& g);

}  // namespace horo
