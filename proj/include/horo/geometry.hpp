#pragma once

// Upper half-space model {x0 > 0} with g_H = x0^{-2} (dx0^2 + ... + dxn^2) and
// the Ilmanen metric g_I(k) = exp(2 / (k x0)) g_H, in which solitons moving
// along -d/dx0 are minimal.

#include <string>
#include <vector>

#include "horo/grid.hpp"
#include "horo/soliton_operator.hpp"

namespace horo {

/// Hypersurface dimension n (ambient n + 1) and the exponent k of the
/// Ilmanen factor.
struct SolitonParams {
  int n = 2;
  int k = 2;

  SolitonParams() = default;
  /// k defaults to n. Throws InvalidArgument unless n >= 2 and 2 <= k <= n.
  explicit SolitonParams(int n_, int k_ = 0);
};

struct Point {
  double x0 = 1.0;
  std::vector<double> x;

  /// Throws InvalidArgument unless x0 > 0 and x has n entries.
  Point(double height, std::vector<double> horizontal, const SolitonParams& params);
};

enum class Base { Hyperbolic, Euclidean };

/// lambda with g_I(k) = lambda^2 g_base.
double conformal_factor(const Point& p, const SolitonParams& params, Base base);
/// Same, with the exponent k as a plain positive number (k = 1 is allowed here).
double conformal_factor(double x0, double k, Base base);

enum class Plane {
  VerticalPair,    // span{d_i, d_0}
  HorizontalPair,  // span{d_i, d_j}
};

/// Which closed form to use for the Ilmanen sectional curvatures.
/// `Tabulated` is the documented closed form; `Exact` is derived directly from
/// the conformal factor (they agree for VerticalPair at n x0 = n).
enum class CurvatureForm { Tabulated, Exact };

double sectional_curvature_axis(double x0, const SolitonParams& params, Plane plane,
                                CurvatureForm form = CurvatureForm::Tabulated);

/// Plane spanned by (sin t d_0 + cos t d_i) and d_j, t in (0, 2 pi).
double sectional_curvature_mixed(double x0, const SolitonParams& params, double theta,
                                 CurvatureForm form = CurvatureForm::Tabulated);

/// Geodesics of g_I(n) in the (x0, x1)-plane: z = x0, w = x1.
struct GeodesicState {
  double z = 1.0;
  double w = 0.0;
  double dz = 0.0;
  double dw = 1.0;
};

struct GeodesicDerivative {
  double dz = 0.0;
  double dw = 0.0;
  double ddz = 0.0;
  double ddw = 0.0;
};

/// (dz, dw, ddz, ddw) with c = (1 + n z) / (n z^2):
///   ddz = c (dz^2 - dw^2),  ddw = 2 c dz dw.
GeodesicDerivative geodesic_rhs(const GeodesicState& s, const SolitonParams& params);
/// Same with a real coefficient n (n = 1 is allowed here).
GeodesicDerivative geodesic_rhs(const GeodesicState& s, double n);

struct GeodesicSample {
  double t;  // affine parameter of the displayed system (not arclength)
  GeodesicState state;
};

enum class GeodesicTermination { Floor, Span };

struct GeodesicOptions {
  double z_floor = 1e-6;
};

struct GeodesicCurve {
  int n = 2;
  double tol = 1e-9;
  GeodesicTermination termination = GeodesicTermination::Span;
  std::vector<GeodesicSample> samples;  // one per accepted step

  /// Re-integrates from the nearest stored sample, so the value carries the
  /// integrator tolerance rather than an interpolation error.
  GeodesicState state_at(double t) const;
  /// Parameter of the unique maximum of z (dz = 0), by bracketing on samples.
  double apex_parameter() const;
  bool vertical() const;
};

/// Adaptive RK5(4) integration of geodesic_rhs with `init` taken as the state
/// at t = 0, over t_span = [t_begin, t_end] (t_begin <= 0 <= t_end; each side
/// is integrated from 0 outwards). Each side stops at z_floor (reported) or
/// at the end of the span. Samples are returned in increasing t.
/// Throws StepFailure if the controller cannot meet tol.
GeodesicCurve integrate_geodesic(const GeodesicState& init, const SolitonParams& params,
                                 double t_begin, double t_end, double tol,
                                 const GeodesicOptions& opts = {});

/// Largest distance between the curve and its mirror image about the apex,
/// over samples whose mirrored parameter lies in the integrated range.
/// Returns 0 for a vertical curve. Throws InsufficientSamples without an apex.
double symmetry_defect(const GeodesicCurve& c);

/// Largest upward deviation of z from the chord extrapolation of its two
/// predecessors along w; <= 0 up to noise for z concave in w.
double concavity_defect(const GeodesicCurve& c);

struct EndSlopes {
  // |dw/dz| at the last sample of each end, and whether it decreases
  // monotonically over the final quarter of that end as z drops.
  double first = 0.0;
  double last = 0.0;
  double z_first = 0.0;
  double z_last = 0.0;
  bool monotone = true;
};

EndSlopes end_slopes(const GeodesicCurve& c);

enum class ConformalTarget { Ilmanen, Identity };

struct ConformalCheck {
  std::vector<double> h_direct;      // mean curvature from the first variation of target area
  std::vector<double> h_conformal;   // from the hyperbolic mean curvature and the conformal relation
  std::vector<double> h_hyperbolic;  // hyperbolic mean curvature of the graph
  ResidualReport discrepancy;        // h_direct - h_conformal
};

/// Compares both sides of the conformal change of mean curvature for the
/// graph of `u`: the scalar mean curvature in the target metric computed
/// directly (first variation of the weighted area, conservative differences)
/// against lambda^{-1}-scaled hyperbolic curvature (centered Hessian stencil).
/// `fd_step` must be a positive multiple of the grid spacing; both routes use
/// it as their difference step. Throws DegenerateStencil when the grid is too
/// coarse for it (fewer than 5 nodes per axis or fd_step below the spacing).
ConformalCheck conformal_mean_curvature_check(const GridFunction& u, const SolitonParams& params,
                                              double fd_step,
                                              ConformalTarget target = ConformalTarget::Ilmanen);

}  // namespace horo
