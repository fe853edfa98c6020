#include "horo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "horo/barriers.hpp"
#include "horo/dirichlet.hpp"
#include "horo/error.hpp"
#include "horo/geometry.hpp"
#include "horo/io.hpp"
#include "horo/profiles.hpp"
#include "horo/soliton_operator.hpp"

namespace horo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Spec {
  std::string name;
  std::string anchor;
  double threshold;
  enum Cmp { Le, Lt, Gt, Ge, Eq } cmp;
  std::function<double()> measure;
};

Check run(const Spec& s) {
  Check c{s.name, s.anchor, kNaN, s.threshold, false};
  try {
    c.value = s.measure();
  } catch (const Error& e) {
    c.anchor += " [" + std::string(e.what()) + "]";
    return c;
  }
  switch (s.cmp) {
    case Spec::Le: c.pass = c.value <= s.threshold; break;
    case Spec::Lt: c.pass = c.value < s.threshold; break;
    case Spec::Gt: c.pass = c.value > s.threshold; break;
    case Spec::Ge: c.pass = c.value >= s.threshold; break;
    case Spec::Eq: c.pass = c.value == s.threshold; break;
  }
  return c;
}

double min_increment(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) m = std::min(m, v[i] - v[i - 1]);
  return m;
}

std::vector<double> radii(const GridFunction& u) {
  std::vector<double> r;
  for (int i = 0; i < u.grid.nx; ++i) r.push_back(u.grid.x(i));
  return r;
}

// --- geometry -----------------------------------------------------------------

std::vector<Spec> geometry_specs(const VerifyOptions& o) {
  std::vector<Spec> v;
  v.push_back({"sectional_curvature_nonpositive",
               "largest sectional curvature over 10^4 random (x0, theta, plane) triples, n in {2,3,4}", 0.0,
               Spec::Le, [seed = o.seed] {
                 std::mt19937_64 rng(seed);
                 std::uniform_real_distribution<double> lx(-3.0, 3.0), th(1e-9, 2 * M_PI - 1e-9), u(0.0, 1.0);
                 double worst = -std::numeric_limits<double>::infinity();
                 for (int i = 0; i < 10000; ++i) {
                   const SolitonParams p(2 + static_cast<int>(u(rng) * 3) % 3);
                   const double x0 = std::pow(10.0, lx(rng));
                   const double pick = u(rng);
                   double k;
                   if (pick < 0.25)
                     k = sectional_curvature_axis(x0, p, Plane::VerticalPair);
                   else if (pick < 0.5)
                     k = sectional_curvature_axis(x0, p, Plane::HorizontalPair);
                   else
                     k = sectional_curvature_mixed(x0, p, th(rng));
                   worst = std::max(worst, k);
                 }
                 return worst;
               }});
  v.push_back({"vertical_pair_closed_form", "|K(x0 = 1, n = 2, vertical pair) + 2/e|", 1e-14, Spec::Le, [] {
                 return std::abs(sectional_curvature_axis(1.0, SolitonParams(2), Plane::VerticalPair) + 2.0 / M_E);
               }});
  v.push_back({"mixed_curvature_midpoint", "mixed curvature at theta = pi/4 minus the mean of the axis values",
               1e-14, Spec::Le, [] {
                 const SolitonParams p(2);
                 const double mean = 0.5 * (sectional_curvature_axis(1.0, p, Plane::VerticalPair) +
                                            sectional_curvature_axis(1.0, p, Plane::HorizontalPair));
                 return std::abs(sectional_curvature_mixed(1.0, p, M_PI / 4) - mean);
               }});
  v.push_back({"euclidean_conformal_factor", "relative error of lambda(x0 = 0.5, k = 2) against 2e", 1e-14,
               Spec::Le, [] { return std::abs(conformal_factor(0.5, 2.0, Base::Euclidean) / (2 * M_E) - 1.0); }});
  v.push_back({"geodesic_rhs_value", "|ddz + 2| at z = 1, n = 1, (dz, dw) = (0, 1)", 1e-15, Spec::Le,
               [] { return std::abs(geodesic_rhs(GeodesicState{1.0, 0.0, 0.0, 1.0}, 1.0).ddz + 2.0); }});
  v.push_back({"vertical_geodesic", "largest drift of w along a vertical geodesic", 0.0, Spec::Le, [] {
                 const auto c = integrate_geodesic({1.0, 0.25, -0.5, 0.0}, SolitonParams(2), -5.0, 5.0, 1e-10);
                 double d = 0.0;
                 for (const auto& s : c.samples) d = std::max(d, std::abs(s.state.w - 0.25));
                 return d;
               }});
  constexpr double gtol = 1e-9;
  auto generic = [] { return integrate_geodesic({1.0, 0.0, std::sin(0.3), std::cos(0.3)}, SolitonParams(2), -50.0, 50.0, gtol); };
  v.push_back({"geodesic_symmetry", "distance between a geodesic and its mirror image about the apex",
               10 * gtol, Spec::Lt, [generic] { return symmetry_defect(generic()); }});
  v.push_back({"geodesic_concavity", "largest upward deviation of z(w) from its chords", 10 * gtol, Spec::Le,
               [generic] { return concavity_defect(generic()); }});
  v.push_back({"geodesic_orthogonal_ends", "|dw/dz| at both ends (and monotone decay towards the boundary)",
               1e-2, Spec::Lt, [generic] {
                 const auto e = end_slopes(generic());
                 return e.monotone ? std::max(e.first, e.last) : kNaN;
               }});
  v.push_back({"conformal_relation_second_order",
               "|ratio - 4| of the discrepancy between the two mean-curvature routes under halving", 0.5, Spec::Le,
               [] {
                 const auto u = GridFunction::sample(DomainSpec::rectangle(2.0, 2.0, 65), [](double x, double y) {
                   return 1.0 + 0.3 * std::sin(x) * std::cos(0.7 * y);
                 });
                 double prev = 0.0, worst_ratio = 0.0;
                 for (int m : {4, 2, 1}) {
                   const auto chk = conformal_mean_curvature_check(u, SolitonParams(2), m * u.grid.dx);
                   double worst = 0.0;
                   for (std::size_t i = 0; i < chk.discrepancy.nodes.size(); ++i) {
                     auto [a, b] = chk.discrepancy.nodes[i];
                     if (a < 4 || b < 4 || a > 60 || b > 60) continue;
                     worst = std::max(worst, std::abs(chk.discrepancy.residuals[i]));
                   }
                   if (m < 4) worst_ratio = std::max(worst_ratio, std::abs(prev / worst - 4.0));
                   prev = worst;
                 }
                 return worst_ratio;
               }});
  return v;
}

// --- profiles ----------------------------------------------------------------------

std::vector<Spec> profile_specs(const VerifyOptions& o) {
  std::vector<Spec> v;
  v.push_back({"grim_ode_residual", "finite-difference residual of the grim quadrature, n in {2,3}, h in {0.5,1,2}",
               o.tol, Spec::Lt, [] {
                 double w = 0.0;
                 for (int n : {2, 3})
                   for (double h : {0.5, 1.0, 2.0}) w = std::max(w, grim_ode_residual(h, n));
                 return w;
               }});
  v.push_back({"grim_tip", "|phi(h)| + max |phi'(z)| for z < h/50", 1e-6, Spec::Lt, [] {
                 double w = 0.0;
                 for (int n : {2, 3})
                   for (double h : {0.5, 1.0, 2.0}) {
                     w = std::max(w, std::abs(grim_phi(h, h, n)));
                     for (int i = 1; i <= 20; ++i) w = std::max(w, std::abs(grim_phi_prime(h / 50 * i / 20.0, h, n)));
                   }
                 return w;
               }});
  v.push_back({"grim_width_monotone", "smallest increment of width(h) over 20 heights", 0.0, Spec::Gt, [] {
                 std::vector<double> w;
                 for (int i = 0; i < 20; ++i) w.push_back(grim_width(0.2 * std::pow(1.25, i), 2));
                 return min_increment(w);
               }});
  const std::vector<double> hs{0.25, 0.5, 1.0, 2.0, 4.0};
  v.push_back({"bowl_r2_monotone", "smallest increment of r2(h) over h in {0.25, 0.5, 1, 2, 4}", 0.0, Spec::Gt,
               [hs] {
                 std::vector<double> r;
                 for (double h : hs) r.push_back(r2_of_h(h, 2));
                 return min_increment(r);
               }});
  v.push_back({"bowl_graphs_ordered", "smallest gap between bowls of consecutive tip heights over a common disk",
               0.0, Spec::Gt, [hs] {
                 std::vector<double> rho;
                 for (int i = 0; i <= 20; ++i) rho.push_back(0.1 * i / 20.0);
                 double gap = std::numeric_limits<double>::infinity();
                 auto prev = bowl_graph(hs[0], 2, rho);
                 for (std::size_t k = 1; k < hs.size(); ++k) {
                   const auto g = bowl_graph(hs[k], 2, rho);
                   for (std::size_t i = 0; i < rho.size(); ++i) gap = std::min(gap, g[i].first - prev[i].first);
                   prev = g;
                 }
                 return gap;
               }});
  auto bowl = [] { return bowl_shoot(1.0, 2); };
  v.push_back({"bowl_tip_curvature", "relative error of u''(0) against -(1 + n h)/(n h^2), h = 1, n = 2", 1e-6,
               Spec::Lt, [bowl] { return std::abs(bowl_tip_curvature(bowl()) / -1.5 - 1.0); }});
  v.push_back({"bowl_terminal_angle", "| |alpha| - pi | at the floor (vertical approach)", 1e-3, Spec::Lt,
               [bowl] { return std::abs(std::abs(bowl().samples.back().alpha) - M_PI); }});
  v.push_back({"bowl_concave", "smallest alpha' along the bowl above z = 0.01 (strict concavity)", 0.0, Spec::Gt,
               [bowl] {
                 const auto b = bowl();
                 double m = std::numeric_limits<double>::infinity();
                 for (std::size_t i = 1; i < b.samples.size(); ++i) {
                   const auto& s = b.samples[i];
                   if (s.z > 0.01) m = std::min(m, arclength_rhs({s.z, s.rho, s.alpha}, 2, true).alpha);
                 }
                 return m;
               }});
  v.push_back({"bowl_within_cylinder", "max (rho - r2) over the bowl samples", o.tol, Spec::Le, [bowl] {
                 const auto b = bowl();
                 double m = -std::numeric_limits<double>::infinity();
                 for (const auto& s : b.samples) m = std::max(m, s.rho - *b.r2);
                 return m;
               }});
  v.push_back({"bowl_shot_vs_graph", "arclength shooting against the graph equation at 41 radii", 1e-8, Spec::Lt,
               [bowl] {
                 const auto b = bowl();
                 std::vector<double> rho;
                 for (int i = 0; i <= 40; ++i) rho.push_back(0.65 * i / 40.0);
                 const auto g = bowl_graph(1.0, 2, rho);
                 double w = 0.0;
                 for (std::size_t i = 0; i < rho.size(); ++i)
                   w = std::max(w, std::abs(interpolate(b, Coord::Rho, rho[i], Coord::Z).value_or(kNaN) - g[i].first));
                 return w;
               }});
  auto wing = [] { return wing_shoot(0.5, 1.0, 2); };
  v.push_back({"wing_branches_ordered", "smallest phi2 - phi1 over 199 heights, (R, h, n) = (0.5, 1, 2)", 0.0,
               Spec::Gt, [wing] {
                 const auto w = wing();
                 double m = std::numeric_limits<double>::infinity();
                 for (int i = 1; i < 200; ++i) {
                   const double z = i / 200.0;
                   m = std::min(m, interpolate(w.upper, Coord::Z, z, Coord::Rho).value_or(kNaN) -
                                       interpolate(w.lower, Coord::Z, z, Coord::Rho).value_or(kNaN));
                 }
                 return m;
               }});
  v.push_back({"wing_endpoints_distinct", "|q1 - q2|", 1e-3, Spec::Gt, [wing] {
                 const auto w = wing();
                 return std::abs(*w.upper.r2 - *w.lower.r2);
               }});
  v.push_back({"wing_single_inflection", "sign changes of phi'' along the lower branch", 1.0, Spec::Eq,
               [wing] { return static_cast<double>(curvature_sign_changes(wing().lower)); }});
  v.push_back({"wing_upper_concave", "sign changes of phi'' along the upper branch", 0.0, Spec::Eq,
               [wing] { return static_cast<double>(curvature_sign_changes(wing().upper)); }});
  for (bool upper : {true, false})
    v.push_back({upper ? "cubic_asymptote_upper" : "cubic_asymptote_lower",
                 "relative error of the fitted z^3 coefficient against (n - 1)/(3 phi(0+)), floor 1e-3", 0.05,
                 Spec::Lt, [upper] {
                   ShootingConfig cfg;
                   cfg.z_floor = 1e-3;
                   const auto w = wing_shoot(0.5, 1.0, 2, cfg);
                   return cubic_asymptote_check(upper ? w.upper : w.lower).rel_error;
                 }});
  return v;
}

// --- operator ----------------------------------------------------------------------

double richardson_deviation(const std::function<GridFunction(int)>& sample) {
  double prev = 0.0, dev = 0.0;
  for (int N : {65, 129, 257}) {
    const double r = q_residual(sample(N), 2).max_abs;
    if (prev > 0.0) dev = std::max(dev, std::abs(prev / r - 4.0));
    prev = r;
  }
  return dev;
}

std::vector<Spec> operator_specs(const VerifyOptions& o) {
  std::vector<Spec> v;
  v.push_back({"spherical_cap_residual", "relative error of Q[cap] against 1/(u R) for |x| < 0.95 R", 1e-6,
               Spec::Lt, [] {
                 auto cap = [](double x, double y) { return std::sqrt(1.0 - x * x - y * y); };
                 const auto u = GridFunction::sample(DomainSpec::ball(0.999, 20001), cap);
                 const auto r = q_residual(u, 2);
                 double w = 0.0;
                 for (std::size_t i = 0; i < r.residuals.size(); ++i) {
                   const double x = u.grid.x(r.nodes[i].first);
                   if (x <= 0.95) w = std::max(w, std::abs(r.residuals[i] * cap(x, 0.0) - 1.0));
                 }
                 return w;
               }});
  v.push_back({"bowl_residual_second_order", "|ratio - 4| of Q[bowl] on radial grids under halving", 0.8,
               Spec::Le, [] {
                 return richardson_deviation([](int N) {
                   GridFunction u(DomainSpec::ball(0.5, N));
                   const auto g = bowl_graph(1.0, 2, radii(u));
                   for (int i = 0; i < N; ++i) u.values[i] = g[i].first;
                   return u;
                 });
               }});
  v.push_back({"grim_residual_second_order", "|ratio - 4| of Q[grim reaper] on a line under halving", 0.8,
               Spec::Le, [] {
                 const double h = grim_height_for_width(1.0, 2);
                 return richardson_deviation([h](int N) {
                   return GridFunction::sample(DomainSpec::interval(-0.3, 0.3, N),
                                               [h](double x, double) { return grim_u(x, h, 2); });
                 });
               }});
  v.push_back({"constant_is_subsolution", "min Q[c] - (-f(c)) over c in {0.5, 1, 2} (exact value of Q on constants)",
               1e-14, Spec::Le, [] {
                 double w = 0.0;
                 for (double c : {0.5, 1.0, 2.0}) {
                   const auto u = GridFunction::sample(DomainSpec::interval(0.0, 1.0, 17), [c](double, double) { return c; });
                   const auto r = q_residual(u, 2);
                   if (r.classification != Classification::Subsolution) return kNaN;
                   for (double q : r.residuals) w = std::max(w, std::abs(q + f_rhs(c, 2)));
                 }
                 return w;
               }});
  v.push_back({"shifted_solution_classification",
               "u + 10 tol is a supersolution and u - 10 tol a subsolution (1 = both hold)", 1.0, Spec::Eq,
               [tol = o.tol] {
                 const auto s = solve(DomainSpec::annulus(0.2, 0.5, 65), BoundaryData::per_side({0.6, 0.9}), 2, 1e-11);
                 auto shifted = [&](double eps) {
                   auto u = s.u;
                   for (auto& x : u.values) x += eps;
                   return q_residual(u, 2, tol).classification;
                 };
                 return (shifted(10 * tol) == Classification::Supersolution &&
                         shifted(-10 * tol) == Classification::Subsolution)
                            ? 1.0
                            : 0.0;
               }});
  v.push_back({"F_inverse_pair", "max |F^-1(F(s))/s - 1| for s in [1e-4, 1e4]", 1e-12, Spec::Lt, [] {
                 double w = 0.0;
                 for (int i = 0; i < 100; ++i) {
                   const double s = std::pow(10.0, -4.0 + 8.0 * i / 99.0);
                   w = std::max(w, std::abs(F_inverse(F_diffeo(s)) / s - 1.0));
                 }
                 return w;
               }});
  v.push_back({"F_decreasing", "smallest decrement of F over 100 log-spaced points", 0.0, Spec::Gt, [] {
                 double m = std::numeric_limits<double>::infinity();
                 for (int i = 1; i < 100; ++i)
                   m = std::min(m, F_diffeo(std::pow(10.0, -4.0 + 8.0 * (i - 1) / 99.0)) -
                                       F_diffeo(std::pow(10.0, -4.0 + 8.0 * i / 99.0)));
                 return m;
               }});
  v.push_back({"omega_tilde_vanishes", "omega~(a) at a = 1e-4 (d = 1, n = 2), decreasing over four decades", 0.03,
               Spec::Lt, [] {
                 double prev = std::numeric_limits<double>::infinity();
                 for (int e = 1; e <= 4; ++e) {
                   const double a = std::pow(10.0, -e);
                   const double w = omega_tilde(a, OmegaTilde{a, 1.0}, 2);
                   if (!(w < prev)) return kNaN;
                   prev = w;
                 }
                 return prev;
               }});
  v.push_back({"nonexistence_bound", "nonexistence_bound(0, 1, 2, 1)", 25.0, Spec::Eq,
               [] { return nonexistence_bound(0.0, 1.0, 2, 1.0); }});
  v.push_back({"collar_supersolution", "largest Q[psi + phi_hat] on the collar of a disk", 0.0, Spec::Lt, [] {
                 const DiskData disk{1.0, [](double t) { return 1.0 + 0.2 * std::cos(t); }};
                 const Collar c = collar_barrier_params(2.0, sample_collar_bounds(disk, 0.25), 0.25);
                 if (collar_psi(c, 0.0) != 0.0) return kNaN;
                 return collar_residual(c, disk).max_q;
               }});
  return v;
}

// --- dirichlet ---------------------------------------------------------------------

std::vector<Spec> dirichlet_specs(const VerifyOptions& o) {
  std::vector<Spec> v;
  const double r0 = 0.25, r1 = 0.5;
  auto annulus_error = [r0, r1](int N) {
    const auto ends = bowl_graph(1.0, 2, {r0, r1});
    const auto s = solve(DomainSpec::annulus(r0, r1, N), BoundaryData::per_side({ends[0].first, ends[1].first}), 2, 1e-9);
    const auto exact = bowl_graph(1.0, 2, radii(s.u));
    double e = 0.0;
    for (int i = 0; i < N; ++i) e = std::max(e, std::abs(s.u.values[i] - exact[i].first));
    return e;
  };
  for (int N : {65, 129}) {
    const double dr = (r1 - r0) / (N - 1);
    v.push_back({"annulus_vs_bowl_" + std::to_string(N), "max error of the annulus solve with bowl data",
                 4 * dr * dr, Spec::Lt, [annulus_error, N] { return annulus_error(N); }});
  }
  v.push_back({"annulus_convergence", "|ratio - 4| of the annulus error under halving", 0.8, Spec::Le,
               [annulus_error] { return std::abs(annulus_error(65) / annulus_error(129) - 4.0); }});
  v.push_back({"radial_oracle", "shooting solution of the radial problem against the bowl", 1e-8, Spec::Lt,
               [r0, r1] {
                 const auto ends = bowl_graph(1.0, 2, {r0, r1});
                 const auto rad = solve_radial(DomainSpec::annulus(r0, r1, 33),
                                               BoundaryData::per_side({ends[0].first, ends[1].first}), 2);
                 const auto exact = bowl_graph(1.0, 2, rad.r);
                 double e = 0.0;
                 for (std::size_t i = 0; i < rad.r.size(); ++i) e = std::max(e, std::abs(rad.u[i] - exact[i].first));
                 return e;
               }});
  constexpr double stol = 1e-10;
  v.push_back({"comparison_principle", "min (u2 - u1) for ordered data on a rectangle", -10 * stol, Spec::Ge, [] {
                 const auto rect = DomainSpec::rectangle(1.0, 1.0, 33);
                 const auto a = solve(rect, BoundaryData::per_side({0.5, 0.7, 0.6, 0.8}), 2, stol).u;
                 const auto b = solve(rect, BoundaryData::per_side({0.6, 0.8, 0.7, 0.9}), 2, stol).u;
                 double m = std::numeric_limits<double>::infinity();
                 for (std::size_t k = 0; k < a.values.size(); ++k)
                   if (std::isfinite(a.values[k])) m = std::min(m, b.values[k] - a.values[k]);
                 return m;
               }});
  v.push_back({"uniqueness", "max difference of solves started from constants B1 and B2", 10 * stol, Spec::Lt, [] {
                 const auto dom = DomainSpec::annulus(0.2, 0.6, 33);
                 const auto bc = BoundaryData::per_side({0.5, 0.9});
                 SolveOptions lo, hi;
                 lo.initial_constant = 0.5;
                 hi.initial_constant = 5.0;
                 const auto a = solve(dom, bc, 2, stol, lo).u;
                 const auto b = solve(dom, bc, 2, stol, hi).u;
                 double m = 0.0;
                 for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
                 return m;
               }});
  v.push_back({"height_and_H", "height bounds and boundary maximum of H on a ball (1 = pass)", 1.0, Spec::Eq,
               [tol = o.tol] {
                 const auto bc = BoundaryData::make_constant(0.8);
                 const auto s = solve(DomainSpec::ball(0.5, 65), bc, 2, 1e-11);
                 return verify_height_and_H(s.u, bc, 2, tol).pass ? 1.0 : 0.0;
               }});
  v.push_back({"bump_fails_H", "an interior bump breaks the boundary maximum of H (1 = detected)", 1.0, Spec::Eq,
               [tol = o.tol] {
                 const auto bc = BoundaryData::make_constant(0.8);
                 auto u = solve(DomainSpec::ball(0.5, 65), bc, 2, 1e-11).u;
                 for (int i = 0; i < u.grid.nx; ++i)
                   if (u.grid.x(i) < 0.25) u.values[i] += 0.1 * std::pow(std::cos(M_PI * u.grid.x(i) / 0.5), 2);
                 return verify_height_and_H(u, bc, 2, tol).H_ok ? 0.0 : 1.0;
               }});
  auto cont = [] { return continuation_to_zero_boundary(DomainSpec::ball(0.5, 65), 2, 1e-10, 8); };
  v.push_back({"continuation_monotone", "max (u_{j+1} - u_j) over the 1/j continuation on a ball", 1e-10,
               Spec::Le, [cont] { return cont().max_increase; }});
  v.push_back({"continuation_above_cap", "min (u_j - cap) over all iterates", 0.0, Spec::Gt, [cont] {
                 double m = std::numeric_limits<double>::infinity();
                 for (const auto& it : cont().iterates)
                   for (int i = 0; i < it.grid.nx; ++i) {
                     const double r = it.grid.x(i);
                     m = std::min(m, it.values[i] - std::sqrt(std::max(0.0, 0.25 - r * r)));
                   }
                 return m;
               }});
  v.push_back({"boundary_gradient_bound", "max normal derivative minus mu k from the collar barrier", 0.0,
               Spec::Le, [] {
                 const double c = 0.8, rho = 0.1;
                 const auto s = solve(DomainSpec::ball(0.5, 65), BoundaryData::make_constant(c), 2, 1e-11);
                 const auto b = sample_collar_bounds(DiskData{0.5, [c](double) { return c; }}, rho);
                 const auto collar = collar_barrier_params(s.report.height_bounds.second, b, rho);
                 const auto g = boundary_gradient_check(s.u, collar.mu * collar.kpar);
                 return g.max_normal_derivative - g.bound;
               }});
  return v;
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "geometry") return Suite::Geometry;
  if (name == "profiles") return Suite::Profiles;
  if (name == "operator") return Suite::Operator;
  if (name == "dirichlet") return Suite::Dirichlet;
  if (name == "all") return Suite::All;
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

std::vector<Check> run_suite(Suite s, const VerifyOptions& opts) {
  require(opts.tol > 0.0, "tol must be positive");
  std::vector<Spec> specs;
  auto add = [&specs](std::vector<Spec> more) {
    for (auto& m : more) specs.push_back(std::move(m));
  };
  if (s == Suite::Geometry || s == Suite::All) add(geometry_specs(opts));
  if (s == Suite::Profiles || s == Suite::All) add(profile_specs(opts));
  if (s == Suite::Operator || s == Suite::All) add(operator_specs(opts));
  if (s == Suite::Dirichlet || s == Suite::All) add(dirichlet_specs(opts));
  std::vector<Check> out;
  out.reserve(specs.size());
  for (const auto& sp : specs) out.push_back(run(sp));
  return out;
}

std::vector<Check> curve_checks(const std::filesystem::path& csv) {
  const auto c = io::read_profile(csv);
  std::vector<Check> out;
  if (c.kind == ProfileKind::Geodesic) {
    // rebuild enough of a GeodesicCurve to rerun the shape checks
    GeodesicCurve g;
    g.n = c.n;
    for (const auto& s : c.samples)
      g.samples.push_back({s.s, GeodesicState{s.z, s.rho, std::cos(s.alpha), std::sin(s.alpha)}});
    out.push_back(run({"curve_concavity", "largest upward deviation of z(w) from its chords", 1e-8, Spec::Le,
                       [&g] { return concavity_defect(g); }}));
    return out;
  }
  const double recorded = c.residual_max;
  if (c.kind == ProfileKind::GrimReaper) {
    out.push_back(run({"curve_residual", "residual of the arclength system recomputed from the samples", 1e-6,
                       Spec::Lt, [&c] { return sample_residual(c); }}));
  } else {
    out.push_back(run({"curve_residual_round_trip",
                       "recomputed residual over the recorded residual_max (within a factor 2 either way)", 2.0,
                       Spec::Le, [&c, recorded] {
                         const double r = sample_residual(c);
                         if (recorded == 0.0) return r == 0.0 ? 1.0 : kNaN;
                         return std::max(r / recorded, recorded / r);
                       }}));
  }
  return out;
}

nlohmann::ordered_json emit_report(const std::vector<Check>& checks) {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["value"] = c.value;
    e["threshold"] = c.threshold;
    e["pass"] = c.pass;
    j["checks"].push_back(e);
    all = all && c.pass;
  }
  j["pass"] = all;
  return j;
}

}  // namespace horo
