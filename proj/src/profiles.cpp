#include "horo/profiles.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "horo/error.hpp"
#include "horo/ode.hpp"
#include "horo/quadrature.hpp"

namespace horo {

const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::GrimReaper: return "grim";
    case ProfileKind::Bowl: return "bowl";
    case ProfileKind::WingUpper: return "wing_upper";
    case ProfileKind::WingLower: return "wing_lower";
    case ProfileKind::Geodesic: return "geodesic";
  }
  return "unknown";
}

void ShootingConfig::validate(double h) const {
  require(rel_tol > 0.0 && abs_tol > 0.0 && z_floor > 0.0 && max_steps > 0, "shooting tolerances must be positive");
  require(samples_per_decade > 0, "samples_per_decade must be positive");
  require(series_radius >= 0.0 && series_radius_for(h) < 0.1 * h, "series radius must be below 0.1 h");
  require(z_floor < 0.1 * h, "z_floor must be well below the tip height");
}

double ShootingConfig::series_radius_for(double h) const {
  return series_radius > 0.0 ? series_radius : 1e-3 * std::min(h, 1.0);
}

namespace {

constexpr double kQuadTol = 1e-13;

void check_height(double h, int n) {
  if (!(h > 0.0)) throw Error(ErrorKind::NonpositiveHeight, "tip height must be positive");
  require(n >= 1, "n must be positive");
}

// With t = h s and s = 1 - sigma^2: log(s^{-2n} e^{2 (1 - s) / (h s)}).
double grim_exponent(double sigma, double h, int n) {
  const double s2 = sigma * sigma;
  return -2.0 * n * std::log1p(-s2) + 2.0 * s2 / (h * (1.0 - s2));
}

// 2 sigma {e^E - 1}^{-1/2}, with its limit at sigma = 0
double grim_phi_integrand(double sigma, double h, int n) {
  if (sigma == 0.0) return 2.0 / std::sqrt(2.0 * n + 2.0 / h);
  const double e = grim_exponent(sigma, h, n);
  if (e > 1400.0) return 0.0;
  return 2.0 * sigma / std::sqrt(std::expm1(e));
}

// 2 sigma sqrt(1 + phi'^2) = 2 sigma {1 - e^{-E}}^{-1/2}
double grim_arc_integrand(double sigma, double h, int n) {
  if (sigma == 0.0) return 2.0 / std::sqrt(2.0 * n + 2.0 / h);
  const double e = grim_exponent(sigma, h, n);
  return 2.0 * sigma / std::sqrt(-std::expm1(-e));
}

}  // namespace

double grim_phi(double z, double h, int n) {
  check_height(h, n);
  require(z > 0.0 && z <= h, "grim_phi needs 0 < z <= h");
  if (z == h) return 0.0;
  const double top = std::sqrt((h - z) / h);
  return h * quad::integrate([&](double s) { return grim_phi_integrand(s, h, n); }, 0.0, top, kQuadTol).value;
}

double grim_phi_prime(double z, double h, int n) {
  check_height(h, n);
  require(z > 0.0 && z <= h, "grim_phi_prime needs 0 < z <= h");
  const double e = -2.0 * n * std::log(z / h) + 2.0 * (h - z) / (h * z);
  if (e > 1400.0) return -0.0;
  return -1.0 / std::sqrt(std::expm1(e));
}

double grim_width(double h, int n) {
  check_height(h, n);
  return 2.0 * h * quad::integrate([&](double s) { return grim_phi_integrand(s, h, n); }, 0.0, 1.0, kQuadTol).value;
}

double grim_arclength(double z, double h, int n) {
  check_height(h, n);
  require(z > 0.0 && z <= h, "grim_arclength needs 0 < z <= h");
  if (z == h) return 0.0;
  const double top = std::sqrt((h - z) / h);
  return h * quad::integrate([&](double s) { return grim_arc_integrand(s, h, n); }, 0.0, top, kQuadTol).value;
}

namespace {

struct RelTol {
  double tol;
  bool operator()(double a, double b) const { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }
};

// Expands geometrically from `guess` until f changes sign inside [lo, hi], then solves.
template <class F>
double monotone_root(F&& f, double guess, double lo, double hi, double tol, const char* what) {
  double a = guess, fa = f(a);
  double b = a, fb = fa;
  if (fa == 0.0) return a;
  const double step = fa < 0.0 ? 2.0 : 0.5;  // f increasing
  while (true) {
    b = a * step;
    if (b < lo || b > hi) throw Error(ErrorKind::BracketFailure, std::string("no bracket for ") + what);
    fb = f(b);
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) break;
    a = b;
    fa = fb;
  }
  if (fb == 0.0) return b;
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  std::uintmax_t iters = 200;
  auto [x0, x1] = boost::math::tools::toms748_solve(f, a, b, fa, fb, RelTol{tol}, iters);
  return 0.5 * (x0 + x1);
}

}  // namespace

double grim_height_for_width(double w, int n, double tol) {
  require(w > 0.0 && tol > 0.0, "width and tolerance must be positive");
  // width(h) is close to linear in h for large h, sublinear for small h
  const double guess = std::clamp(w / grim_width(1.0, n), 1e-6, 1e6);
  return monotone_root([&](double h) { return grim_width(h, n) - w; }, guess, 1e-6, 1e6, tol, "grim width");
}

double grim_u(double x, double h, int n) {
  check_height(h, n);
  const double ax = std::abs(x);
  if (ax == 0.0) return h;
  auto f = [&](double z) { return grim_phi(z, h, n) - ax; };
  double lo = 0.5 * h;
  double flo = f(lo);
  while (flo < 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw Error(ErrorKind::BracketFailure, "point lies outside the grim reaper");
    flo = f(lo);
  }
  if (flo == 0.0) return lo;
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, h, flo, -ax, boost::math::tools::eps_tolerance<double>(50),
                                                  iters);
  return 0.5 * (a + b);
}

double grim_ode_residual(double h, int n, int points) {
  check_height(h, n);
  require(points >= 2, "need at least two points");
  const double d = 1e-3 * h;
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double z = h * (0.05 + 0.75 * i / (points - 1));
    double f[5];
    for (int k = 0; k < 5; ++k) f[k] = grim_phi(z + (k - 2) * d, h, n);
    const double p1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * d);
    const double p2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * d * d);
    const double r = p2 / (1.0 + p1 * p1) - (n * z + 1.0) / (z * z) * p1;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

ProfileCurve grim_curve(double h, int n, int samples) {
  check_height(h, n);
  require(samples >= 2, "need at least two samples");
  ProfileCurve c;
  c.kind = ProfileKind::GrimReaper;
  c.n = n;
  c.h = h;
  c.r2 = 0.5 * grim_width(h, n);
  c.endpoints = std::make_pair(-*c.r2, *c.r2);
  for (int i = 0; i < samples; ++i) {
    const double sigma = static_cast<double>(i) / samples;
    const double z = i == 0 ? h : h * (1.0 - sigma * sigma);
    const double slope = i == 0 ? -std::numeric_limits<double>::infinity() : grim_phi_prime(z, h, n);
    c.samples.push_back({grim_arclength(z, h, n), z, grim_phi(z, h, n), std::atan2(-slope, -1.0)});
  }
  c.residual_max = grim_ode_residual(h, n);
  return c;
}

ArcState arclength_rhs(const ArcState& s, int n, bool rotational) {
  if (!(s.z > 0.0)) throw Error(ErrorKind::NonpositiveHeight, "arclength system needs z > 0");
  require(!rotational || s.rho > 0.0, "rotational system needs rho > 0");
  const double sa = std::sin(s.alpha), ca = std::cos(s.alpha);
  double da = (1.0 + n * s.z) * sa / (s.z * s.z);
  if (rotational) da += (n - 1) * ca / s.rho;
  return {ca, sa, da};
}

std::pair<double, double> bowl_series(double h, int n) {
  check_height(h, n);
  const double a = -(1.0 + n * h) / (2.0 * n * h * h);
  const double dg = 2.0 / (h * h * h) + n / (h * h);  // -(d/du) (1 + n u) / u^2 at h
  const double b = (dg * a + 8.0 * a * a * a) / (4.0 * n + 8.0);
  return {a, b};
}

namespace {

struct Branch {
  std::vector<ProfileSample> samples;
  std::vector<double> kappa;  // phi'' / (1 + phi'^2), NaN where undefined
  double phi0 = 0.0;          // extrapolated rho at z = 0+
};

// Shoots from `start` (at arclength s0) until z_floor. Above the switch the
// arclength system is integrated; once the curve descends steeply enough
// below h/2, the graph rho = phi(z) is continued in tau = 1/z, where the
// approach to the boundary is no longer stiff.
Branch shoot(const ArcState& start, double s0, int n, double h, const ShootingConfig& cfg, bool guard_axis) {
  Branch br;
  ode::Tolerances tol;
  tol.rel_tol = cfg.rel_tol;
  tol.abs_tol = cfg.abs_tol;
  tol.max_steps = cfg.max_steps;

  auto arc_rhs = [n](double, const ode::State<3>& y, ode::State<3>& dy) {
    if (!(y[0] > 0.0) || !(y[1] > 0.0)) return false;
    const double sa = std::sin(y[2]), ca = std::cos(y[2]);
    dy = {ca, sa, (1.0 + n * y[0]) * sa / (y[0] * y[0]) + (n - 1) * ca / y[1]};
    return true;
  };
  auto kappa_arc = [&](const ode::State<3>& y) {
    const double ca = std::cos(y[2]);
    if (std::abs(ca) < 1e-8) return std::numeric_limits<double>::quiet_NaN();
    ode::State<3> dy{};
    arc_rhs(0.0, y, dy);
    return dy[2] / ca;
  };

  bool axis = false;
  ode::State<3> last{};
  double s_last = s0;
  auto obs = [&](double s, const ode::State<3>& y) {
    br.samples.push_back({s, y[0], y[1], y[2]});
    br.kappa.push_back(kappa_arc(y));
    last = y;
    s_last = s;
    if (guard_axis && y[1] < 1e-6 * h) {
      axis = true;
      return false;
    }
    return !(y[0] < 0.5 * h && std::cos(y[2]) < -0.1);
  };
  const auto out = ode::integrate<3>(arc_rhs, s0, {start.z, start.rho, start.alpha}, 1e6, tol, obs);
  if (axis) throw Error(ErrorKind::BranchMisclassified, "branch reached the rotation axis");
  if (out.termination != ode::Termination::Observer)
    throw Error(ErrorKind::StepFailure, "branch did not descend towards the boundary");

  // tau chart: state (phi, phi', s)
  const double center = M_PI * std::round(last[2] / M_PI);
  const double tau0 = 1.0 / last[0], tau1 = 1.0 / cfg.z_floor;
  std::vector<double> stops;
  if (tau1 > tau0) {
    const double step = std::pow(10.0, 1.0 / cfg.samples_per_decade);
    for (double z = last[0] / step; z > cfg.z_floor; z /= step) stops.push_back(1.0 / z);
    stops.push_back(tau1);
  }
  auto tau_rhs = [n](double t, const ode::State<3>& y, ode::State<3>& dy) {
    if (!(y[0] > 0.0)) return false;
    const double z = 1.0 / t, p = y[1];
    dy = {-p * z * z, -(1.0 + p * p) * ((1.0 + n * z) * p + (n - 1) * z * z / y[0]),
          std::sqrt(1.0 + p * p) * z * z};
    return true;
  };
  std::size_t next = 0;
  ode::State<3> y_end = {last[1], std::tan(last[2]), s_last};
  auto tau_obs = [&](double t, const ode::State<3>& y) {
    y_end = y;
    if (next < stops.size() && t == stops[next]) {
      ++next;
      const double z = 1.0 / t;
      br.samples.push_back({y[2], z, y[0], center + std::atan(y[1])});
      br.kappa.push_back((1.0 + n * z) * y[1] / (z * z) + (n - 1) / y[0]);
    }
    return true;
  };
  if (!stops.empty()) ode::integrate<3>(tau_rhs, tau0, y_end, tau1, tol, tau_obs, stops);
  const double zf = 1.0 / std::max(tau1, tau0);
  br.phi0 = y_end[0] + (n - 1) * zf * zf * zf / (3.0 * y_end[0]);
  return br;
}

int sign_changes(const std::vector<double>& kappa, std::size_t from, std::vector<std::size_t>* where = nullptr) {
  int changes = 0, prev = 0;
  for (std::size_t i = from; i < kappa.size(); ++i) {
    const double k = kappa[i];
    if (!std::isfinite(k) || k == 0.0) continue;
    const int s = k > 0.0 ? 1 : -1;
    if (prev != 0 && s != prev) {
      ++changes;
      if (where) where->push_back(i);
    }
    prev = s;
  }
  return changes;
}

}  // namespace

ProfileCurve bowl_shoot(double h, int n, const ShootingConfig& cfg) {
  check_height(h, n);
  require(n >= 2, "rotational profiles need n >= 2");
  cfg.validate(h);
  const double r0 = cfg.series_radius_for(h);
  const auto [a, b] = bowl_series(h, n);
  if (std::abs(b) * std::pow(r0, 4) > 1e-9)
    throw Error(ErrorKind::SeriesRadiusTooLarge, "series start disagrees with the quadratic patch");
  const double u = h + a * r0 * r0 + b * std::pow(r0, 4);
  const double up = 2.0 * a * r0 + 4.0 * b * r0 * r0 * r0;
  const double s0 = r0 + 2.0 / 3.0 * a * a * r0 * r0 * r0;

  ProfileCurve c;
  c.kind = ProfileKind::Bowl;
  c.n = n;
  c.h = h;
  c.samples.push_back({0.0, h, 0.0, 0.5 * M_PI});
  Branch br = shoot({u, r0, std::atan2(1.0, up)}, s0, n, h, cfg, false);
  c.samples.insert(c.samples.end(), br.samples.begin(), br.samples.end());
  c.r2 = br.phi0;
  c.residual_max = sample_residual(c);
  return c;
}

std::vector<std::pair<double, double>> bowl_graph(double h, int n, const std::vector<double>& rho,
                                                  const ShootingConfig& cfg) {
  check_height(h, n);
  cfg.validate(h);
  const double r0 = cfg.series_radius_for(h);
  const auto [a, b] = bowl_series(h, n);
  std::vector<std::pair<double, double>> out(rho.size());
  std::vector<std::size_t> order(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rho[x] < rho[y]; });
  std::vector<double> stops;
  for (std::size_t i : order) {
    require(rho[i] >= 0.0, "radii must be nonnegative");
    if (rho[i] <= r0) {
      const double r = rho[i];
      out[i] = {h + a * r * r + b * r * r * r * r, 2.0 * a * r + 4.0 * b * r * r * r};
    } else if (stops.empty() || rho[i] > stops.back()) {
      stops.push_back(rho[i]);
    }
  }
  if (stops.empty()) return out;
  ode::Tolerances tol;
  tol.rel_tol = cfg.rel_tol;
  tol.abs_tol = cfg.abs_tol;
  tol.max_steps = cfg.max_steps;
  auto rhs = [n](double r, const ode::State<2>& y, ode::State<2>& dy) {
    if (!(y[0] > 0.0)) return false;
    const double p = y[1];
    dy = {p, (1.0 + p * p) * (-(1.0 + n * y[0]) / (y[0] * y[0]) - (n - 1) * p / r)};
    return true;
  };
  std::vector<std::pair<double, double>> at_stops;
  std::size_t next = 0;
  auto obs = [&](double r, const ode::State<2>& y) {
    if (next < stops.size() && r == stops[next]) {
      at_stops.push_back({y[0], y[1]});
      ++next;
    }
    return true;
  };
  const double u0 = h + a * r0 * r0 + b * std::pow(r0, 4);
  const double p0 = 2.0 * a * r0 + 4.0 * b * r0 * r0 * r0;
  ode::integrate<2>(rhs, r0, {u0, p0}, stops.back(), tol, obs, stops);
  for (std::size_t i : order) {
    if (rho[i] <= r0) continue;
    const auto it = std::lower_bound(stops.begin(), stops.end(), rho[i]);
    out[i] = at_stops[static_cast<std::size_t>(it - stops.begin())];
  }
  return out;
}

double bowl_tip_curvature(const ProfileCurve& bowl) {
  require(bowl.kind == ProfileKind::Bowl && bowl.samples.size() > 6, "needs a shot bowl");
  const double r0 = bowl.samples[1].rho;
  // u'' = -alpha' / sin^3 alpha, fitted as c0 + c1 rho^2
  std::vector<double> x, y;
  for (std::size_t i = 1; i < bowl.samples.size(); ++i) {
    const auto& s = bowl.samples[i];
    if (s.rho > 20.0 * r0 && x.size() >= 4) break;
    const double da = arclength_rhs({s.z, s.rho, s.alpha}, bowl.n, true).alpha;
    const double sa = std::sin(s.alpha);
    x.push_back(s.rho * s.rho);
    y.push_back(-da / (sa * sa * sa));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return my - sxy / sxx * mx;
}

double r2_of_h(double h, int n, const ShootingConfig& cfg) { return *bowl_shoot(h, n, cfg).r2; }

double h_of_r2(double r, int n, double tol, const ShootingConfig& cfg) {
  require(r > 0.0 && tol > 0.0, "radius and tolerance must be positive");
  return monotone_root([&](double h) { return r2_of_h(h, n, cfg) - r; }, 1.0, 1e-6, 1e6, tol, "bowl radius");
}

namespace {

// Hermite interpolation of the sample coordinates on [s_i, s_{i+1}].
double coord(const ProfileSample& p, Coord c) {
  switch (c) {
    case Coord::S: return p.s;
    case Coord::Z: return p.z;
    case Coord::Rho: return p.rho;
  }
  return 0.0;
}
double dcoord(const ProfileSample& p, Coord c) {
  switch (c) {
    case Coord::S: return 1.0;
    case Coord::Z: return std::cos(p.alpha);
    case Coord::Rho: return std::sin(p.alpha);
  }
  return 0.0;
}
double hermite(const ProfileSample& a, const ProfileSample& b, Coord c, double s) {
  const double L = b.s - a.s, t = (s - a.s) / L;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * coord(a, c) + h10 * L * dcoord(a, c) + h01 * coord(b, c) + h11 * L * dcoord(b, c);
}

}  // namespace

std::optional<double> interpolate(const ProfileCurve& c, Coord known, double value, Coord wanted) {
  const auto& p = c.samples;
  if (p.size() < 2) return std::nullopt;
  const bool increasing = coord(p.back(), known) > coord(p.front(), known);
  auto key = [&](const ProfileSample& q) { return increasing ? coord(q, known) : -coord(q, known); };
  const double v = increasing ? value : -value;
  if (v < key(p.front()) || v > key(p.back())) return std::nullopt;
  auto it = std::lower_bound(p.begin(), p.end(), v, [&](const ProfileSample& q, double x) { return key(q) < x; });
  if (it == p.begin()) return coord(*it, wanted);
  const auto& b = *it;
  const auto& a = *std::prev(it);
  if (key(b) == v) return coord(b, wanted);
  auto f = [&](double s) { return hermite(a, b, known, s) - value; };
  const double fa = coord(a, known) - value, fb = coord(b, known) - value;
  std::uintmax_t iters = 100;
  auto [x0, x1] = boost::math::tools::toms748_solve(f, a.s, b.s, fa, fb,
                                                    boost::math::tools::eps_tolerance<double>(50), iters);
  return hermite(a, b, wanted, 0.5 * (x0 + x1));
}

double sample_residual(const ProfileCurve& c) {
  const bool rotational = c.kind != ProfileKind::GrimReaper && c.kind != ProfileKind::Geodesic;
  require(c.kind != ProfileKind::Geodesic, "geodesics are not solution curves of the profile system");
  const auto& p = c.samples;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < p.size(); ++i) {
    if (p[i].z <= 0.05 * c.h || (rotational && p[i].rho <= 0.0)) continue;
    // derivative at s_i of the quartic through the five neighbours
    double d = 0.0;
    for (std::size_t j = i - 2; j <= i + 2; ++j) {
      if (j == i) continue;
      double w = 1.0 / (p[j].s - p[i].s);
      for (std::size_t k = i - 2; k <= i + 2; ++k)
        if (k != i && k != j) w *= (p[i].s - p[k].s) / (p[j].s - p[k].s);
      d += w * (p[j].alpha - p[i].alpha);
    }
    const double rhs = arclength_rhs({p[i].z, p[i].rho, p[i].alpha}, c.n, rotational).alpha;
    worst = std::max(worst, std::abs(d - rhs));
  }
  return worst;
}

int curvature_sign_changes(const ProfileCurve& c) {
  const bool rotational = c.kind != ProfileKind::GrimReaper;
  std::vector<double> kappa;
  for (std::size_t i = 1; i < c.samples.size(); ++i) {
    const auto& s = c.samples[i];
    if (s.z < 0.01 * c.h) break;
    const double ca = std::cos(s.alpha);
    if (std::abs(ca) < 1e-8) continue;
    kappa.push_back(arclength_rhs({s.z, s.rho, s.alpha}, c.n, rotational).alpha / ca);
  }
  return sign_changes(kappa, 0);
}

WingPair wing_shoot(double R, double h, int n, const ShootingConfig& cfg) {
  check_height(h, n);
  require(R > 0.0, "tip radius must be positive");
  require(n >= 2, "rotational profiles need n >= 2");
  cfg.validate(h);

  Branch up = shoot({h, R, 0.5 * M_PI}, 0.0, n, h, cfg, false);
  Branch lo = shoot({h, R, -0.5 * M_PI}, 0.0, n, h, cfg, true);

  // outer branch: concave all the way down
  if (sign_changes(up.kappa, 1) != 0)
    throw Error(ErrorKind::BranchMisclassified, "outer branch is not concave");
  // inner branch: convex below the tip, then one inflection
  std::vector<std::size_t> flips;
  std::size_t first = 1;
  while (first < lo.kappa.size() && !std::isfinite(lo.kappa[first])) ++first;
  if (sign_changes(lo.kappa, 1, &flips) != 1 || !(lo.kappa[first] > 0.0))
    throw Error(ErrorKind::BranchMisclassified, "inner branch does not change from convex to concave once");
  const std::size_t k = flips.front();
  std::size_t j = k - 1;
  while (!std::isfinite(lo.kappa[j])) --j;
  const double lambda0 =
      lo.samples[j].z + (lo.samples[k].z - lo.samples[j].z) * lo.kappa[j] / (lo.kappa[j] - lo.kappa[k]);

  // closest approach to the axis: alpha crosses -pi exactly once
  int crossings = 0;
  std::pair<double, double> min_point;
  for (std::size_t i = 1; i < lo.samples.size(); ++i) {
    const double a = lo.samples[i - 1].alpha + M_PI, b = lo.samples[i].alpha + M_PI;
    if (a > 0.0 && b <= 0.0) {
      ++crossings;
      const double s = lo.samples[i - 1].s + (lo.samples[i].s - lo.samples[i - 1].s) * a / (a - b);
      min_point = {hermite(lo.samples[i - 1], lo.samples[i], Coord::Z, s),
                   hermite(lo.samples[i - 1], lo.samples[i], Coord::Rho, s)};
    }
  }
  if (crossings != 1) throw Error(ErrorKind::BranchMisclassified, "inner branch has no unique closest point");
  if (!(lambda0 > 0.0 && lambda0 < min_point.first))
    throw Error(ErrorKind::BranchMisclassified, "inflection is not below the closest point");

  WingPair w;
  auto common = [&](ProfileCurve& c) {
    c.n = n;
    c.h = h;
    c.R = R;
    c.endpoints = std::make_pair(up.phi0, lo.phi0);
    c.lambda0 = lambda0;
    c.min_point = min_point;
  };
  common(w.upper);
  common(w.lower);
  w.upper.kind = ProfileKind::WingUpper;
  w.upper.samples = std::move(up.samples);
  w.upper.r2 = up.phi0;
  w.upper.residual_max = sample_residual(w.upper);
  w.lower.kind = ProfileKind::WingLower;
  w.lower.samples = std::move(lo.samples);
  w.lower.r2 = lo.phi0;
  w.lower.residual_max = sample_residual(w.lower);
  return w;
}

CubicFit cubic_asymptote_check(const ProfileCurve& curve) {
  double zmin = std::numeric_limits<double>::infinity();
  for (const auto& s : curve.samples) zmin = std::min(zmin, s.z);
  std::vector<double> x, y;
  for (const auto& s : curve.samples)
    if (s.z <= 5.0 * zmin * (1.0 + 1e-12)) {
      x.push_back(s.z * s.z * s.z);
      y.push_back(s.rho);
    }
  if (x.size() < 5) throw Error(ErrorKind::InsufficientSamples, "fewer than 5 samples near the boundary");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  CubicFit f;
  f.coefficient = -sxy / sxx;
  f.phi0 = my + f.coefficient * mx;
  f.target = (curve.n - 1) / (3.0 * f.phi0);
  f.rel_error = std::abs(f.coefficient / f.target - 1.0);
  return f;
}

ProfileCurve to_profile_curve(const GeodesicCurve& g) {
  ProfileCurve c;
  c.kind = ProfileKind::Geodesic;
  c.n = g.n;
  c.h = 0.0;
  for (const auto& s : g.samples) {
    c.samples.push_back({s.t, s.state.z, s.state.w, std::atan2(s.state.dw, s.state.dz)});
    c.h = std::max(c.h, s.state.z);
  }
  return c;
}

}  // namespace horo
