#include "horo/geometry.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "horo/error.hpp"
#include "horo/ode.hpp"

namespace horo {

SolitonParams::SolitonParams(int n_, int k_) : n(n_), k(k_ == 0 ? n_ : k_) {
  require(n >= 2, "n must be at least 2");
  require(k >= 2 && k <= n, "k must lie in [2, n]");
}

Point::Point(double height, std::vector<double> horizontal, const SolitonParams& params)
    : x0(height), x(std::move(horizontal)) {
  require(x0 > 0.0, "x0 must be positive");
  require(static_cast<int>(x.size()) == params.n, "horizontal coordinates must have n entries");
}

double conformal_factor(double x0, double k, Base base) {
  require(x0 > 0.0 && k > 0.0, "conformal factor needs x0 > 0 and k > 0");
  const double lam = std::exp(1.0 / (k * x0));
  return base == Base::Hyperbolic ? lam : lam / x0;
}

double conformal_factor(const Point& p, const SolitonParams& params, Base base) {
  return conformal_factor(p.x0, params.k, base);
}

double sectional_curvature_axis(double x0, const SolitonParams& params, Plane plane,
                                CurvatureForm form) {
  require(x0 > 0.0, "x0 must be positive");
  const double k = params.k;
  const double kx = k * x0;
  const double damp = std::exp(-2.0 / kx);
  if (plane == Plane::VerticalPair) {
    if (form == CurvatureForm::Tabulated) return -damp * (2.0 + k) / kx;
    return -damp * (2.0 + kx) / kx;
  }
  if (form == CurvatureForm::Tabulated) return -damp * (1.0 + kx) / k;
  return -damp * (1.0 + kx) * (1.0 + kx) / (kx * kx);
}

double sectional_curvature_mixed(double x0, const SolitonParams& params, double theta,
                                 CurvatureForm form) {
  require(theta > 0.0 && theta < 2.0 * M_PI, "theta must lie in (0, 2 pi)");
  const double s = std::sin(theta), c = std::cos(theta);
  return s * s * sectional_curvature_axis(x0, params, Plane::VerticalPair, form) +
         c * c * sectional_curvature_axis(x0, params, Plane::HorizontalPair, form);
}

GeodesicDerivative geodesic_rhs(const GeodesicState& s, double n) {
  if (!(s.z > 0.0)) throw Error(ErrorKind::NonpositiveHeight, "geodesic state needs z > 0");
  const double c = (1.0 + n * s.z) / (n * s.z * s.z);
  return {s.dz, s.dw, c * (s.dz * s.dz - s.dw * s.dw), 2.0 * c * s.dz * s.dw};
}

GeodesicDerivative geodesic_rhs(const GeodesicState& s, const SolitonParams& params) {
  return geodesic_rhs(s, static_cast<double>(params.n));
}

namespace {

using Vec4 = ode::State<4>;

Vec4 pack(const GeodesicState& s) { return {s.z, s.w, s.dz, s.dw}; }
GeodesicState unpack(const Vec4& y) { return {y[0], y[1], y[2], y[3]}; }

ode::Tolerances tolerances(double tol) {
  ode::Tolerances t;
  t.rel_tol = tol;
  t.abs_tol = tol;
  return t;
}

auto rhs_for(double n) {
  return [n](double, const Vec4& y, Vec4& dy) {
    if (!(y[0] > 0.0)) return false;
    const auto d = geodesic_rhs(unpack(y), n);
    dy = {d.dz, d.dw, d.ddz, d.ddw};
    return true;
  };
}

// One side of the curve, from t = 0 outwards. Returns true when the floor stopped it.
bool integrate_side(const GeodesicState& init, double n, double t_end, double tol, double z_floor,
                    std::vector<GeodesicSample>& out) {
  bool floor = false;
  auto obs = [&](double t, const Vec4& y) {
    out.push_back({t, unpack(y)});
    if (y[0] < z_floor) {
      floor = true;
      return false;
    }
    return true;
  };
  ode::integrate<4>(rhs_for(n), 0.0, pack(init), t_end, tolerances(tol), obs);
  return floor;
}

}  // namespace

GeodesicCurve integrate_geodesic(const GeodesicState& init, const SolitonParams& params,
                                 double t_begin, double t_end, double tol,
                                 const GeodesicOptions& opts) {
  require(tol > 0.0, "tolerance must be positive");
  require(t_begin <= 0.0 && t_end >= 0.0 && t_end > t_begin, "t_span must contain 0");
  require(opts.z_floor > 0.0, "z_floor must be positive");
  if (!(init.z > 0.0)) throw Error(ErrorKind::NonpositiveHeight, "initial z must be positive");

  GeodesicCurve c;
  c.n = params.n;
  c.tol = tol;
  const double n = params.n;
  std::vector<GeodesicSample> back, fwd;
  bool floor = false;
  if (t_begin < 0.0) floor |= integrate_side(init, n, t_begin, tol, opts.z_floor, back);
  if (t_end > 0.0) floor |= integrate_side(init, n, t_end, tol, opts.z_floor, fwd);
  c.samples.assign(back.rbegin(), back.rend());
  if (!c.samples.empty() && !fwd.empty()) c.samples.pop_back();  // t = 0 appears on both sides
  c.samples.insert(c.samples.end(), fwd.begin(), fwd.end());
  c.termination = floor ? GeodesicTermination::Floor : GeodesicTermination::Span;
  return c;
}

GeodesicState GeodesicCurve::state_at(double t) const {
  if (samples.empty()) throw Error(ErrorKind::InsufficientSamples, "empty curve");
  auto it = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const GeodesicSample& s, double v) { return s.t < v; });
  if (it == samples.end()) it = std::prev(samples.end());
  if (it != samples.begin() && std::abs(std::prev(it)->t - t) < std::abs(it->t - t)) --it;
  if (it->t == t) return it->state;
  Vec4 last = pack(it->state);
  auto obs = [&](double, const Vec4& y) {
    last = y;
    return true;
  };
  ode::integrate<4>(rhs_for(n), it->t, pack(it->state), t, tolerances(tol), obs);
  return unpack(last);
}

bool GeodesicCurve::vertical() const {
  return std::all_of(samples.begin(), samples.end(),
                     [](const GeodesicSample& s) { return s.state.dw == 0.0; });
}

double GeodesicCurve::apex_parameter() const {
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = samples[i].state.dz, b = samples[i + 1].state.dz;
    if (a == 0.0) return samples[i].t;
    if (a > 0.0 && b <= 0.0) {
      if (b == 0.0) return samples[i + 1].t;
      boost::math::tools::eps_tolerance<double> stop(50);
      std::uintmax_t iters = 100;
      auto [lo, hi] = boost::math::tools::toms748_solve(
          [this](double t) { return state_at(t).dz; }, samples[i].t, samples[i + 1].t, a, b, stop,
          iters);
      return 0.5 * (lo + hi);
    }
  }
  throw Error(ErrorKind::InsufficientSamples, "curve has no interior maximum of z");
}

double symmetry_defect(const GeodesicCurve& c) {
  if (c.vertical()) return 0.0;
  const double ta = c.apex_parameter();
  const GeodesicState apex = c.state_at(ta);
  const double t_lo = c.samples.front().t, t_hi = c.samples.back().t;
  double worst = 0.0;
  for (const auto& s : c.samples) {
    const double tm = 2.0 * ta - s.t;
    if (tm < t_lo || tm > t_hi) continue;
    const GeodesicState m = c.state_at(tm);
    worst = std::max(worst, std::hypot(m.z - s.state.z, (2.0 * apex.w - m.w) - s.state.w));
  }
  return worst;
}

double concavity_defect(const GeodesicCurve& c) {
  double worst = -std::numeric_limits<double>::infinity();
  const auto& p = c.samples;
  for (std::size_t i = 2; i < p.size(); ++i) {
    const auto &a = p[i - 2].state, &b = p[i - 1].state, &d = p[i].state;
    if (a.w == b.w || b.w == d.w) continue;
    const double slope = (b.z - a.z) / (b.w - a.w);
    worst = std::max(worst, d.z - (b.z + slope * (d.w - b.w)));
  }
  return worst;
}

EndSlopes end_slopes(const GeodesicCurve& c) {
  if (c.samples.size() < 8) throw Error(ErrorKind::InsufficientSamples, "too few samples");
  auto slope = [](const GeodesicState& s) { return std::abs(s.dw / s.dz); };
  EndSlopes e;
  e.first = slope(c.samples.front().state);
  e.last = slope(c.samples.back().state);
  e.z_first = c.samples.front().state.z;
  e.z_last = c.samples.back().state.z;
  const std::size_t q = c.samples.size() / 4;
  for (std::size_t i = 1; i < q; ++i) {
    // towards the start the slope must shrink as i decreases, towards the end as i grows
    if (slope(c.samples[i - 1].state) > slope(c.samples[i].state)) e.monotone = false;
    const std::size_t j = c.samples.size() - 1 - i;
    if (slope(c.samples[j + 1].state) > slope(c.samples[j].state)) e.monotone = false;
  }
  return e;
}

namespace {

struct Target {
  double n, k;
  bool identity;

  // lambda relative to the hyperbolic metric
  double lambda(double u) const { return identity ? 1.0 : std::exp(1.0 / (k * u)); }
  // G'/G for the weighted area density G(u) = Lambda(u)^n, Lambda = lambda / u
  double dlog_g(double u) const { return (identity ? 0.0 : -n / (k * u * u)) - n / u; }
  // G(a) / G(b)
  double g_ratio(double a, double b) const {
    const double e = identity ? 0.0 : n / k * (1.0 / a - 1.0 / b);
    return std::exp(e + n * std::log(b / a));
  }
};

}  // namespace

ConformalCheck conformal_mean_curvature_check(const GridFunction& u, const SolitonParams& params,
                                              double fd_step, ConformalTarget target) {
  const Grid& g = u.grid;
  require(g.layout != Layout::Radial, "conformal check needs a line or planar grid");
  require(fd_step > 0.0, "fd_step must be positive");
  u.validate();
  auto multiple = [&](double h) {
    const double m = fd_step / h;
    const double r = std::round(m);
    if (r < 1.0 || std::abs(m - r) > 1e-9 * m)
      throw Error(ErrorKind::DegenerateStencil, "fd_step must be a positive multiple of the grid spacing");
    return static_cast<int>(r);
  };
  const bool plane = g.layout == Layout::Plane;
  if (g.nx < 5 || (plane && g.ny < 5))
    throw Error(ErrorKind::DegenerateStencil, "need at least 5 nodes per axis");
  const int mx = multiple(g.dx);
  const int my = plane ? multiple(g.dy) : 0;

  const Target tg{static_cast<double>(params.n), static_cast<double>(params.k),
                  target == ConformalTarget::Identity};
  const double n = tg.n, s = fd_step;

  ConformalCheck out;
  std::vector<double> diff;
  std::vector<std::pair<int, int>> nodes;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      auto active = [&](int di, int dj) {
        const int a = i + di * mx, b = j + dj * my;
        return a >= 0 && a < g.nx && b >= 0 && b < g.ny && g.role[g.index(a, b)] != NodeRole::Outside;
      };
      auto at = [&](int di, int dj) { return u.values[g.index(i + di * mx, j + dj * my)]; };
      bool ok = active(0, 0) && active(1, 0) && active(-1, 0);
      if (plane)
        for (int dj = -1; dj <= 1 && ok; ++dj)
          for (int di = -1; di <= 1 && ok; ++di) ok = active(di, dj);
      if (!ok) continue;

      const double c = at(0, 0);
      double h_direct = 0.0, h_hyp = 0.0, w_c = 1.0;
      if (!plane) {
        const double e = at(1, 0), w = at(-1, 0);
        const double gx = (e - w) / (2.0 * s);
        w_c = std::sqrt(1.0 + gx * gx);
        auto flux = [&](double a, double b) {  // face between a (near c) and b
          const double gr = (b - a) / s;
          return tg.g_ratio(0.5 * (a + b), c) * gr / std::sqrt(1.0 + gr * gr);
        };
        const double div = (flux(c, e) - flux(w, c)) / s;
        // E / G(c); h = -E / Lambda^{n+1} = -(E / G) / Lambda
        const double e_over_g = tg.dlog_g(c) * w_c - div;
        h_direct = -e_over_g * c / tg.lambda(c);
        StencilSample st{c, {gx}, {(e - 2.0 * c + w) / (s * s)}};
        h_hyp = mean_curvature_graph(st, params.n);
      } else {
        const double e = at(1, 0), w = at(-1, 0), nn = at(0, 1), so = at(0, -1);
        const double ne = at(1, 1), nw = at(-1, 1), se = at(1, -1), sw = at(-1, -1);
        const double gx = (e - w) / (2.0 * s), gy = (nn - so) / (2.0 * s);
        w_c = std::sqrt(1.0 + gx * gx + gy * gy);
        auto flux = [&](double a, double b, double normal, double transverse) {
          return tg.g_ratio(0.5 * (a + b), c) * normal /
                 std::sqrt(1.0 + normal * normal + transverse * transverse);
        };
        const double fe = flux(c, e, (e - c) / s, (nn + ne - so - se) / (4.0 * s));
        const double fw = flux(w, c, (c - w) / s, (nn + nw - so - sw) / (4.0 * s));
        const double fn = flux(c, nn, (nn - c) / s, (e + ne - w - nw) / (4.0 * s));
        const double fs = flux(so, c, (c - so) / s, (e + se - w - sw) / (4.0 * s));
        const double div = (fe - fw + fn - fs) / s;
        const double e_over_g = tg.dlog_g(c) * w_c - div;
        h_direct = -e_over_g * c / tg.lambda(c);
        const double hxy = (ne - se - nw + sw) / (4.0 * s * s);
        StencilSample st{c,
                         {gx, gy},
                         {(e - 2.0 * c + w) / (s * s), hxy, hxy, (nn - 2.0 * c + so) / (s * s)}};
        h_hyp = mean_curvature_graph(st, params.n);
      }
      const double h_conf =
          tg.identity ? h_hyp : (h_hyp + n / (tg.k * c * w_c)) / tg.lambda(c);
      out.h_direct.push_back(h_direct);
      out.h_conformal.push_back(h_conf);
      out.h_hyperbolic.push_back(h_hyp);
      diff.push_back(h_direct - h_conf);
      nodes.emplace_back(i, j);
    }
  if (diff.empty()) throw Error(ErrorKind::DegenerateStencil, "no node admits the requested stencil");
  out.discrepancy = make_report(std::move(diff), std::move(nodes), kDefaultClassificationTol);
  return out;
}

}  // namespace horo
