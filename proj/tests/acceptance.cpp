// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance                      exit 0 iff every criterion passes
//   acceptance --known-failure 8    exit 0 iff exactly the listed criteria fail

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "horo/barriers.hpp"
#include "horo/dirichlet.hpp"
#include "horo/error.hpp"
#include "horo/geometry.hpp"
#include "horo/profiles.hpp"
#include "horo/soliton_operator.hpp"

using namespace horo;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::expect(bool ok, const char* fmt, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  if (!detail.empty()) detail += "; ";
  detail += buf;
  if (!ok) detail += " (!)";
  pass = pass && ok;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> body;
};

std::vector<double> radii(const Grid& g) {
  std::vector<double> r;
  for (int i = 0; i < g.nx; ++i) r.push_back(g.x(i));
  return r;
}

// 1
void grim_consistency(Outcome& o) {
  double res = 0.0, tip = 0.0, slope = 0.0;
  for (int n : {2, 3})
    for (double h : {0.5, 1.0, 2.0}) {
      res = std::max(res, grim_ode_residual(h, n, 100));
      tip = std::max(tip, std::abs(grim_phi(h, h, n)));
      for (int i = 1; i <= 100; ++i) slope = std::max(slope, std::abs(grim_phi_prime(h / 50 * i / 100.0, h, n)));
    }
  o.expect(res < 1e-8, "residual %.2e < 1e-8", res);
  o.expect(tip == 0.0, "phi(h) = %.1e", tip);
  o.expect(slope < 1e-6, "|phi'| below h/50 %.2e < 1e-6", slope);
}

// 2
void foliation(Outcome& o) {
  double dw = kInf;
  double prev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double w = grim_width(0.1 * std::pow(1.3, i), 2);
    if (i > 0) dw = std::min(dw, w - prev);
    prev = w;
  }
  o.expect(dw > 0.0, "min width increment %.3e", dw);

  const std::vector<double> hs{0.25, 0.5, 1.0, 2.0, 4.0};
  double dr = kInf;
  for (int n : {2, 3}) {
    double p = 0.0;
    for (double h : hs) {
      const double r = r2_of_h(h, n);
      if (p > 0.0) dr = std::min(dr, r - p);
      p = r;
    }
  }
  o.expect(dr > 0.0, "min r2 increment %.3e", dr);

  const double common = 0.9 * r2_of_h(hs.front(), 2);
  std::vector<double> rho;
  for (int i = 0; i <= 50; ++i) rho.push_back(common * i / 50.0);
  std::vector<std::vector<std::pair<double, double>>> g;
  for (double h : hs) g.push_back(bowl_graph(h, 2, rho));
  double gap = kInf;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      for (std::size_t i = 0; i < rho.size(); ++i) gap = std::min(gap, g[b][i].first - g[a][i].first);
  o.expect(gap > 0.0, "min pairwise bowl gap %.3e", gap);
}

// 3
void bowl_structure(Outcome& o) {
  const auto b = bowl_shoot(1.0, 2);
  double min_da = kInf;
  for (const auto& s : b.samples)
    if (s.rho > 0.0) min_da = std::min(min_da, arclength_rhs({s.z, s.rho, s.alpha}, 2, true).alpha);
  o.expect(min_da > 0.0, "min alpha' %.3e > 0 (u'' < 0)", min_da);
  const double k = bowl_tip_curvature(b);
  o.expect(std::abs(k + 1.5) < 1e-6, "u''(0) = %.10f vs -1.5", k);
  const double ang = std::abs(std::abs(b.samples.back().alpha) - M_PI);
  o.expect(ang < 1e-3, "terminal angle off vertical %.2e", ang);
}

// 4
void wing_structure(Outcome& o) {
  const int n = 2;
  const auto w = wing_shoot(0.5, 1.0, n);
  double gap = kInf;
  std::vector<double> zs;
  for (int i = 1; i < 200; ++i) zs.push_back(i / 200.0);
  for (int e = 3; e <= 5; ++e) zs.push_back(std::pow(10.0, -e));
  for (double z : zs) {
    const auto p1 = interpolate(w.lower, Coord::Z, z, Coord::Rho);
    const auto p2 = interpolate(w.upper, Coord::Z, z, Coord::Rho);
    gap = std::min(gap, p1 && p2 ? *p2 - *p1 : -kInf);
  }
  o.expect(gap > 0.0, "min phi2 - phi1 %.3e", gap);
  const double dq = std::abs(*w.upper.r2 - *w.lower.r2);
  o.expect(dq > 1e-3, "|q1 - q2| = %.4f", dq);
  const int changes = curvature_sign_changes(w.lower);
  const bool lam = w.lower.lambda0 && *w.lower.lambda0 > 0.0 && *w.lower.lambda0 < 1.0;
  o.expect(changes == 1 && lam, "lower-branch sign changes %d, lambda0 = %.4f", changes,
           w.lower.lambda0.value_or(std::nan("")));

  ShootingConfig cfg;
  cfg.z_floor = 1e-3;
  const auto wc = wing_shoot(0.5, 1.0, n, cfg);
  const double e1 = cubic_asymptote_check(wc.upper).rel_error;
  const double e2 = cubic_asymptote_check(wc.lower).rel_error;
  o.expect(e1 < 0.05 && e2 < 0.05, "cubic coefficient errors %.1e, %.1e < 5%%", e1, e2);
}

// 5
void operator_correctness(Outcome& o) {
  const double R = 1.0;
  auto cap = [R](double x, double y) { return std::sqrt(R * R - x * x - y * y); };
  const auto u = GridFunction::sample(DomainSpec::ball(0.999 * R, 20001), cap);
  const auto r = q_residual(u, 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.residuals.size(); ++i) {
    const double x = u.grid.x(r.nodes[i].first);
    if (x <= 0.95 * R) worst = std::max(worst, std::abs(r.residuals[i] * cap(x, 0.0) * R - 1.0));
  }
  o.expect(worst < 1e-6, "cap relative error %.2e", worst);

  std::vector<double> res;
  for (int N : {65, 129, 257}) {
    GridFunction b(DomainSpec::ball(0.5, N));
    const auto g = bowl_graph(1.0, 2, radii(b.grid));
    for (int i = 0; i < N; ++i) b.values[i] = g[i].first;
    res.push_back(q_residual(b, 2).max_abs);
  }
  const double q1 = res[0] / res[1], q2 = res[1] / res[2];
  o.expect(q1 > 3.2 && q1 < 4.8 && q2 > 3.2 && q2 < 4.8, "bowl residual ratios %.3f, %.3f", q1, q2);
}

// 6
void ilmanen_geometry(Outcome& o) {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> lx(-3.0, 3.0), th(1e-9, 2 * M_PI - 1e-9), u(0.0, 1.0);
  double worst = -kInf;
  for (int i = 0; i < 10000; ++i) {
    const SolitonParams p(2 + i % 3);
    const double x0 = std::pow(10.0, lx(rng));
    const double pick = u(rng);
    const double k = pick < 0.25  ? sectional_curvature_axis(x0, p, Plane::VerticalPair)
                     : pick < 0.5 ? sectional_curvature_axis(x0, p, Plane::HorizontalPair)
                                  : sectional_curvature_mixed(x0, p, th(rng));
    worst = std::max(worst, k);
  }
  o.expect(worst <= 0.0, "max sectional curvature %.2e", worst);

  const double tol = 1e-9;
  double sym = 0.0, conc = -kInf, slope = 0.0;
  bool mono = true;
  for (int n : {2, 3})
    for (double angle : {0.3, 1.0, 1.4}) {
      const auto c = integrate_geodesic({1.0, 0.0, std::sin(angle), std::cos(angle)}, SolitonParams(n), -50.0, 50.0, tol);
      sym = std::max(sym, symmetry_defect(c));
      conc = std::max(conc, concavity_defect(c));
      const auto e = end_slopes(c);
      slope = std::max({slope, e.first, e.last});
      mono = mono && e.monotone;
    }
  o.expect(sym < 10 * tol, "symmetry %.2e", sym);
  o.expect(conc <= 10 * tol, "concavity %.2e", conc);
  o.expect(slope < 1e-2 && mono, "end slopes %.2e", slope);
}

// 7
void dirichlet_vs_radial(Outcome& o) {
  const int n = 2;
  const double r0 = 0.25, r1 = 0.5;
  const auto ends = bowl_graph(1.0, n, {r0, r1});
  const auto bc = BoundaryData::per_side({ends[0].first, ends[1].first});
  for (int N : {17, 33}) {
    const auto dom = DomainSpec::annulus(r0, r1, N);
    const auto s = solve(dom, bc, n, 1e-11);
    const auto rad = solve_radial(dom, bc, n);
    double err = 0.0, err_exact = 0.0;
    const auto exact = bowl_graph(1.0, n, rad.r);
    for (int i = 0; i < N; ++i) {
      err = std::max(err, std::abs(s.u.values[i] - rad.u[i]));
      err_exact = std::max(err_exact, std::abs(rad.u[i] - exact[i].first));
    }
    const double dr = s.u.grid.dx;
    o.expect(err < 4 * dr * dr, "N=%d error %.2e < %.2e", N, err, 4 * dr * dr);
    o.expect(err_exact < 1e-8, "shooting vs bowl %.1e", err_exact);
  }

  const double tol = 1e-10;
  const auto dom = DomainSpec::annulus(0.2, 0.6, 33);
  const auto s1 = solve(dom, BoundaryData::per_side({0.5, 0.9}), n, tol);
  const auto& u1 = s1.u;
  const auto u2 = solve(dom, BoundaryData::per_side({0.6, 1.0}), n, tol).u;
  double order = kInf;
  for (std::size_t k = 0; k < u1.values.size(); ++k) order = std::min(order, u2.values[k] - u1.values[k]);
  o.expect(order >= -10 * tol, "comparison min(u2 - u1) %.3e", order);

  SolveOptions lo, hi;
  lo.initial_constant = s1.report.height_bounds.first;
  hi.initial_constant = s1.report.height_bounds.second;
  const auto a = solve(dom, BoundaryData::per_side({0.5, 0.9}), n, tol, lo).u;
  const auto b = solve(dom, BoundaryData::per_side({0.5, 0.9}), n, tol, hi).u;
  double diff = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) diff = std::max(diff, std::abs(a.values[k] - b.values[k]));
  o.expect(diff < 10 * tol, "start from B1 = %.3g vs B2 = %.3g: %.1e", *lo.initial_constant, *hi.initial_constant, diff);
}

// 8
void slab_continuation(Outcome& o) {
  const int n = 2;
  const double w = 1.0, h = grim_height_for_width(w, n);
  const int N = 65;
  const auto c = continuation_to_zero_boundary(DomainSpec::slab(w, 10.0, N), n, 1e-10, 16);
  o.expect(c.monotone, "monotone (max increase %.1e)", c.max_increase);
  const auto& g = c.extrapolated.grid;
  double err = 0.0;
  int at = 0;
  for (int i = 1; i + 1 < N; ++i) {
    const double e = std::abs(c.extrapolated.values[i] - grim_u(g.x(i), h, n));
    if (e > err) {
      err = e;
      at = i;
    }
  }
  const double dx = g.dx;
  o.expect(err < 5 * dx * dx, "extrapolated vs grim reaper %.3e < %.3e (worst node %d of %d)", err, 5 * dx * dx, at, N - 1);
}

// 9
void barrier_formulas(Outcome& o) {
  double inv = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double s = std::pow(10.0, -4.0 + 8.0 * i / 199.0);
    inv = std::max(inv, std::abs(F_inverse(F_diffeo(s)) / s - 1.0));
    const double y = std::pow(10.0, -4.0 + 6.0 * i / 199.0);
    inv = std::max(inv, std::abs(F_diffeo(F_inverse(y)) / y - 1.0));
  }
  o.expect(inv < 1e-12, "F/F^-1 %.1e", inv);

  double prev = kInf;
  bool mono = true;
  for (int e = 1; e <= 4; ++e) {
    const double a = std::pow(10.0, -e);
    const double v = omega_tilde(a, OmegaTilde{a, 1.0}, 2);
    mono = mono && v < prev && v > 0.0;
    prev = v;
  }
  o.expect(mono, "omega~(a) decreasing to %.4f at a = 1e-4", prev);

  const double b = nonexistence_bound(0.0, 1.0, 2, 1.0);
  o.expect(b == 25.0, "nonexistence_bound = %.17g", b);

  const DiskData disk{1.0, [](double t) { return 1.0 + 0.2 * std::cos(t); }};
  const Collar c = collar_barrier_params(2.0, sample_collar_bounds(disk, 0.25), 0.25);
  const auto chk = collar_residual(c, disk);
  o.expect(collar_psi(c, 0.0) == 0.0 && chk.negative, "psi(0) = 0, max Q[psi + phi] = %.3e", chk.max_q);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--known-failure") == 0 && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--known-failure ID]...\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "grim-reaper consistency", 5, grim_consistency},
      {2, "foliation monotonicity", 30, foliation},
      {3, "bowl structure", 5, bowl_structure},
      {4, "wing structure", 10, wing_structure},
      {5, "operator correctness", 10, operator_correctness},
      {6, "conformal-metric geometry", 10, ilmanen_geometry},
      {7, "Dirichlet solver vs radial oracle", 60, dirichlet_vs_radial},
      {8, "degenerate-data continuation", 120, slab_continuation},
      {9, "barrier formulas", 5, barrier_formulas},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const Error& e) {
      o.expect(false, "%s", e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(dt < c.budget_s, "%.2f s < %.0f s", dt, c.budget_s);
    if (!o.pass) failed.insert(c.id);
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (!known.empty()) {
    std::printf("expected failures:");
    for (int k : known) std::printf(" %d", k);
    std::printf(" -> %s\n", failed == known ? "as expected" : "MISMATCH");
    return failed == known ? 0 : 1;
  }
  return failed.empty() ? 0 : 1;
}
