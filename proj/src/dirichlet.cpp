#include "horo/dirichlet.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "discrete.hpp"
#include "horo/error.hpp"
#include "horo/ode.hpp"
#include "horo/profiles.hpp"

namespace horo {

BoundaryData BoundaryData::make_constant(double c) {
  BoundaryData b;
  b.kind = Kind::Constant;
  b.constant = c;
  return b;
}

BoundaryData BoundaryData::per_side(std::vector<double> v) {
  BoundaryData b;
  b.kind = Kind::PerSide;
  b.values = std::move(v);
  return b;
}

BoundaryData BoundaryData::sampled(std::vector<double> v) {
  BoundaryData b;
  b.kind = Kind::Sampled;
  b.values = std::move(v);
  return b;
}

void BoundaryData::validate() const {
  require(floor >= 0.0, "floor must be nonnegative");
  require(floor > 0.0 || continuation, "a zero floor needs continuation mode");
  auto check = [&](double v) {
    require(std::isfinite(v) && v >= 0.0, "boundary values must be nonnegative");
    require(v >= floor, "boundary value below the floor");
    require(v > 0.0 || continuation, "zero boundary data needs continuation mode");
  };
  if (kind == Kind::Constant) {
    check(constant);
  } else {
    require(!values.empty(), "boundary data has no values");
    for (double v : values) check(v);
  }
}

std::vector<double> BoundaryData::trace(const DomainSpec& d, const Grid& g) const {
  validate();
  const auto nodes = g.nodes_with(NodeRole::Boundary);
  if (kind == Kind::Constant) return std::vector<double>(nodes.size(), constant);
  if (kind == Kind::Sampled) {
    require(values.size() == nodes.size(), "sampled trace does not match the boundary nodes");
    return values;
  }
  std::vector<double> out;
  out.reserve(nodes.size());
  const bool rect = std::holds_alternative<Rectangle>(d.shape);
  const bool annulus = std::holds_alternative<Annulus>(d.shape);
  if (rect) {
    require(values.size() == 4, "a rectangle takes four side values (west, east, south, north)");
    for (auto k : nodes) {
      const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
      const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
      double sum = 0.0;
      int count = 0;
      if (i == 0) sum += values[0], ++count;
      if (i == g.nx - 1) sum += values[1], ++count;
      if (j == 0) sum += values[2], ++count;
      if (j == g.ny - 1) sum += values[3], ++count;
      out.push_back(sum / count);  // corners take the mean of both sides
    }
    return out;
  }
  if (annulus) {
    require(values.size() == 2, "an annulus takes two side values (inner, outer)");
    const auto& a = std::get<Annulus>(d.shape);
    const double mid = 0.5 * (a.r_in + a.r_out);
    for (auto k : nodes) {
      const auto c = g.coords(k);
      out.push_back(std::hypot(c[0], c[1]) < mid ? values[0] : values[1]);
    }
    return out;
  }
  if (std::holds_alternative<Ball>(d.shape)) {
    require(values.size() == 1, "a ball takes one side value");
    return std::vector<double>(nodes.size(), values[0]);
  }
  require(values.size() == 2, "a line domain takes two side values (left, right)");
  for (auto k : nodes) out.push_back(k == 0 ? values[0] : values[1]);
  return out;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

enum class NewtonStatus { Converged, Diverged, Floor };

struct System {
  const Grid& g;
  int n;
  std::vector<std::size_t> interior;
  std::vector<int> idx;

  System(const Grid& grid, int dim) : g(grid), n(dim), interior(grid.nodes_with(NodeRole::Interior)) {
    idx.assign(g.size(), -1);
    for (std::size_t r = 0; r < interior.size(); ++r) idx[interior[r]] = static_cast<int>(r);
  }

  Eigen::VectorXd residual(const std::vector<double>& v) const {
    Eigen::VectorXd F(interior.size());
    for (std::size_t r = 0; r < interior.size(); ++r)
      F[static_cast<Eigen::Index>(r)] = detail::node_residual_value(g, n, interior[r], v.data());
    return F;
  }

  template <int K>
  void assemble(const std::vector<double>& v, Eigen::VectorXd& F, Eigen::SparseMatrix<double>& J) const {
    const bool plane = g.layout == Layout::Plane;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(interior.size() * K);
    F.resize(static_cast<Eigen::Index>(interior.size()));
    for (std::size_t r = 0; r < interior.size(); ++r) {
      const std::size_t k = interior[r];
      const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
      const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
      auto get = [&](int di, int dj) {
        const std::size_t m = g.index(i + di, j + dj);
        detail::Dual<K> d(v[m]);
        if (idx[m] >= 0) d.d[plane ? (dj + 1) * 3 + (di + 1) : di + 1] = 1.0;
        return d;
      };
      const auto res = detail::node_residual<detail::Dual<K>>(g, n, i, j, get);
      F[static_cast<Eigen::Index>(r)] = res.v;
      for (int s = 0; s < K; ++s) {
        if (res.d[s] == 0.0) continue;
        const int di = plane ? s % 3 - 1 : s - 1;
        const int dj = plane ? s / 3 - 1 : 0;
        trip.emplace_back(static_cast<int>(r), idx[g.index(i + di, j + dj)], res.d[s]);
      }
    }
    J.resize(static_cast<Eigen::Index>(interior.size()), static_cast<Eigen::Index>(interior.size()));
    J.setFromTriplets(trip.begin(), trip.end());
  }
};

NewtonStatus newton(const System& sys, std::vector<double>& v, double tol, const SolveOptions& o, SolveReport& rep) {
  Eigen::VectorXd F;
  Eigen::SparseMatrix<double> J;
  for (int it = 0; it <= o.max_iterations; ++it) {
    if (sys.g.layout == Layout::Plane)
      sys.assemble<9>(v, F, J);
    else
      sys.assemble<3>(v, F, J);
    const double inf = F.size() ? F.lpNorm<Eigen::Infinity>() : 0.0;
    rep.final_residual = inf;
    if (inf <= tol) return NewtonStatus::Converged;
    if (it == o.max_iterations) break;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success) return NewtonStatus::Diverged;
    const Eigen::VectorXd delta = lu.solve(-F);
    if (lu.info() != Eigen::Success || !delta.allFinite()) return NewtonStatus::Diverged;

    // largest step keeping every unknown above u_min
    double lmax = 1.0;
    for (std::size_t r = 0; r < sys.interior.size(); ++r) {
      const double d = delta[static_cast<Eigen::Index>(r)], u = v[sys.interior[r]];
      if (d < 0.0 && u + d < o.u_min) lmax = std::min(lmax, 0.9 * (u - o.u_min) / -d);
    }
    const bool clipped = lmax < 1.0;
    const double f0 = F.norm();
    double lambda = lmax;
    bool accepted = false;
    std::vector<double> trial = v;
    for (int tries = 0; tries < 40 && lambda > 0.0; ++tries, lambda *= 0.5) {
      for (std::size_t r = 0; r < sys.interior.size(); ++r)
        trial[sys.interior[r]] = v[sys.interior[r]] + lambda * delta[static_cast<Eigen::Index>(r)];
      const Eigen::VectorXd Ft = sys.residual(trial);
      if (!Ft.allFinite()) continue;
      if (Ft.norm() <= (1.0 - 1e-4 * lambda) * f0 || Ft.lpNorm<Eigen::Infinity>() <= tol) {
        accepted = true;
        break;
      }
    }
    if (!accepted) return clipped ? NewtonStatus::Floor : NewtonStatus::Diverged;
    v = std::move(trial);
    rep.newton_damping_history.push_back(lambda);
    ++rep.iterations;
  }
  return NewtonStatus::Diverged;
}

void set_boundary(const Grid& g, const std::vector<double>& trace, std::vector<double>& v) {
  const auto nodes = g.nodes_with(NodeRole::Boundary);
  for (std::size_t b = 0; b < nodes.size(); ++b) v[nodes[b]] = trace[b];
}

double grid_max(const Grid& g, const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (g.role[k] != NodeRole::Outside) m = std::max(m, v[k]);
  return m;
}

}  // namespace

SolveResult solve(const DomainSpec& dom, const BoundaryData& bc, int n, double tol, const SolveOptions& opts) {
  require(n >= 1, "n must be positive");
  require(tol > 0.0, "tolerance must be positive");
  require(opts.u_min > 0.0 && opts.max_iterations > 0, "invalid solver options");
  GridFunction u(dom);
  const Grid& g = u.grid;
  if (g.layout == Layout::Plane) require(n == 2, "planar grids solve the n = 2 problem");
  const auto trace = bc.trace(dom, g);
  for (double t : trace) require(t > 0.0, "zero data is reached only through continuation_to_zero_boundary");
  const double tmin = *std::min_element(trace.begin(), trace.end());
  const double tmax = *std::max_element(trace.begin(), trace.end());

  if (opts.initial) {
    require(opts.initial->size() == g.size(), "initial guess does not match the grid");
    u.values = *opts.initial;
  } else {
    const double c = opts.initial_constant.value_or(tmax);
    require(c > 0.0, "initial constant must be positive");
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g.role[k] != NodeRole::Outside) u.values[k] = c;
  }
  set_boundary(g, trace, u.values);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.role[k] == NodeRole::Interior)
      require(std::isfinite(u.values[k]) && u.values[k] >= opts.u_min, "initial guess must stay above u_min");

  SolveResult out;
  System sys(g, n);
  auto status = newton(sys, u.values, tol, opts, out.report);
  if (status != NewtonStatus::Converged && opts.allow_homotopy) {
    // deform constant data C into the requested data
    out.report.homotopy_used = true;
    const double C = 2.0 * tmax + 1.0;
    std::vector<double> v(g.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g.role[k] != NodeRole::Outside) v[k] = C;
    SolveOptions inner = opts;
    auto stage = [&](double t, std::vector<double>& w) {
      std::vector<double> tr(trace.size());
      for (std::size_t b = 0; b < trace.size(); ++b) tr[b] = (1.0 - t) * C + t * trace[b];
      set_boundary(g, tr, w);
      return newton(sys, w, tol, inner, out.report);
    };
    status = stage(0.0, v);
    double t = 0.0, dt = 0.25;
    while (status == NewtonStatus::Converged && t < 1.0) {
      const double next = std::min(1.0, t + dt);
      std::vector<double> w = v;
      const auto s = stage(next, w);
      if (s == NewtonStatus::Converged) {
        v = std::move(w);
        t = next;
        dt *= 1.5;
      } else {
        dt *= 0.5;
        if (dt < 1e-6) {
          status = s;
          break;
        }
      }
    }
    if (status == NewtonStatus::Converged) u.values = std::move(v);
  }
  if (status == NewtonStatus::Floor)
    throw Error(ErrorKind::FloorViolation, "iterate would cross u_min; data too close to degenerate for this grid");
  if (status != NewtonStatus::Converged)
    throw Error(ErrorKind::NewtonDiverged, "Newton iteration stalled at residual " +
                                               sci(out.report.final_residual) + " above the tolerance");

  const auto sup = height_supersolution(g, tmax, n);
  // the grim barrier peaks at the center of the line
  out.report.height_bounds = {tmin, sup.grim ? sup.h : grid_max(g, sup.evaluate(g))};
  out.u = std::move(u);
  return out;
}

namespace {

struct ShotEnd {
  bool ok = false;
  double u = 0.0;
  double du = 0.0;
};

// u'' = (1 + u'^2) (f(u) - (n - 1) u' / r) from r0 to the stops.
ShotEnd shoot_annulus(double r0, double u0, double p0, double r1, int n, const std::vector<double>& stops,
                      std::vector<std::pair<double, double>>* record) {
  ode::Tolerances tol;
  tol.rel_tol = 1e-13;
  tol.abs_tol = 1e-15;
  tol.max_steps = 200000;
  auto rhs = [n](double r, const ode::State<2>& y, ode::State<2>& dy) {
    if (!(y[0] > 0.0) || std::abs(y[1]) > 1e8) return false;
    const double p = y[1];
    dy = {p, (1.0 + p * p) * (-(1.0 + n * y[0]) / (y[0] * y[0]) - (n - 1) * p / r)};
    return true;
  };
  ShotEnd end;
  std::size_t next = 0;
  auto obs = [&](double r, const ode::State<2>& y) {
    end.u = y[0];
    end.du = y[1];
    if (record && next < stops.size() && r == stops[next]) {
      record->push_back({y[0], y[1]});
      ++next;
    }
    return true;
  };
  try {
    const auto res = ode::integrate<2>(rhs, r0, {u0, p0}, r1, tol, obs, stops);
    end.ok = res.termination == ode::Termination::ReachedEnd;
  } catch (const Error&) {
    end.ok = false;
  }
  return end;
}

}  // namespace

RadialSolution solve_radial(const DomainSpec& dom, const BoundaryData& bc, int n, double tol) {
  require(tol > 0.0, "tolerance must be positive");
  require(n >= 2, "radial problems need n >= 2");
  const bool ball = std::holds_alternative<Ball>(dom.shape);
  require(ball || std::holds_alternative<Annulus>(dom.shape), "solve_radial needs a ball or an annulus");
  DomainSpec radial = dom;
  radial.cartesian = false;
  const Grid g = Grid::build(radial);
  const auto trace = bc.trace(radial, g);
  for (double t : trace) require(t > 0.0, "radial data must be positive");

  RadialSolution out;
  for (int i = 0; i < g.nx; ++i) out.r.push_back(g.x(i));

  if (ball) {
    const double R = out.r.back(), c = trace.back();
    ShootingConfig cfg;
    cfg.rel_tol = 1e-13;
    auto height_at_R = [&](double h) {
      try {
        return bowl_graph(h, n, {R}, cfg)[0].first;
      } catch (const Error&) {
        return 0.0;  // the bowl reaches the boundary at infinity before R
      }
    };
    double lo = c, hi = 2.0 * c;
    while (height_at_R(hi) < c) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e8) throw Error(ErrorKind::BracketFailure, "no bowl reaches the data");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = height_at_R(mid);
      if (std::abs(v - c) <= tol * c) {
        lo = hi = mid;
        break;
      }
      (v < c ? lo : hi) = mid;
    }
    out.parameter = 0.5 * (lo + hi);
    const auto vals = bowl_graph(out.parameter, n, out.r, cfg);
    for (const auto& [u, du] : vals) {
      out.u.push_back(u);
      out.du.push_back(du);
    }
    return out;
  }

  const double r0 = out.r.front(), r1 = out.r.back();
  const double a = trace.front(), b = trace.back();
  // terminal height as a function of the initial slope, increasing
  auto terminal = [&](double p) {
    const auto e = shoot_annulus(r0, a, p, r1, n, {}, nullptr);
    if (e.ok) return e.u - b;
    return e.du > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  };
  double P = 1.0;
  while (!(terminal(-P) < 0.0 && terminal(P) > 0.0)) {
    P *= 2.0;
    if (P > 1e8) throw Error(ErrorKind::BracketFailure, "no initial slope meets the outer data");
  }
  double lo = -P, hi = P;
  for (int it = 0; it < 300 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = terminal(mid);
    if (std::abs(v) <= tol * b) {
      lo = hi = mid;
      break;
    }
    (v < 0.0 ? lo : hi) = mid;
  }
  out.parameter = 0.5 * (lo + hi);
  std::vector<double> stops(out.r.begin() + 1, out.r.end());
  std::vector<std::pair<double, double>> rec;
  const auto e = shoot_annulus(r0, a, out.parameter, r1, n, stops, &rec);
  if (!e.ok || rec.size() != stops.size()) throw Error(ErrorKind::StepFailure, "final radial shot failed");
  out.u.push_back(a);
  out.du.push_back(out.parameter);
  for (const auto& [u, du] : rec) {
    out.u.push_back(u);
    out.du.push_back(du);
  }
  return out;
}

namespace {

// u_j = u_inf + c / j + O(1/j^2): extrapolate from j = J and J/2.
GridFunction richardson_limit(const std::vector<GridFunction>& it) {
  const std::size_t J = it.size();
  GridFunction lim = it.back();
  const auto& a = it[J - 1];
  const auto& b = it[J / 2 - 1];
  for (std::size_t k = 0; k < lim.values.size(); ++k) lim.values[k] = 2.0 * a.values[k] - b.values[k];
  return lim;
}

}  // namespace

ContinuationResult continuation_to_zero_boundary(const DomainSpec& dom, int n, double tol, int steps) {
  require(steps >= 2, "continuation needs at least two steps");
  ContinuationResult out;
  SolveOptions opts;
  for (int j = 1; j <= steps; ++j) {
    auto bc = BoundaryData::make_constant(1.0 / j);
    bc.continuation = true;
    if (!out.iterates.empty()) opts.initial = out.iterates.back().values;
    out.iterates.push_back(solve(dom, bc, n, tol, opts).u);
  }
  const Grid& g = out.iterates.front().grid;
  for (std::size_t j = 1; j < out.iterates.size(); ++j)
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.role[k] == NodeRole::Outside) continue;
      const double inc = out.iterates[j].values[k] - out.iterates[j - 1].values[k];
      out.max_increase = std::max(out.max_increase, inc);
    }
  out.monotone = out.max_increase <= tol;
  out.extrapolated = richardson_limit(out.iterates);
  return out;
}


std::vector<double> Supersolution::evaluate(const Grid& g) const {
  std::vector<double> out(g.size(), std::numeric_limits<double>::quiet_NaN());
  if (grim) {
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g.role[k] != NodeRole::Outside) out[k] = grim_u(g.coords(k)[0] - center, h, n);
    return out;
  }
  std::vector<double> rho;
  std::vector<std::size_t> at;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.role[k] == NodeRole::Outside) continue;
    const auto c = g.coords(k);
    rho.push_back(std::hypot(c[0], c[1]));
    at.push_back(k);
  }
  const auto vals = bowl_graph(h, n, rho);
  for (std::size_t i = 0; i < at.size(); ++i) out[at[i]] = vals[i].first;
  return out;
}

Supersolution height_supersolution(const Grid& g, double max_data, int n) {
  require(max_data > 0.0, "data bound must be positive");
  Supersolution s;
  s.n = n;
  double reach = 0.0;  // largest distance of a node from the center
  if (g.layout == Layout::Line) {
    s.grim = true;
    s.center = 0.5 * (g.x(0) + g.x(g.nx - 1));
    reach = 0.5 * (g.x(g.nx - 1) - g.x(0));
  } else {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.role[k] == NodeRole::Outside) continue;
      const auto c = g.coords(k);
      reach = std::max(reach, std::hypot(c[0], c[1]));
    }
  }
  // the barrier decreases away from the center, so it dominates the data
  // once its value at `reach` does. For the grim reaper that is
  // phi_h(max_data) >= reach, one quadrature per trial height.
  auto dominates = [&](double h) {
    try {
      return s.grim ? grim_phi(max_data, h, n) >= reach : bowl_graph(h, n, {reach})[0].first >= max_data;
    } catch (const Error&) {
      return false;
    }
  };
  double lo = max_data, hi = 2.0 * max_data;
  while (!dominates(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) throw Error(ErrorKind::BracketFailure, "no barrier dominates the data");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (dominates(mid) ? hi : lo) = mid;
  }
  s.h = hi;
  return s;
}

namespace {

// Gradient magnitude at node k from central differences where both
// neighbours are active, second-order one-sided otherwise.
double gradient_norm(const GridFunction& u, std::size_t k) {
  const Grid& g = u.grid;
  const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
  const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
  auto active = [&](int a, int b) {
    return a >= 0 && b >= 0 && a < g.nx && b < g.ny && g.role[g.index(a, b)] != NodeRole::Outside;
  };
  auto partial = [&](int di, int dj, double h) {
    const bool fwd = active(i + di, j + dj), bwd = active(i - di, j - dj);
    const double c = u.values[k];
    auto at = [&](int m) { return u.values[g.index(i + m * di, j + m * dj)]; };
    if (fwd && bwd) return (at(1) - at(-1)) / (2.0 * h);
    if (fwd) return active(i + 2 * di, j + 2 * dj) ? (-3.0 * c + 4.0 * at(1) - at(2)) / (2.0 * h) : (at(1) - c) / h;
    if (bwd) return active(i - 2 * di, j - 2 * dj) ? (3.0 * c - 4.0 * at(-1) + at(-2)) / (2.0 * h) : (c - at(-1)) / h;
    return 0.0;
  };
  if (g.layout == Layout::Radial && g.radial_center && i == 0) return 0.0;
  const double gx = partial(1, 0, g.dx);
  const double gy = g.layout == Layout::Plane ? partial(0, 1, g.dy) : 0.0;
  return std::hypot(gx, gy);
}

}  // namespace

HeightCheck verify_height_and_H(const GridFunction& u, const BoundaryData& bc, int n, double tol) {
  const Grid& g = u.grid;
  u.validate();
  HeightCheck out;
  const auto trace = bc.trace(u.domain, g);
  out.B1 = *std::min_element(trace.begin(), trace.end());
  const auto sup = height_supersolution(g, *std::max_element(trace.begin(), trace.end()), n).evaluate(g);
  out.B2 = grid_max(g, sup);
  out.min_u = std::numeric_limits<double>::infinity();
  out.max_excess = -std::numeric_limits<double>::infinity();
  out.H.assign(g.size(), std::numeric_limits<double>::quiet_NaN());
  out.H_interior_max = out.H_boundary_max = -std::numeric_limits<double>::infinity();
  out.H_boundary_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.role[k] == NodeRole::Outside) continue;
    out.min_u = std::min(out.min_u, u.values[k]);
    out.max_excess = std::max(out.max_excess, u.values[k] - sup[k]);
    const double W = std::sqrt(1.0 + std::pow(gradient_norm(u, k), 2));
    const double H = -1.0 / (u.values[k] * W);
    out.H[k] = H;
    if (g.role[k] == NodeRole::Boundary) {
      out.H_boundary_max = std::max(out.H_boundary_max, H);
      out.H_boundary_min = std::min(out.H_boundary_min, H);
    } else {
      out.H_interior_max = std::max(out.H_interior_max, H);
    }
  }
  out.height_ok = out.min_u >= out.B1 - tol && out.max_excess <= tol;
  out.H_ok = out.H_interior_max <= out.H_boundary_max + tol;
  out.pass = out.height_ok && out.H_ok;
  return out;
}

GradientCheck boundary_gradient_check(const GridFunction& u, double bound) {
  const Grid& g = u.grid;
  GradientCheck out;
  out.bound = bound;
  for (auto k : g.nodes_with(NodeRole::Boundary)) {
    const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
    const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
    // differences towards the interior neighbours
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (std::abs(di) + std::abs(dj) != 1) continue;
        const int a = i + di, b = j + dj;
        if (a < 0 || b < 0 || a >= g.nx || b >= g.ny || g.role[g.index(a, b)] != NodeRole::Interior) continue;
        const double h = di != 0 ? g.dx : g.dy;
        out.max_normal_derivative =
            std::max(out.max_normal_derivative, std::abs(u.values[g.index(a, b)] - u.values[k]) / h);
      }
  }
  out.pass = out.max_normal_derivative <= bound;
  return out;
}

}  // namespace horo
