#include "horo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "horo/dirichlet.hpp"
#include "horo/error.hpp"
#include "horo/geometry.hpp"
#include "horo/io.hpp"
#include "horo/profiles.hpp"
#include "horo/verify.hpp"

namespace horo::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

// branch files of a wing: out.csv -> out_upper.csv, out_lower.csv
fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  fs::path q = p;
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  q.replace_filename(p.stem().string() + suffix + ext);
  return q;
}

// cubic Hermite interpolation of the radial solution at radius r
double radial_at(const RadialSolution& s, double r) {
  const auto& x = s.r;
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  i = std::min(i, x.size() - 2);
  const double h = x[i + 1] - x[i], t = (r - x[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * s.u[i] + h10 * h * s.du[i] + h01 * s.u[i + 1] + h11 * h * s.du[i + 1];
}

json radial_oracle(const io::Problem& p, const GridFunction& u) {
  const bool radial = std::holds_alternative<Ball>(p.domain.shape) || std::holds_alternative<Annulus>(p.domain.shape);
  if (!radial) return nullptr;
  DomainSpec fine = p.domain;
  fine.cartesian = false;
  // the plane grid has no nodes on the radial grid: shoot on a finer one and interpolate
  if (p.domain.cartesian) fine.resolution = 4 * (p.domain.resolution - 1) + 1;
  const auto rad = solve_radial(fine, p.bc, p.n);
  double diff = 0.0;
  for (std::size_t k = 0; k < u.grid.size(); ++k) {
    if (u.grid.role[k] == NodeRole::Outside) continue;
    const auto c = u.grid.coords(k);
    const double r = p.domain.cartesian ? std::hypot(c[0], c[1]) : c[0];
    diff = std::max(diff, std::abs(u.values[k] - radial_at(rad, r)));
  }
  json j;
  j["kind"] = "radial";
  j["parameter"] = rad.parameter;
  j["max_abs_diff"] = diff;
  return j;
}

struct Flags {
  int n = 2;
  double height = 0.0, radius = 0.0, zfloor = 1e-6;
  int samples = 512;
  double tip_height = 0.0, tip_radius = 0.0;
  double z0 = 0.0, w0 = 0.0, angle = 0.0, span = 50.0;
  std::string out, problem, oracle = "radial";
  std::string suite, report, curve;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

int dispatch(CLI::App& app, const Flags& f, std::ostream& out) {
  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  if (name == "grim") {
    const auto c = grim_curve(f.height, f.n, f.samples);
    io::write_profile(f.out, c);
    out << "grim: h = " << io::format_double(c.h) << ", width = " << io::format_double(2 * *c.r2)
        << ", residual_max = " << c.residual_max << "\n";
    return Ok;
  }
  if (name == "bowl") {
    ShootingConfig cfg;
    cfg.z_floor = f.zfloor;
    const bool by_radius = sub->count("--radius") > 0;
    const double h = by_radius ? h_of_r2(f.radius, f.n, 1e-12, cfg) : f.height;
    const auto c = bowl_shoot(h, f.n, cfg);
    io::write_profile(f.out, c);
    out << "bowl: h = " << io::format_double(c.h) << ", r2 = " << io::format_double(*c.r2)
        << ", residual_max = " << c.residual_max << "\n";
    return Ok;
  }
  if (name == "wing") {
    const auto w = wing_shoot(f.tip_radius, f.tip_height, f.n);
    const fs::path up = with_suffix(f.out, "_upper"), lo = with_suffix(f.out, "_lower");
    io::write_profile(up, w.upper);
    io::write_profile(lo, w.lower);
    out << "wing: q1 = " << io::format_double(*w.upper.r2) << ", q2 = " << io::format_double(*w.lower.r2)
        << ", lambda0 = " << io::format_double(*w.lower.lambda0) << " -> " << up.string() << ", " << lo.string()
        << "\n";
    return Ok;
  }
  if (name == "geodesic") {
    const GeodesicState init{f.z0, f.w0, std::sin(f.angle), std::cos(f.angle)};
    const auto g = integrate_geodesic(init, SolitonParams(f.n), -f.span, f.span, 1e-10);
    io::write_geodesic(f.out, g);
    out << "geodesic: " << g.samples.size() << " steps, termination "
        << (g.termination == GeodesicTermination::Floor ? "floor" : "span") << "\n";
    return Ok;
  }
  if (name == "dirichlet") {
    const auto p = io::read_problem(f.problem);
    const auto s = solve(p.domain, p.bc, p.n, p.tol, p.options);
    json meta;
    meta["domain"] = io::domain_json(p.domain);
    meta["bc"] = io::boundary_json(p.bc);
    meta["n"] = p.n;
    meta["tol"] = p.tol;
    meta["report"] = io::solve_report_json(s.report);
    meta["residual"] = io::residual_report_json(q_residual(s.u, p.n, p.tol));
    meta["oracle"] = f.oracle == "radial" ? radial_oracle(p, s.u) : json(nullptr);
    io::write_grid(f.out, s.u);
    io::write_json(io::metadata_path(f.out), meta);
    out << "dirichlet: " << s.report.iterations << " Newton steps, residual " << s.report.final_residual << "\n";
    return Ok;
  }
  // verify
  if (f.suite.empty() && f.curve.empty()) throw Error(ErrorKind::InvalidArgument, "verify needs --suite or --curve");
  std::vector<Check> checks;
  if (!f.suite.empty()) checks = run_suite(parse_suite(f.suite), VerifyOptions{f.tol, f.seed});
  if (!f.curve.empty())
    for (auto& c : curve_checks(f.curve)) checks.push_back(std::move(c));
  const auto report = emit_report(checks);
  io::write_text(f.report, report.dump(2) + "\n");
  std::size_t failed = 0;
  for (const auto& c : checks) failed += c.pass ? 0 : 1;
  out << "verify: " << checks.size() - failed << "/" << checks.size() << " checks pass\n";
  return failed == 0 ? Ok : Numerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric solitons of mean curvature flow in the upper half-space", "horo"};
  app.require_subcommand(1);
  Flags f;

  auto* grim = app.add_subcommand("grim", "grim-reaper profile from the quadrature");
  grim->add_option("--n", f.n)->required();
  grim->add_option("--height", f.height)->required();
  grim->add_option("--samples", f.samples)->capture_default_str();
  grim->add_option("--out", f.out)->required();

  auto* bowl = app.add_subcommand("bowl", "bowl soliton by shooting from the axis");
  bowl->add_option("--n", f.n)->required();
  auto* hgt = bowl->add_option("--height", f.height);
  auto* rad = bowl->add_option("--radius", f.radius, "extinction radius r2 (solved for the tip height)");
  hgt->excludes(rad);
  bowl->add_option("--zfloor", f.zfloor)->capture_default_str();
  bowl->add_option("--out", f.out)->required();

  auto* wing = app.add_subcommand("wing", "both branches of a winglike soliton");
  wing->add_option("--n", f.n)->required();
  wing->add_option("--tip-height", f.tip_height)->required();
  wing->add_option("--tip-radius", f.tip_radius)->required();
  wing->add_option("--out", f.out, "writes <stem>_upper and <stem>_lower")->required();

  auto* geo = app.add_subcommand("geodesic", "geodesic of the conformal metric in the (x0, x1)-plane");
  geo->add_option("--n", f.n)->required();
  geo->add_option("--z0", f.z0)->required();
  geo->add_option("--w0", f.w0)->required();
  geo->add_option("--angle", f.angle, "initial direction, radians from the horizontal")->required();
  geo->add_option("--span", f.span)->capture_default_str();
  geo->add_option("--out", f.out)->required();

  auto* dir = app.add_subcommand("dirichlet", "solve a Dirichlet problem from a JSON problem file");
  dir->add_option("--problem", f.problem)->required();
  dir->add_option("--out", f.out)->required();
  dir->add_option("--oracle", f.oracle)->check(CLI::IsMember({"radial", "none"}))->capture_default_str();

  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--suite", f.suite)->check(CLI::IsMember({"geometry", "profiles", "operator", "dirichlet", "all"}));
  ver->add_option("--tol", f.tol)->capture_default_str();
  ver->add_option("--seed", f.seed)->capture_default_str();
  ver->add_option("--curve", f.curve, "profile CSV to re-read and check");
  ver->add_option("--report", f.report)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (bowl->parsed() && hgt->count() + rad->count() != 1)
      throw Error(ErrorKind::InvalidArgument, "bowl needs exactly one of --height and --radius");
    return dispatch(app, f, out);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return Ok;
    }
    err << "InvalidArgument: " << e.what() << "\n";
    return Validation;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.is_validation() || e.kind() == ErrorKind::IoFailure ? Validation : Numerical;
  } catch (const std::exception& e) {
    err << "InvalidArgument: " << e.what() << "\n";
    return Validation;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace horo::cli
