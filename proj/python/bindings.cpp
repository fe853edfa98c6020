#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>

#include "horo/cli.hpp"
#include "horo/dirichlet.hpp"
#include "horo/error.hpp"
#include "horo/geometry.hpp"
#include "horo/io.hpp"
#include "horo/profiles.hpp"
#include "horo/soliton_operator.hpp"
#include "horo/verify.hpp"

namespace py = pybind11;
using namespace horo;

namespace {

py::array_t<double> column(const ProfileCurve& c, double ProfileSample::*field) {
  std::vector<double> v;
  v.reserve(c.samples.size());
  for (const auto& s : c.samples) v.push_back(s.*field);
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::object json_to_py(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

io::json py_to_json(const py::object& o) {
  return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetric solitons of mean curvature flow in the upper half-space";

  // deliberately leaked: the translator may run until interpreter shutdown
  static py::handle horo_error = py::exception<Error>(m, "HoroError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = horo_error(e.what());
      inst.attr("kind") = std::string(error_name(e.kind()));
      PyErr_SetObject(horo_error.ptr(), inst.ptr());
    }
  });

  // geometry
  m.def("conformal_factor", [](double x0, double k, const std::string& base) {
    require(base == "hyperbolic" || base == "euclidean", "base is 'hyperbolic' or 'euclidean'");
    return conformal_factor(x0, k, base == "hyperbolic" ? Base::Hyperbolic : Base::Euclidean);
  }, py::arg("x0"), py::arg("k"), py::arg("base") = "hyperbolic");
  m.def("sectional_curvature_axis", [](double x0, int n, const std::string& plane) {
    require(plane == "vertical" || plane == "horizontal", "plane is 'vertical' or 'horizontal'");
    return sectional_curvature_axis(x0, SolitonParams(n), plane == "vertical" ? Plane::VerticalPair : Plane::HorizontalPair);
  }, py::arg("x0"), py::arg("n"), py::arg("plane"));
  m.def("sectional_curvature_mixed", [](double x0, int n, double theta) {
    return sectional_curvature_mixed(x0, SolitonParams(n), theta);
  }, py::arg("x0"), py::arg("n"), py::arg("theta"));
  m.def("integrate_geodesic", [](double z, double w, double dz, double dw, int n, double t0, double t1, double tol) {
    const auto g = integrate_geodesic({z, w, dz, dw}, SolitonParams(n), t0, t1, tol);
    const auto sz = static_cast<py::ssize_t>(g.samples.size());
    py::array_t<double> out({sz, py::ssize_t{5}});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < sz; ++i) {
      const auto& s = g.samples[static_cast<std::size_t>(i)];
      v(i, 0) = s.t;
      v(i, 1) = s.state.z;
      v(i, 2) = s.state.w;
      v(i, 3) = s.state.dz;
      v(i, 4) = s.state.dw;
    }
    return py::make_tuple(out, g.termination == GeodesicTermination::Floor ? "floor" : "span");
  }, py::arg("z"), py::arg("w"), py::arg("dz"), py::arg("dw"), py::arg("n") = 2, py::arg("t0") = -50.0,
     py::arg("t1") = 50.0, py::arg("tol") = 1e-10,
     "Returns (samples[t, z, w, dz, dw], termination).");

  // profiles
  m.def("grim_phi", &grim_phi, py::arg("z"), py::arg("h"), py::arg("n"));
  m.def("grim_width", &grim_width, py::arg("h"), py::arg("n"));
  m.def("grim_height_for_width", &grim_height_for_width, py::arg("w"), py::arg("n"), py::arg("tol") = 1e-12);
  m.def("grim_u", &grim_u, py::arg("x"), py::arg("h"), py::arg("n"));
  m.def("r2_of_h", [](double h, int n) { return r2_of_h(h, n); }, py::arg("h"), py::arg("n"));
  m.def("h_of_r2", [](double r, int n) { return h_of_r2(r, n); }, py::arg("r"), py::arg("n"));

  py::class_<ProfileCurve>(m, "ProfileCurve")
      .def_property_readonly("kind", [](const ProfileCurve& c) { return std::string(to_string(c.kind)); })
      .def_readonly("n", &ProfileCurve::n)
      .def_readonly("h", &ProfileCurve::h)
      .def_readonly("R", &ProfileCurve::R)
      .def_readonly("r2", &ProfileCurve::r2)
      .def_readonly("lambda0", &ProfileCurve::lambda0)
      .def_readonly("endpoints", &ProfileCurve::endpoints)
      .def_readonly("residual_max", &ProfileCurve::residual_max)
      .def_property_readonly("s", [](const ProfileCurve& c) { return column(c, &ProfileSample::s); })
      .def_property_readonly("z", [](const ProfileCurve& c) { return column(c, &ProfileSample::z); })
      .def_property_readonly("rho", [](const ProfileCurve& c) { return column(c, &ProfileSample::rho); })
      .def_property_readonly("alpha", [](const ProfileCurve& c) { return column(c, &ProfileSample::alpha); })
      .def("metadata", [](const ProfileCurve& c) { return json_to_py(io::profile_metadata(c)); })
      .def("__len__", [](const ProfileCurve& c) { return c.samples.size(); });

  m.def("grim_curve", &grim_curve, py::arg("h"), py::arg("n"), py::arg("samples") = 512);
  m.def("bowl_shoot", [](double h, int n, double z_floor) {
    ShootingConfig cfg;
    cfg.z_floor = z_floor;
    return bowl_shoot(h, n, cfg);
  }, py::arg("h"), py::arg("n"), py::arg("z_floor") = 1e-6);
  m.def("bowl_tip_curvature", &bowl_tip_curvature);
  m.def("wing_shoot", [](double R, double h, int n, double z_floor) {
    ShootingConfig cfg;
    cfg.z_floor = z_floor;
    const auto w = wing_shoot(R, h, n, cfg);
    return py::make_tuple(w.upper, w.lower);
  }, py::arg("R"), py::arg("h"), py::arg("n"), py::arg("z_floor") = 1e-6, "Returns (upper, lower).");
  m.def("cubic_asymptote_check", [](const ProfileCurve& c) {
    const auto f = cubic_asymptote_check(c);
    py::dict d;
    d["phi0"] = f.phi0;
    d["coefficient"] = f.coefficient;
    d["target"] = f.target;
    d["rel_error"] = f.rel_error;
    return d;
  });
  m.def("curvature_sign_changes", &curvature_sign_changes);
  m.def("read_profile", [](const std::string& p) { return io::read_profile(p); });
  m.def("write_profile", [](const std::string& p, const ProfileCurve& c) { io::write_profile(p, c); });

  // operator
  m.def("f_rhs", &f_rhs, py::arg("u"), py::arg("n"));
  m.def("q_residual_1d", [](const std::vector<double>& values, double a, double b, int n, bool radial) {
    GridFunction u(radial ? DomainSpec::ball(b, static_cast<int>(values.size()))
                          : DomainSpec::interval(a, b, static_cast<int>(values.size())));
    require(!radial || a == 0.0, "radial samples start on the axis (a = 0)");
    u.values = values;
    const auto r = q_residual(u, n);
    return py::make_tuple(r.residuals, to_string(r.classification));
  }, py::arg("values"), py::arg("a"), py::arg("b"), py::arg("n") = 2, py::arg("radial") = false,
     "Discrete Q on uniform samples over [a, b] (radial: |x| in [0, b]). Returns (interior residuals, classification).");

  // dirichlet
  m.def("solve_problem", [](const py::object& problem) {
    const auto p = io::parse_problem(py_to_json(problem));
    const auto s = solve(p.domain, p.bc, p.n, p.tol, p.options);
    std::vector<std::vector<double>> coords;
    std::vector<double> values;
    for (std::size_t k = 0; k < s.u.grid.size(); ++k) {
      if (s.u.grid.role[k] == NodeRole::Outside) continue;
      const auto c = s.u.grid.coords(k);
      coords.push_back(s.u.grid.dim() == 2 ? std::vector<double>{c[0], c[1]} : std::vector<double>{c[0]});
      values.push_back(s.u.values[k]);
    }
    return py::make_tuple(coords, values, json_to_py(io::solve_report_json(s.report)));
  }, py::arg("problem"), "Solves a problem given as the problem-file dict. Returns (coords, u, report).");

  // verification and the command line
  m.def("run_suite", [](const std::string& suite, double tol, std::uint64_t seed) {
    return json_to_py(emit_report(run_suite(parse_suite(suite), VerifyOptions{tol, seed})));
  }, py::arg("suite") = "all", py::arg("tol") = 1e-8, py::arg("seed") = 0);
  m.def("cli", [](const std::vector<std::string>& args) { return cli::run(args, std::cout, std::cerr); },
        py::arg("args"), "Runs the command-line front end; returns the exit code.");
}
