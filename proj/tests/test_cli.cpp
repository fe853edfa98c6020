#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "horo/cli.hpp"
#include "horo/error.hpp"
#include "horo/io.hpp"
#include "horo/verify.hpp"

using namespace horo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("horo_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

int horo_run(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  if (err_text) *err_text = err.str();
  return rc;
}

io::json load(const std::string& p) { return io::json::parse(io::read_text(p)); }

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {M_PI, 1.0 / 3.0, 1e-300, -2.5e17, 0.1}) CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::metadata_path("a/b.csv") == fs::path("a/b.json"));
  CHECK(io::metadata_path("out") == fs::path("out.json"));
}

TEST_CASE("profile files round-trip exactly") {
  TempDir d("profile");
  const auto b = bowl_shoot(1.0, 2);
  io::write_profile(d / "b.csv", b);
  const auto r = io::read_profile(d / "b.csv");
  CHECK(r.kind == ProfileKind::Bowl);
  CHECK(r.n == 2);
  CHECK(*r.r2 == *b.r2);
  CHECK(r.residual_max == b.residual_max);
  REQUIRE(r.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < b.samples.size(); ++i) {
    CHECK(r.samples[i].s == b.samples[i].s);
    CHECK(r.samples[i].rho == b.samples[i].rho);
    CHECK(r.samples[i].alpha == b.samples[i].alpha);
  }
  io::write_text(d / "bad.csv", "x,y\n1,2\n");
  CHECK_THROWS_AS(io::read_profile(d / "bad.csv"), Error);
  CHECK_THROWS_AS(io::read_profile(d / "missing.csv"), Error);
}

TEST_CASE("problem files") {
  const auto p = io::parse_problem(io::json::parse(R"({
    "domain": {"shape": "annulus", "r_in": 0.2, "r_out": 0.5, "resolution": 17},
    "bc": {"kind": "per_side", "values": [0.6, 0.9]}, "n": 2, "tol": 1e-10})"));
  CHECK(std::holds_alternative<Annulus>(p.domain.shape));
  CHECK(p.bc.values == std::vector<double>{0.6, 0.9});
  CHECK(io::parse_domain(io::domain_json(p.domain)).resolution == 17);
  CHECK(io::parse_boundary(io::boundary_json(p.bc)).values == p.bc.values);

  auto bad = [](const char* text) {
    try {
      io::parse_problem(io::json::parse(text));
    } catch (const Error& e) {
      return e.kind() == ErrorKind::InvalidArgument;
    }
    return false;
  };
  CHECK(bad(R"({"bc": {"kind": "constant", "value": 1}, "n": 2, "tol": 1e-8})"));
  CHECK(bad(R"({"domain": {"shape": "torus", "resolution": 9}, "bc": {"kind": "constant", "value": 1}, "n": 2, "tol": 1e-8})"));
  CHECK(bad(R"({"domain": {"shape": "ball", "radius": "big", "resolution": 9}, "bc": {"kind": "constant", "value": 1}, "n": 2, "tol": 1e-8})"));
  CHECK(bad(R"({"domain": {"shape": "ball", "radius": 1, "resolution": 9}, "bc": {"kind": "constant", "value": -1}, "n": 2, "tol": 1e-8})"));
  CHECK(bad(R"({"domain": {"shape": "ball", "radius": 1, "resolution": 9}, "bc": {"kind": "constant", "value": 1}, "n": 2, "tol": 0})"));
}

TEST_CASE("report assembly") {
  const auto empty = emit_report({});
  CHECK(empty.dump() == R"({"checks":[],"pass":true})");
  const auto one = emit_report({Check{"a", "x", 1.0, 0.5, false}});
  CHECK(one["pass"] == false);
  CHECK(one["checks"][0]["threshold"] == 0.5);
  CHECK_THROWS_AS(parse_suite("everything"), Error);
}

TEST_CASE("cli subcommands") {
  TempDir d("cli");
  CHECK(horo_run({"grim", "--n", "2", "--height", "1.0", "--samples", "512", "--out", d / "g.csv"}) == 0);
  CHECK(load(d / "g.json")["residual_max"].get<double>() < 1e-8);
  CHECK(io::read_profile(d / "g.csv").samples.size() == 512);

  CHECK(horo_run({"bowl", "--n", "2", "--radius", "2.0", "--out", d / "b.csv"}) == 0);
  const auto meta = load(d / "b.json");
  CHECK(std::abs(meta["r2"].get<double>() - 2.0) < 1e-6);
  CHECK(meta["h"].get<double>() > 0.0);

  // round trip through verify --curve
  CHECK(horo_run({"verify", "--curve", d / "b.csv", "--report", d / "c.json"}) == 0);
  const auto rt = load(d / "c.json");
  CHECK(rt["pass"] == true);
  CHECK(rt["checks"][0]["value"].get<double>() <= 2.0);

  CHECK(horo_run({"wing", "--n", "2", "--tip-height", "1", "--tip-radius", "0.5", "--out", d / "w.csv"}) == 0);
  CHECK(load(d / "w_lower.json")["lambda0"].is_number());
  CHECK(load(d / "w_upper.json")["endpoints"].size() == 2);

  CHECK(horo_run({"geodesic", "--n", "2", "--z0", "1", "--w0", "0", "--angle", "0.3", "--out", d / "geo.csv"}) == 0);
  CHECK(load(d / "geo.json")["kind"] == "geodesic");
  CHECK(io::read_text(d / "geo.csv").rfind("s,z,w,dz,dw\n", 0) == 0);

  // determinism
  CHECK(horo_run({"bowl", "--n", "2", "--radius", "2.0", "--out", d / "b2.csv"}) == 0);
  CHECK(io::read_text(d / "b.csv") == io::read_text(d / "b2.csv"));
  CHECK(io::read_text(d / "b.json") == io::read_text(d / "b2.json"));
}

TEST_CASE("cli dirichlet and exit codes") {
  TempDir d("exit");
  io::write_text(d / "p.json", R"({"domain": {"shape": "ball", "radius": 0.5, "resolution": 33},
    "bc": {"kind": "constant", "value": 0.8}, "n": 2, "tol": 1e-10})");
  CHECK(horo_run({"dirichlet", "--problem", d / "p.json", "--out", d / "u.csv"}) == 0);
  const auto m = load(d / "u.json");
  CHECK(m["oracle"]["max_abs_diff"].get<double>() < 4.0 / (32.0 * 32.0) * 0.25);
  CHECK(m["report"]["iterations"].get<int>() > 0);
  CHECK(io::read_text(d / "u.csv").rfind("x1,u\n", 0) == 0);
  CHECK(horo_run({"dirichlet", "--problem", d / "p.json", "--out", d / "v.csv", "--oracle", "none"}) == 0);
  CHECK(load(d / "v.json")["oracle"].is_null());

  std::string err;
  CHECK(horo_run({"grim", "--n", "2", "--height", "-1", "--out", d / "x.csv"}, &err) == 2);
  CHECK(err.find("NonpositiveHeight") != std::string::npos);
  CHECK(horo_run({"grim", "--n", "2", "--out", d / "x.csv"}) == 2);
  CHECK(horo_run({"bowl", "--n", "2", "--height", "1", "--radius", "2", "--out", d / "x.csv"}) == 2);
  CHECK(horo_run({"grim", "--n", "2", "--height", "abc", "--out", d / "x.csv"}) == 2);
  CHECK(horo_run({"frobnicate"}) == 2);
  CHECK(horo_run({"verify", "--suite", "nope", "--report", d / "r.json"}) == 2);
  CHECK(horo_run({"dirichlet", "--problem", d / "missing.json", "--out", d / "x.csv"}) == 2);

  io::write_text(d / "q.json", R"({"domain": {"shape": "slab", "width": 1, "resolution": 33},
    "bc": {"kind": "constant", "value": 0.1}, "n": 2, "tol": 1e-14, "max_iterations": 1})");
  CHECK(horo_run({"dirichlet", "--problem", d / "q.json", "--out", d / "x.csv"}, &err) == 3);
  CHECK(err.find("NewtonDiverged") != std::string::npos);
}

TEST_CASE("cli verify suites") {
  TempDir d("verify");
  CHECK(horo_run({"verify", "--suite", "geometry", "--report", d / "g.json"}) == 0);
  const auto r = load(d / "g.json");
  CHECK(r["pass"] == true);
  for (const auto& c : r["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("anchor"));
    CHECK(c.contains("value"));
    CHECK(c.contains("threshold"));
  }
  CHECK(run_suite(Suite::All).size() >= 20);
}
