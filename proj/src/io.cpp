#include "horo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "horo/error.hpp"

namespace horo::io {

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double to_double(const std::string& s, const fs::path& p) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() || s.find_first_not_of(" \r", used) == std::string::npos) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::IoFailure, "malformed number '" + s + "' in " + p.string());
}

ProfileKind kind_from_string(const std::string& s) {
  for (auto k : {ProfileKind::GrimReaper, ProfileKind::Bowl, ProfileKind::WingUpper, ProfileKind::WingLower,
                 ProfileKind::Geodesic})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown profile kind '" + s + "'");
}

// json access with our error kinds instead of nlohmann's
template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidArgument, std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

fs::path metadata_path(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  return p;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + p.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::IoFailure, "write to " + p.string() + " failed");
}

std::string read_text(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + p.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

json profile_metadata(const ProfileCurve& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["n"] = c.n;
  j["h"] = c.h;
  j["R"] = c.R;
  j["r2"] = opt(c.r2);
  j["lambda0"] = opt(c.lambda0);
  j["endpoints"] = c.endpoints ? json::array({c.endpoints->first, c.endpoints->second}) : json(nullptr);
  j["residual_max"] = c.residual_max;
  return j;
}

void write_profile(const fs::path& csv, const ProfileCurve& c) {
  std::string out = "s,z,rho,alpha\n";
  for (const auto& s : c.samples)
    out += format_double(s.s) + "," + format_double(s.z) + "," + format_double(s.rho) + "," +
           format_double(s.alpha) + "\n";
  write_text(csv, out);
  write_json(metadata_path(csv), profile_metadata(c));
}

ProfileCurve read_profile(const fs::path& csv) {
  std::stringstream in(read_text(csv));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::IoFailure, csv.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool geodesic = line == "s,z,w,dz,dw";
  if (!geodesic && line != "s,z,rho,alpha")
    throw Error(ErrorKind::IoFailure, "unrecognized profile header '" + line + "' in " + csv.string());

  ProfileCurve c;
  c.kind = geodesic ? ProfileKind::Geodesic : ProfileKind::Bowl;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != (geodesic ? 5u : 4u)) throw Error(ErrorKind::IoFailure, "bad row in " + csv.string());
    ProfileSample s;
    s.s = to_double(cells[0], csv);
    s.z = to_double(cells[1], csv);
    s.rho = to_double(cells[2], csv);
    s.alpha = geodesic ? std::atan2(to_double(cells[4], csv), to_double(cells[3], csv)) : to_double(cells[3], csv);
    c.samples.push_back(s);
  }

  const auto meta = metadata_path(csv);
  if (!fs::exists(meta)) return c;
  json j;
  try {
    j = json::parse(read_text(meta));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoFailure, "malformed metadata " + meta.string() + ": " + e.what());
  }
  c.kind = kind_from_string(field<std::string>(j, "kind"));
  c.n = field<int>(j, "n");
  c.h = field_or<double>(j, "h", 0.0);
  c.R = field_or<double>(j, "R", 0.0);
  if (j.contains("r2") && !j["r2"].is_null()) c.r2 = field<double>(j, "r2");
  if (j.contains("lambda0") && !j["lambda0"].is_null()) c.lambda0 = field<double>(j, "lambda0");
  if (j.contains("endpoints") && j["endpoints"].is_array() && j["endpoints"].size() == 2)
    c.endpoints = std::pair{j["endpoints"][0].get<double>(), j["endpoints"][1].get<double>()};
  c.residual_max = field_or<double>(j, "residual_max", 0.0);
  if (geodesic) {
    for (const auto& s : c.samples) c.h = std::max(c.h, s.z);
  }
  return c;
}

void write_geodesic(const fs::path& csv, const GeodesicCurve& g) {
  std::string out = "s,z,w,dz,dw\n";
  for (const auto& s : g.samples)
    out += format_double(s.t) + "," + format_double(s.state.z) + "," + format_double(s.state.w) + "," +
           format_double(s.state.dz) + "," + format_double(s.state.dw) + "\n";
  write_text(csv, out);
  json j;
  j["n"] = g.n;
  j["kind"] = "geodesic";
  j["tol"] = g.tol;
  j["termination"] = g.termination == GeodesicTermination::Floor ? "floor" : "span";
  write_json(metadata_path(csv), j);
}

json residual_report_json(const ResidualReport& r) {
  json j;
  j["max_abs"] = r.max_abs;
  j["mean_abs"] = r.mean_abs;
  j["classification"] = to_string(r.classification);
  j["tol"] = r.tol_used;
  return j;
}

void write_residual_nodes(const fs::path& csv, const ResidualReport& r) {
  std::string out = "i,j,residual\n";
  for (std::size_t k = 0; k < r.residuals.size(); ++k)
    out += std::to_string(r.nodes[k].first) + "," + std::to_string(r.nodes[k].second) + "," +
           format_double(r.residuals[k]) + "\n";
  write_text(csv, out);
}

json domain_json(const DomainSpec& d) {
  json j;
  j["shape"] = d.shape_name();
  std::visit(
      [&j](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Interval>) {
          j["a"] = s.a;
          j["b"] = s.b;
        } else if constexpr (std::is_same_v<S, Ball>) {
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<S, Annulus>) {
          j["r_in"] = s.r_in;
          j["r_out"] = s.r_out;
        } else if constexpr (std::is_same_v<S, Rectangle>) {
          j["width_x"] = s.width_x;
          j["width_y"] = s.width_y;
        } else {
          j["width"] = s.width;
          j["truncation"] = s.truncation;
        }
      },
      d.shape);
  j["resolution"] = d.resolution;
  j["cartesian"] = d.cartesian;
  return j;
}

DomainSpec parse_domain(const json& j) {
  const auto shape = field<std::string>(j, "shape");
  const int res = field<int>(j, "resolution");
  const bool cart = field_or<bool>(j, "cartesian", false);
  DomainSpec d;
  if (shape == "interval")
    d = DomainSpec::interval(field<double>(j, "a"), field<double>(j, "b"), res);
  else if (shape == "ball")
    d = DomainSpec::ball(field<double>(j, "radius"), res, cart);
  else if (shape == "annulus")
    d = DomainSpec::annulus(field<double>(j, "r_in"), field<double>(j, "r_out"), res, cart);
  else if (shape == "rectangle")
    d = DomainSpec::rectangle(field<double>(j, "width_x"), field<double>(j, "width_y"), res);
  else if (shape == "slab")
    d = DomainSpec::slab(field<double>(j, "width"), field_or<double>(j, "truncation", 10.0), res);
  else
    throw Error(ErrorKind::InvalidArgument, "unknown domain shape '" + shape + "'");
  d.validate();
  return d;
}

json boundary_json(const BoundaryData& bc) {
  json j;
  switch (bc.kind) {
    case BoundaryData::Kind::Constant:
      j["kind"] = "constant";
      j["value"] = bc.constant;
      break;
    case BoundaryData::Kind::PerSide:
      j["kind"] = "per_side";
      j["values"] = bc.values;
      break;
    case BoundaryData::Kind::Sampled:
      j["kind"] = "sampled";
      j["values"] = bc.values;
      break;
  }
  j["floor"] = bc.floor;
  return j;
}

BoundaryData parse_boundary(const json& j) {
  const auto kind = field<std::string>(j, "kind");
  BoundaryData bc;
  if (kind == "constant")
    bc = BoundaryData::make_constant(field<double>(j, "value"));
  else if (kind == "per_side")
    bc = BoundaryData::per_side(field<std::vector<double>>(j, "values"));
  else if (kind == "sampled")
    bc = BoundaryData::sampled(field<std::vector<double>>(j, "values"));
  else
    throw Error(ErrorKind::InvalidArgument, "unknown boundary kind '" + kind + "'");
  bc.floor = field_or<double>(j, "floor", bc.floor);
  bc.validate();
  return bc;
}

json solve_report_json(const SolveReport& r) {
  json j;
  j["iterations"] = r.iterations;
  j["final_residual"] = r.final_residual;
  j["height_bounds"] = json::array({r.height_bounds.first, r.height_bounds.second});
  j["newton_damping_history"] = r.newton_damping_history;
  j["homotopy_used"] = r.homotopy_used;
  return j;
}

void write_grid(const fs::path& csv, const GridFunction& u) {
  const int d = u.grid.dim();
  std::string out = d == 2 ? "x1,x2,u\n" : "x1,u\n";
  for (std::size_t k = 0; k < u.grid.size(); ++k) {
    if (u.grid.role[k] == NodeRole::Outside) continue;
    const auto c = u.grid.coords(k);
    out += format_double(c[0]) + ",";
    if (d == 2) out += format_double(c[1]) + ",";
    out += format_double(u.values[k]) + "\n";
  }
  write_text(csv, out);
}

Problem parse_problem(const json& j) {
  Problem p;
  p.domain = parse_domain(field<json>(j, "domain"));
  p.bc = parse_boundary(field<json>(j, "bc"));
  p.n = field<int>(j, "n");
  p.tol = field<double>(j, "tol");
  require(p.n >= 2, "n must be at least 2");
  require(p.tol > 0.0 && std::isfinite(p.tol), "tol must be positive");
  p.options.max_iterations = field_or<int>(j, "max_iterations", p.options.max_iterations);
  require(p.options.max_iterations > 0, "max_iterations must be positive");
  return p;
}

Problem read_problem(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "malformed problem file " + path.string() + ": " + e.what());
  }
  return parse_problem(j);
}

}  // namespace horo::io
