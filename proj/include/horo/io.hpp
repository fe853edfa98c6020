#pragma once

// File formats: profile and grid CSVs (17 significant digits, so values
// round-trip exactly) with JSON companions, and the JSON problem file of the
// Dirichlet solver. Every failure to open or parse raises IoFailure or
// InvalidArgument.

#include <filesystem>
#include <string>

#include "horo/dirichlet.hpp"
#include "horo/geometry.hpp"
#include "horo/profiles.hpp"
#include "horo/soliton_operator.hpp"
#include "json.hpp"

namespace horo::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// %.17g
std::string format_double(double v);

/// `out.csv` -> `out.json` (the extension is replaced, or appended if absent).
fs::path metadata_path(const fs::path& csv);

void write_text(const fs::path& p, const std::string& text);
std::string read_text(const fs::path& p);
/// Serialized with a trailing newline and 2-space indentation.
void write_json(const fs::path& p, const json& j);

// --- profiles ----------------------------------------------------------------

/// { kind, n, h, R, r2, lambda0, endpoints, residual_max } (absent values are null).
json profile_metadata(const ProfileCurve& c);
/// CSV `s,z,rho,alpha` plus the metadata next to it.
void write_profile(const fs::path& csv, const ProfileCurve& c);
/// Reads a profile CSV (`s,z,rho,alpha`, or a geodesic `s,z,w,dz,dw`) and its
/// metadata when present. Without metadata, kind and n must be supplied by
/// the caller afterwards.
ProfileCurve read_profile(const fs::path& csv);

/// CSV `s,z,w,dz,dw` (one row per accepted step) plus
/// { n, kind: "geodesic", tol, termination }.
void write_geodesic(const fs::path& csv, const GeodesicCurve& g);

// --- operator and solver -------------------------------------------------------

/// { max_abs, mean_abs, classification, tol }
json residual_report_json(const ResidualReport& r);
/// CSV `i,j,residual`.
void write_residual_nodes(const fs::path& csv, const ResidualReport& r);

json domain_json(const DomainSpec& d);
DomainSpec parse_domain(const json& j);
json boundary_json(const BoundaryData& bc);
BoundaryData parse_boundary(const json& j);

json solve_report_json(const SolveReport& r);

/// CSV `x1,...,xd,u` over the active nodes (x1 is the radius on radial grids).
void write_grid(const fs::path& csv, const GridFunction& u);

struct Problem {
  DomainSpec domain;
  BoundaryData bc;
  int n = 2;
  double tol = 1e-10;
  SolveOptions options;
};

/// { "domain": {...}, "bc": {...}, "n": int, "tol": float[, "max_iterations": int] }
Problem parse_problem(const json& j);
Problem read_problem(const fs::path& p);

}  // namespace horo::io
