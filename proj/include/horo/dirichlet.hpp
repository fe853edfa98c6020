#pragma once

// Dirichlet problem for the soliton operator on a grid: Q[u] = 0 in the
// domain, u = phi on the boundary nodes.

#include <optional>
#include <utility>
#include <vector>

#include "horo/grid.hpp"

namespace horo {

struct BoundaryData {
  enum class Kind { Constant, PerSide, Sampled };

  Kind kind = Kind::Constant;
  double constant = 1.0;
  // PerSide: Line (left, right), Annulus (inner, outer), Ball (outer),
  // Rectangle (west, east, south, north). Sampled: one value per boundary
  // node, in grid.nodes_with(Boundary) order.
  std::vector<double> values;
  double floor = 1e-8;        // smallest admissible boundary value
  bool continuation = false;  // admits zero data (and floor 0)

  static BoundaryData make_constant(double c);
  static BoundaryData per_side(std::vector<double> v);
  static BoundaryData sampled(std::vector<double> v);

  /// Throws InvalidArgument for negative values, values below the floor, or
  /// zero data outside continuation mode.
  void validate() const;
  /// Value at each boundary node of the grid of d (nodes_with(Boundary) order).
  std::vector<double> trace(const DomainSpec& d, const Grid& g) const;
};

struct SolveOptions {
  int max_iterations = 100;
  std::optional<double> initial_constant;     // default: the largest boundary value
  std::optional<std::vector<double>> initial;  // full nodal guess, overrides initial_constant
  double u_min = 1e-8;
  bool allow_homotopy = true;  // continuation in the data from a large constant if the cold start fails
};

struct SolveReport {
  int iterations = 0;
  double final_residual = 0.0;
  std::pair<double, double> height_bounds{0.0, 0.0};  // (B1, B2)
  std::vector<double> newton_damping_history;
  bool homotopy_used = false;
};

struct SolveResult {
  GridFunction u;
  SolveReport report;
};

/// Damped Newton on the discrete residual. Plane grids need n = 2.
/// Throws NewtonDiverged or FloorViolation.
SolveResult solve(const DomainSpec& dom, const BoundaryData& bc, int n, double tol, const SolveOptions& opts = {});

/// Radial two-point problem solved by shooting: on a ball the tip height of a
/// bowl, on an annulus the slope at the inner radius. Values at the grid radii.
struct RadialSolution {
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;
  double parameter = 0.0;  // tip height (ball) or u'(r_in) (annulus)
};

RadialSolution solve_radial(const DomainSpec& dom, const BoundaryData& bc, int n, double tol = 1e-12);

struct ContinuationResult {
  std::vector<GridFunction> iterates;  // data 1/j, j = 1..steps
  bool monotone = true;                // u_{j+1} <= u_j + tol everywhere
  double max_increase = 0.0;           // max of u_{j+1} - u_j
  GridFunction extrapolated;           // Richardson limit of the last iterates
};

ContinuationResult continuation_to_zero_boundary(const DomainSpec& dom, int n, double tol, int steps);

/// Upper barrier for the height: a bowl (or grim reaper on a line) centered
/// on the domain whose value on the boundary dominates the data.
struct Supersolution {
  bool grim = false;
  int n = 2;
  double h = 1.0;
  double center = 0.0;  // line grids only
  /// Values at the active nodes of g (NaN elsewhere).
  std::vector<double> evaluate(const Grid& g) const;
};

Supersolution height_supersolution(const Grid& g, double max_data, int n);

struct HeightCheck {
  double B1 = 0.0;  // min boundary value
  double B2 = 0.0;  // max of the supersolution over the grid
  double min_u = 0.0;
  double max_excess = 0.0;  // max (u - supersolution)
  bool height_ok = false;
  std::vector<double> H;    // -1/(u W) at every active node
  double H_interior_max = 0.0;
  double H_boundary_max = 0.0;
  double H_boundary_min = 0.0;
  bool H_ok = false;
  bool pass = false;
};

/// Report-only: height bounds and the boundary maximum of H = -1/(u W).
HeightCheck verify_height_and_H(const GridFunction& u, const BoundaryData& bc, int n, double tol);

struct GradientCheck {
  double max_normal_derivative = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// One-sided normal derivative of u at the boundary nodes against `bound`
/// (typically mu k from collar_barrier_params).
GradientCheck boundary_gradient_check(const GridFunction& u, double bound);

}  // namespace horo
