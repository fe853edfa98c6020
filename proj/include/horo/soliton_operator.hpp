#pragma once

// The graphical soliton operator for the field -d/dx0:
//
//   Q[u] = div(Du / W) - f(u) / W,   W = sqrt(1 + |Du|^2),   f(u) = -(1 + n u) / u^2.
//
// Q[u] = 0 is the soliton equation; Q >= 0 marks subsolutions, Q <= 0
// supersolutions. f is increasing, which is what makes comparison work.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "horo/grid.hpp"

namespace horo {

/// f(u) = -(1 + n u) / u^2. Throws NonpositiveHeight for u <= 0.
double f_rhs(double u, int n);

/// Pointwise first and second derivatives of a graph function. `grad` has
/// d <= n entries (directions not listed are ones the function is constant
/// along); `hess` is d x d, row-major.
struct StencilSample {
  double u = 1.0;
  std::vector<double> grad;
  std::vector<double> hess;

  std::size_t dim() const { return grad.size(); }
  /// Throws InvalidArgument unless hess is d x d and symmetric to 1e-12 (relative).
  void validate() const;
};

/// div(Du/W) expanded from the stencil: (Δu - D²u(Du,Du)/W²) / W.
double divergence_term(const StencilSample& s);

/// Unnormalized hyperbolic mean curvature of the graph {x0 = u(x)} along the
/// upward unit normal: H = u div(Du/W) + n / W.
double mean_curvature_graph(const StencilSample& s, int n);

/// Soliton operator at a point from the stencil.
double q_pointwise(const StencilSample& s, int n);

enum class Classification { Solution, Subsolution, Supersolution, Neither };

std::string to_string(Classification c);

struct ResidualReport {
  std::vector<double> residuals;                 // one per interior node
  std::vector<std::pair<int, int>> nodes;        // (i, j) grid indices of those nodes
  double max_abs = 0.0;
  double mean_abs = 0.0;
  Classification classification = Classification::Solution;
  double tol_used = 1e-8;
};

inline constexpr double kDefaultClassificationTol = 1e-8;

/// Fills max/mean norms and the sign classification of `residuals`.
ResidualReport make_report(std::vector<double> residuals, std::vector<std::pair<int, int>> nodes,
                           double tol);

/// Discrete Q[u] at every interior node, in conservative face-flux form.
/// Throws DegenerateGrid for fewer than 3 nodes per axis.
ResidualReport q_residual(const GridFunction& u, int n, double tol = kDefaultClassificationTol);

}  // namespace horo
