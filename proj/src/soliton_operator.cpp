#include "horo/soliton_operator.hpp"

#include <algorithm>
#include <cmath>

#include "discrete.hpp"
#include "horo/error.hpp"

namespace horo {

double f_rhs(double u, int n) {
  if (!(u > 0.0)) throw Error(ErrorKind::NonpositiveHeight, "f(u) requires u > 0");
  return -(1.0 + n * u) / (u * u);
}

void StencilSample::validate() const {
  const std::size_t d = grad.size();
  require(hess.size() == d * d, "hessian must be d x d");
  double scale = 0.0;
  for (double h : hess) scale = std::max(scale, std::abs(h));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      require(std::abs(hess[a * d + b] - hess[b * d + a]) <= 1e-12 * std::max(scale, 1.0),
              "hessian must be symmetric");
}

double divergence_term(const StencilSample& s) {
  s.validate();
  const std::size_t d = s.dim();
  double grad2 = 0.0, lap = 0.0, hgg = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    grad2 += s.grad[a] * s.grad[a];
    lap += s.hess[a * d + a];
    for (std::size_t b = 0; b < d; ++b) hgg += s.hess[a * d + b] * s.grad[a] * s.grad[b];
  }
  const double w2 = 1.0 + grad2;
  return (lap - hgg / w2) / std::sqrt(w2);
}

double mean_curvature_graph(const StencilSample& s, int n) {
  double grad2 = 0.0;
  for (double g : s.grad) grad2 += g * g;
  return s.u * divergence_term(s) + n / std::sqrt(1.0 + grad2);
}

double q_pointwise(const StencilSample& s, int n) {
  double grad2 = 0.0;
  for (double g : s.grad) grad2 += g * g;
  return divergence_term(s) - f_rhs(s.u, n) / std::sqrt(1.0 + grad2);
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Solution: return "solution";
    case Classification::Subsolution: return "subsolution";
    case Classification::Supersolution: return "supersolution";
    case Classification::Neither: return "neither";
  }
  return "neither";
}

ResidualReport make_report(std::vector<double> residuals, std::vector<std::pair<int, int>> nodes,
                           double tol) {
  require(tol > 0.0, "classification tolerance must be positive");
  ResidualReport r;
  r.tol_used = tol;
  double lo = 0.0, hi = 0.0, sum = 0.0;
  for (double v : residuals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += std::abs(v);
    r.max_abs = std::max(r.max_abs, std::abs(v));
  }
  r.mean_abs = residuals.empty() ? 0.0 : sum / static_cast<double>(residuals.size());
  if (r.max_abs <= tol)
    r.classification = Classification::Solution;
  else if (lo >= -tol)
    r.classification = Classification::Subsolution;
  else if (hi <= tol)
    r.classification = Classification::Supersolution;
  else
    r.classification = Classification::Neither;
  r.residuals = std::move(residuals);
  r.nodes = std::move(nodes);
  return r;
}

ResidualReport q_residual(const GridFunction& u, int n, double tol) {
  require(n >= 1, "dimension must be positive");
  const Grid& g = u.grid;
  if (g.nx < 3 || (g.layout == Layout::Plane && g.ny < 3))
    throw Error(ErrorKind::DegenerateGrid, "need at least 3 nodes per axis");
  u.validate();
  std::vector<double> res;
  std::vector<std::pair<int, int>> nodes;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.role[k] != NodeRole::Interior) continue;
    res.push_back(detail::node_residual_value(g, n, k, u.values.data()));
    nodes.emplace_back(static_cast<int>(k % static_cast<std::size_t>(g.nx)),
                       static_cast<int>(k / static_cast<std::size_t>(g.nx)));
  }
  return make_report(std::move(res), std::move(nodes), tol);
}

}  // namespace horo
