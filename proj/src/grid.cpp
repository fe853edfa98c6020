#include "horo/grid.hpp"

#include <cmath>
#include <limits>

#include "horo/error.hpp"

namespace horo {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

DomainSpec DomainSpec::interval(double a, double b, int resolution) {
  return {Interval{a, b}, resolution, false};
}
DomainSpec DomainSpec::ball(double radius, int resolution, bool cartesian) {
  return {Ball{radius}, resolution, cartesian};
}
DomainSpec DomainSpec::annulus(double r_in, double r_out, int resolution, bool cartesian) {
  return {Annulus{r_in, r_out}, resolution, cartesian};
}
DomainSpec DomainSpec::rectangle(double wx, double wy, int resolution) {
  return {Rectangle{wx, wy}, resolution, false};
}
DomainSpec DomainSpec::slab(double width, double truncation, int resolution) {
  return {Slab{width, truncation}, resolution, false};
}

void DomainSpec::validate() const {
  require(resolution >= 8, "resolution must be at least 8 nodes per axis");
  std::visit(overloaded{
                 [](const Interval& s) { require(s.b > s.a, "interval must have b > a"); },
                 [](const Ball& s) { require(s.radius > 0.0, "ball radius must be positive"); },
                 [](const Annulus& s) {
                   require(s.r_in > 0.0 && s.r_out > s.r_in, "annulus needs 0 < r_in < r_out");
                 },
                 [](const Rectangle& s) {
                   require(s.width_x > 0.0 && s.width_y > 0.0, "rectangle widths must be positive");
                 },
                 [](const Slab& s) {
                   require(s.width > 0.0 && s.truncation > 0.0, "slab width and truncation must be positive");
                 },
             },
             shape);
}

std::string DomainSpec::shape_name() const {
  return std::visit(overloaded{
                        [](const Interval&) { return std::string("interval"); },
                        [](const Ball&) { return std::string("ball"); },
                        [](const Annulus&) { return std::string("annulus"); },
                        [](const Rectangle&) { return std::string("rectangle"); },
                        [](const Slab&) { return std::string("slab"); },
                    },
                    shape);
}

namespace {

Grid line_grid(double a, double b, int n) {
  Grid g;
  g.layout = Layout::Line;
  g.nx = n;
  g.x0 = a;
  g.dx = (b - a) / (n - 1);
  g.role.assign(g.size(), NodeRole::Interior);
  g.role.front() = NodeRole::Boundary;
  g.role.back() = NodeRole::Boundary;
  return g;
}

Grid radial_grid(double r0, double r1, int n) {
  Grid g;
  g.layout = Layout::Radial;
  g.nx = n;
  g.x0 = r0;
  g.dx = (r1 - r0) / (n - 1);
  g.radial_center = r0 == 0.0;
  g.role.assign(g.size(), NodeRole::Interior);
  if (!g.radial_center) g.role.front() = NodeRole::Boundary;
  g.role.back() = NodeRole::Boundary;
  return g;
}

Grid plane_grid(double wx, double wy, int n) {
  Grid g;
  g.layout = Layout::Plane;
  g.nx = n;
  g.ny = n;
  g.x0 = -0.5 * wx;
  g.y0 = -0.5 * wy;
  g.dx = wx / (n - 1);
  g.dy = wy / (n - 1);
  g.role.assign(g.size(), NodeRole::Interior);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) g.role[g.index(i, j)] = NodeRole::Boundary;
  return g;
}

// Ball/annulus on a square grid: nodes strictly inside are unknowns, their
// 8-neighbours outside the domain carry the boundary data.
Grid masked_grid(double r_in, double r_out, int n) {
  const double pad = 2.0 * r_out / (n - 1);
  Grid g = plane_grid(2.0 * (r_out + pad), 2.0 * (r_out + pad), n + 2);
  auto inside = [&](int i, int j) {
    const double r = std::hypot(g.x(i), g.y(j));
    return r < r_out && r > r_in;
  };
  g.role.assign(g.size(), NodeRole::Outside);
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i)
      if (inside(i, j)) g.role[g.index(i, j)] = NodeRole::Interior;
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      if (g.role[g.index(i, j)] != NodeRole::Interior) continue;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          auto& r = g.role[g.index(i + di, j + dj)];
          if (r == NodeRole::Outside) r = NodeRole::Boundary;
        }
    }
  return g;
}

}  // namespace

Grid Grid::build(const DomainSpec& d) {
  d.validate();
  const int n = d.resolution;
  return std::visit(overloaded{
                        [&](const Interval& s) { return line_grid(s.a, s.b, n); },
                        [&](const Slab& s) { return line_grid(-0.5 * s.width, 0.5 * s.width, n); },
                        [&](const Ball& s) {
                          return d.cartesian ? masked_grid(-1.0, s.radius, n) : radial_grid(0.0, s.radius, n);
                        },
                        [&](const Annulus& s) {
                          return d.cartesian ? masked_grid(s.r_in, s.r_out, n) : radial_grid(s.r_in, s.r_out, n);
                        },
                        [&](const Rectangle& s) { return plane_grid(s.width_x, s.width_y, n); },
                    },
                    d.shape);
}

std::vector<std::size_t> Grid::nodes_with(NodeRole r) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < role.size(); ++k)
    if (role[k] == r) out.push_back(k);
  return out;
}

std::array<double, 2> Grid::coords(std::size_t k) const {
  const int i = static_cast<int>(k % static_cast<std::size_t>(nx));
  const int j = static_cast<int>(k / static_cast<std::size_t>(nx));
  return {x(i), layout == Layout::Plane ? y(j) : 0.0};
}

GridFunction::GridFunction(const DomainSpec& d) : domain(d), grid(Grid::build(d)) {
  values.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
}

std::vector<double> GridFunction::boundary_values() const {
  std::vector<double> out;
  for (auto k : grid.nodes_with(NodeRole::Boundary)) out.push_back(values[k]);
  return out;
}

void GridFunction::validate() const {
  require(values.size() == grid.size(), "value array does not match the grid");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (grid.role[k] == NodeRole::Outside) continue;
    if (!(values[k] > 0.0))
      throw Error(ErrorKind::NonpositiveHeight, "grid function must be strictly positive");
  }
}

}  // namespace horo
