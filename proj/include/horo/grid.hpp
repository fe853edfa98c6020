#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace horo {

struct Interval {
  double a = 0.0;
  double b = 1.0;
};
struct Ball {
  double radius = 1.0;
};
struct Annulus {
  double r_in = 0.5;
  double r_out = 1.0;
};
struct Rectangle {
  double width_x = 1.0;
  double width_y = 1.0;
};
/// A slab {|x1| < width/2} in R^n. Solutions with data invariant along the
/// slab are invariant too, so the slab is discretized by its cross-section;
/// `truncation` records the nominal extent in the other directions.
struct Slab {
  double width = 1.0;
  double truncation = 10.0;
};

using Shape = std::variant<Interval, Ball, Annulus, Rectangle, Slab>;

struct DomainSpec {
  Shape shape = Interval{};
  int resolution = 33;     // nodes per axis
  bool cartesian = false;  // Ball/Annulus: planar masked grid instead of the radial reduction

  static DomainSpec interval(double a, double b, int resolution);
  static DomainSpec ball(double radius, int resolution, bool cartesian = false);
  static DomainSpec annulus(double r_in, double r_out, int resolution, bool cartesian = false);
  static DomainSpec rectangle(double wx, double wy, int resolution);
  static DomainSpec slab(double width, double truncation, int resolution);

  /// Throws InvalidArgument on a violated invariant.
  void validate() const;
  std::string shape_name() const;
};

enum class Layout {
  Line,    // uniform nodes on a segment, translation invariant in the remaining directions
  Radial,  // nodes in |x|, rotationally symmetric functions
  Plane,   // tensor grid in (x1, x2)
};

enum class NodeRole : unsigned char { Interior, Boundary, Outside };

/// Node layout derived from a DomainSpec.
struct Grid {
  Layout layout = Layout::Line;
  int nx = 0;
  int ny = 1;
  double x0 = 0.0;
  double dx = 0.0;
  double y0 = 0.0;
  double dy = 0.0;
  bool radial_center = false;  // Radial layout whose first node sits on the axis
  std::vector<NodeRole> role;

  static Grid build(const DomainSpec& domain);

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  double x(int i) const { return x0 + dx * i; }
  double y(int j) const { return y0 + dy * j; }
  int dim() const { return layout == Layout::Plane ? 2 : 1; }

  std::vector<std::size_t> nodes_with(NodeRole r) const;
  /// Euclidean coordinates of node k (radius for the radial layout).
  std::array<double, 2> coords(std::size_t k) const;
};

/// Nodal values of a positive function on a discretized domain.
struct GridFunction {
  DomainSpec domain;
  Grid grid;
  std::vector<double> values;  // NaN at Outside nodes

  GridFunction() = default;
  explicit GridFunction(const DomainSpec& d);

  /// Samples `u(x, y)` at every active node (y ignored for 1-D layouts).
  template <class F>
  static GridFunction sample(const DomainSpec& d, F&& u) {
    GridFunction g(d);
    for (std::size_t k = 0; k < g.grid.size(); ++k) {
      if (g.grid.role[k] == NodeRole::Outside) continue;
      const auto c = g.grid.coords(k);
      g.values[k] = u(c[0], c[1]);
    }
    return g;
  }

  /// Boundary trace, ordered like grid.nodes_with(NodeRole::Boundary).
  std::vector<double> boundary_values() const;
  /// Throws NonpositiveHeight when an active node is not strictly positive.
  void validate() const;
};

}  // namespace horo
