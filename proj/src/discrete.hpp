#pragma once

// Conservative discretization of Q[u] = div(Du/W) - f(u)/W, W = sqrt(1+|Du|^2),
// shared by the residual evaluator and the Newton solver. The node residual is
// templated on the scalar so the solver gets an exact Jacobian from forward-mode
// dual numbers.

#include <array>
#include <cmath>
#include <cstddef>

#include "horo/grid.hpp"

namespace horo::detail {

template <int K>
struct Dual {
  double v = 0.0;
  std::array<double, K> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants

  friend Dual operator+(Dual a, const Dual& b) {
    a.v += b.v;
    for (int i = 0; i < K; ++i) a.d[i] += b.d[i];
    return a;
  }
  friend Dual operator-(Dual a, const Dual& b) {
    a.v -= b.v;
    for (int i = 0; i < K; ++i) a.d[i] -= b.d[i];
    return a;
  }
  friend Dual operator-(Dual a) {
    a.v = -a.v;
    for (int i = 0; i < K; ++i) a.d[i] = -a.d[i];
    return a;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v * b.v;
    for (int i = 0; i < K; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v / b.v;
    const double inv = 1.0 / (b.v * b.v);
    for (int i = 0; i < K; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * inv;
    return r;
  }
  friend Dual sqrt(const Dual& a) {
    Dual r;
    r.v = std::sqrt(a.v);
    const double s = 0.5 / r.v;
    for (int i = 0; i < K; ++i) r.d[i] = a.d[i] * s;
    return r;
  }
};

inline double value_of(double x) { return x; }
template <int K>
double value_of(const Dual<K>& x) {
  return x.v;
}

using std::sqrt;

template <class T>
T zeroth_order(const T& u, int n) {
  // f(u) = -(1 + n u) / u^2
  return -(T(1.0) + T(double(n)) * u) / (u * u);
}

/// Residual at interior node (i, j). `u(di, dj)` returns the value at the
/// offset node; offsets stay within the 3x3 (or 3-point) neighbourhood.
template <class T, class Get>
T node_residual(const Grid& g, int n, int i, [[maybe_unused]] int j, Get&& u) {
  switch (g.layout) {
    case Layout::Line: {
      const double h = g.dx;
      const T c = u(0, 0), e = u(1, 0), w = u(-1, 0);
      const T dp = (e - c) / T(h), dm = (c - w) / T(h);
      const T fp = dp / sqrt(T(1.0) + dp * dp);
      const T fm = dm / sqrt(T(1.0) + dm * dm);
      const T dc = (e - w) / T(2.0 * h);
      const T wc = sqrt(T(1.0) + dc * dc);
      return (fp - fm) / T(h) - zeroth_order(c, n) / wc;
    }
    case Layout::Radial: {
      const double h = g.dx;
      const double r = g.x(i);
      const T c = u(0, 0);
      if (g.radial_center && i == 0) {
        // Flux through the sphere of radius h/2; the gradient vanishes on the axis.
        const T e = u(1, 0);
        const T dp = (e - c) / T(h);
        const T fp = dp / sqrt(T(1.0) + dp * dp);
        return T(2.0 * n / h) * fp - zeroth_order(c, n);
      }
      const T e = u(1, 0), w = u(-1, 0);
      const double rp = std::pow((r + 0.5 * h) / r, n - 1);
      const double rm = std::pow((r - 0.5 * h) / r, n - 1);
      const T dp = (e - c) / T(h), dm = (c - w) / T(h);
      const T fp = dp / sqrt(T(1.0) + dp * dp);
      const T fm = dm / sqrt(T(1.0) + dm * dm);
      const T dc = (e - w) / T(2.0 * h);
      const T wc = sqrt(T(1.0) + dc * dc);
      return (T(rp) * fp - T(rm) * fm) / T(h) - zeroth_order(c, n) / wc;
    }
    case Layout::Plane: {
      const double hx = g.dx, hy = g.dy;
      const T c = u(0, 0);
      const T e = u(1, 0), w = u(-1, 0), nn = u(0, 1), s = u(0, -1);
      const T ne = u(1, 1), nw = u(-1, 1), se = u(1, -1), sw = u(-1, -1);
      // x-faces: normal difference plus averaged transverse difference
      const T gx_e = (e - c) / T(hx), gy_e = (nn + ne - s - se) / T(4.0 * hy);
      const T gx_w = (c - w) / T(hx), gy_w = (nn + nw - s - sw) / T(4.0 * hy);
      const T gy_n = (nn - c) / T(hy), gx_n = (e + ne - w - nw) / T(4.0 * hx);
      const T gy_s = (c - s) / T(hy), gx_s = (e + se - w - sw) / T(4.0 * hx);
      const T fe = gx_e / sqrt(T(1.0) + gx_e * gx_e + gy_e * gy_e);
      const T fw = gx_w / sqrt(T(1.0) + gx_w * gx_w + gy_w * gy_w);
      const T fn = gy_n / sqrt(T(1.0) + gx_n * gx_n + gy_n * gy_n);
      const T fs = gy_s / sqrt(T(1.0) + gx_s * gx_s + gy_s * gy_s);
      const T gxc = (e - w) / T(2.0 * hx), gyc = (nn - s) / T(2.0 * hy);
      const T wc = sqrt(T(1.0) + gxc * gxc + gyc * gyc);
      return (fe - fw) / T(hx) + (fn - fs) / T(hy) - zeroth_order(c, n) / wc;
    }
  }
  return T(0.0);
}

/// Plain evaluation on a value array.
inline double node_residual_value(const Grid& g, int n, std::size_t k, const double* values) {
  const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
  const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
  return node_residual<double>(g, n, i, j, [&](int di, int dj) { return values[g.index(i + di, j + dj)]; });
}

}  // namespace horo::detail
