#include "horo/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "horo/error.hpp"
#include "horo/quadrature.hpp"
#include "horo/soliton_operator.hpp"

namespace horo {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kQuadTol = 1e-12;
}  // namespace

void validate(const BarrierSpec& b) {
  std::visit(overloaded{
                 [](const SphericalCap& s) { require(s.R > 0.0, "cap radius must be positive"); },
                 [](const Constant& s) { require(s.c > 0.0, "constant barrier must be positive"); },
                 [](const Collar& s) {
                   require(s.mu > 0.0 && s.kpar > 0.0 && s.l > 0.0, "collar parameters must be positive");
                   require(s.l <= (1.0 + 1e-12) / std::sqrt(s.kpar), "collar width must be at most k^{-1/2}");
                 },
                 [](const OmegaTilde& s) { require(s.a > 0.0 && s.a < s.d, "need 0 < a < d"); },
                 [](const OmegaFull& s) {
                   require(s.a > 0.0 && s.a < s.d, "need 0 < a < d");
                   require(s.u_star > 0.0, "u_star must be positive");
                 },
                 [](const Lema2Omega& s) {
                   require(s.theta > 0.0 && s.delta >= 0.0 && s.a0 > s.delta, "need theta > 0, 0 <= delta < a0");
                 },
             },
             b);
}

GridFunction sample_barrier(const BarrierSpec& b, const DomainSpec& d) {
  validate(b);
  if (const auto* c = std::get_if<Constant>(&b))
    return GridFunction::sample(d, [&](double, double) { return c->c; });
  if (const auto* cap = std::get_if<SphericalCap>(&b)) {
    const double cx = cap->center.size() > 0 ? cap->center[0] : 0.0;
    const double cy = cap->center.size() > 1 ? cap->center[1] : 0.0;
    return GridFunction::sample(d, [&](double x, double y) {
      const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      return std::sqrt(std::max(cap->R * cap->R - r2, 0.0));
    });
  }
  throw Error(ErrorKind::InvalidArgument, "only caps and constants can be sampled on a grid");
}

double F_diffeo(double s) {
  require(s > 0.0, "F needs s > 0");
  return 0.5 * std::log1p(1.0 / (s * s));
}

double F_inverse(double y) {
  require(y > 0.0, "F^{-1} needs y > 0");
  return 1.0 / std::sqrt(std::expm1(2.0 * y));
}

double omega_tilde(double r, const OmegaTilde& spec, int n) {
  validate(spec);
  require(n >= 2, "n must be at least 2");
  require(r >= spec.a && r <= spec.d, "omega_tilde needs a <= r <= d");
  if (r == spec.d) return 0.0;
  // t = a + sigma^2: F^{-1}((n-1)/2 log(t/a)) = ((t/a)^{n-1} - 1)^{-1/2}
  const double a = spec.a;
  auto integrand = [&](double sigma) {
    if (sigma == 0.0) return 2.0 * std::sqrt(a / (n - 1));
    const double x = sigma * sigma / a;
    return 2.0 * sigma / std::sqrt(std::expm1((n - 1) * std::log1p(x)));
  };
  return quad::integrate(integrand, std::sqrt(r - a), std::sqrt(spec.d - a), kQuadTol).value;
}

double omega_full(double r, const OmegaFull& spec, int n) {
  validate(spec);
  const double tilde = omega_tilde(r, OmegaTilde{spec.a, spec.d}, n);
  return tilde - 2.0 * spec.d / (n - 1) * f_rhs(spec.u_star, n) * (spec.d - r);
}

double omega_full_slope(double r, const OmegaFull& spec, int n) {
  validate(spec);
  require(r > spec.a && r <= spec.d, "slope needs a < r <= d");
  const double tilde = F_inverse(0.5 * (n - 1) * std::log(r / spec.a));
  return tilde - 2.0 * spec.d / (n - 1) * f_rhs(spec.u_star, n);
}

Lema2Value lema2_barrier(double r, const Lema2Omega& spec) {
  validate(spec);
  require(r >= spec.delta && r <= spec.a0, "lema2 barrier needs delta <= r <= a0");
  const double th = spec.theta;
  // s = sigma^2: F^{-1}(theta s) ds = 2 sigma / sqrt(e^{2 theta sigma^2} - 1) dsigma
  auto integrand = [&](double sigma) {
    if (sigma == 0.0) return 2.0 / std::sqrt(2.0 * th);
    return 2.0 * sigma / std::sqrt(std::expm1(2.0 * th * sigma * sigma));
  };
  Lema2Value out;
  if (r < spec.a0)
    out.value =
        quad::integrate(integrand, std::sqrt(r - spec.delta), std::sqrt(spec.a0 - spec.delta), kQuadTol).value;
  out.limit = quad::integrate(integrand, 0.0, std::sqrt(spec.a0), kQuadTol).value;
  return out;
}

double nonexistence_bound(double epsilon, double diam, int n, double c0) {
  require(epsilon >= 0.0 && diam > 0.0 && c0 > 0.0 && n >= 2, "nonexistence bound needs positive data");
  const double d = 2.0 * diam;
  const double c = 2.0 * d * d / (n - 1);
  return 2.0 * epsilon + c0 - c * f_rhs(c0, n);
}

Collar collar_barrier_params(double B2, const CollarBounds& b, double rho) {
  require(B2 > 0.0 && rho > 0.0, "B2 and rho must be positive");
  require(b.C1 > 0.0 && b.C2 > 0.0 && b.C3 > 0.0 && b.C_phi > 0.0, "collar bounds must be positive");
  const double C = b.C2 + b.C_phi;
  const double k_min = 1.0 / (rho * rho);
  const double k_max = std::ldexp(k_min, 60);
  for (double k = 2.0 * k_min; k <= k_max; k *= 2.0) {
    const double mu = B2 / std::log1p(std::sqrt(k));
    const double A = -1.0 / mu + C;
    auto P = [&](double p) { return (A * p + b.C3) * p + C * b.C1; };
    const double lo = mu * k / (1.0 + std::sqrt(k)), hi = mu * k;
    double worst = std::max(P(lo), P(hi));
    if (A < 0.0) {
      const double vertex = -b.C3 / (2.0 * A);
      if (vertex > lo && vertex < hi) worst = std::max(worst, P(vertex));
    }
    if (worst < 0.0) return Collar{mu, k, 1.0 / std::sqrt(k), {}};
  }
  throw Error(ErrorKind::SearchExhausted, "no k up to 2^60 rho^-2 satisfies the collar inequality");
}

double collar_psi(const Collar& c, double r) { return c.mu * std::log1p(c.kpar * r); }
double collar_psi_prime(const Collar& c, double r) { return c.mu * c.kpar / (1.0 + c.kpar * r); }

namespace {

struct Jet {
  double v, d1, d2;
};

Jet angular_jet(const DiskData& data, double th) {
  const double h = 1e-4;
  const double p = data.phi(th + h), m = data.phi(th - h), c = data.phi(th);
  return {c, (p - m) / (2.0 * h), (p - 2.0 * c + m) / (h * h)};
}

// Gradient and Hessian of phi_hat at polar position (rho, th).
void phi_hat_derivs(const Jet& j, double rho, double th, double grad[2], double hess[4]) {
  const double rx = std::cos(th), ry = std::sin(th);
  const double tx = -ry, ty = rx;
  grad[0] = j.d1 * tx / rho;
  grad[1] = j.d1 * ty / rho;
  const double r2 = rho * rho;
  // phi'' tt^T / rho^2 - phi' (r t^T + t r^T) / rho^2
  hess[0] = (j.d2 * tx * tx - j.d1 * 2.0 * rx * tx) / r2;
  hess[1] = (j.d2 * tx * ty - j.d1 * (rx * ty + tx * ry)) / r2;
  hess[2] = hess[1];
  hess[3] = (j.d2 * ty * ty - j.d1 * 2.0 * ry * ty) / r2;
}

double sym_norm(const double h[4]) {
  const double tr = 0.5 * (h[0] + h[3]);
  const double disc = std::sqrt(0.25 * (h[0] - h[3]) * (h[0] - h[3]) + h[1] * h[1]);
  return std::max(std::abs(tr + disc), std::abs(tr - disc));
}

}  // namespace

CollarBounds sample_collar_bounds(const DiskData& data, double rho, int samples, double margin) {
  require(data.radius > 0.0 && rho > 0.0 && rho < data.radius, "need 0 < rho < radius");
  require(samples >= 4 && margin >= 1.0, "need samples >= 4 and margin >= 1");
  double c1 = 0.0, c2 = 0.0, b1 = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 4 * samples; ++a) {
    const double th = 2.0 * M_PI * a / (4 * samples);
    const Jet j = angular_jet(data, th);
    b1 = std::min(b1, j.v);
    for (int i = 0; i <= samples; ++i) {
      const double r = data.radius - rho * i / samples;
      double g[2], h[4];
      phi_hat_derivs(j, r, th, g, h);
      const double hn = sym_norm(h);
      c1 = std::max(c1, 1.0 + g[0] * g[0] + g[1] * g[1] + hn * hn);
      c2 = std::max(c2, std::abs(h[0] + h[3]) + hn);
    }
  }
  require(b1 > 0.0, "boundary data must be positive");
  CollarBounds out;
  out.C1 = margin * c1;
  out.C2 = margin * std::max(c2, 1e-12);
  out.C3 = out.C1 * out.C1 / (data.radius - rho);  // |D^2 r| = 1/|x| on the collar
  out.C_phi = -f_rhs(b1, 2);
  return out;
}

CollarCheck collar_residual(const Collar& c, const DiskData& data, int radial, int angular) {
  validate(BarrierSpec{c});
  require(radial >= 1 && angular >= 1, "need at least one sample per direction");
  require(c.l < data.radius, "collar wider than the disk");
  CollarCheck out;
  out.max_q = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < angular; ++a) {
    const double th = 2.0 * M_PI * a / angular;
    const Jet j = angular_jet(data, th);
    const double rx = std::cos(th), ry = std::sin(th);
    for (int i = 1; i <= radial; ++i) {
      const double r = c.l * i / radial;  // distance to the boundary
      const double rho = data.radius - r;
      const double p = collar_psi_prime(c, r);
      const double pp = -p * p / c.mu;
      double g[2], h[4];
      phi_hat_derivs(j, rho, th, g, h);
      // D r = -x/|x|, D^2 r = -(I - x x^T / |x|^2) / |x|
      const double drx = -rx, dry = -ry;
      const double d2r[4] = {-(1.0 - rx * rx) / rho, rx * ry / rho, rx * ry / rho, -(1.0 - ry * ry) / rho};
      StencilSample s;
      s.u = collar_psi(c, r) + j.v;
      s.grad = {p * drx + g[0], p * dry + g[1]};
      s.hess = {pp * drx * drx + p * d2r[0] + h[0], pp * drx * dry + p * d2r[1] + h[1],
                pp * drx * dry + p * d2r[2] + h[2], pp * dry * dry + p * d2r[3] + h[3]};
      out.max_q = std::max(out.max_q, q_pointwise(s, 2));
      ++out.samples;
    }
  }
  out.negative = out.max_q < 0.0;
  return out;
}

}  // namespace horo
