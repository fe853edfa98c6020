#pragma once

// Embedded Runge-Kutta 5(4) (Dormand-Prince) with PI step-size control.
//
// The stepper is templated on the state size so the hot loop stays on the
// stack. Callers drive termination through the observer: it sees every
// accepted step and returns false to stop. Output stations (`stops`) are hit
// exactly by clipping the step.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "horo/error.hpp"

namespace horo::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Tolerances {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double h_init = 0.0;  // 0 selects an automatic first step
  double h_max = std::numeric_limits<double>::infinity();
  double h_min = 1e-15;
  std::size_t max_steps = 2'000'000;
};

enum class Termination { ReachedEnd, Observer };

struct Outcome {
  Termination termination = Termination::ReachedEnd;
  double t = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace detail {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
bool finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace detail

/// Integrate dy/dt = rhs(t, y) from t0 towards t1 (either direction).
///
/// `rhs(t, y, dydt)` may return false to flag a state outside the domain of
/// the vector field; the step is then rejected and shrunk.
/// `observer(t, y)` is called on the initial state and every accepted step.
template <std::size_t N, class Rhs, class Observer>
Outcome integrate(Rhs&& rhs, double t0, State<N> y, double t1, const Tolerances& tol,
                  Observer&& observer, std::span<const double> stops = {}) {
  using namespace detail;
  Outcome out;
  out.t = t0;
  if (!observer(t0, y)) {
    out.termination = Termination::Observer;
    return out;
  }
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  auto err_norm = [&](const State<N>& y0, const State<N>& y1, const State<N>& e) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = tol.abs_tol + tol.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      acc += (e[i] / sc) * (e[i] / sc);
    }
    return std::sqrt(acc / static_cast<double>(N));
  };

  State<N> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, ytmp{}, ynew{}, yerr{};
  double t = t0;
  if (!rhs(t, y, k1) || !finite(k1)) throw Error(ErrorKind::StepFailure, "invalid initial state");

  double h = tol.h_init;
  if (h <= 0.0) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = tol.abs_tol + tol.rel_tol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, std::abs(t1 - t0));
  }
  h = std::min(h, tol.h_max);

  std::size_t next_stop = 0;
  while (next_stop < stops.size() && dir * (stops[next_stop] - t0) <= 0.0) ++next_stop;

  double facold = 1e-4;
  constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
  constexpr double facc1 = 5.0, facc2 = 0.1;

  while (dir * (t1 - t) > 0.0) {
    if (out.accepted + out.rejected >= tol.max_steps)
      throw Error(ErrorKind::StepFailure, "maximum number of steps exceeded");
    if (h < tol.h_min * std::max(1.0, std::abs(t)))
      throw Error(ErrorKind::StepFailure, "step size underflow");

    double target = t1;
    if (next_stop < stops.size() && dir * (stops[next_stop] - t1) < 0.0) target = stops[next_stop];
    bool hits_target = false;
    const double h_unclipped = h;
    if (h >= std::abs(target - t)) {
      h = std::abs(target - t);
      hits_target = true;
    }
    const double hs = dir * h;

    bool ok = true;
    auto stage = [&](double tc, State<N>& k) {
      if (!ok) return;
      ok = rhs(tc, ytmp, k) && finite(k);
    };
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
    stage(t + c2 * hs, k2);
    for (std::size_t i = 0; ok && i < N; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    stage(t + c3 * hs, k3);
    for (std::size_t i = 0; ok && i < N; ++i)
      ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    stage(t + c4 * hs, k4);
    for (std::size_t i = 0; ok && i < N; ++i)
      ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    stage(t + c5 * hs, k5);
    for (std::size_t i = 0; ok && i < N; ++i)
      ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    stage(t + hs, k6);
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      ok = finite(ynew) && rhs(t + hs, ynew, k7) && finite(k7);
    }
    if (!ok) {
      h *= 0.25;
      ++out.rejected;
      continue;
    }
    for (std::size_t i = 0; i < N; ++i)
      yerr[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double err = err_norm(y, ynew, yerr);
    const double fac11 = std::pow(std::max(err, 1e-300), expo1);

    if (err <= 1.0) {
      double fac = fac11 / std::pow(facold, beta);
      fac = std::clamp(fac / safe, facc2, facc1);
      facold = std::max(err, 1e-4);
      t = hits_target ? target : t + hs;
      y = ynew;
      k1 = k7;
      ++out.accepted;
      out.t = t;
      if (hits_target && next_stop < stops.size() && target == stops[next_stop]) ++next_stop;
      if (!observer(t, y)) {
        out.termination = Termination::Observer;
        return out;
      }
      h = std::min(hits_target ? std::max(h / fac, h_unclipped) : h / fac, tol.h_max);
    } else {
      h /= std::min(facc1, fac11 / safe);
      ++out.rejected;
    }
  }
  out.t = t;
  return out;
}

}  // namespace horo::ode
