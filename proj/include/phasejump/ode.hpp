#ifndef PHASEJUMP_ODE_HPP
#define PHASEJUMP_ODE_HPP

// Adaptive Dormand-Prince 5(4) integrator for small complex linear systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "phasejump/error.hpp"

namespace phasejump::ode {

template <std::size_t N>
using State = std::array<std::complex<double>, N>;

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double initial_step = 0.0;  // 0 picks min(max_step, span / 100)
  std::size_t max_steps = 100'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_calls = 0;
};

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
  State<N> out = y;
  for (const auto& [coef, k] : terms) {
    if (coef == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += (h * coef) * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1 in place. `observe(t, y)` is
/// called once at t0 and after every accepted step; the final call is at t1.
template <std::size_t N, class Rhs, class Observer>
Stats integrate(Rhs&& rhs, State<N>& y, double t0, double t1, const StepControl& ctl, Observer&& observe) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (!(t1 > t0)) throw ValidationError("integrate: t_end must exceed t_start");
  if (!(ctl.rel_tol > 0.0) || !(ctl.abs_tol > 0.0) || !(ctl.max_step > 0.0))
    throw ValidationError("integrate: tolerances and max_step must be > 0");

  Stats stats;
  double t = t0;
  double h = ctl.initial_step > 0.0 ? ctl.initial_step : (t1 - t0) / 100.0;
  h = std::min(h, ctl.max_step);

  observe(t, std::as_const(y));
  State<N> k1 = rhs(t, y);
  ++stats.rhs_calls;

  while (t < t1) {
    if (stats.accepted + stats.rejected >= ctl.max_steps)
      throw NumericalError("integrate: step budget exhausted at t=" + std::to_string(t));
    bool last = false;
    if (t + h >= t1 || t1 - (t + h) < 1e-12 * std::max(1.0, std::abs(t1))) {
      h = t1 - t;
      last = true;
    }
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < hmin) throw NumericalError("integrate: step size underflow at t=" + std::to_string(t));

    const State<N> k2 = rhs(t + c2 * h, detail::axpy<N>(y, h, {{a21, &k1}}));
    const State<N> k3 = rhs(t + c3 * h, detail::axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
    const State<N> k4 = rhs(t + c4 * h, detail::axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<N> k5 = rhs(t + c5 * h, detail::axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<N> k6 =
        rhs(t + h, detail::axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State<N> y_new = detail::axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double t_new = last ? t1 : t + h;
    const State<N> k7 = rhs(t_new, y_new);
    stats.rhs_calls += 6;

    double err2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const std::complex<double> e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      // per-component moduli keep the norm invariant under a global phase
      const double sc = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err2 += std::norm(e) / (sc * sc);
    }
    const double err = std::sqrt(err2 / static_cast<double>(N));
    if (!std::isfinite(err)) throw NumericalError("integrate: non-finite state at t=" + std::to_string(t));

    if (err <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      ++stats.accepted;
      observe(t, std::as_const(y));
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * fac, ctl.max_step);
    } else {
      ++stats.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
    }
  }
  return stats;
}

}  // namespace phasejump::ode

#endif  // PHASEJUMP_ODE_HPP
