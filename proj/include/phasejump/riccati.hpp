#ifndef PHASEJUMP_RICCATI_HPP
#define PHASEJUMP_RICCATI_HPP

// Approximate two-level dynamics through the ratio f = C_a / C_b, which obeys
//   f' + i conj(W) f^2 - i W = 0.
// With the tip angle theta(t) = int W, linearising f^2 around i*theta gives
//   f(t) = i int^t [theta' - theta^2 conj(theta')] exp(2 int_{t'}^t theta conj(theta')) dt'.
// The exponent splits as 2 I(t) - 2 I(t'), so the whole series is a single
// cumulative pass over the grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "phasejump/error.hpp"
#include "phasejump/pulse.hpp"
#include "phasejump/quadrature.hpp"
#include "phasejump/tls.hpp"

namespace phasejump {

inline constexpr std::size_t kMinNodesPerCycle = 8;
inline constexpr std::size_t kDefaultNodesPerCycle = 200;
inline constexpr double kExponentGuard = 700.0;
inline constexpr double kRegimeLimit = 0.99;

struct TipAngleSeries {
  quadrature::UniformGrid grid;
  std::vector<complex> theta;
  std::vector<complex> theta_dot;  // coupling W at each node

  std::size_t size() const { return grid.size; }
};

struct RatioSeries {
  quadrature::UniformGrid grid;
  std::vector<complex> f;

  std::size_t size() const { return grid.size; }
};

/// |C_a| recovered from the ratio: |f| / sqrt(1 + |f|^2).
inline double amplitude_from_f(complex f) {
  const double m = std::abs(f);
  if (m == 0.0) return 0.0;
  return m / std::hypot(1.0, m);
}

/// The linearisation is only trusted while |C_b| stays large.
inline bool within_regime(const RatioSeries& ratio) {
  return std::all_of(ratio.f.begin(), ratio.f.end(), [](complex f) { return amplitude_from_f(f) < kRegimeLimit; });
}

/// Grid for a transition of frequency `omega` driven at carrier `nu`: covers the
/// padded support window with n_per_cycle nodes per period 2 pi / (omega + nu).
inline quadrature::UniformGrid tip_grid(double t_start, double t_end, double fastest, std::size_t n_per_cycle) {
  if (n_per_cycle < kMinNodesPerCycle)
    throw ValidationError("n_per_cycle must be >= " + std::to_string(kMinNodesPerCycle));
  const double period = 2.0 * std::numbers::pi / fastest;
  return quadrature::make_grid(t_start, t_end, period / static_cast<double>(n_per_cycle));
}

template <class Coupling>
TipAngleSeries tip_angle_on(const quadrature::UniformGrid& grid, Coupling&& coupling) {
  TipAngleSeries out;
  out.grid = grid;
  out.theta_dot.resize(grid.size);
  for (std::size_t k = 0; k < grid.size; ++k) out.theta_dot[k] = coupling(grid[k]);
  out.theta = quadrature::cumulative_simpson(out.theta_dot, grid.step);
  return out;
}

/// theta(t) = int_{t_start}^t W(t') dt' by cumulative Simpson.
inline TipAngleSeries tip_angle(const PulseSpec& pulse, const AtomSpec& atom,
                                std::size_t n_per_cycle = kDefaultNodesPerCycle) {
  validate(pulse);
  validate(atom);
  if (atom.kind != AtomKind::TwoLevel) throw ValidationError("tip_angle: two-level atom required");
  const auto [lo, hi] = support_window(pulse);
  const auto grid =
      tip_grid(kWindowPadding * lo, kWindowPadding * hi, atom.omega_ab + pulse.carrier, n_per_cycle);
  return tip_angle_on(grid, [&](double t) { return effective_rabi(pulse, atom, t); });
}

namespace detail {

inline void guard_exponent(const std::vector<complex>& exponent, const char* what) {
  for (const auto& e : exponent) {
    if (!(std::abs(e.real()) <= kExponentGuard))
      throw NumericalError(std::string(what) + ": exponent exceeds 700, weak-coupling assumption violated");
  }
}

}  // namespace detail

inline RatioSeries riccati_solution(const TipAngleSeries& tip) {
  const std::size_t n = tip.size();
  if (n < 3 || tip.theta.size() != n || tip.theta_dot.size() != n)
    throw ValidationError("riccati_solution: malformed tip-angle series");
  std::vector<complex> zeta(n);
  for (std::size_t k = 0; k < n; ++k) zeta[k] = tip.theta[k] * std::conj(tip.theta_dot[k]);
  std::vector<complex> exponent = quadrature::cumulative_simpson(zeta, tip.grid.step);
  for (auto& e : exponent) e *= 2.0;
  detail::guard_exponent(exponent, "riccati_solution");

  std::vector<complex> integrand(n);
  for (std::size_t k = 0; k < n; ++k) {
    const complex source = tip.theta_dot[k] - tip.theta[k] * tip.theta[k] * std::conj(tip.theta_dot[k]);
    integrand[k] = source * std::exp(-exponent[k]);
  }
  const std::vector<complex> prefix = quadrature::cumulative_simpson(integrand, tip.grid.step);

  RatioSeries out;
  out.grid = tip.grid;
  out.f.resize(n);
  const complex i{0.0, 1.0};
  for (std::size_t k = 0; k < n; ++k) out.f[k] = i * std::exp(exponent[k]) * prefix[k];
  return out;
}

/// max over interior nodes of |f' + i conj(W) f^2 - i W|, f' by central differences.
inline double riccati_residual(const RatioSeries& ratio, const PulseSpec& pulse, const AtomSpec& atom) {
  const std::size_t n = ratio.size();
  if (n < 3 || ratio.f.size() != n) throw ValidationError("riccati_residual: need at least three aligned samples");
  const complex i{0.0, 1.0};
  const double h2 = 2.0 * ratio.grid.step;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const complex w = effective_rabi(pulse, atom, ratio.grid[k]);
    const complex df = (ratio.f[k + 1] - ratio.f[k - 1]) / h2;
    const complex r = df + i * std::conj(w) * ratio.f[k] * ratio.f[k] - i * w;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

/// |C_a(infinity)| from the approximate solution (last grid node).
inline double approx_asymptotic_amplitude(const RatioSeries& ratio) { return amplitude_from_f(ratio.f.back()); }

}  // namespace phasejump

#endif  // PHASEJUMP_RICCATI_HPP
