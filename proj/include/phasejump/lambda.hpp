#ifndef PHASEJUMP_LAMBDA_HPP
#define PHASEJUMP_LAMBDA_HPP

// Three-level Lambda atom: |a> couples to |b> through pulse1 and to |c>
// through pulse2.
//   dC_a/dt = i W1 C_b + i W2 C_c,  dC_b/dt = i conj(W1) C_a,  dC_c/dt = i conj(W2) C_a
// with W_j(t) = Omega_j(t) cos(nu_j t) exp(i omega_j t).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasejump/error.hpp"
#include "phasejump/ode.hpp"
#include "phasejump/pulse.hpp"
#include "phasejump/quadrature.hpp"
#include "phasejump/riccati.hpp"
#include "phasejump/tls.hpp"

namespace phasejump {

struct LambdaDrive {
  PulseSpec pulse1;  // a <-> b
  PulseSpec pulse2;  // a <-> c

  LambdaDrive with_carrier(double nu) const { return {pulse1.with_carrier(nu), pulse2.with_carrier(nu)}; }

  friend bool operator==(const LambdaDrive&, const LambdaDrive&) = default;
};

inline void validate(const LambdaDrive& drive) {
  validate(drive.pulse1);
  validate(drive.pulse2);
}

inline void require_lambda(const AtomSpec& atom, const char* who) {
  validate(atom);
  if (atom.kind != AtomKind::Lambda) throw ValidationError(std::string(who) + ": lambda atom required");
}

inline std::pair<double, double> support_window(const LambdaDrive& drive, double floor = kDefaultEnvelopeFloor) {
  const auto [lo1, hi1] = support_window(drive.pulse1, floor);
  const auto [lo2, hi2] = support_window(drive.pulse2, floor);
  return {std::min(lo1, lo2), std::max(hi1, hi2)};
}

inline SimConfig default_sim_config(const LambdaDrive& drive, const AtomSpec& atom) {
  const auto [lo, hi] = support_window(drive);
  SimConfig cfg;
  cfg.t_start = kWindowPadding * lo;
  cfg.t_end = kWindowPadding * hi;
  const double fastest =
      std::max({atom.omega_ab, atom.omega_ac.value_or(atom.omega_ab), drive.pulse1.carrier, drive.pulse2.carrier});
  cfg.max_step = default_max_step(fastest);
  return cfg;
}

namespace detail {

inline Trajectory integrate_lambda_from(const LambdaDrive& drive, const AtomSpec& atom, const SimConfig& cfg,
                                        ode::State<3> y) {
  validate(drive);
  require_lambda(atom, "integrate_lambda");
  validate(cfg);
  const double w_ab = atom.omega_ab;
  const double w_ac = *atom.omega_ac;
  const complex i{0.0, 1.0};
  auto rhs = [&](double t, const ode::State<3>& s) -> ode::State<3> {
    const complex w1 = transition_rabi(drive.pulse1, w_ab, t);
    const complex w2 = transition_rabi(drive.pulse2, w_ac, t);
    return {i * (w1 * s[1] + w2 * s[2]), i * std::conj(w1) * s[0], i * std::conj(w2) * s[0]};
  };
  Trajectory traj;
  check_window_covers(drive.pulse1, cfg, traj.warnings);
  check_window_covers(drive.pulse2, cfg, traj.warnings);
  auto record = [&](double t, const ode::State<3>& s) {
    traj.times.push_back(t);
    traj.c_a.push_back(s[0]);
    traj.c_b.push_back(s[1]);
    traj.c_c.push_back(s[2]);
    traj.norm.push_back(std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]));
  };
  std::size_t counter = 0;
  auto observe = [&](double t, const ode::State<3>& s) {
    if (counter++ % cfg.record_stride == 0 || t == cfg.t_end) record(t, s);
  };
  ode::StepControl ctl{cfg.rel_tol, cfg.abs_tol, cfg.max_step};
  traj.stats = ode::integrate<3>(rhs, y, cfg.t_start, cfg.t_end, ctl, observe);
  if (traj.times.back() != cfg.t_end) record(cfg.t_end, y);
  return traj;
}

}  // namespace detail

/// Exact integration from (C_a, C_b, C_c) = (0, 1, 0).
inline Trajectory integrate_lambda(const LambdaDrive& drive, const AtomSpec& atom, const SimConfig& cfg) {
  return detail::integrate_lambda_from(drive, atom, cfg, {complex{}, complex{1.0, 0.0}, complex{}});
}

/// How the integrating-factor exponents of the f and g equations are formed.
/// Corrected: a(t) = int 2i conj(theta1') f1, c(t) = int i conj(theta1') f1,
/// which actually solve the linearised equations. Literal: the same
/// expressions used pointwise as written in the derivation, a(t) = 2i theta1' f1
/// and c(t) = i conj(theta1') f1, kept only for comparison.
enum class KernelForm { Corrected, Literal };

inline std::string_view to_string(KernelForm k) { return k == KernelForm::Corrected ? "corrected" : "literal"; }

struct LambdaAnalytic {
  quadrature::UniformGrid grid;
  std::vector<complex> theta1, theta2;
  std::vector<complex> f1, g1;
  std::vector<complex> f, g;

  std::size_t size() const { return grid.size; }

  /// |C_a| = |f| / sqrt(1 + |f|^2 + |g|^2), C_b being the common denominator.
  double amplitude_a(std::size_t k) const {
    const double fa = std::abs(f[k]);
    const double ga = std::abs(g[k]);
    return fa / std::sqrt(1.0 + fa * fa + ga * ga);
  }
  double asymptotic_amplitude() const { return amplitude_a(size() - 1); }
};

inline LambdaAnalytic lambda_analytic(const LambdaDrive& drive, const AtomSpec& atom,
                                      std::size_t n_per_cycle = kDefaultNodesPerCycle,
                                      KernelForm kernel = KernelForm::Corrected) {
  validate(drive);
  require_lambda(atom, "lambda_analytic");
  const double w_ab = atom.omega_ab;
  const double w_ac = *atom.omega_ac;
  const auto [lo, hi] = support_window(drive);
  const double fastest = std::max(w_ab, w_ac) + std::max(drive.pulse1.carrier, drive.pulse2.carrier);
  const auto grid = tip_grid(kWindowPadding * lo, kWindowPadding * hi, fastest, n_per_cycle);
  const std::size_t n = grid.size;
  const double h = grid.step;
  const complex i{0.0, 1.0};

  std::vector<complex> w1(n), w2(n);
  for (std::size_t k = 0; k < n; ++k) {
    w1[k] = transition_rabi(drive.pulse1, w_ab, grid[k]);
    w2[k] = transition_rabi(drive.pulse2, w_ac, grid[k]);
  }

  LambdaAnalytic out;
  out.grid = grid;
  out.theta1 = quadrature::cumulative_simpson(w1, h);
  out.theta2 = quadrature::cumulative_simpson(w2, h);
  out.f1.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.f1[k] = i * out.theta1[k];

  std::vector<complex> tmp(n);
  for (std::size_t k = 0; k < n; ++k) tmp[k] = std::conj(w2[k]) * out.theta1[k];
  out.g1 = quadrature::cumulative_simpson(tmp, h);
  for (auto& v : out.g1) v = -v;

  std::vector<complex> a(n), c(n);
  if (kernel == KernelForm::Corrected) {
    for (std::size_t k = 0; k < n; ++k) tmp[k] = 2.0 * i * std::conj(w1[k]) * out.f1[k];
    a = quadrature::cumulative_simpson(tmp, h);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = i * std::conj(w1[k]) * out.f1[k];
    c = quadrature::cumulative_simpson(tmp, h);
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = 2.0 * i * w1[k] * out.f1[k];
      c[k] = i * std::conj(w1[k]) * out.f1[k];
    }
  }
  detail::guard_exponent(a, "lambda_analytic");
  detail::guard_exponent(c, "lambda_analytic");

  for (std::size_t k = 0; k < n; ++k) {
    const complex b = i * w1[k] + i * w2[k] * out.g1[k] + i * std::conj(w1[k]) * out.f1[k] * out.f1[k];
    tmp[k] = b * std::exp(a[k]);
  }
  out.f = quadrature::cumulative_simpson(tmp, h);
  for (std::size_t k = 0; k < n; ++k) out.f[k] *= std::exp(-a[k]);

  for (std::size_t k = 0; k < n; ++k) tmp[k] = i * std::conj(w2[k]) * out.f1[k] * std::exp(c[k]);
  out.g = quadrature::cumulative_simpson(tmp, h);
  for (std::size_t k = 0; k < n; ++k) out.g[k] *= std::exp(-c[k]);
  return out;
}

}  // namespace phasejump

#endif  // PHASEJUMP_LAMBDA_HPP
