#ifndef PHASEJUMP_TLS_HPP
#define PHASEJUMP_TLS_HPP

// Exact amplitude dynamics of a two-level atom, counter-rotating terms kept:
//   dC_a/dt = i W(t) C_b,   dC_b/dt = i conj(W(t)) C_a,
// with W the coupling from effective_rabi().

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "phasejump/error.hpp"
#include "phasejump/ode.hpp"
#include "phasejump/pulse.hpp"

namespace phasejump {

struct SimConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double t_start = -1.0;
  double t_end = 1.0;
  std::size_t record_stride = 1;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

inline void validate(const SimConfig& cfg) {
  if (!(cfg.rel_tol > 0.0)) throw ValidationError("sim.rel_tol must be > 0");
  if (!(cfg.abs_tol > 0.0)) throw ValidationError("sim.abs_tol must be > 0");
  if (!(cfg.max_step > 0.0)) throw ValidationError("sim.max_step must be > 0");
  if (!(cfg.t_start < cfg.t_end) || !std::isfinite(cfg.t_start) || !std::isfinite(cfg.t_end))
    throw ValidationError("sim.t_start must be < sim.t_end");
  if (cfg.record_stride == 0) throw ValidationError("sim.record_stride must be >= 1");
}

inline constexpr double kWindowPadding = 1.1;
inline constexpr double kStepsPerCarrierPeriod = 40.0;
inline constexpr double kDefaultTailFraction = 0.05;
inline constexpr double kTailSpreadLimit = 1e-6;

/// Largest step that still resolves 1/40 of the fastest of the given periods.
inline double default_max_step(double fastest_frequency) {
  return 2.0 * std::numbers::pi / fastest_frequency / kStepsPerCarrierPeriod;
}

/// Window [-1.1 T, 1.1 T] around the pulse support, tolerances 1e-10 / 1e-12.
inline SimConfig default_sim_config(const PulseSpec& pulse, const AtomSpec& atom) {
  const auto [lo, hi] = support_window(pulse);
  SimConfig cfg;
  cfg.t_start = kWindowPadding * lo;
  cfg.t_end = kWindowPadding * hi;
  double fastest = std::max(atom.omega_ab, pulse.carrier);
  if (atom.omega_ac) fastest = std::max(fastest, *atom.omega_ac);
  cfg.max_step = default_max_step(fastest);
  return cfg;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<complex> c_a;
  std::vector<complex> c_b;
  std::vector<complex> c_c;  // empty for two-level runs
  std::vector<double> norm;
  std::vector<std::string> warnings;
  ode::Stats stats;

  std::size_t size() const { return times.size(); }
  bool has_c() const { return !c_c.empty(); }
  double amplitude_a(std::size_t i) const { return std::abs(c_a[i]); }
};

namespace detail {

inline void check_window_covers(const PulseSpec& pulse, const SimConfig& cfg, std::vector<std::string>& warnings) {
  const double peak = pulse.envelope.amplitude;
  if (peak == 0.0) return;
  constexpr double kLeak = 1e-10;
  if (pulse.envelope(cfg.t_start) > kLeak * peak || pulse.envelope(cfg.t_end) > kLeak * peak)
    warnings.push_back("integration window does not cover the pulse support");
}

template <class Coupling>
Trajectory run_two_level(Coupling&& coupling, const SimConfig& cfg, std::vector<std::string> warnings) {
  using State = ode::State<2>;
  State y{complex{0.0, 0.0}, complex{1.0, 0.0}};
  Trajectory traj;
  traj.warnings = std::move(warnings);
  const complex i{0.0, 1.0};
  auto rhs = [&](double t, const State& s) -> State {
    const complex w = coupling(t);
    return {i * w * s[1], i * std::conj(w) * s[0]};
  };
  std::size_t counter = 0;
  auto record = [&](double t, const State& s) {
    traj.times.push_back(t);
    traj.c_a.push_back(s[0]);
    traj.c_b.push_back(s[1]);
    traj.norm.push_back(std::norm(s[0]) + std::norm(s[1]));
  };
  auto observe = [&](double t, const State& s) {
    if (counter++ % cfg.record_stride == 0 || t == cfg.t_end) record(t, s);
  };
  ode::StepControl ctl{cfg.rel_tol, cfg.abs_tol, cfg.max_step};
  traj.stats = ode::integrate<2>(rhs, y, cfg.t_start, cfg.t_end, ctl, observe);
  if (traj.times.back() != cfg.t_end) record(cfg.t_end, y);
  return traj;
}

}  // namespace detail

/// Direct integration from the ground state (C_a, C_b) = (0, 1) at cfg.t_start.
inline Trajectory integrate_tls(const PulseSpec& pulse, const AtomSpec& atom, const SimConfig& cfg) {
  validate(pulse);
  validate(atom);
  validate(cfg);
  if (atom.kind != AtomKind::TwoLevel) throw ValidationError("integrate_tls: two-level atom required");
  std::vector<std::string> warnings;
  detail::check_window_covers(pulse, cfg, warnings);
  return detail::run_two_level([&](double t) { return effective_rabi(pulse, atom, t); }, cfg, std::move(warnings));
}

/// The phase jump moved onto the atom: the transition phase accumulates as
/// omega t + phi(t), i.e. an instantaneous frequency omega + phi(t)/t. Only
/// the accumulated phase is ever evaluated, so t = 0 needs no special case.
struct ModulatedTransition {
  double omega = 1.0;
  PhaseFunction modulation;

  double accumulated_phase(double t) const { return omega * t + modulation(t); }
};

/// Same physics as integrate_tls with the phase attributed to the atom.
inline Trajectory integrate_tls_freqmod(const PulseSpec& pulse, const AtomSpec& atom, const SimConfig& cfg) {
  validate(pulse);
  validate(atom);
  validate(cfg);
  if (atom.kind != AtomKind::TwoLevel) throw ValidationError("integrate_tls_freqmod: two-level atom required");
  std::vector<std::string> warnings;
  detail::check_window_covers(pulse, cfg, warnings);
  const ModulatedTransition transition{atom.omega_ab, pulse.phase};
  const Envelope env = pulse.envelope;
  const double nu = pulse.carrier;
  auto coupling = [&](double t) -> complex {
    const double e = env(t);
    if (e == 0.0) return {0.0, 0.0};
    return e * std::cos(nu * t) * std::polar(1.0, transition.accumulated_phase(t));
  };
  return detail::run_two_level(coupling, cfg, std::move(warnings));
}

struct AsymptoticValue {
  double value = 0.0;   // mean |C_a| over the tail
  double spread = 0.0;  // max - min of |C_a| over the tail
};

/// Mean of |C_a| over the last `tail_fraction` of the recorded samples.
/// Throws NumericalError if |C_a| still moves by more than 1e-6 there.
inline AsymptoticValue asymptotic_population(const Trajectory& traj, double tail_fraction = kDefaultTailFraction) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
    throw ValidationError("asymptotic_population: tail_fraction must lie in (0, 1)");
  const std::size_t n = traj.size();
  if (n == 0) throw ValidationError("asymptotic_population: empty trajectory");
  auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  tail = std::clamp<std::size_t>(tail, 1, n);
  double sum = 0.0;
  double lo = std::abs(traj.c_a[n - tail]);
  double hi = lo;
  for (std::size_t k = n - tail; k < n; ++k) {
    const double a = std::abs(traj.c_a[k]);
    sum += a;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  AsymptoticValue out{sum / static_cast<double>(tail), hi - lo};
  if (out.spread > kTailSpreadLimit)
    throw NumericalError("asymptotic_population: tail spread " + std::to_string(out.spread) +
                         " exceeds 1e-6 (pulse not finished inside the window)");
  return out;
}

}  // namespace phasejump

#endif  // PHASEJUMP_TLS_HPP
