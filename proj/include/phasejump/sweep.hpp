#ifndef PHASEJUMP_SWEEP_HPP
#define PHASEJUMP_SWEEP_HPP

// Frequency sweeps of the asymptotic excited amplitude, ratios between sweeps
// and a discrete search over phase-jump shapes.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "phasejump/error.hpp"
#include "phasejump/lambda.hpp"
#include "phasejump/pulse.hpp"
#include "phasejump/riccati.hpp"
#include "phasejump/tls.hpp"

namespace phasejump {

enum class Solver { Exact, Approx, Both };
enum class Objective { Amplitude, Population };

inline std::string_view to_string(Solver s) {
  switch (s) {
    case Solver::Exact: return "exact";
    case Solver::Approx: return "approx";
    case Solver::Both: return "both";
  }
  return "?";
}

inline std::optional<Solver> parse_solver(std::string_view s) {
  if (s == "exact") return Solver::Exact;
  if (s == "approx") return Solver::Approx;
  if (s == "both") return Solver::Both;
  return std::nullopt;
}

inline std::string_view to_string(Objective o) { return o == Objective::Amplitude ? "amplitude" : "population"; }

inline std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "amplitude") return Objective::Amplitude;
  if (s == "population") return Objective::Population;
  return std::nullopt;
}

inline double apply_objective(Objective o, double amplitude) {
  return o == Objective::Amplitude ? amplitude : amplitude * amplitude;
}

struct SweepOptions {
  std::optional<SimConfig> sim;  // unset: default_sim_config() at every point
  std::size_t n_per_cycle = kDefaultNodesPerCycle;
  double tail_fraction = kDefaultTailFraction;
  KernelForm kernel = KernelForm::Corrected;
  std::size_t workers = 1;
};

/// Evaluates job(k) for k in [0, count) on `workers` threads. Each job writes
/// only its own slot, so the assembled output does not depend on scheduling.
template <class Job>
void parallel_for(std::size_t count, std::size_t workers, Job&& job) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) job(k);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

/// start, start + step, ... up to stop inclusive (index-based, no accumulation drift).
inline std::vector<double> make_ratio_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(start > 0.0) || !(stop >= start)) throw ValidationError("ratio grid needs 0 < start <= stop, step > 0");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + static_cast<double>(k) * step;
  return out;
}

struct SweepResult {
  std::vector<double> ratio_grid;
  std::vector<double> pop_exact;   // |C_a(inf)|, NaN where not computed or failed
  std::vector<double> pop_approx;  // same for the approximate solver
  std::vector<std::string> errors;  // per point, empty when fine
  std::vector<bool> approx_in_regime;
  std::string preset_id;
  Solver solver = Solver::Exact;
  SweepOptions options;

  std::size_t size() const { return ratio_grid.size(); }
  bool ok(std::size_t k) const { return errors[k].empty(); }

  double rel_dev(std::size_t k) const { return std::abs(pop_approx[k] - pop_exact[k]) / pop_exact[k]; }

  /// The column enhancement/argmax work on: exact when available.
  const std::vector<double>& primary() const { return solver == Solver::Approx ? pop_approx : pop_exact; }

  /// Nearest grid index within half a grid step of `ratio`.
  std::optional<std::size_t> index_of(double ratio) const {
    if (ratio_grid.empty()) return std::nullopt;
    double tolerance = 1e-9 * std::max(1.0, std::abs(ratio));
    if (ratio_grid.size() > 1) {
      double spacing = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k < ratio_grid.size(); ++k)
        spacing = std::min(spacing, ratio_grid[k] - ratio_grid[k - 1]);
      tolerance = 0.5 * spacing + 1e-12;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < ratio_grid.size(); ++k)
      if (std::abs(ratio_grid[k] - ratio) < std::abs(ratio_grid[best] - ratio)) best = k;
    if (std::abs(ratio_grid[best] - ratio) > tolerance) return std::nullopt;
    return best;
  }
};

inline std::size_t argmax(const std::vector<double>& values) {
  std::size_t best = 0;
  bool found = false;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (std::isnan(values[k])) continue;
    if (!found || values[k] > values[best]) {
      best = k;
      found = true;
    }
  }
  if (!found) throw NumericalError("argmax: no valid values");
  return best;
}

namespace detail {

inline void validate_ratios(const std::vector<double>& ratios) {
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    if (!(ratios[k] > 0.0) || !std::isfinite(ratios[k])) throw ValidationError("sweep: every ratio must be > 0");
    if (k > 0 && !(ratios[k] > ratios[k - 1])) throw ValidationError("sweep: ratios must be strictly increasing");
  }
}

inline void validate_options(const SweepOptions& opt) {
  if (opt.sim) validate(*opt.sim);
  if (opt.n_per_cycle < kMinNodesPerCycle) throw ValidationError("n_per_cycle must be >= 8");
  if (!(opt.tail_fraction > 0.0 && opt.tail_fraction < 1.0)) throw ValidationError("tail_fraction must lie in (0, 1)");
}

template <class Point>
SweepResult run_sweep(const std::vector<double>& ratios, Solver solver, const SweepOptions& options, Point&& point) {
  validate_ratios(ratios);
  validate_options(options);
  const std::size_t n = ratios.size();
  SweepResult out;
  out.ratio_grid = ratios;
  out.solver = solver;
  out.options = options;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.pop_exact.assign(n, nan);
  out.pop_approx.assign(n, nan);
  out.errors.assign(n, {});
  std::vector<char> regime(n, 1);
  parallel_for(n, options.workers, [&](std::size_t k) {
    try {
      point(k, ratios[k], out.pop_exact[k], out.pop_approx[k], regime[k]);
    } catch (const NumericalError& e) {
      out.errors[k] = e.what();
      out.pop_exact[k] = nan;
      out.pop_approx[k] = nan;
    }
  });
  out.approx_in_regime.assign(regime.begin(), regime.end());
  return out;
}

}  // namespace detail

/// Two-level sweep: for each r the carrier is set to r * omega.
inline SweepResult sweep_frequency(const PulseSpec& pulse_template, const AtomSpec& atom,
                                   const std::vector<double>& ratios, Solver solver,
                                   const SweepOptions& options = {}) {
  validate(pulse_template);
  validate(atom);
  if (atom.kind != AtomKind::TwoLevel) throw ValidationError("sweep_frequency: two-level atom required");
  return detail::run_sweep(ratios, solver, options,
                           [&](std::size_t, double r, double& exact, double& approx, char& regime) {
                             const PulseSpec pulse = pulse_template.with_carrier(r * atom.omega_ab);
                             if (solver != Solver::Approx) {
                               const SimConfig cfg = options.sim.value_or(default_sim_config(pulse, atom));
                               exact = asymptotic_population(integrate_tls(pulse, atom, cfg), options.tail_fraction).value;
                             }
                             if (solver != Solver::Exact) {
                               const RatioSeries f = riccati_solution(tip_angle(pulse, atom, options.n_per_cycle));
                               approx = approx_asymptotic_amplitude(f);
                               regime = within_regime(f);
                             }
                           });
}

/// Lambda sweep: both carriers set to r * omega_ab.
inline SweepResult sweep_frequency(const LambdaDrive& drive_template, const AtomSpec& atom,
                                   const std::vector<double>& ratios, Solver solver,
                                   const SweepOptions& options = {}) {
  validate(drive_template);
  require_lambda(atom, "sweep_frequency");
  return detail::run_sweep(ratios, solver, options,
                           [&](std::size_t, double r, double& exact, double& approx, char& regime) {
                             const LambdaDrive drive = drive_template.with_carrier(r * atom.omega_ab);
                             if (solver != Solver::Approx) {
                               const SimConfig cfg = options.sim.value_or(default_sim_config(drive, atom));
                               exact =
                                   asymptotic_population(integrate_lambda(drive, atom, cfg), options.tail_fraction).value;
                             }
                             if (solver != Solver::Exact) {
                               const LambdaAnalytic sol = lambda_analytic(drive, atom, options.n_per_cycle, options.kernel);
                               approx = sol.asymptotic_amplitude();
                               regime = approx < kRegimeLimit;
                             }
                           });
}

inline constexpr double kEnhancementFloor = 1e-12;

/// objective(a) / objective(b) at the grid point nearest `ratio` in each sweep.
inline double enhancement_factor(const SweepResult& a, const SweepResult& b, double ratio,
                                 Objective objective = Objective::Amplitude) {
  const auto ia = a.index_of(ratio);
  const auto ib = b.index_of(ratio);
  if (!ia || !ib) throw ValidationError("enhancement_factor: ratio not on both sweep grids");
  const double va = apply_objective(objective, a.primary()[*ia]);
  const double vb = apply_objective(objective, b.primary()[*ib]);
  if (!(va >= kEnhancementFloor) || !(vb >= kEnhancementFloor))
    throw NumericalError("enhancement_factor: objective below 1e-12, ratio ill-conditioned");
  return va / vb;
}

struct CandidateResult {
  PhaseFunction phase;
  double amplitude = std::numeric_limits<double>::quiet_NaN();
  std::string error;

  bool ok() const { return error.empty(); }
  double population() const { return amplitude * amplitude; }
  double objective(Objective o) const { return apply_objective(o, amplitude); }
};

struct OptReport {
  double ratio = 0.0;
  Objective objective = Objective::Population;
  std::vector<CandidateResult> candidates;
  std::size_t best_index = 0;
  double baseline_amplitude = 0.0;  // phi = 0

  const CandidateResult& best() const { return candidates[best_index]; }
  double enhancement(Objective o) const {
    return apply_objective(o, best().amplitude) / apply_objective(o, baseline_amplitude);
  }
};

/// Cartesian product shapes x amplitudes x steepnesses (one term each, centred at `center`).
inline std::vector<PhaseFunction> make_candidate_grid(const std::vector<PhaseShape>& shapes,
                                                      const std::vector<double>& amplitudes,
                                                      const std::vector<double>& steepnesses, double center = 0.0) {
  std::vector<PhaseFunction> out;
  for (auto shape : shapes)
    for (double a : amplitudes)
      for (double s : steepnesses) out.push_back(PhaseFunction{PhaseTerm{shape, a, s, center}});
  return out;
}

/// Exact asymptotic amplitude for every candidate phase at carrier ratio * omega.
inline OptReport optimize_phase(const PulseSpec& pulse_template, const AtomSpec& atom, double ratio,
                                const std::vector<PhaseFunction>& candidates,
                                Objective objective = Objective::Population, const SweepOptions& options = {}) {
  validate(pulse_template);
  validate(atom);
  detail::validate_options(options);
  if (atom.kind != AtomKind::TwoLevel) throw ValidationError("optimize_phase: two-level atom required");
  if (candidates.empty()) throw ValidationError("optimize_phase: no candidates");
  if (!(ratio > 0.0)) throw ValidationError("optimize_phase: ratio must be > 0");
  for (const auto& c : candidates) validate(c);

  const PulseSpec base = pulse_template.with_carrier(ratio * atom.omega_ab);
  auto evaluate = [&](const PhaseFunction& phase) {
    const PulseSpec pulse = base.with_phase(phase);
    const SimConfig cfg = options.sim.value_or(default_sim_config(pulse, atom));
    return asymptotic_population(integrate_tls(pulse, atom, cfg), options.tail_fraction).value;
  };

  OptReport report;
  report.ratio = ratio;
  report.objective = objective;
  report.candidates.resize(candidates.size());
  parallel_for(candidates.size() + 1, options.workers, [&](std::size_t k) {
    if (k == candidates.size()) {
      report.baseline_amplitude = evaluate(PhaseFunction{});
      return;
    }
    auto& slot = report.candidates[k];
    slot.phase = candidates[k];
    try {
      slot.amplitude = evaluate(candidates[k]);
    } catch (const NumericalError& e) {
      slot.error = e.what();
    }
  });

  bool found = false;
  for (std::size_t k = 0; k < report.candidates.size(); ++k) {
    const auto& c = report.candidates[k];
    if (!c.ok()) continue;
    if (!found || c.objective(objective) > report.candidates[report.best_index].objective(objective)) {
      report.best_index = k;
      found = true;
    }
  }
  if (!found) throw NumericalError("optimize_phase: every candidate failed");
  return report;
}

}  // namespace phasejump

#endif  // PHASEJUMP_SWEEP_HPP
