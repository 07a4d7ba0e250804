#ifndef PHASEJUMP_RUNNER_HPP
#define PHASEJUMP_RUNNER_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phasejump/config.hpp"
#include "phasejump/csv.hpp"
#include "phasejump/lambda.hpp"
#include "phasejump/presets.hpp"
#include "phasejump/svg.hpp"
#include "phasejump/sweep.hpp"
#include "phasejump/tls.hpp"

namespace phasejump {

struct RunOutcome {
  std::string label;
  std::variant<Trajectory, SweepResult, OptReport> result;
  std::string csv;
  std::vector<Series> plot;
  PlotLabels plot_labels;
  std::string summary;
  std::size_t failed_points = 0;
};

inline SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions opt;
  opt.sim = cfg.sim;
  opt.n_per_cycle = cfg.n_per_cycle;
  opt.tail_fraction = cfg.tail_fraction;
  opt.kernel = cfg.kernel;
  opt.workers = cfg.workers;
  return opt;
}

inline std::string compare_summary(const SweepResult& s) {
  const std::size_t ie = argmax(s.pop_exact);
  const std::size_t ia = argmax(s.pop_approx);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s.ok(k)) worst = std::max(worst, s.rel_dev(k));
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "exact max %.6g at nu/omega=%.4g; approx max %.6g at nu/omega=%.4g; deviation at maximum %.3g; "
                "worst point deviation %.3g\n",
                s.pop_exact[ie], s.ratio_grid[ie], s.pop_approx[ia], s.ratio_grid[ia],
                std::abs(s.pop_approx[ie] - s.pop_exact[ie]) / s.pop_exact[ie], worst);
  return buf;
}

/// Runs one configuration. Mode::Preset is expanded through the registry.
inline RunOutcome execute(const RunConfig& cfg, std::string label = "") {
  if (cfg.mode == Mode::Preset) {
    const PresetEntry* entry = find_preset(cfg.preset_id);
    if (!entry) throw ValidationError("unknown preset '" + cfg.preset_id + "'");
    RunConfig expanded = entry->config;
    expanded.workers = cfg.workers;
    return execute(expanded, entry->id);
  }
  RunOutcome out;
  out.label = label.empty() ? std::string(to_string(cfg.mode)) : label;

  switch (cfg.mode) {
    case Mode::Simulate: {
      Trajectory traj = cfg.is_lambda() ? integrate_lambda(cfg.drive(), cfg.atom, cfg.sim)
                                        : integrate_tls(cfg.pulse, cfg.atom, cfg.sim);
      Series s{"|C_a|", traj.times, {}};
      for (std::size_t k = 0; k < traj.size(); ++k) s.y.push_back(traj.amplitude_a(k));
      out.plot = {std::move(s)};
      out.plot_labels = {out.label, "t", "|C_a(t)|"};
      out.csv = format_csv(traj);
      for (const auto& w : traj.warnings) out.summary += "warning: " + w + "\n";
      out.result = std::move(traj);
      break;
    }
    case Mode::Sweep:
    case Mode::Compare: {
      const auto ratios = cfg.sweep.ratios();
      SweepResult sweep = cfg.is_lambda() ? sweep_frequency(cfg.drive(), cfg.atom, ratios, cfg.solver, sweep_options(cfg))
                                          : sweep_frequency(cfg.pulse, cfg.atom, ratios, cfg.solver, sweep_options(cfg));
      sweep.preset_id = label;
      for (std::size_t k = 0; k < sweep.size(); ++k) {
        if (!sweep.ok(k)) {
          ++out.failed_points;
          out.summary += "point nu/omega=" + format_number(sweep.ratio_grid[k]) + " failed: " + sweep.errors[k] + "\n";
        }
      }
      auto column = [&](const std::vector<double>& v, const std::string& name) {
        Series s{name, {}, {}};
        for (std::size_t k = 0; k < sweep.size(); ++k) {
          if (std::isnan(v[k])) continue;
          s.x.push_back(sweep.ratio_grid[k]);
          s.y.push_back(v[k]);
        }
        if (!s.x.empty()) out.plot.push_back(std::move(s));
      };
      if (cfg.solver != Solver::Approx) column(sweep.pop_exact, out.label + " exact");
      if (cfg.solver != Solver::Exact) column(sweep.pop_approx, out.label + " approx");
      out.plot_labels = {out.label, "nu/omega", "|C_a(inf)|"};
      if (cfg.solver == Solver::Both && out.failed_points < sweep.size()) out.summary += compare_summary(sweep);
      out.csv = format_csv(sweep);
      out.result = std::move(sweep);
      break;
    }
    case Mode::Optimize: {
      OptReport report = optimize_phase(cfg.pulse, cfg.atom, cfg.optimize.ratio, cfg.optimize.candidates(),
                                        cfg.optimize.objective, sweep_options(cfg));
      Series s{out.label + " " + std::string(to_string(cfg.optimize.objective)), {}, {}};
      for (std::size_t k = 0; k < report.candidates.size(); ++k) {
        if (!report.candidates[k].ok()) {
          ++out.failed_points;
          continue;
        }
        s.x.push_back(static_cast<double>(k));
        s.y.push_back(report.candidates[k].objective(cfg.optimize.objective));
      }
      out.plot = {std::move(s)};
      out.plot_labels = {out.label, "candidate index", std::string(to_string(cfg.optimize.objective))};
      char buf[256];
      std::snprintf(buf, sizeof buf, "best candidate %zu: %s; enhancement over phi=0: amplitude %.6g, population %.6g\n",
                    report.best_index, describe(report.best().phase).c_str(), report.enhancement(Objective::Amplitude),
                    report.enhancement(Objective::Population));
      out.summary = buf;
      out.csv = format_csv(report);
      out.result = std::move(report);
      break;
    }
    case Mode::Preset: break;
  }
  return out;
}

}  // namespace phasejump

#endif  // PHASEJUMP_RUNNER_HPP
