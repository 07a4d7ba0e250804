#ifndef PHASEJUMP_PRESETS_HPP
#define PHASEJUMP_PRESETS_HPP

// Figure presets. Each entry keeps the caption's numbers as printed, the unit
// reading used to turn them into dimensionless (omega = 1) values, and the
// resulting RunConfig.
//
// Readings of "A = x omega, alpha = 0.265 gamma, gamma = 1.25 omega":
//   angular  alpha = 0.33125, A = x           (omega is the angular transition frequency)
//   bare     alpha = 0.265,   A = x           (gamma ignored)
//   cyclic   alpha = 0.33125 / 2pi, A = x / 2pi (caption multiples refer to the
//            cyclic frequency omega / 2pi = 80 GHz)
// The fig4* ids use the cyclic reading (see README); the -angular and -bare
// variants keep the other two.

#include <algorithm>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "phasejump/config.hpp"
#include "phasejump/pulse.hpp"

namespace phasejump {

enum class UnitReading { Angular, Bare, Cyclic };

inline std::string_view to_string(UnitReading r) {
  switch (r) {
    case UnitReading::Angular: return "angular";
    case UnitReading::Bare: return "bare";
    case UnitReading::Cyclic: return "cyclic";
  }
  return "?";
}

/// A number exactly as printed in the caption.
struct CaptionValue {
  std::string name;
  std::string text;
  double value;
};

struct PresetEntry {
  std::string id;
  std::string note;  // caption parameters the preset encodes
  UnitReading reading = UnitReading::Angular;
  std::vector<CaptionValue> caption_values;
  RunConfig config;
};

/// Peak Rabi frequency and envelope width in units of omega for a reading.
struct DimensionlessPulse {
  double amplitude;
  double width;
};

inline DimensionlessPulse apply_reading(UnitReading reading, double a_over_omega, double alpha_over_gamma,
                                        double gamma_over_omega) {
  switch (reading) {
    case UnitReading::Angular: return {a_over_omega, alpha_over_gamma * gamma_over_omega};
    case UnitReading::Bare: return {a_over_omega, alpha_over_gamma};
    case UnitReading::Cyclic: {
      const double two_pi = 2.0 * std::numbers::pi;
      return {a_over_omega / two_pi, alpha_over_gamma * gamma_over_omega / two_pi};
    }
  }
  return {a_over_omega, alpha_over_gamma};
}

namespace preset_detail {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr const char* kUnitsNote = " omega = (2pi) 80 GHz; computation in units omega = 1.";

inline RunConfig finish(RunConfig cfg) {
  cfg.sim = default_sim_for(cfg);
  return cfg;
}

inline PresetEntry two_level_sweep(std::string id, std::string note, UnitReading reading, const std::string& a_text,
                                   double a_value, PhaseFunction (*phase)(double alpha, double k), double k,
                                   Mode mode, SweepGrid grid) {
  PresetEntry e;
  e.id = std::move(id);
  e.reading = reading;
  e.caption_values = {{"A/omega", a_text, a_value}, {"alpha/gamma", "0.265", 0.265}, {"gamma/omega", "1.25", 1.25}};
  e.note = std::move(note) + " A=" + a_text + "omega, alpha=0.265gamma, gamma=1.25omega;" + kUnitsNote +
           " Reading: " + std::string(to_string(reading)) + ".";
  const auto dim = apply_reading(reading, a_value, 0.265, 1.25);
  RunConfig cfg;
  cfg.mode = mode;
  cfg.atom = AtomSpec::two_level(1.0);
  cfg.pulse = PulseSpec{{EnvelopeFamily::Gaussian, dim.amplitude, dim.width}, 1.0, phase(dim.width, k)};
  cfg.solver = Solver::Both;
  cfg.sweep = grid;
  e.config = finish(cfg);
  return e;
}

inline PhaseFunction fig3a(double a, double) { return {PhaseTerm::sech(kHalfPi, a)}; }
inline PhaseFunction fig3c(double a, double) { return {PhaseTerm::sech(kHalfPi, 10 * a), PhaseTerm::tanh_rise(kHalfPi, a)}; }
inline PhaseFunction fig3e(double a, double) { return {PhaseTerm::sech(kHalfPi, a), PhaseTerm::tanh_fall(kHalfPi, 10 * a)}; }
inline PhaseFunction rise(double a, double k) { return {PhaseTerm::tanh_rise(kHalfPi, k * a)}; }
inline PhaseFunction fall(double a, double k) { return {PhaseTerm::tanh_fall(kHalfPi, k * a)}; }
inline PhaseFunction sech2(double a, double k) { return {PhaseTerm::sech_squared(kHalfPi, k * a)}; }

inline std::vector<PresetEntry> build() {
  std::vector<PresetEntry> out;
  const SweepGrid full{0.25, 1.5, 0.01};
  const SweepGrid fig4_grid{0.3, 1.5, 0.01};

  struct Fig3 {
    const char* panel;
    const char* formula;
    PhaseFunction (*phase)(double, double);
  };
  const Fig3 fig3[] = {
      {"a", "phi(t)=(pi/2)sech(alpha t).", fig3a},
      {"c", "phi(t)=(pi/2)[sech(10 alpha t)+1+tanh(alpha t)].", fig3c},
      {"e", "phi(t)=(pi/2)[sech(alpha t)+1-tanh(10 alpha t)].", fig3e},
  };
  for (const auto& p : fig3) {
    const std::string head = std::string("Fig. 3(") + p.panel + "), exact vs approximate: Omega0(t)=A exp(-alpha^2 t^2) exp(i phi(t)), " + p.formula;
    out.push_back(two_level_sweep(std::string("fig3") + p.panel, head, UnitReading::Angular, "0.035", 0.035, p.phase,
                                  1.0, Mode::Compare, full));
    out.push_back(two_level_sweep(std::string("fig3") + p.panel + "-bare", head, UnitReading::Bare, "0.035", 0.035,
                                  p.phase, 1.0, Mode::Compare, full));
  }

  struct Curve {
    const char* color;
    double k;
    const char* k_text;
  };
  struct Row {
    const char* panel;
    const char* formula;
    PhaseFunction (*phase)(double, double);
    Curve curves[3];
  };
  const Row rows[] = {
      {"c", "phi(t)=(pi/2)[1+tanh(alpha1 t)]", rise, {{"red", 5.0, "5"}, {"blue", 1.0, "1"}, {"black", 0.5, "0.5"}}},
      {"f", "phi(t)=(pi/2)[1-tanh(alpha1 t)]", fall, {{"red", 5.0, "5"}, {"blue", 1.0, "1"}, {"black", 0.5, "0.5"}}},
      {"i", "phi(t)=(pi/2)sech^2(alpha1 t)", sech2, {{"red", 1.0, "1"}, {"blue", 10.0, "10"}, {"black", 20.0, "20"}}},
  };
  for (const auto& row : rows) {
    for (const auto& c : row.curves) {
      const std::string head = std::string("Fig. 4(") + row.panel + ") " + c.color +
                               " curve: Omega0(t)=A exp(-alpha^2 t^2) exp(i phi(t)), " + row.formula + ", alpha1=" +
                               c.k_text + "alpha.";
      const std::string id = std::string("fig4") + row.panel + "-" + c.color;
      out.push_back(two_level_sweep(id, head, UnitReading::Cyclic, "0.04375", 0.04375, row.phase, c.k, Mode::Sweep,
                                    fig4_grid));
      if (std::string_view(row.panel) == "f") {
        out.push_back(two_level_sweep(id + "-angular", head, UnitReading::Angular, "0.04375", 0.04375, row.phase, c.k,
                                      Mode::Sweep, fig4_grid));
        out.push_back(two_level_sweep(id + "-bare", head, UnitReading::Bare, "0.04375", 0.04375, row.phase, c.k,
                                      Mode::Sweep, fig4_grid));
      }
    }
  }

  {
    PresetEntry e = two_level_sweep("fig4f-optimize",
                                    "Fig. 4 phase-shape search at nu/omega=0.5: Omega0(t)=A exp(-alpha^2 t^2) exp(i phi(t)).",
                                    UnitReading::Cyclic, "0.04375", 0.04375, fall, 1.0, Mode::Optimize, fig4_grid);
    auto& cfg = e.config;
    const double a = cfg.pulse.envelope.width;
    cfg.pulse.phase = {};
    cfg.solver = Solver::Exact;
    cfg.sweep = {};
    cfg.optimize.ratio = 0.5;
    cfg.optimize.shapes = {PhaseShape::TanhRise, PhaseShape::TanhFall, PhaseShape::Sech, PhaseShape::SechSquared};
    cfg.optimize.amplitudes = {kHalfPi / 2, kHalfPi};
    cfg.optimize.steepnesses = {0.5 * a, a, 5 * a, 10 * a, 20 * a};
    cfg.optimize.objective = Objective::Population;
    cfg = finish(cfg);
    out.push_back(std::move(e));
  }

  for (KernelForm kernel : {KernelForm::Corrected, KernelForm::Literal}) {
    PresetEntry e;
    e.id = kernel == KernelForm::Corrected ? "fig5" : "fig5-literal";
    e.reading = UnitReading::Angular;
    e.caption_values = {{"Omega0/omega", ".04", 0.04}, {"alpha/omega", "0.075", 0.075}, {"omega_ab", "1", 1.0}};
    e.note = std::string("Fig. 5, lambda atom, numerical vs analytical: Omega1(t)=Omega2(t)=Omega0 sech(alpha t), "
                         "Omega0=.04omega, alpha=0.075omega, omega_ab=omega_ac=omega=1. Reading: angular. Kernel: ") +
             std::string(to_string(kernel)) + ".";
    RunConfig cfg;
    cfg.mode = Mode::Compare;
    cfg.atom = AtomSpec::lambda(1.0, 1.0);
    cfg.pulse = PulseSpec{{EnvelopeFamily::Sech, 0.04, 0.075}, 1.0, {}};
    cfg.pulse2 = cfg.pulse;
    cfg.solver = Solver::Both;
    cfg.kernel = kernel;
    cfg.sweep = {0.5, 1.5, 0.01};
    e.config = finish(cfg);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace preset_detail

inline const std::vector<PresetEntry>& preset_registry() {
  static const std::vector<PresetEntry> registry = preset_detail::build();
  return registry;
}

inline const PresetEntry* find_preset(std::string_view id) {
  const auto& reg = preset_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const PresetEntry& e) { return e.id == id; });
  return it == reg.end() ? nullptr : &*it;
}

}  // namespace phasejump

#endif  // PHASEJUMP_PRESETS_HPP
