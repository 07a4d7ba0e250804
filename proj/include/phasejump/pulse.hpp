#ifndef PHASEJUMP_PULSE_HPP
#define PHASEJUMP_PULSE_HPP

// Pulse envelopes, smooth phase-jump shapes and the effective coupling
// Omega0(t) cos(nu t) exp(i[omega t + phi(t)]) seen by a two-level transition.
//
// Units are dimensionless: frequencies are multiples of the reference
// transition frequency and times are in its inverse.

#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasejump/error.hpp"

namespace phasejump {

using complex = std::complex<double>;

enum class PhaseShape { TanhRise, TanhFall, Sech, SechSquared, Constant };

inline std::string_view to_string(PhaseShape s) {
  switch (s) {
    case PhaseShape::TanhRise: return "tanh_rise";
    case PhaseShape::TanhFall: return "tanh_fall";
    case PhaseShape::Sech: return "sech";
    case PhaseShape::SechSquared: return "sech_squared";
    case PhaseShape::Constant: return "constant";
  }
  return "?";
}

inline std::optional<PhaseShape> parse_phase_shape(std::string_view s) {
  if (s == "tanh_rise") return PhaseShape::TanhRise;
  if (s == "tanh_fall") return PhaseShape::TanhFall;
  if (s == "sech") return PhaseShape::Sech;
  if (s == "sech_squared") return PhaseShape::SechSquared;
  if (s == "constant") return PhaseShape::Constant;
  return std::nullopt;
}

/// One primitive of a smooth phase jump.
///
/// TanhRise goes from 0 to 2*amplitude, TanhFall from 2*amplitude to 0, both
/// crossing amplitude at `center`. Sech and SechSquared peak at amplitude at
/// `center` and vanish far from it. The transient lasts about 1/steepness.
struct PhaseTerm {
  PhaseShape shape = PhaseShape::Constant;
  double amplitude = std::numbers::pi / 2;
  double steepness = 1.0;  // ignored for Constant
  double center = 0.0;

  static PhaseTerm tanh_rise(double amplitude, double steepness, double center = 0.0) {
    return {PhaseShape::TanhRise, amplitude, steepness, center};
  }
  static PhaseTerm tanh_fall(double amplitude, double steepness, double center = 0.0) {
    return {PhaseShape::TanhFall, amplitude, steepness, center};
  }
  static PhaseTerm sech(double amplitude, double steepness, double center = 0.0) {
    return {PhaseShape::Sech, amplitude, steepness, center};
  }
  static PhaseTerm sech_squared(double amplitude, double steepness, double center = 0.0) {
    return {PhaseShape::SechSquared, amplitude, steepness, center};
  }
  static PhaseTerm constant(double value) { return {PhaseShape::Constant, value, 1.0, 0.0}; }

  double operator()(double t) const {
    if (shape == PhaseShape::Constant) return amplitude;
    const double x = steepness * (t - center);
    switch (shape) {
      case PhaseShape::TanhRise: return amplitude * (1.0 + std::tanh(x));
      case PhaseShape::TanhFall: return amplitude * (1.0 - std::tanh(x));
      case PhaseShape::Sech: return amplitude / std::cosh(x);
      case PhaseShape::SechSquared: {
        const double s = 1.0 / std::cosh(x);
        return amplitude * s * s;
      }
      case PhaseShape::Constant: break;
    }
    return amplitude;
  }

  friend bool operator==(const PhaseTerm&, const PhaseTerm&) = default;
};

inline void validate(const PhaseTerm& term, std::string_view where = "phase term") {
  if (!std::isfinite(term.amplitude) || !std::isfinite(term.center))
    throw ValidationError(std::string(where) + ": amplitude and center must be finite");
  if (term.shape != PhaseShape::Constant && !(term.steepness > 0.0 && std::isfinite(term.steepness)))
    throw ValidationError(std::string(where) + ": steepness must be > 0");
}

/// Sum of phase primitives; an empty function is phi(t) = 0.
struct PhaseFunction {
  std::vector<PhaseTerm> terms;

  PhaseFunction() = default;
  PhaseFunction(std::initializer_list<PhaseTerm> list) : terms(list) {}
  explicit PhaseFunction(std::vector<PhaseTerm> list) : terms(std::move(list)) {}

  double operator()(double t) const {
    double sum = 0.0;
    for (const auto& term : terms) sum += term(t);
    return sum;
  }

  bool empty() const { return terms.empty(); }

  PhaseFunction plus(const PhaseTerm& term) const {
    PhaseFunction out = *this;
    out.terms.push_back(term);
    return out;
  }

  friend bool operator==(const PhaseFunction&, const PhaseFunction&) = default;
};

inline double eval_phase(const PhaseFunction& phase, double t) { return phase(t); }

inline void validate(const PhaseFunction& phase) {
  for (std::size_t i = 0; i < phase.terms.size(); ++i)
    validate(phase.terms[i], "phase term " + std::to_string(i));
}

/// Human-readable one-line form, e.g. "tanh_fall(a=1.5708,s=0.33,c=0)+constant(0.5)".
inline std::string describe(const PhaseFunction& phase) {
  if (phase.empty()) return "zero";
  std::string out;
  char buf[160];
  for (const auto& term : phase.terms) {
    if (!out.empty()) out += '+';
    if (term.shape == PhaseShape::Constant) {
      std::snprintf(buf, sizeof buf, "constant(%.17g)", term.amplitude);
    } else {
      std::snprintf(buf, sizeof buf, "%s(a=%.17g;s=%.17g;c=%.17g)", std::string(to_string(term.shape)).c_str(),
                    term.amplitude, term.steepness, term.center);
    }
    out += buf;
  }
  return out;
}

enum class EnvelopeFamily { Gaussian, Sech };

inline std::string_view to_string(EnvelopeFamily f) {
  return f == EnvelopeFamily::Gaussian ? "gaussian" : "sech";
}

inline std::optional<EnvelopeFamily> parse_envelope_family(std::string_view s) {
  if (s == "gaussian") return EnvelopeFamily::Gaussian;
  if (s == "sech") return EnvelopeFamily::Sech;
  return std::nullopt;
}

/// Real pulse envelope peaking at t = 0 with value `amplitude` (the peak Rabi
/// frequency A). `width` is the inverse duration alpha.
struct Envelope {
  EnvelopeFamily family = EnvelopeFamily::Gaussian;
  double amplitude = 0.0;
  double width = 1.0;

  double operator()(double t) const {
    const double x = width * t;
    if (family == EnvelopeFamily::Gaussian) return amplitude * std::exp(-x * x);
    return amplitude / std::cosh(x);
  }

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

inline double eval_envelope(const Envelope& env, double t) { return env(t); }

inline void validate(const Envelope& env) {
  if (!(env.amplitude >= 0.0) || !std::isfinite(env.amplitude))
    throw ValidationError("envelope.amplitude must be >= 0");
  if (!(env.width > 0.0) || !std::isfinite(env.width)) throw ValidationError("envelope.width must be > 0");
}

struct PulseSpec {
  Envelope envelope;
  double carrier = 1.0;  // nu
  PhaseFunction phase;

  PulseSpec with_carrier(double nu) const {
    PulseSpec out = *this;
    out.carrier = nu;
    return out;
  }
  PulseSpec with_phase(PhaseFunction p) const {
    PulseSpec out = *this;
    out.phase = std::move(p);
    return out;
  }
  PulseSpec with_amplitude(double a) const {
    PulseSpec out = *this;
    out.envelope.amplitude = a;
    return out;
  }

  friend bool operator==(const PulseSpec&, const PulseSpec&) = default;
};

inline void validate(const PulseSpec& pulse) {
  validate(pulse.envelope);
  if (!(pulse.carrier > 0.0) || !std::isfinite(pulse.carrier)) throw ValidationError("pulse.carrier must be > 0");
  validate(pulse.phase);
}

enum class AtomKind { TwoLevel, Lambda };

struct AtomSpec {
  AtomKind kind = AtomKind::TwoLevel;
  double omega_ab = 1.0;
  std::optional<double> omega_ac;

  static AtomSpec two_level(double omega = 1.0) { return {AtomKind::TwoLevel, omega, std::nullopt}; }
  static AtomSpec lambda(double omega_ab, double omega_ac) { return {AtomKind::Lambda, omega_ab, omega_ac}; }

  friend bool operator==(const AtomSpec&, const AtomSpec&) = default;
};

inline void validate(const AtomSpec& atom) {
  if (!(atom.omega_ab > 0.0) || !std::isfinite(atom.omega_ab)) throw ValidationError("atom.omega_ab must be > 0");
  if (atom.kind == AtomKind::Lambda) {
    if (!atom.omega_ac) throw ValidationError("atom.omega_ac is required for a lambda atom");
    if (!(*atom.omega_ac > 0.0) || !std::isfinite(*atom.omega_ac))
      throw ValidationError("atom.omega_ac must be > 0");
  } else if (atom.omega_ac) {
    throw ValidationError("atom.omega_ac is only valid for a lambda atom");
  }
}

/// Coupling of `pulse` to a transition of frequency `omega`:
/// Omega0(t) cos(nu t) exp(i[omega t + phi(t)]).
inline complex transition_rabi(const PulseSpec& pulse, double omega, double t) {
  const double env = pulse.envelope(t);
  if (env == 0.0) return {0.0, 0.0};
  return env * std::cos(pulse.carrier * t) * std::polar(1.0, omega * t + pulse.phase(t));
}

inline complex effective_rabi(const PulseSpec& pulse, const AtomSpec& atom, double t) {
  if (atom.kind != AtomKind::TwoLevel)
    throw ValidationError("effective_rabi: two-level atom required (use the lambda drive couplings)");
  return transition_rabi(pulse, atom.omega_ab, t);
}

inline constexpr double kDefaultEnvelopeFloor = 1e-14;

/// Symmetric window [-T, T] outside which the envelope is below floor * A.
inline std::pair<double, double> support_window(const PulseSpec& pulse, double floor = kDefaultEnvelopeFloor) {
  if (!(floor > 0.0 && floor < 1.0)) throw ValidationError("support_window: floor must lie in (0, 1)");
  const double alpha = pulse.envelope.width;
  if (!(alpha > 0.0)) throw ValidationError("envelope.width must be > 0");
  double half = 0.0;
  if (pulse.envelope.family == EnvelopeFamily::Gaussian) {
    half = std::sqrt(-std::log(floor)) / alpha;
  } else {
    half = std::acosh(1.0 / floor) / alpha;
  }
  return {-half, half};
}

}  // namespace phasejump

#endif  // PHASEJUMP_PULSE_HPP
