#ifndef PHASEJUMP_CONFIG_HPP
#define PHASEJUMP_CONFIG_HPP

// Run configuration: a flat `key = value` document with dotted keys.
//
//   mode = sweep
//   envelope.family = gaussian
//   envelope.amplitude = 0.04375
//   envelope.width = 0.33125
//   phase.0.shape = tanh_fall
//   phase.0.steepness = 0.33125
//
// Unknown keys are rejected. Every default is written back into the parsed
// RunConfig, and serialize_config() prints every field, so a serialized config
// always describes the full effective run.

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "phasejump/error.hpp"
#include "phasejump/lambda.hpp"
#include "phasejump/pulse.hpp"
#include "phasejump/sweep.hpp"
#include "phasejump/tls.hpp"

namespace phasejump {

enum class Mode { Simulate, Sweep, Optimize, Compare, Preset };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Simulate: return "simulate";
    case Mode::Sweep: return "sweep";
    case Mode::Optimize: return "optimize";
    case Mode::Compare: return "compare";
    case Mode::Preset: return "preset";
  }
  return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "simulate") return Mode::Simulate;
  if (s == "sweep") return Mode::Sweep;
  if (s == "optimize") return Mode::Optimize;
  if (s == "compare") return Mode::Compare;
  if (s == "preset") return Mode::Preset;
  return std::nullopt;
}

struct SweepGrid {
  double start = 0.25;
  double stop = 1.5;
  double step = 0.01;

  std::vector<double> ratios() const { return make_ratio_grid(start, stop, step); }
  friend bool operator==(const SweepGrid&, const SweepGrid&) = default;
};

struct OptimizeSpec {
  double ratio = 0.5;
  std::vector<PhaseShape> shapes;
  std::vector<double> amplitudes;
  std::vector<double> steepnesses;
  double center = 0.0;
  Objective objective = Objective::Population;

  std::vector<PhaseFunction> candidates() const { return make_candidate_grid(shapes, amplitudes, steepnesses, center); }
  friend bool operator==(const OptimizeSpec&, const OptimizeSpec&) = default;
};

struct RunConfig {
  Mode mode = Mode::Simulate;
  std::string preset_id;  // Mode::Preset only
  AtomSpec atom;
  PulseSpec pulse;
  std::optional<PulseSpec> pulse2;  // lambda atoms only
  SimConfig sim;
  double tail_fraction = kDefaultTailFraction;
  std::size_t n_per_cycle = kDefaultNodesPerCycle;
  KernelForm kernel = KernelForm::Corrected;
  Solver solver = Solver::Exact;
  SweepGrid sweep;
  OptimizeSpec optimize;
  std::string output_csv;
  std::string output_plot;
  std::size_t workers = 1;

  bool is_lambda() const { return atom.kind == AtomKind::Lambda; }
  LambdaDrive drive() const { return {pulse, pulse2.value_or(pulse)}; }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Syntax error with 1-based line and column.
class ConfigSyntaxError : public ValidationError {
 public:
  ConfigSyntaxError(std::size_t line, std::size_t column, const std::string& msg)
      : ValidationError("config:" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace config_detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

class Document {
 public:
  explicit Document(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> text(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.insert(key);
    return it->second.value;
  }

  std::optional<double> number(const std::string& key) {
    auto s = text(key);
    if (!s) return std::nullopt;
    return to_number(key, *s);
  }

  double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }

  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ValidationError(key + " is required");
    return *v;
  }

  std::optional<std::size_t> count(const std::string& key) {
    auto s = text(key);
    if (!s) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s->c_str(), &end, 10);
    if (errno || end == s->c_str() || *end != '\0' || v < 0)
      throw ValidationError(key + ": expected a non-negative integer, got '" + *s + "'");
    return static_cast<std::size_t>(v);
  }

  std::optional<std::vector<double>> number_list(const std::string& key) {
    auto s = text(key);
    if (!s) return std::nullopt;
    std::vector<double> out;
    for (const auto& item : split(*s)) out.push_back(to_number(key, item));
    if (out.empty()) throw ValidationError(key + ": list must not be empty");
    return out;
  }

  std::optional<std::vector<std::string>> text_list(const std::string& key) {
    auto s = text(key);
    if (!s) return std::nullopt;
    auto out = split(*s);
    if (out.empty()) throw ValidationError(key + ": list must not be empty");
    return out;
  }

  void reject_unused() const {
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key)) throw ValidationError("unknown key '" + key + "' (line " + std::to_string(entry.line) + ")");
  }

 private:
  static double to_number(const std::string& key, const std::string& s) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (errno == ERANGE || end == s.c_str() || *end != '\0' || !std::isfinite(v))
      throw ValidationError(key + ": expected a finite number, got '" + s + "'");
    return v;
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto t = trim(item);
      if (t.empty()) throw ValidationError("empty list item in '" + s + "'");
      out.push_back(t);
    }
    return out;
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

inline std::map<std::string, Entry> tokenize(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) throw ConfigSyntaxError(line_no, first + 1, "expected 'key = value'");
    std::string key = trim(raw.substr(0, eq));
    std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) throw ConfigSyntaxError(line_no, first + 1, "missing key before '='");
    for (std::size_t i = 0; i < key.size(); ++i) {
      const char c = key[i];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'))
        throw ConfigSyntaxError(line_no, raw.find(key) + i + 1, std::string("invalid character '") + c + "' in key");
    }
    if (value.empty()) throw ConfigSyntaxError(line_no, eq + 2, "missing value for '" + key + "'");
    if (entries.count(key)) throw ConfigSyntaxError(line_no, first + 1, "duplicate key '" + key + "'");
    entries.emplace(std::move(key), Entry{std::move(value), line_no});
  }
  return entries;
}

inline void require(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) throw ValidationError(key + " " + constraint);
}

inline PhaseFunction read_phase(Document& doc, const std::string& prefix) {
  PhaseFunction phase;
  for (std::size_t i = 0;; ++i) {
    const std::string base = prefix + "." + std::to_string(i) + ".";
    if (!doc.has(base + "shape")) {
      for (const char* field : {"amplitude", "steepness", "center"})
        if (doc.has(base + field)) throw ValidationError(base + "shape is required");
      break;
    }
    const std::string shape_text = *doc.text(base + "shape");
    const auto shape = parse_phase_shape(shape_text);
    if (!shape) throw ValidationError(base + "shape: unknown shape '" + shape_text + "'");
    PhaseTerm term;
    term.shape = *shape;
    term.amplitude = doc.number_or(base + "amplitude", std::numbers::pi / 2);
    if (*shape == PhaseShape::Constant) {
      if (doc.has(base + "steepness") || doc.has(base + "center"))
        throw ValidationError(base + "steepness/center are not valid for a constant term");
      term.steepness = 1.0;
    } else {
      term.steepness = doc.required_number(base + "steepness");
      term.center = doc.number_or(base + "center", 0.0);
      require(term.steepness > 0.0, base + "steepness", "must be > 0");
    }
    phase.terms.push_back(term);
  }
  return phase;
}

inline PulseSpec read_pulse(Document& doc, const std::string& env_prefix, const std::string& pulse_prefix,
                            const std::string& phase_prefix, bool carrier_required, double carrier_default) {
  PulseSpec pulse;
  const auto family_text = doc.text(env_prefix + ".family");
  if (!family_text) throw ValidationError(env_prefix + ".family is required");
  const auto family = parse_envelope_family(*family_text);
  if (!family) throw ValidationError(env_prefix + ".family: unknown family '" + *family_text + "'");
  pulse.envelope.family = *family;
  pulse.envelope.amplitude = doc.required_number(env_prefix + ".amplitude");
  pulse.envelope.width = doc.required_number(env_prefix + ".width");
  require(pulse.envelope.amplitude >= 0.0, env_prefix + ".amplitude", "must be >= 0");
  require(pulse.envelope.width > 0.0, env_prefix + ".width", "must be > 0");
  const std::string carrier_key = pulse_prefix + ".carrier";
  if (carrier_required && !doc.has(carrier_key)) throw ValidationError(carrier_key + " is required");
  pulse.carrier = doc.number_or(carrier_key, carrier_default);
  require(pulse.carrier > 0.0, carrier_key, "must be > 0");
  pulse.phase = read_phase(doc, phase_prefix);
  return pulse;
}

inline void write_phase(std::ostringstream& os, const PhaseFunction& phase, const std::string& prefix) {
  for (std::size_t i = 0; i < phase.terms.size(); ++i) {
    const auto& t = phase.terms[i];
    const std::string base = prefix + "." + std::to_string(i) + ".";
    os << base << "shape = " << to_string(t.shape) << '\n';
    os << base << "amplitude = " << fmt_double(t.amplitude) << '\n';
    if (t.shape != PhaseShape::Constant) {
      os << base << "steepness = " << fmt_double(t.steepness) << '\n';
      os << base << "center = " << fmt_double(t.center) << '\n';
    }
  }
}

inline void write_pulse(std::ostringstream& os, const PulseSpec& p, const std::string& env_prefix,
                        const std::string& pulse_prefix, const std::string& phase_prefix) {
  os << env_prefix << ".family = " << to_string(p.envelope.family) << '\n';
  os << env_prefix << ".amplitude = " << fmt_double(p.envelope.amplitude) << '\n';
  os << env_prefix << ".width = " << fmt_double(p.envelope.width) << '\n';
  os << pulse_prefix << ".carrier = " << fmt_double(p.carrier) << '\n';
  write_phase(os, p.phase, phase_prefix);
}

template <class T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, double>) {
      out += fmt_double(items[i]);
    } else {
      out += std::string(to_string(items[i]));
    }
  }
  return out;
}

}  // namespace config_detail

/// Simulation defaults for a run: the padded support window and a step that
/// resolves the fastest carrier the run will ever use.
inline SimConfig default_sim_for(const RunConfig& cfg) {
  double fastest_carrier = cfg.pulse.carrier;
  if (cfg.pulse2) fastest_carrier = std::max(fastest_carrier, cfg.pulse2->carrier);
  if (cfg.mode == Mode::Sweep || cfg.mode == Mode::Compare) {
    const auto ratios = cfg.sweep.ratios();
    fastest_carrier = ratios.back() * cfg.atom.omega_ab;
  } else if (cfg.mode == Mode::Optimize) {
    fastest_carrier = cfg.optimize.ratio * cfg.atom.omega_ab;
  }
  if (cfg.is_lambda()) return default_sim_config(cfg.drive().with_carrier(fastest_carrier), cfg.atom);
  return default_sim_config(cfg.pulse.with_carrier(fastest_carrier), cfg.atom);
}

inline RunConfig parse_config(std::string_view text) {
  using namespace config_detail;
  Document doc(tokenize(text));
  RunConfig cfg;

  const auto mode_text = doc.text("mode");
  if (!mode_text) throw ValidationError("mode is required");
  const auto mode = parse_mode(*mode_text);
  if (!mode) throw ValidationError("mode: unknown mode '" + *mode_text + "'");
  cfg.mode = *mode;

  cfg.output_csv = doc.text("output.csv").value_or("");
  cfg.output_plot = doc.text("output.plot").value_or("");
  cfg.workers = doc.count("run.workers").value_or(1);
  require(cfg.workers >= 1, "run.workers", "must be >= 1");

  if (cfg.mode == Mode::Preset) {
    const auto id = doc.text("preset.id");
    if (!id) throw ValidationError("preset.id is required for mode = preset");
    cfg.preset_id = *id;
    doc.reject_unused();
    return cfg;
  }

  const std::string kind = doc.text("atom.kind").value_or("two_level");
  if (kind == "two_level") {
    cfg.atom = AtomSpec::two_level(doc.number_or("atom.omega_ab", 1.0));
  } else if (kind == "lambda") {
    cfg.atom.kind = AtomKind::Lambda;
    cfg.atom.omega_ab = doc.number_or("atom.omega_ab", 1.0);
    cfg.atom.omega_ac = doc.number("atom.omega_ac");
    if (!cfg.atom.omega_ac) throw ValidationError("atom.omega_ac is required for atom.kind = lambda");
    require(*cfg.atom.omega_ac > 0.0, "atom.omega_ac", "must be > 0");
  } else {
    throw ValidationError("atom.kind: unknown kind '" + kind + "'");
  }
  require(cfg.atom.omega_ab > 0.0, "atom.omega_ab", "must be > 0");

  const bool carrier_required = cfg.mode == Mode::Simulate;
  cfg.pulse = read_pulse(doc, "envelope", "pulse", "phase", carrier_required, cfg.atom.omega_ab);
  if (cfg.is_lambda()) {
    cfg.pulse2 = read_pulse(doc, "envelope2", "pulse2", "phase2", carrier_required, cfg.atom.omega_ab);
  }

  if (cfg.mode == Mode::Sweep || cfg.mode == Mode::Compare) {
    cfg.sweep.start = doc.number_or("sweep.start", cfg.sweep.start);
    cfg.sweep.stop = doc.number_or("sweep.stop", cfg.sweep.stop);
    cfg.sweep.step = doc.number_or("sweep.step", cfg.sweep.step);
    require(cfg.sweep.start > 0.0, "sweep.start", "must be > 0");
    require(cfg.sweep.stop >= cfg.sweep.start, "sweep.stop", "must be >= sweep.start");
    require(cfg.sweep.step > 0.0, "sweep.step", "must be > 0");
    const std::string solver_text = doc.text("sweep.solver").value_or(cfg.mode == Mode::Compare ? "both" : "exact");
    const auto solver = parse_solver(solver_text);
    if (!solver) throw ValidationError("sweep.solver: unknown solver '" + solver_text + "'");
    if (cfg.mode == Mode::Compare && *solver != Solver::Both)
      throw ValidationError("sweep.solver must be 'both' for mode = compare");
    cfg.solver = *solver;
  }

  if (cfg.mode == Mode::Optimize) {
    if (cfg.is_lambda()) throw ValidationError("mode = optimize requires atom.kind = two_level");
    cfg.optimize.ratio = doc.required_number("optimize.ratio");
    require(cfg.optimize.ratio > 0.0, "optimize.ratio", "must be > 0");
    const auto shapes =
        doc.text_list("optimize.shapes")
            .value_or(std::vector<std::string>{"tanh_rise", "tanh_fall", "sech", "sech_squared"});
    for (const auto& s : shapes) {
      const auto shape = parse_phase_shape(s);
      if (!shape || *shape == PhaseShape::Constant) throw ValidationError("optimize.shapes: invalid shape '" + s + "'");
      cfg.optimize.shapes.push_back(*shape);
    }
    cfg.optimize.amplitudes =
        doc.number_list("optimize.amplitudes").value_or(std::vector<double>{std::numbers::pi / 2});
    const double alpha = cfg.pulse.envelope.width;
    cfg.optimize.steepnesses = doc.number_list("optimize.steepnesses")
                                   .value_or(std::vector<double>{0.5 * alpha, alpha, 5 * alpha, 10 * alpha, 20 * alpha});
    for (double s : cfg.optimize.steepnesses) require(s > 0.0, "optimize.steepnesses", "entries must be > 0");
    cfg.optimize.center = doc.number_or("optimize.center", 0.0);
    const std::string obj = doc.text("optimize.objective").value_or("population");
    const auto objective = parse_objective(obj);
    if (!objective) throw ValidationError("optimize.objective: unknown objective '" + obj + "'");
    cfg.optimize.objective = *objective;
  }

  cfg.tail_fraction = doc.number_or("sim.tail_fraction", kDefaultTailFraction);
  require(cfg.tail_fraction > 0.0 && cfg.tail_fraction < 1.0, "sim.tail_fraction", "must lie in (0, 1)");
  cfg.n_per_cycle = doc.count("approx.n_per_cycle").value_or(kDefaultNodesPerCycle);
  require(cfg.n_per_cycle >= kMinNodesPerCycle, "approx.n_per_cycle", "must be >= 8");
  const std::string kernel = doc.text("approx.kernel").value_or("corrected");
  if (kernel == "corrected") {
    cfg.kernel = KernelForm::Corrected;
  } else if (kernel == "literal") {
    cfg.kernel = KernelForm::Literal;
  } else {
    throw ValidationError("approx.kernel: unknown kernel '" + kernel + "'");
  }

  const SimConfig defaults = default_sim_for(cfg);
  cfg.sim.rel_tol = doc.number_or("sim.rel_tol", defaults.rel_tol);
  cfg.sim.abs_tol = doc.number_or("sim.abs_tol", defaults.abs_tol);
  cfg.sim.max_step = doc.number_or("sim.max_step", defaults.max_step);
  cfg.sim.t_start = doc.number_or("sim.t_start", defaults.t_start);
  cfg.sim.t_end = doc.number_or("sim.t_end", defaults.t_end);
  cfg.sim.record_stride = doc.count("sim.record_stride").value_or(defaults.record_stride);
  require(cfg.sim.rel_tol > 0.0, "sim.rel_tol", "must be > 0");
  require(cfg.sim.abs_tol > 0.0, "sim.abs_tol", "must be > 0");
  require(cfg.sim.max_step > 0.0, "sim.max_step", "must be > 0");
  require(cfg.sim.t_start < cfg.sim.t_end, "sim.t_start", "must be < sim.t_end");
  require(cfg.sim.record_stride >= 1, "sim.record_stride", "must be >= 1");

  doc.reject_unused();
  return cfg;
}

/// Canonical text form listing every effective field.
inline std::string serialize_config(const RunConfig& cfg) {
  using namespace config_detail;
  std::ostringstream os;
  os << "mode = " << to_string(cfg.mode) << '\n';
  if (cfg.mode == Mode::Preset) {
    os << "preset.id = " << cfg.preset_id << '\n';
  } else {
    os << "atom.kind = " << (cfg.is_lambda() ? "lambda" : "two_level") << '\n';
    os << "atom.omega_ab = " << fmt_double(cfg.atom.omega_ab) << '\n';
    if (cfg.atom.omega_ac) os << "atom.omega_ac = " << fmt_double(*cfg.atom.omega_ac) << '\n';
    write_pulse(os, cfg.pulse, "envelope", "pulse", "phase");
    if (cfg.pulse2) write_pulse(os, *cfg.pulse2, "envelope2", "pulse2", "phase2");
    os << "sim.rel_tol = " << fmt_double(cfg.sim.rel_tol) << '\n';
    os << "sim.abs_tol = " << fmt_double(cfg.sim.abs_tol) << '\n';
    os << "sim.max_step = " << fmt_double(cfg.sim.max_step) << '\n';
    os << "sim.t_start = " << fmt_double(cfg.sim.t_start) << '\n';
    os << "sim.t_end = " << fmt_double(cfg.sim.t_end) << '\n';
    os << "sim.record_stride = " << cfg.sim.record_stride << '\n';
    os << "sim.tail_fraction = " << fmt_double(cfg.tail_fraction) << '\n';
    os << "approx.n_per_cycle = " << cfg.n_per_cycle << '\n';
    os << "approx.kernel = " << to_string(cfg.kernel) << '\n';
    if (cfg.mode == Mode::Sweep || cfg.mode == Mode::Compare) {
      os << "sweep.start = " << fmt_double(cfg.sweep.start) << '\n';
      os << "sweep.stop = " << fmt_double(cfg.sweep.stop) << '\n';
      os << "sweep.step = " << fmt_double(cfg.sweep.step) << '\n';
      os << "sweep.solver = " << to_string(cfg.solver) << '\n';
    }
    if (cfg.mode == Mode::Optimize) {
      os << "optimize.ratio = " << fmt_double(cfg.optimize.ratio) << '\n';
      os << "optimize.shapes = " << join(cfg.optimize.shapes) << '\n';
      os << "optimize.amplitudes = " << join(cfg.optimize.amplitudes) << '\n';
      os << "optimize.steepnesses = " << join(cfg.optimize.steepnesses) << '\n';
      os << "optimize.center = " << fmt_double(cfg.optimize.center) << '\n';
      os << "optimize.objective = " << to_string(cfg.optimize.objective) << '\n';
    }
  }
  if (!cfg.output_csv.empty()) os << "output.csv = " << cfg.output_csv << '\n';
  if (!cfg.output_plot.empty()) os << "output.plot = " << cfg.output_plot << '\n';
  os << "run.workers = " << cfg.workers << '\n';
  return os.str();
}

}  // namespace phasejump

#endif  // PHASEJUMP_CONFIG_HPP
