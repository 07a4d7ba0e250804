#ifndef PHASEJUMP_CLI_HPP
#define PHASEJUMP_CLI_HPP

// phasejump command line:
//   phasejump simulate|sweep|optimize|compare --config <path> [--out f.csv] [--plot f.svg] [--workers n]
//   phasejump preset list
//   phasejump preset show <id>
//   phasejump preset run <id>... [--out f.csv|dir] [--plot f.svg] [--workers n]
//
// Exit status: 0 success, 1 invalid input (including I/O), 2 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phasejump/config.hpp"
#include "phasejump/csv.hpp"
#include "phasejump/error.hpp"
#include "phasejump/presets.hpp"
#include "phasejump/runner.hpp"
#include "phasejump/svg.hpp"

namespace phasejump {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/// --workers, then PHASEJUMP_WORKERS, then the config value.
inline std::size_t resolve_workers(std::optional<std::size_t> flag, std::size_t from_config) {
  if (flag) {
    if (*flag == 0) throw ValidationError("--workers must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("PHASEJUMP_WORKERS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ValidationError("PHASEJUMP_WORKERS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return from_config;
}

struct Outputs {
  std::string out;
  std::string plot;
  std::optional<std::size_t> workers;
};

inline void add_output_flags(CLI::App* app, Outputs& o) {
  app->add_option("--out", o.out, "CSV output path (default: stdout)");
  app->add_option("--plot", o.plot, "SVG plot output path");
  app->add_option("--workers", o.workers, "worker threads for sweeps");
}

inline int emit(const RunOutcome& outcome, const std::string& csv_path, std::ostream& out, std::ostream& err) {
  if (csv_path.empty()) {
    out << outcome.csv;
  } else {
    write_text_file(csv_path, outcome.csv);
  }
  err << outcome.summary;
  return outcome.failed_points ? kExitNumerical : kExitOk;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Two- and three-level atoms driven by few-cycle pulses with smooth phase jumps"};
  app.require_subcommand(1);

  std::string config_path;
  Outputs opts;
  std::string chosen_mode;
  for (const char* name : {"simulate", "sweep", "optimize", "compare"}) {
    auto* sub = app.add_subcommand(name, std::string("run a ") + name + " configuration");
    sub->add_option("--config", config_path, "configuration document")->required();
    add_output_flags(sub, opts);
    sub->callback([&chosen_mode, name] { chosen_mode = name; });
  }

  auto* preset = app.add_subcommand("preset", "figure presets");
  preset->require_subcommand(1);
  auto* list = preset->add_subcommand("list", "print preset ids");
  std::string show_id;
  auto* show = preset->add_subcommand("show", "print a preset's effective configuration");
  show->add_option("id", show_id)->required();
  std::vector<std::string> run_ids;
  auto* run = preset->add_subcommand("run", "run one or more presets");
  run->add_option("ids", run_ids)->required();
  add_output_flags(run, opts);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*list) {
      for (const auto& entry : preset_registry()) out << entry.id << '\n';
      return kExitOk;
    }
    if (*show) {
      const PresetEntry* entry = find_preset(show_id);
      if (!entry) throw ValidationError("unknown preset '" + show_id + "'");
      out << "# " << entry->note << '\n' << serialize_config(entry->config);
      return kExitOk;
    }
    if (*run) {
      std::vector<const PresetEntry*> entries;
      for (const auto& id : run_ids) {
        const PresetEntry* e = find_preset(id);
        if (!e) throw ValidationError("unknown preset '" + id + "'");
        entries.push_back(e);
      }
      const bool many = entries.size() > 1;
      if (many && opts.out.empty()) throw ValidationError("running several presets requires --out <directory>");
      if (many) std::filesystem::create_directories(opts.out);
      int status = kExitOk;
      std::vector<Series> overlay;
      PlotLabels labels;
      for (const PresetEntry* e : entries) {
        RunConfig cfg = e->config;
        cfg.workers = resolve_workers(opts.workers, cfg.workers);
        RunOutcome outcome = execute(cfg, e->id);
        const std::string path = many ? (std::filesystem::path(opts.out) / (e->id + ".csv")).string() : opts.out;
        status = std::max(status, emit(outcome, path, out, err));
        labels = outcome.plot_labels;
        for (auto& s : outcome.plot) overlay.push_back(std::move(s));
      }
      if (!opts.plot.empty()) {
        if (many) labels.title = "presets";
        emit_svg_plot(overlay, opts.plot, labels);
      }
      return status;
    }

    RunConfig cfg = parse_config(read_file(config_path));
    if (cfg.mode != Mode::Preset && to_string(cfg.mode) != chosen_mode)
      throw ValidationError("config mode '" + std::string(to_string(cfg.mode)) + "' does not match subcommand '" +
                            chosen_mode + "'");
    cfg.workers = resolve_workers(opts.workers, cfg.workers);
    const std::string csv_path = opts.out.empty() ? cfg.output_csv : opts.out;
    const std::string plot_path = opts.plot.empty() ? cfg.output_plot : opts.plot;
    RunOutcome outcome = execute(cfg);
    const int status = emit(outcome, csv_path, out, err);
    if (!plot_path.empty()) emit_svg_plot(outcome.plot, plot_path, outcome.plot_labels);
    return status;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace phasejump

#endif  // PHASEJUMP_CLI_HPP
