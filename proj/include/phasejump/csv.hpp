#ifndef PHASEJUMP_CSV_HPP
#define PHASEJUMP_CSV_HPP

// CSV serialization. Numbers use 17 significant digits so files are exact and
// byte-stable across runs of the same build.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "phasejump/error.hpp"
#include "phasejump/sweep.hpp"
#include "phasejump/tls.hpp"

namespace phasejump {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Columns t,re_ca,im_ca,re_cb,im_cb[,re_cc,im_cc],pop_a,norm with pop_a = |C_a|.
inline std::string format_csv(const Trajectory& traj) {
  std::string out = traj.has_c() ? "t,re_ca,im_ca,re_cb,im_cb,re_cc,im_cc,pop_a,norm\n"
                                 : "t,re_ca,im_ca,re_cb,im_cb,pop_a,norm\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_number(traj.times[k]);
    for (const complex* c : {&traj.c_a[k], &traj.c_b[k]}) {
      out += ',' + format_number(c->real());
      out += ',' + format_number(c->imag());
    }
    if (traj.has_c()) {
      out += ',' + format_number(traj.c_c[k].real());
      out += ',' + format_number(traj.c_c[k].imag());
    }
    out += ',' + format_number(std::abs(traj.c_a[k]));
    out += ',' + format_number(traj.norm[k]) + '\n';
  }
  return out;
}

/// Columns nu_over_omega,pop_exact,pop_approx,rel_dev; "nan" marks values not computed.
inline std::string format_csv(const SweepResult& sweep) {
  std::string out = "nu_over_omega,pop_exact,pop_approx,rel_dev\n";
  const bool both = sweep.solver == Solver::Both;
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    out += format_number(sweep.ratio_grid[k]) + ',' + format_number(sweep.pop_exact[k]) + ',' +
           format_number(sweep.pop_approx[k]) + ',' +
           format_number(both ? sweep.rel_dev(k) : std::nan("")) + '\n';
  }
  return out;
}

/// One row per candidate plus a leading `baseline` row for phi = 0.
inline std::string format_csv(const OptReport& report) {
  std::string out = "index,phase,amplitude,population,enhancement_amplitude,enhancement_population,best,error\n";
  auto row = [&](const std::string& index, const std::string& phase, double amp, bool best, const std::string& err) {
    const double enh_a = amp / report.baseline_amplitude;
    const double enh_p = (amp * amp) / (report.baseline_amplitude * report.baseline_amplitude);
    std::string e = err;
    for (auto& ch : e)
      if (ch == ',' || ch == '\n') ch = ' ';
    out += index + ',' + phase + ',' + format_number(amp) + ',' + format_number(amp * amp) + ',' +
           format_number(enh_a) + ',' + format_number(enh_p) + ',' + (best ? "1" : "0") + ',' + e + '\n';
  };
  row("baseline", "zero", report.baseline_amplitude, false, "");
  for (std::size_t k = 0; k < report.candidates.size(); ++k) {
    const auto& c = report.candidates[k];
    row(std::to_string(k), describe(c.phase), c.amplitude, k == report.best_index, c.error);
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed: " + std::strerror(errno));
}

template <class Result>
void write_csv(const Result& result, const std::string& path) {
  write_text_file(path, format_csv(result));
}

}  // namespace phasejump

#endif  // PHASEJUMP_CSV_HPP
