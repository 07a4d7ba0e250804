#ifndef PHASEJUMP_SVG_HPP
#define PHASEJUMP_SVG_HPP

// Minimal static line plots: linear axes, tick labels, one polyline per series.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "phasejump/csv.hpp"
#include "phasejump/error.hpp"

namespace phasejump {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

namespace svg_detail {

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline double nice_step(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

struct Range {
  double lo, hi;
};

inline Range padded(double lo, double hi) {
  if (hi == lo) {
    const double pad = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace svg_detail

inline void validate(const std::vector<Series>& series) {
  if (series.empty()) throw ValidationError("plot: no series");
  for (const auto& s : series) {
    if (s.x.empty()) throw ValidationError("plot: series '" + s.label + "' is empty");
    if (s.x.size() != s.y.size()) throw ValidationError("plot: series '" + s.label + "' has unequal x/y lengths");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        throw ValidationError("plot: series '" + s.label + "' has a non-finite value at index " + std::to_string(i));
    }
  }
}

inline std::string render_svg(const std::vector<Series>& series, const PlotLabels& labels = {}) {
  using namespace svg_detail;
  validate(series);
  constexpr double W = 720, H = 480, left = 80, right = 170, top = 40, bottom = 60;
  constexpr std::array<const char*, 8> palette{"#d62728", "#1f77b4", "#000000", "#2ca02c",
                                               "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  const Range xr = padded(xmin, xmax), yr = padded(ymin, ymax);
  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\">\n";
  out += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  if (!labels.title.empty())
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           escape(labels.title) + "</text>\n";
  out += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\"/>\n</g>\n";

  auto ticks = [&](Range r, bool is_x) {
    const double step = nice_step(r.hi - r.lo);
    std::string g = std::string("<g class=\"") + (is_x ? "xticks" : "yticks") + "\" font-size=\"11\">\n";
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step) {
      const double tv = std::abs(v) < 1e-12 * step ? 0.0 : v;
      char label[32];
      std::snprintf(label, sizeof label, "%g", tv);
      if (is_x) {
        const double x = px(tv);
        g += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(top + ph + 5) + "\" stroke=\"black\"/>";
        g += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" + label +
             "</text>\n";
      } else {
        const double y = py(tv);
        g += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) + "\" y2=\"" + num(y) +
             "\" stroke=\"black\"/>";
        g += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + label +
             "</text>\n";
      }
    }
    return g + "</g>\n";
  };
  out += ticks(xr, true);
  out += ticks(yr, false);
  if (!labels.x_label.empty())
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(H - 16) + "\" text-anchor=\"middle\" font-size=\"13\">" +
           escape(labels.x_label) + "</text>\n";
  if (!labels.y_label.empty())
    out += "<text x=\"18\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
           num(top + ph / 2) + ")\">" + escape(labels.y_label) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" + std::string(palette[k % palette.size()]) +
           "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out += ' ';
      out += num(px(s.x[i])) + ',' + num(py(s.y[i]));
    }
    out += "\"/>\n";
  }

  out += "<g class=\"legend\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double y = top + 12 + 20.0 * static_cast<double>(k);
    const double x = left + pw + 12;
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x + 24) + "\" y2=\"" + num(y) +
           "\" stroke-width=\"2\" stroke=\"" + palette[k % palette.size()] + "\"/>";
    out += "<text class=\"legend-entry\" x=\"" + num(x + 30) + "\" y=\"" + num(y + 4) + "\">" +
           escape(series[k].label) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

inline void emit_svg_plot(const std::vector<Series>& series, const std::string& path, const PlotLabels& labels = {}) {
  write_text_file(path, render_svg(series, labels));
}

}  // namespace phasejump

#endif  // PHASEJUMP_SVG_HPP
