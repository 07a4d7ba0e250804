#ifndef PHASEJUMP_QUADRATURE_HPP
#define PHASEJUMP_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "phasejump/error.hpp"

namespace phasejump::quadrature {

/// Uniform grid t_k = start + k * step, k = 0..size-1.
struct UniformGrid {
  double start = 0.0;
  double step = 1.0;
  std::size_t size = 0;

  double operator[](std::size_t k) const { return start + static_cast<double>(k) * step; }
  double back() const { return (*this)[size - 1]; }

  std::vector<double> nodes() const {
    std::vector<double> t(size);
    for (std::size_t k = 0; k < size; ++k) t[k] = (*this)[k];
    return t;
  }
};

/// Smallest grid over [a, b] with an even number of intervals and spacing <= max_step.
inline UniformGrid make_grid(double a, double b, double max_step) {
  if (!(b > a) || !(max_step > 0.0)) throw ValidationError("make_grid: need b > a and max_step > 0");
  auto intervals = static_cast<std::size_t>(std::ceil((b - a) / max_step));
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  return {a, (b - a) / static_cast<double>(intervals), intervals + 1};
}

/// Running integral F_k = int_{t_0}^{t_k} f dt on a uniform grid.
///
/// Even nodes carry the composite Simpson sum exactly. Each odd node adds the
/// half-panel rule h/12 (5 f0 + 8 f1 - f2) on top of the preceding even node,
/// so the whole series is fourth order at even nodes and third order locally
/// at odd ones. Needs an odd number of samples (even interval count).
template <class T>
std::vector<T> cumulative_simpson(std::span<const T> f, double step) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0)
    throw ValidationError("cumulative_simpson: needs an odd number (>= 3) of samples");
  std::vector<T> out(n);
  out[0] = T{};
  const double third = step / 3.0;
  const double twelfth = step / 12.0;
  for (std::size_t k = 0; k + 2 < n; k += 2) {
    out[k + 1] = out[k] + twelfth * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]);
    out[k + 2] = out[k] + third * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  }
  return out;
}

template <class T>
std::vector<T> cumulative_simpson(const std::vector<T>& f, double step) {
  return cumulative_simpson(std::span<const T>(f), step);
}

}  // namespace phasejump::quadrature

#endif  // PHASEJUMP_QUADRATURE_HPP
