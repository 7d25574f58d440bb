#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"

namespace bundleqm {

/// Uniform sampling of [min, max] with n points, endpoints included.
struct Axis {
  double min = -1.0;
  double max = 1.0;
  std::size_t n = 3;

  double step() const { return (max - min) / static_cast<double>(n - 1); }
  double at(std::size_t i) const { return min + step() * static_cast<double>(i); }

  /// Axis over [-half_width, half_width] with spacing close to h and an odd
  /// point count, so 0 is a node.
  static Axis centered(double half_width, double h) {
    auto cells = static_cast<std::size_t>(std::llround(2.0 * half_width / h));
    if (cells % 2 == 1) ++cells;
    return {-half_width, half_width, cells + 1};
  }

  void validate(const char* name) const {
    if (n < 3)
      throw Error(ErrorKind::GridTooSmall,
                  std::string(name) + " axis needs at least 3 points");
    if (!(max > min) || !std::isfinite(min) || !std::isfinite(max))
      throw Error(ErrorKind::InvalidArgument, std::string(name) + " axis range is empty");
  }
};

/// First derivative of uniformly spaced samples: central differences inside,
/// second-order one-sided stencils at the two ends.
template <class T>
std::vector<T> differentiate(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  if (n < 3) throw Error(ErrorKind::GridTooSmall, "derivative needs at least 3 samples");
  std::vector<T> out(n);
  const double inv2h = 0.5 / h;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  return out;
}

template <class T>
std::vector<T> differentiate(const std::vector<T>& f, double h) {
  return differentiate(std::span<const T>(f), h);
}

/// Eighth-order central difference of a callable at s.
template <class F>
auto derivative8(F&& f, double s, double h) {
  static constexpr double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  decltype(f(s)) sum{};
  for (int k = 0; k < 4; ++k) sum += c[k] * (f(s + (k + 1) * h) - f(s - (k + 1) * h));
  return sum / h;
}

/// Composite trapezoid rule on uniform samples.
template <class T>
T trapezoid(std::span<const T> f, double h) {
  if (f.empty()) return T{};
  T sum{};
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  if (f.size() > 1) sum += 0.5 * (f.front() + f.back());
  return sum * h;
}

template <class T>
T trapezoid(const std::vector<T>& f, double h) {
  return trapezoid(std::span<const T>(f), h);
}

}  // namespace bundleqm
