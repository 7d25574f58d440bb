#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "core.hpp"
#include "grid.hpp"

namespace bundleqm {

/// Rectangular phase-space grid; x is the slow (row) index.
struct Grid2D {
  Axis x;
  Axis p;

  std::size_t size() const { return x.n * p.n; }
  std::size_t index(std::size_t ix, std::size_t jp) const { return ix * p.n + jp; }

  void validate() const {
    x.validate("x");
    p.validate("p");
  }

  /// [-8w, 8w] x [-8/w, 8/w] with n points per side.
  static Grid2D standard(double w, std::size_t n = 257) {
    return {{-8.0 * w, 8.0 * w, n}, {-8.0 / w, 8.0 / w, n}};
  }

  static Grid2D square(double half_width, double h) {
    const Axis a = Axis::centered(half_width, h);
    return {a, a};
  }
};

/// Sampled section of L^+ or L^- over a phase-space grid.
struct GridSection {
  Grid2D grid;
  std::vector<cplx> values;
  QuantumCharge charge = QuantumCharge::particle();

  cplx& at(std::size_t ix, std::size_t jp) { return values[grid.index(ix, jp)]; }
  const cplx& at(std::size_t ix, std::size_t jp) const { return values[grid.index(ix, jp)]; }

  void validate() const {
    grid.validate();
    if (values.size() != grid.size())
      throw Error(ErrorKind::InvalidArgument, "value count does not match grid");
    for (const cplx& v : values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::InvalidArgument, "section has non-finite values");
  }
};

template <class F>
GridSection sample_section(const Grid2D& grid, QuantumCharge charge, F&& f) {
  grid.validate();
  GridSection out{grid, std::vector<cplx>(grid.size()), charge};
  for (std::size_t i = 0; i < grid.x.n; ++i) {
    const double x = grid.x.at(i);
    for (std::size_t j = 0; j < grid.p.n; ++j) out.at(i, j) = f(x, grid.p.at(j));
  }
  return out;
}

enum class Representation { coordinate, momentum };

/// Section polarized along one real direction, sampled on a uniform line in
/// x (coordinate) or p (momentum).
struct LineSection {
  Representation rep = Representation::coordinate;
  Axis axis;
  std::vector<cplx> values;
  QuantumCharge charge = QuantumCharge::particle();

  double step() const { return axis.step(); }

  void validate() const {
    axis.validate(rep == Representation::coordinate ? "x" : "p");
    if (values.size() != axis.n)
      throw Error(ErrorKind::InvalidArgument, "value count does not match axis");
  }

  double norm2() const {
    std::vector<double> density(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) density[i] = std::norm(values[i]);
    return trapezoid(density, step());
  }
};

template <class F>
LineSection sample_line(Representation rep, const Axis& axis, QuantumCharge charge, F&& f) {
  axis.validate(rep == Representation::coordinate ? "x" : "p");
  LineSection out{rep, axis, std::vector<cplx>(axis.n), charge};
  for (std::size_t i = 0; i < axis.n; ++i) out.values[i] = f(axis.at(i));
  return out;
}

}  // namespace bundleqm
