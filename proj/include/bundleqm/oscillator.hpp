#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bundles.hpp"
#include "classical.hpp"
#include "core.hpp"
#include "grid.hpp"
#include "polarizations.hpp"
#include "quadrature.hpp"
#include "sections.hpp"

namespace bundleqm::oscillator {

using polarizations::FockState;

/// E = omega (q_l + q_v / 2) with q_l = n q_v, so E = omega (n + 1/2) for
/// either charge.
struct EnergyLevel {
  int n = 0;
  double E = 0.0;
  int q_l = 0;
  int q_v = 1;
};

inline EnergyLevel energy_level(int n, QuantumCharge charge, const OscillatorParams& params) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "level must be non-negative");
  require_unit_charge(charge);
  const int q_l = n * charge.q_v;
  return {n, params.omega * charge.sign() * (q_l + 0.5 * charge.q_v), q_l, charge.q_v};
}

/// H = omega (z' d/dz' + 1/2), diagonal in the Fock basis for both charges.
inline FockState hamiltonian_apply(const FockState& state, const OscillatorParams& params) {
  state.validate();
  FockState out = state;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] *= params.omega * (n + 0.5);
  return out;
}

/// Unit-norm basis state delta_{kn} in the orthonormal basis.
inline FockState eigenstate(std::size_t n, QuantumCharge charge, double w = 1.0) {
  require_unit_charge(charge);
  FockState s{std::vector<cplx>(n + 1), charge, w};
  s.coeffs[n] = 1.0;
  return s;
}

struct EvolvingState {
  FockState state;
  double t = 0.0;
};

/// c_n -> exp(i s omega (n + 1/2) dt) c_n with s = q_v under the default
/// convention (particles rotate counterclockwise).
inline EvolvingState evolve_schrodinger(const EvolvingState& in, double dt, const OscillatorParams& params,
                                        FrequencyConvention conv = FrequencyConvention::mathematical) {
  in.state.validate();
  require_unit_charge(in.state.charge);
  EvolvingState out = in;
  const double s = frequency_sign(in.state.charge, conv);
  for (std::size_t n = 0; n < out.state.coeffs.size(); ++n)
    out.state.coeffs[n] *= std::polar(1.0, s * params.omega * (n + 0.5) * dt);
  out.t += dt;
  return out;
}

struct Occupancy {
  int n = 0;
  double weight = 0.0;
};

/// q_v is the charge; q_l = n q_v is assigned only to single Fock levels,
/// otherwise `occupancy` lists the levels with weight above the cutoff.
struct WindingCharges {
  int q_v = 1;
  std::optional<int> q_l;
  std::vector<Occupancy> occupancy;
};

inline WindingCharges winding_charges(const FockState& state, double rel_cutoff = 1e-24) {
  state.validate();
  WindingCharges out;
  out.q_v = state.charge.q_v;
  const double total = state.norm2();
  if (total == 0.0) return out;
  for (std::size_t n = 0; n < state.coeffs.size(); ++n) {
    const double wgt = std::norm(state.coeffs[n]) / total;
    if (wgt > rel_cutoff) out.occupancy.push_back({static_cast<int>(n), wgt});
  }
  if (out.occupancy.size() == 1) out.q_l = out.occupancy.front().n * out.q_v;
  return out;
}

// ---------------------------------------------------------------------------
// Covariant Laplacian on the phase-space grid.

struct LaplacianReport {
  int n = 0;
  double eigenvalue = 0.0;  // Rayleigh quotient of Delta_2 on Psi(n)
  double expected = 0.0;    // -(2/w^2)(n + 1/2)
  double relative_error = 0.0;
  double energy = 0.0;  // -Delta_2 / 2m
  double expected_energy = 0.0;
};

/// Delta_2 = nabla_z nabla_zbar + nabla_zbar nabla_z from the vacuum
/// covariant derivatives, nabla_{z,zbar} = (nabla_x +- i q/w^2 nabla_p)/sqrt2.
inline GridSection covariant_laplacian(const GridSection& sec, const OscillatorParams& params) {
  using bundles::Direction;
  const auto conn = bundles::vacuum_connection();
  const double w2 = params.w2();
  const double q = sec.charge.sign();
  auto combine = [&](const GridSection& s, double sign) {
    const GridSection dx = bundles::covariant_derivative(s, Direction::x, conn);
    const GridSection dp = bundles::covariant_derivative(s, Direction::p, conn);
    GridSection out = dx;
    for (std::size_t k = 0; k < out.values.size(); ++k)
      out.values[k] = (dx.values[k] + sign * q * I / w2 * dp.values[k]) / sqrt2;
    return out;
  };
  auto nabla_z = [&](const GridSection& s) { return combine(s, 1.0); };
  auto nabla_zbar = [&](const GridSection& s) { return combine(s, -1.0); };
  GridSection a = nabla_z(nabla_zbar(sec));
  const GridSection b = nabla_zbar(nabla_z(sec));
  for (std::size_t k = 0; k < a.values.size(); ++k) a.values[k] += b.values[k];
  return a;
}

inline LaplacianReport laplacian_consistency(int n, const OscillatorParams& params, const Grid2D& grid,
                                             QuantumCharge charge = QuantumCharge::particle(),
                                             double max_relative_error = 0.05) {
  if (n < 0 || n > 8) throw Error(ErrorKind::InvalidArgument, "level must lie in 0..8");
  if (grid.x.n < 5 || grid.p.n < 5)
    throw Error(ErrorKind::GridTooSmall, "Laplacian check needs at least 5 points per axis");
  const GridSection psi = polarizations::holomorphic_section(grid, params, charge, [n](cplx z) {
    return std::pow(z, n);
  });
  const GridSection lap = covariant_laplacian(psi, params);
  // two nested first-derivative passes: drop two cells on each side
  cplx num{};
  double den = 0.0;
  for (std::size_t i = 2; i + 2 < grid.x.n; ++i)
    for (std::size_t j = 2; j + 2 < grid.p.n; ++j) {
      num += std::conj(psi.at(i, j)) * lap.at(i, j);
      den += std::norm(psi.at(i, j));
    }
  if (den == 0.0) throw Error(ErrorKind::GridTooSmall, "grid interior misses the state");
  LaplacianReport r;
  r.n = n;
  r.eigenvalue = num.real() / den;
  r.expected = -(2.0 / params.w2()) * (n + 0.5);
  r.relative_error = std::abs(r.eigenvalue - r.expected) / std::abs(r.expected);
  r.energy = -r.eigenvalue / (2.0 * params.m);
  r.expected_energy = params.omega * (n + 0.5);
  if (!(r.relative_error <= max_relative_error))
    throw Error(ErrorKind::ResolutionInsufficient,
                "Laplacian eigenvalue off by " + std::to_string(100.0 * r.relative_error) + "%");
  return r;
}

// ---------------------------------------------------------------------------
// Coordinate representation: Hermite-basis matrices built by quadrature.

struct CoordinateBasisOptions {
  Axis axis = Axis::centered(12.0, 1e-4);
  std::size_t quad_order = 128;
};

/// Samples h_n (width w) on the axis.
inline LineSection hermite_line(std::size_t n, const Axis& axis, const OscillatorParams& params,
                                QuantumCharge charge = QuantumCharge::particle()) {
  const double w = params.w();
  return sample_line(Representation::coordinate, axis, charge,
                     [&](double x) { return cplx(quadrature::hermite_function(n, x, w), 0.0); });
}

/// Column j holds the Fock coefficients of op(h_j), rows 0..size-1.
template <class Op>
Eigen::MatrixXcd coordinate_matrix(std::size_t size, const OscillatorParams& params,
                                   const CoordinateBasisOptions& opt, Op&& op) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  for (std::size_t j = 0; j < size; ++j) {
    const LineSection image = op(hermite_line(j, opt.axis, params));
    const FockState c = polarizations::bargmann_transform(image, size - 1, opt.quad_order, params);
    for (std::size_t i = 0; i < size; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c.coeffs[i];
  }
  return m;
}

/// <h_i | a | h_j> (or a^dagger) from the finite-difference coordinate ladder.
inline Eigen::MatrixXcd ladder_matrix(polarizations::Ladder which, std::size_t size,
                                      const OscillatorParams& params, const CoordinateBasisOptions& opt = {}) {
  return coordinate_matrix(size, params, opt, [&](const LineSection& s) {
    return polarizations::ladder_coordinate(s, which, params);
  });
}

/// H = omega (a^dagger a + 1/2) = -(1/2m) d_x^2 + (m omega^2/2) x^2 on h_0..h_{size-1}.
inline Eigen::MatrixXcd hamiltonian_matrix(std::size_t size, const OscillatorParams& params,
                                           const CoordinateBasisOptions& opt = {}) {
  using polarizations::Ladder;
  return coordinate_matrix(size, params, opt, [&](const LineSection& s) {
    LineSection out = polarizations::ladder_coordinate(
        polarizations::ladder_coordinate(s, Ladder::lower, params), Ladder::raise, params);
    for (std::size_t k = 0; k < out.values.size(); ++k)
      out.values[k] = params.omega * (out.values[k] + 0.5 * s.values[k]);
    return out;
  });
}

/// Ascending eigenvalues of the Hermitian part of `h`.
inline std::vector<double> spectrum(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// ---------------------------------------------------------------------------
// Husimi function and charge density.

/// Q(z') = |psi(z')|^2 e^{-|z'|^2} / pi over a grid of dimensionless
/// z' = re + i im. Antiparticle states are holomorphic in conj(z'), so they
/// are read at the conjugate point.
struct HusimiField {
  Grid2D grid;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

inline double husimi_at(const FockState& state, cplx zp) {
  const cplx arg = state.charge.q_v < 0 ? std::conj(zp) : zp;
  return std::norm(polarizations::bargmann_function(state, arg)) * std::exp(-std::norm(zp)) / pi;
}

inline HusimiField husimi(const FockState& state, const Grid2D& grid) {
  state.validate();
  grid.validate();
  HusimiField out{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.x.n; ++i)
    for (std::size_t j = 0; j < grid.p.n; ++j)
      out.values[grid.index(i, j)] = husimi_at(state, cplx(grid.x.at(i), grid.p.at(j)));
  return out;
}

/// 2D composite trapezoid of the field.
inline double integrate(const HusimiField& q) {
  std::vector<double> row(q.grid.x.n);
  std::vector<double> col(q.grid.p.n);
  for (std::size_t i = 0; i < q.grid.x.n; ++i) {
    for (std::size_t j = 0; j < q.grid.p.n; ++j) col[j] = q.at(i, j);
    row[i] = trapezoid(col, q.grid.p.step());
  }
  return trapezoid(row, q.grid.x.step());
}

struct HusimiPeak {
  std::size_t i = 0;
  std::size_t j = 0;
  cplx z;
  double value = 0.0;
};

inline HusimiPeak argmax(const HusimiField& q) {
  HusimiPeak best;
  best.value = -1.0;
  for (std::size_t i = 0; i < q.grid.x.n; ++i)
    for (std::size_t j = 0; j < q.grid.p.n; ++j)
      if (q.at(i, j) > best.value) best = {i, j, cplx(q.grid.x.at(i), q.grid.p.at(j)), q.at(i, j)};
  return best;
}

/// rho = q_v |psi|^2 and its integral, which equals q_v for a normalized
/// state. A signed charge, not a probability.
struct ChargeDensity {
  Axis axis;
  std::vector<double> density;
  double total = 0.0;
};

inline ChargeDensity charge_density(const LineSection& sec, double norm_tol = 1e-6) {
  sec.validate();
  require_unit_charge(sec.charge);
  const double n2 = sec.norm2();
  if (std::abs(n2 - 1.0) > norm_tol)
    throw Error(ErrorKind::NotNormalized, "state norm^2 is " + std::to_string(n2));
  ChargeDensity out{sec.axis, std::vector<double>(sec.values.size()), 0.0};
  for (std::size_t i = 0; i < sec.values.size(); ++i) out.density[i] = sec.charge.sign() * std::norm(sec.values[i]);
  out.total = trapezoid(out.density, sec.step());
  return out;
}

/// Same for a Fock state, synthesized on `axis` in the coordinate picture.
inline ChargeDensity charge_density(const FockState& state, const Axis& axis, double norm_tol = 1e-6) {
  state.validate();
  if (std::abs(state.norm2() - 1.0) > norm_tol)
    throw Error(ErrorKind::NotNormalized, "state norm^2 is " + std::to_string(state.norm2()));
  return charge_density(polarizations::inverse_bargmann(state, axis), norm_tol);
}

}  // namespace bundleqm::oscillator
