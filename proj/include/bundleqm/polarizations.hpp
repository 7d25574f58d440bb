#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bundles.hpp"
#include "classical.hpp"
#include "core.hpp"
#include "grid.hpp"
#include "quadrature.hpp"
#include "sections.hpp"

// Real and complex polarizations: Dolbeault operators, the holomorphic gauge,
// ladder operators in the Fock and coordinate pictures, the Bargmann
// transform between them, and the w -> 0 / w -> infinity limits.
namespace bundleqm::polarizations {

enum class Polarization { coordinate, momentum, holomorphic, antiholomorphic };

/// Holomorphic sections carry charge +1, antiholomorphic ones -1; the real
/// polarizations admit both.
inline bool admits(Polarization pol, QuantumCharge charge) {
  switch (pol) {
    case Polarization::coordinate:
    case Polarization::momentum: return charge.q_v == 1 || charge.q_v == -1;
    case Polarization::holomorphic: return charge.q_v == 1;
    case Polarization::antiholomorphic: return charge.q_v == -1;
  }
  return false;
}

inline constexpr std::size_t default_truncation = 32;

/// Coefficients along the orthonormal basis z'^n / sqrt(n!), z' = z / w.
struct FockState {
  std::vector<cplx> coeffs{cplx(1.0, 0.0)};
  QuantumCharge charge = QuantumCharge::particle();
  double w = 1.0;

  std::size_t truncation() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  double norm2() const {
    double s = 0.0;
    for (const cplx& c : coeffs) s += std::norm(c);
    return s;
  }

  cplx coeff(std::size_t n) const { return n < coeffs.size() ? coeffs[n] : cplx{}; }

  void validate() const {
    if (coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "Fock state needs at least one coefficient");
    for (const cplx& c : coeffs)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw Error(ErrorKind::InvalidArgument, "Fock state has non-finite coefficients");
    if (!(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "width must be positive");
  }
};

/// max_n |a_n - b_n| with missing coefficients read as zero.
inline double max_difference(const FockState& a, const FockState& b) {
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
  return d;
}

// ---------------------------------------------------------------------------
// Complex polarization on the phase-space grid.

/// z_+- = (x -+ i w^2 p)/sqrt2 for the section's charge.
inline cplx charge_coordinate(double x, double p, double w2, QuantumCharge charge) {
  return cplx(x, -charge.sign() * w2 * p) / sqrt2;
}

/// Psi = f(z_+-) exp(-z zbar / 2w^2) sampled on the grid.
template <class F>
GridSection holomorphic_section(const Grid2D& grid, const OscillatorParams& params,
                                QuantumCharge charge, F&& f) {
  require_unit_charge(charge);
  const double w2 = params.w2();
  return sample_section(grid, charge, [&](double x, double p) {
    const cplx z = charge_coordinate(x, p, w2, charge);
    return f(z) * std::exp(-std::norm(z) / (2.0 * w2));
  });
}

/// (d/dzbar_+- + z_+- / 2w^2) Psi by central differences; vanishes to O(h^2)
/// exactly on the polarized sections f(z_+-) exp(-z zbar / 2w^2).
inline GridSection dolbeault_residual(const GridSection& sec, const OscillatorParams& params) {
  sec.validate();
  require_unit_charge(sec.charge);
  const double w2 = params.w2();
  const double q = sec.charge.sign();
  const auto zero = bundles::GaugeConnection{[](double, double) { return 0.0; },
                                             [](double, double) { return 0.0; }, "flat"};
  const GridSection dx = bundles::covariant_derivative(sec, bundles::Direction::x, zero);
  const GridSection dp = bundles::covariant_derivative(sec, bundles::Direction::p, zero);
  GridSection out{sec.grid, std::vector<cplx>(sec.values.size()), sec.charge};
  for (std::size_t i = 0; i < sec.grid.x.n; ++i)
    for (std::size_t j = 0; j < sec.grid.p.n; ++j) {
      const cplx z = charge_coordinate(sec.grid.x.at(i), sec.grid.p.at(j), w2, sec.charge);
      const cplx dzbar = (dx.at(i, j) - q * I / w2 * dp.at(i, j)) / sqrt2;
      out.at(i, j) = dzbar + z / (2.0 * w2) * sec.at(i, j);
    }
  return out;
}

/// Largest |value| over the grid interior (one-cell margin).
inline double interior_max(const GridSection& sec, std::size_t margin = 1) {
  double m = 0.0;
  for (std::size_t i = margin; i + margin < sec.grid.x.n; ++i)
    for (std::size_t j = margin; j + margin < sec.grid.p.n; ++j) m = std::max(m, std::abs(sec.at(i, j)));
  return m;
}

/// Discrete L^2 norm over the grid interior.
inline double interior_norm(const GridSection& sec, std::size_t margin = 1) {
  double s = 0.0;
  for (std::size_t i = margin; i + margin < sec.grid.x.n; ++i)
    for (std::size_t j = margin; j + margin < sec.grid.p.n; ++j) s += std::norm(sec.at(i, j));
  return std::sqrt(s * sec.grid.x.step() * sec.grid.p.step());
}

/// Connection components (A_z, A_zbar) in a complex frame of L^+-.
struct ComplexConnection {
  std::function<cplx(cplx)> a_z;
  std::function<cplx(cplx)> a_zbar;
  std::string label;
};

/// Vacuum connection in the Hermitian frame v+-: A_z = zbar/2w^2,
/// A_zbar = -z/2w^2 (each charge in its own coordinate z_+-).
inline ComplexConnection vacuum_complex_connection(const OscillatorParams& params) {
  const double w2 = params.w2();
  return {[w2](cplx z) { return std::conj(z) / (2.0 * w2); },
          [w2](cplx z) { return -z / (2.0 * w2); }, "vacuum"};
}

/// Change of frame by phi0 = exp(-z zbar / 2w^2): A -> A + phi0^{-1} d phi0.
/// From the vacuum this gives A_z = 0, A_zbar = -z/w^2 (holomorphic, not
/// Hermitian).
inline ComplexConnection holomorphic_gauge(const ComplexConnection& conn, const OscillatorParams& params) {
  const double w2 = params.w2();
  auto az = conn.a_z;
  auto azb = conn.a_zbar;
  return {[az, w2](cplx z) { return az(z) - std::conj(z) / (2.0 * w2); },
          [azb, w2](cplx z) { return azb(z) - z / (2.0 * w2); }, conn.label + "+dlog(phi0)"};
}

/// Wirtinger curvature d_z A_zbar - d_zbar A_z at z, by central differences
/// in the real and imaginary directions.
inline cplx complex_curvature(const ComplexConnection& conn, cplx z, double h = 1e-4) {
  auto wirtinger = [h, z](const std::function<cplx(cplx)>& f, bool holo) {
    const cplx du = (f(z + h) - f(z - h)) / (2.0 * h);
    const cplx dv = (f(z + I * h) - f(z - I * h)) / (2.0 * h);
    return holo ? 0.5 * (du - I * dv) : 0.5 * (du + I * dv);
  };
  return wirtinger(conn.a_zbar, true) - wirtinger(conn.a_z, false);
}

// ---------------------------------------------------------------------------
// Ladder operators.

enum class Ladder { lower, raise };

/// a = d/dz', a^dagger = z' in the orthonormal basis. Raising always extends
/// the truncation by one level, so nothing is lost at the edge.
inline FockState ladder_apply(const FockState& state, Ladder which) {
  state.validate();
  FockState out{{}, state.charge, state.w};
  const std::size_t n = state.coeffs.size();
  if (which == Ladder::lower) {
    out.coeffs.assign(std::max<std::size_t>(n - 1, 1), cplx{});
    for (std::size_t k = 1; k < n; ++k) out.coeffs[k - 1] = std::sqrt(static_cast<double>(k)) * state.coeffs[k];
  } else {
    out.coeffs.assign(n + 1, cplx{});
    for (std::size_t k = 0; k < n; ++k) out.coeffs[k + 1] = std::sqrt(static_cast<double>(k + 1)) * state.coeffs[k];
  }
  return out;
}

/// Coordinate-representation ladders: a = (w/sqrt2)(d_x + x/w^2),
/// a^dagger = (w/sqrt2)(x/w^2 - d_x).
inline LineSection ladder_coordinate(const LineSection& sec, Ladder which, const OscillatorParams& params) {
  sec.validate();
  if (sec.rep != Representation::coordinate)
    throw Error(ErrorKind::WrongPolarization, "coordinate ladders need a coordinate section");
  const double w = params.w();
  const double w2 = params.w2();
  const auto d = differentiate(sec.values, sec.step());
  const double sign = which == Ladder::lower ? 1.0 : -1.0;
  LineSection out = sec;
  for (std::size_t i = 0; i < sec.values.size(); ++i)
    out.values[i] = w / sqrt2 * (sign * d[i] + sec.axis.at(i) / w2 * sec.values[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Bargmann transform.

/// Holomorphic representative psi(z') = sum_n c_n z'^n / sqrt(n!).
inline cplx bargmann_function(const FockState& state, cplx zp) {
  cplx term(1.0, 0.0);
  cplx sum{};
  for (std::size_t n = 0; n < state.coeffs.size(); ++n) {
    if (n > 0) term *= zp / std::sqrt(static_cast<double>(n));
    sum += state.coeffs[n] * term;
  }
  return sum;
}

/// c_n = <h_n, psi>, n = 0..N, with h_n the orthonormal Hermite functions of
/// width w, evaluated by Gauss-Hermite quadrature on the band-limited
/// interpolant of the samples.
inline FockState bargmann_transform(const LineSection& sec, std::size_t truncation,
                                    std::size_t quad_order, const OscillatorParams& params) {
  sec.validate();
  if (sec.rep != Representation::coordinate)
    throw Error(ErrorKind::WrongPolarization, "Bargmann transform takes a coordinate section");
  if (quad_order < 2 * truncation + 2)
    throw Error(ErrorKind::QuadratureUnderResolved,
                "quadrature order " + std::to_string(quad_order) + " < 2N+2 = " +
                    std::to_string(2 * truncation + 2));
  double peak = 0.0;
  for (const cplx& v : sec.values) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(sec.values.front()), std::abs(sec.values.back()));
  if (edge > 1e-8 * peak)
    throw Error(ErrorKind::DecayViolation, "section has not decayed at the grid ends");

  const double w = params.w();
  const auto rule = quadrature::gauss_hermite(quad_order);
  FockState out{std::vector<cplx>(truncation + 1), sec.charge, w};
  for (std::size_t k = 0; k < rule.order(); ++k) {
    const double xi = rule.nodes[k];
    const cplx psi = quadrature::sinc_interpolate(sec.values, sec.axis, w * xi);
    if (psi == cplx{}) continue;
    const auto phi = quadrature::hermite_functions(xi, truncation + 1);
    const cplx weighted = rule.scaled_weights[k] * std::sqrt(w) * psi;
    for (std::size_t n = 0; n <= truncation; ++n) out.coeffs[n] += phi[n] * weighted;
  }
  return out;
}

/// Synthesizes sum_n c_n h_n(x) on the given axis.
inline LineSection inverse_bargmann(const FockState& state, const Axis& axis) {
  state.validate();
  axis.validate("x");
  LineSection out{Representation::coordinate, axis, std::vector<cplx>(axis.n), state.charge};
  const double w = state.w;
  for (std::size_t i = 0; i < axis.n; ++i) {
    const auto phi = quadrature::hermite_functions(axis.at(i) / w, state.coeffs.size());
    cplx s{};
    for (std::size_t n = 0; n < state.coeffs.size(); ++n) s += state.coeffs[n] * phi[n];
    out.values[i] = s / std::sqrt(w);
  }
  return out;
}

/// <a, b> in the Gaussian-weighted holomorphic pairing; exact on truncated
/// states since the basis is orthonormal.
inline cplx bargmann_pairing(const FockState& a, const FockState& b) {
  if (a.charge != b.charge) throw Error(ErrorKind::ChargeMismatch, "pairing needs equal charges");
  cplx s{};
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  for (std::size_t k = 0; k < n; ++k) s += std::conj(a.coeffs[k]) * b.coeffs[k];
  return s;
}

// ---------------------------------------------------------------------------
// Real polarizations as limits of the complex one.

enum class LimitDirection { to_zero, to_infinity };

struct LimitCheckOptions {
  QuantumCharge charge = QuantumCharge::particle();
  Grid2D grid = Grid2D::square(4.0, 0.02);
  /// Profile psi of the limiting real-polarized section.
  std::function<cplx(double)> profile = [](double s) { return cplx(std::exp(-0.5 * s * s), 0.0); };
};

struct LimitCheckReport {
  LimitDirection direction;
  std::vector<double> w;
  std::vector<double> residual;
  bool strictly_decreasing = false;
};

/// Section of the limiting real polarization: e^{-+ipx/2} psi(x) for w -> 0,
/// e^{+-ipx/2} psi(p) for w -> infinity (upper sign for charge +1).
inline std::function<cplx(double, double)> limit_section(LimitDirection dir, QuantumCharge charge,
                                                         std::function<cplx(double)> profile) {
  const double q = charge.sign();
  if (dir == LimitDirection::to_zero)
    return [q, profile](double x, double p) { return std::polar(1.0, -q * p * x / 2.0) * profile(x); };
  return [q, profile](double x, double p) { return std::polar(1.0, q * p * x / 2.0) * profile(p); };
}

/// Pointwise value of the limiting operator itself, applied to a callable
/// section: (1/sqrt2)(-i q d_p + x/2) at w = 0, (1/sqrt2)(d_x - i q p/2) at
/// w = infinity. Derivatives use an eighth-order stencil.
inline cplx limit_operator(LimitDirection dir, QuantumCharge charge,
                           const std::function<cplx(double, double)>& psi, double x, double p,
                           double h = 1e-3) {
  const double q = charge.sign();
  if (dir == LimitDirection::to_zero) {
    const cplx dp = derivative8([&](double s) { return psi(x, s); }, p, h);
    return (-I * q * dp + 0.5 * x * psi(x, p)) / sqrt2;
  }
  const cplx dx = derivative8([&](double s) { return psi(s, p); }, x, h);
  return (dx - I * q * 0.5 * p * psi(x, p)) / sqrt2;
}

/// Residual of the limiting section under the scaled Dolbeault form
/// dzbar (d_zbar + z/2w^2), sampled along `w_sequence`. Decreasing w probes
/// w -> 0 through w^2 times the dx component; increasing w probes
/// w -> infinity through w^-2 times the dp component (dzbar carries
/// i q w^2 dp / sqrt2).
inline LimitCheckReport polarization_limit_check(const std::vector<double>& w_sequence,
                                                 const LimitCheckOptions& opt = {}) {
  if (w_sequence.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two widths");
  bool up = true, down = true;
  for (std::size_t k = 1; k < w_sequence.size(); ++k) {
    up = up && w_sequence[k] > w_sequence[k - 1];
    down = down && w_sequence[k] < w_sequence[k - 1];
  }
  if (!up && !down) throw Error(ErrorKind::NonMonotone, "width sequence must be strictly monotone");
  for (double w : w_sequence)
    if (!(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "widths must be positive");

  LimitCheckReport report{down ? LimitDirection::to_zero : LimitDirection::to_infinity, w_sequence, {}, true};
  const auto psi = limit_section(report.direction, opt.charge, opt.profile);
  const GridSection section = sample_section(opt.grid, opt.charge, psi);
  for (double w : w_sequence) {
    const OscillatorParams params(1.0, 1.0 / (w * w));
    GridSection r = dolbeault_residual(section, params);
    const double factor = report.direction == LimitDirection::to_zero ? w * w / sqrt2 : 1.0 / sqrt2;
    for (cplx& v : r.values) v *= factor;
    report.residual.push_back(interior_norm(r));
  }
  for (std::size_t k = 1; k < report.residual.size(); ++k)
    report.strictly_decreasing = report.strictly_decreasing && report.residual[k] < report.residual[k - 1];
  return report;
}

}  // namespace bundleqm::polarizations
