#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"

// Classical oscillator on the phase plane (R^2, dp ^ dx): energies, flows,
// charge-dependent trajectories, winding numbers and the U(1) moment map.
namespace bundleqm::classical {

struct OscillatorParams {
  double m = 1.0;
  double omega = 1.0;

  OscillatorParams() = default;
  OscillatorParams(double mass, double frequency) : m(mass), omega(frequency) { validate(); }

  void validate() const {
    if (!(m > 0.0) || !std::isfinite(m))
      throw Error(ErrorKind::InvalidArgument, "mass must be positive");
    if (!(omega > 0.0) || !std::isfinite(omega))
      throw Error(ErrorKind::InvalidArgument, "frequency must be positive");
  }

  /// Squared oscillator length w^2 = 1/(m omega), hbar = 1.
  double w2() const { return 1.0 / (m * omega); }
  double w() const { return std::sqrt(w2()); }
  double period() const { return 2.0 * pi / omega; }
};

/// Point (x, p) of phase space with its complex views
/// z_+ = (x - i w^2 p)/sqrt2 and z_- = conj(z_+).
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;

  cplx z_plus(double w2) const { return cplx(x, -w2 * p) / sqrt2; }
  cplx z_minus(double w2) const { return cplx(x, w2 * p) / sqrt2; }

  /// z in the coordinate of the given charge: z_+ for particles, z_- otherwise.
  cplx z(QuantumCharge charge, double w2) const {
    return charge.q_v >= 0 ? z_plus(w2) : z_minus(w2);
  }

  static PhasePoint from_z_plus(cplx z, double w2) {
    return {sqrt2 * z.real(), -sqrt2 * z.imag() / w2};
  }
  static PhasePoint from_z_minus(cplx z, double w2) {
    return {sqrt2 * z.real(), sqrt2 * z.imag() / w2};
  }
  static PhasePoint from_z(cplx z, QuantumCharge charge, double w2) {
    return charge.q_v >= 0 ? from_z_plus(z, w2) : from_z_minus(z, w2);
  }
};

struct TangentVector {
  double dx = 0.0;
  double dp = 0.0;
};

/// Initial datum of one oscillator. Particle and antiparticle data are stored
/// independently; nothing ties an antiparticle amplitude to a particle's.
struct ClassicalState {
  cplx z0{};
  QuantumCharge charge = QuantumCharge::particle();
};

/// J = [[0, -s], [s, 0]] acting on (x1, x2) = (x, -w^2 p); s = -1 is the
/// conjugate structure used by antiparticles.
struct ComplexStructure {
  int sign = 1;

  using Matrix = std::array<std::array<double, 2>, 2>;

  Matrix matrix() const {
    const double s = sign;
    return {{{0.0, -s}, {s, 0.0}}};
  }

  Matrix squared() const {
    const Matrix a = matrix();
    Matrix out{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) out[i][j] += a[i][k] * a[k][j];
    return out;
  }

  ComplexStructure flipped() const { return {-sign}; }
};

inline double hamiltonian_energy(const PhasePoint& pt, const OscillatorParams& params) {
  return pt.p * pt.p / (2.0 * params.m) + params.m * params.omega * params.omega * pt.x * pt.x / 2.0;
}

inline TangentVector hamiltonian_vector_field(const PhasePoint& pt, const OscillatorParams& params) {
  return {pt.p / params.m, -params.m * params.omega * params.omega * pt.x};
}

/// Rotation generator w^2 p d_x - (x / w^2) d_p; the Hamiltonian field is
/// omega times this.
inline TangentVector rotation_generator(const PhasePoint& pt, const OscillatorParams& params) {
  const double w2 = params.w2();
  return {w2 * pt.p, -pt.x / w2};
}

/// Exact flow: e^{+i omega t} z0 for particles, e^{-i omega t} z0 for
/// antiparticles (both flipped under the physical convention).
inline cplx evolve_classical(const ClassicalState& state, double t, const OscillatorParams& params,
                             FrequencyConvention conv = FrequencyConvention::mathematical) {
  require_unit_charge(state.charge);
  const double phase = frequency_sign(state.charge, conv) * params.omega * t;
  return std::polar(1.0, phase) * state.z0;
}

struct WindingTolerances {
  /// Closure and zero-avoidance thresholds, relative to max |sample|.
  double closure = 1e-9;
  double zero = 1e-9;
};

/// Integer winding of a closed, sampled curve around the origin, by phase
/// unwrapping. Consecutive samples must turn by less than pi.
inline long winding_number(std::span<const cplx> samples, WindingTolerances tol = {}) {
  if (samples.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  double scale = 0.0;
  for (const cplx& s : samples) scale = std::max(scale, std::abs(s));
  if (scale == 0.0) throw Error(ErrorKind::ZeroCrossing, "curve sits at the origin");
  for (const cplx& s : samples)
    if (std::abs(s) < tol.zero * scale)
      throw Error(ErrorKind::ZeroCrossing, "curve passes through the origin");
  if (std::abs(samples.front() - samples.back()) > tol.closure * scale)
    throw Error(ErrorKind::OpenCurve, "first and last samples differ");

  double total = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double step = std::arg(samples[i] / samples[i - 1]);
    if (std::abs(step) >= pi - 1e-12)
      throw Error(ErrorKind::Undersampled,
                  "angular step of " + std::to_string(step) + " rad at sample " + std::to_string(i));
    total += step;
  }
  return std::lround(total / (2.0 * pi));
}

inline long winding_number(const std::vector<cplx>& samples, WindingTolerances tol = {}) {
  return winding_number(std::span<const cplx>(samples), tol);
}

inline double moment_map(cplx z) { return std::norm(z); }

struct Reduction {
  cplx reduced_point;
  std::vector<cplx> level_circle;
};

/// Quotient of the level set mu^{-1}(|z0|^2) by U(1): the class is labelled
/// by z0 itself; the returned circle is the orbit it collapses.
inline Reduction symplectic_reduce(cplx z0, int n_samples) {
  if (z0 == cplx{}) throw Error(ErrorKind::ZeroPoint, "the origin is excluded from the phase space");
  if (n_samples < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 circle samples");
  Reduction out{z0, {}};
  out.level_circle.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k)
    out.level_circle.push_back(z0 * std::polar(1.0, 2.0 * pi * k / n_samples));
  return out;
}

struct KahlerMetric {
  double g_xx = 1.0;
  double g_pp = 1.0;
};

/// Rescaled Kahler metric dx^2 + w^4 dp^2 (= 2 dz dzbar).
inline KahlerMetric kahler_metric(const OscillatorParams& params) {
  const double w2 = params.w2();
  return {1.0, w2 * w2};
}

/// g_ab = omega_ac J^c_b in the coordinates (x1, x2) = (x, -w^2 p), before the
/// w^2 rescaling.
inline ComplexStructure::Matrix kahler_from_structures(const OscillatorParams& params) {
  const double w2 = params.w2();
  // dp ^ dx = (1/w^2) dx1 ^ dx2
  const ComplexStructure::Matrix symplectic{{{0.0, 1.0 / w2}, {-1.0 / w2, 0.0}}};
  const auto j = ComplexStructure{1}.matrix();
  ComplexStructure::Matrix g{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) g[a][b] += symplectic[a][c] * j[c][b];
  return g;
}

struct TrajectorySample {
  double t;
  PhasePoint point;
  cplx z;
};

/// Samples the exact trajectory at `samples` equally spaced times covering
/// `periods` classical periods, endpoints included.
inline std::vector<TrajectorySample> trajectory(const ClassicalState& state,
                                                const OscillatorParams& params, double periods,
                                                int samples,
                                                FrequencyConvention conv = FrequencyConvention::mathematical) {
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  if (!(periods >= 0.0)) throw Error(ErrorKind::InvalidArgument, "periods must be non-negative");
  const double t_end = periods * params.period();
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(samples));
  const double w2 = params.w2();
  for (int k = 0; k < samples; ++k) {
    const double t = t_end * k / (samples - 1);
    const cplx z = evolve_classical(state, t, params, conv);
    out.push_back({t, PhasePoint::from_z(z, state.charge, w2), z});
  }
  return out;
}

}  // namespace bundleqm::classical

namespace bundleqm {
using classical::OscillatorParams;
}  // namespace bundleqm
