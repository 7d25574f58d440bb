#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "core.hpp"
#include "grid.hpp"

// Cone C/Z_n as the image of z -> z^n: roots, the induced metric, and
// Levi-Civita transport whose holonomy carries the curvature at the tip.
namespace bundleqm::orbifold {

struct ConeGeometry {
  int n = 1;

  explicit ConeGeometry(int degree) : n(degree) {
    if (degree < 1) throw Error(ErrorKind::InvalidArgument, "cone degree must be >= 1");
  }

  double cone_angle() const { return 2.0 * pi / n; }
  double defect_angle() const { return 2.0 * pi * (n - 1) / n; }
  /// Coefficient (n-1)/n of the connection term -((n-1)/n) dpsi/psi.
  double connection_coefficient() const { return static_cast<double>(n - 1) / n; }
};

inline cplx branched_cover(cplx z, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "cover degree must be >= 1");
  cplx r(1.0, 0.0);
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

/// arg in [0, 2pi).
inline double principal_angle(cplx z) {
  const double a = std::arg(z);
  return a < 0.0 ? a + 2.0 * pi : a;
}

/// Root on the branch-th sheet: |psi|^{1/n} exp(i (arg psi + 2 pi branch)/n).
inline cplx cover_inverse(cplx psi, int n, int branch) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "cover degree must be >= 1");
  if (branch < 0 || branch >= n)
    throw Error(ErrorKind::BranchOutOfRange, "branch must lie in [0, n)");
  if (psi == cplx{}) return {};
  return std::polar(std::pow(std::abs(psi), 1.0 / n), (principal_angle(psi) + 2.0 * pi * branch) / n);
}

/// ds^2 = c |dpsi|^2 = drho^2 + (rho^2/n^2) dphi_n^2, the pullback of
/// 2 dz dzbar through z = psi^{1/n}.
struct ConeMetric {
  double conformal_factor = 2.0;  // c = (2/n^2) |psi|^{2(1-n)/n}
  double rho = 0.0;               // sqrt2 |psi|^{1/n}
  double phi = 0.0;               // arg psi in [0, 2pi)
  double g_rho_rho = 1.0;
  double g_phi_phi = 0.0;  // rho^2 / n^2
};

inline ConeMetric cone_metric(cplx psi, int n, double tol = 1e-12) {
  const ConeGeometry cone(n);
  const double r = std::abs(psi);
  if (n >= 2 && r < tol) throw Error(ErrorKind::OriginSingular, "cone metric is singular at the tip");
  ConeMetric g;
  g.conformal_factor = 2.0 / (n * n) * std::pow(r, 2.0 * (1 - n) / n);
  g.rho = sqrt2 * std::pow(r, 1.0 / n);
  g.phi = r == 0.0 ? 0.0 : principal_angle(psi);
  g.g_phi_phi = g.rho * g.rho / (n * n);
  return g;
}

// ---------------------------------------------------------------------------
// Loops and transport.

namespace detail {

inline constexpr std::array<double, 8> gl_nodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                                0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> gl_weights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                                  0.2223810344533745, 0.1012285362903763};

// Distance from the origin to the segment [a, b].
inline double origin_distance(cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(a);
  const double t = std::clamp(-(std::conj(d) * a).real() / len2, 0.0, 1.0);
  return std::abs(a + t * d);
}

}  // namespace detail

/// Closed polygon given by its vertices; the last vertex repeats the first.
using Loop = std::vector<cplx>;

/// Checks closure and that no segment comes within tol * max|psi| of the tip.
inline void validate_loop(std::span<const cplx> loop, double tol = 1e-9) {
  if (loop.size() < 4) throw Error(ErrorKind::InvalidArgument, "loop needs at least 4 samples");
  double scale = 0.0;
  for (const cplx& v : loop) scale = std::max(scale, std::abs(v));
  if (std::abs(loop.back() - loop.front()) > tol * scale)
    throw Error(ErrorKind::OpenCurve, "loop endpoints differ");
  for (std::size_t k = 0; k + 1 < loop.size(); ++k)
    if (detail::origin_distance(loop[k], loop[k + 1]) < tol * scale)
      throw Error(ErrorKind::ZeroCrossing, "loop passes through the cone tip");
}

/// Contour integral of dpsi/psi along the polygon, 8-point Gauss-Legendre per
/// segment.
inline cplx log_derivative_integral(std::span<const cplx> loop) {
  cplx total{};
  for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
    const cplx a = loop[k];
    const cplx d = loop[k + 1] - a;
    cplx s{};
    for (std::size_t g = 0; g < detail::gl_nodes.size(); ++g)
      s += detail::gl_weights[g] / (a + 0.5 * (1.0 + detail::gl_nodes[g]) * d);
    total += 0.5 * d * s;
  }
  return total;
}

struct Transport {
  cplx vector;           // v0 carried once around the loop
  double holonomy = 0.0;  // rotation angle, not reduced
  double holonomy_mod = 0.0;  // same, in [0, 2pi)
};

/// Parallel transport of a tangent vector v0 (complex component along
/// d/dpsi) for the connection d - ((n-1)/n) dpsi/psi. The result is
/// v0 exp(((n-1)/n) * contour integral of dpsi/psi): a pure rotation by the
/// defect 2 pi (n-1)/n per turn around the tip and trivial otherwise.
inline Transport levi_civita_transport(std::span<const cplx> loop, int n, cplx v0 = 1.0, double tol = 1e-9) {
  const ConeGeometry cone(n);
  validate_loop(loop, tol);
  const cplx phase = cone.connection_coefficient() * log_derivative_integral(loop);
  Transport t;
  t.vector = v0 * std::exp(phase);
  t.holonomy = phase.imag();
  t.holonomy_mod = std::fmod(t.holonomy, 2.0 * pi);
  if (t.holonomy_mod < 0.0) t.holonomy_mod += 2.0 * pi;
  // a loop around the tip gives exactly 2 pi k; report 0 instead of 2 pi - eps
  if (2.0 * pi - t.holonomy_mod < 1e-12) t.holonomy_mod = 0.0;
  return t;
}

inline Transport levi_civita_transport(const Loop& loop, int n, cplx v0 = 1.0, double tol = 1e-9) {
  return levi_civita_transport(std::span<const cplx>(loop), n, v0, tol);
}

/// `samples` distinct points counterclockwise plus the repeated first point.
inline Loop circle_loop(cplx center, double radius, std::size_t samples) {
  if (samples < 3 || !(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "bad circle");
  Loop out(samples + 1);
  for (std::size_t k = 0; k < samples; ++k) out[k] = center + std::polar(radius, 2.0 * pi * k / samples);
  out[samples] = out[0];
  return out;
}

inline Loop ellipse_loop(cplx center, double a, double b, std::size_t samples, double tilt = 0.0) {
  if (samples < 3 || !(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::InvalidArgument, "bad ellipse");
  const cplx rot = std::polar(1.0, tilt);
  Loop out(samples + 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = 2.0 * pi * k / samples;
    out[k] = center + rot * cplx(a * std::cos(t), b * std::sin(t));
  }
  out[samples] = out[0];
  return out;
}

/// Axis-aligned square of side 2 half_side, `per_side` samples per edge.
inline Loop square_loop(cplx center, double half_side, std::size_t per_side) {
  if (per_side < 1 || !(half_side > 0.0)) throw Error(ErrorKind::InvalidArgument, "bad square");
  const std::array<cplx, 5> corners{cplx(half_side, -half_side), cplx(half_side, half_side),
                                    cplx(-half_side, half_side), cplx(-half_side, -half_side),
                                    cplx(half_side, -half_side)};
  Loop out;
  out.reserve(4 * per_side + 1);
  for (int e = 0; e < 4; ++e)
    for (std::size_t k = 0; k < per_side; ++k)
      out.push_back(center + corners[e] + (corners[e + 1] - corners[e]) * (double(k) / per_side));
  out.push_back(out.front());
  return out;
}

// ---------------------------------------------------------------------------
// Curve lengths, upstairs and on the cone.

using Curve = std::function<cplx(double)>;

namespace detail {

template <class Speed>
double composite_gl(Speed&& speed, double t0, double t1, std::size_t panels) {
  const double h = (t1 - t0) / panels;
  double total = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = t0 + (k + 0.5) * h;
    for (std::size_t g = 0; g < gl_nodes.size(); ++g) total += gl_weights[g] * speed(mid + 0.5 * h * gl_nodes[g]);
  }
  return 0.5 * h * total;
}

}  // namespace detail

/// Length of z(t), t in [t0, t1], in the metric 2 dz dzbar.
inline double flat_length(const Curve& z, double t0, double t1, std::size_t panels = 64, double h = 1e-3) {
  return detail::composite_gl(
      [&](double t) { return sqrt2 * std::abs(derivative8(z, t, h)); }, t0, t1, panels);
}

/// Length of psi(t) in the cone metric; the curve must avoid the tip.
inline double cone_length(const Curve& psi, int n, double t0, double t1, std::size_t panels = 64,
                          double h = 1e-3) {
  return detail::composite_gl(
      [&](double t) {
        return std::sqrt(cone_metric(psi(t), n).conformal_factor) * std::abs(derivative8(psi, t, h));
      },
      t0, t1, panels);
}

}  // namespace bundleqm::orbifold
