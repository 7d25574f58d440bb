#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "core.hpp"
#include "grid.hpp"
#include "sections.hpp"

// Prequantum gauge layer over the phase plane: the vacuum connection on L^+-,
// gauge automorphisms, covariant derivatives on sampled sections, the
// curvature/CCR check, canonical operators and the C^2 = L^+ (+) L^- split.
namespace bundleqm::bundles {

using ScalarField = std::function<double(double x, double p)>;

/// Real components (A_x, A_p) of a U(1) connection; the charge q_v enters
/// the covariant derivative as d + i q_v A.
struct GaugeConnection {
  ScalarField a_x;
  ScalarField a_p;
  std::string label = "vacuum";

  std::array<double, 2> operator()(double x, double p) const { return {a_x(x, p), a_p(x, p)}; }
};

/// Gauge parameter alpha(x, p) of the automorphism g = exp(alpha J), with its
/// partial derivatives.
struct GaugeFunction {
  ScalarField value;
  ScalarField d_x;
  ScalarField d_p;
  std::string label;

  static GaugeFunction identity() {
    auto zero = [](double, double) { return 0.0; };
    return {zero, zero, zero, "identity"};
  }

  /// alpha = -px/2: kills A_x, giving the coordinate representation.
  static GaugeFunction coordinate() {
    return {[](double x, double p) { return -0.5 * p * x; }, [](double, double p) { return -0.5 * p; },
            [](double x, double) { return -0.5 * x; }, "coordinate"};
  }

  /// alpha = +px/2: kills A_p, giving the momentum representation.
  static GaugeFunction momentum() {
    return {[](double x, double p) { return 0.5 * p * x; }, [](double, double p) { return 0.5 * p; },
            [](double x, double) { return 0.5 * x; }, "momentum"};
  }

  /// alpha = p x0: shifts A_p by x0, translating x-hat by -x0.
  static GaugeFunction translation(double x0) {
    return {[x0](double, double p) { return p * x0; }, [](double, double) { return 0.0; },
            [x0](double, double) { return x0; }, "translation"};
  }

  /// Partials by fourth-order central differences with step h.
  static GaugeFunction from_function(ScalarField f, double h, std::string label = "custom") {
    auto dx = [f, h](double x, double p) {
      return (-f(x + 2 * h, p) + 8 * f(x + h, p) - 8 * f(x - h, p) + f(x - 2 * h, p)) / (12 * h);
    };
    auto dp = [f, h](double x, double p) {
      return (-f(x, p + 2 * h) + 8 * f(x, p + h) - 8 * f(x, p - h) + f(x, p - 2 * h)) / (12 * h);
    };
    return {f, dx, dp, std::move(label)};
  }
};

/// Symmetric-gauge vacuum connection A = p dx / 2 - x dp / 2.
inline GaugeConnection vacuum_connection() {
  return {[](double, double p) { return 0.5 * p; }, [](double x, double) { return -0.5 * x; }, "vacuum"};
}

/// A -> A + d(alpha). Curvature is unchanged.
inline GaugeConnection gauge_transform(const GaugeConnection& conn, const GaugeFunction& alpha) {
  auto ax = conn.a_x;
  auto ap = conn.a_p;
  auto dx = alpha.d_x;
  auto dp = alpha.d_p;
  return {[ax, dx](double x, double p) { return ax(x, p) + dx(x, p); },
          [ap, dp](double x, double p) { return ap(x, p) + dp(x, p); },
          conn.label + "+d(" + alpha.label + ")"};
}

/// F_xp = d_x A_p - d_p A_x at a point (fourth-order differences, exact for
/// polynomial connections up to degree 4).
inline double field_strength(const GaugeConnection& conn, double x, double p, double h = 1e-3) {
  auto d = [h](auto&& f) {
    return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
  };
  const double dx_ap = d([&](double s) { return conn.a_p(x + s, p); });
  const double dp_ax = d([&](double s) { return conn.a_x(x, p + s); });
  return dx_ap - dp_ax;
}

/// The same section expressed after the automorphism g = exp(alpha J):
/// psi -> exp(-i q_v alpha) psi.
inline GridSection rephase(const GridSection& sec, const GaugeFunction& alpha) {
  GridSection out = sec;
  const double q = sec.charge.sign();
  for (std::size_t i = 0; i < sec.grid.x.n; ++i)
    for (std::size_t j = 0; j < sec.grid.p.n; ++j)
      out.at(i, j) *= std::polar(1.0, -q * alpha.value(sec.grid.x.at(i), sec.grid.p.at(j)));
  return out;
}

enum class Direction { x, p };

/// `central`: central difference of psi plus i q A psi.
/// `link`: central difference of neighbours parallel-transported along the
/// grid links; exactly gauge covariant on the lattice.
enum class Stencil { central, link };

namespace detail {

// Phase of exp(i q int_a^b A) along a straight link, 4-point Gauss-Legendre.
inline double link_integral(const std::function<double(double)>& a, double from, double to) {
  static constexpr std::array<double, 4> nodes{-0.8611363115940526, -0.3399810435848563,
                                               0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> weights{0.3478548451374538, 0.6521451548625461,
                                                 0.6521451548625461, 0.3478548451374538};
  const double half = 0.5 * (to - from);
  const double mid = 0.5 * (to + from);
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += weights[k] * a(mid + half * nodes[k]);
  return sum * half;
}

// Derivative along one line of samples; coord(i) gives the coordinate along
// the line and a(s) the connection component along it.
inline void covariant_line(const std::vector<cplx>& f, const Axis& axis,
                           const std::function<double(double)>& a, double q, Stencil stencil,
                           std::vector<cplx>& out) {
  const std::size_t n = f.size();
  const double h = axis.step();
  out.resize(n);
  if (stencil == Stencil::central) {
    out = differentiate(f, h);
    for (std::size_t i = 0; i < n; ++i) out[i] += I * q * a(axis.at(i)) * f[i];
    return;
  }
  auto transported = [&](std::size_t to, std::size_t from) {
    return std::polar(1.0, q * link_integral(a, axis.at(to), axis.at(from))) * f[from];
  };
  const double inv2h = 0.5 / h;
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = (transported(i, i + 1) - transported(i, i - 1)) * inv2h;
  out[0] = (-3.0 * f[0] + 4.0 * transported(0, 1) - transported(0, 2)) * inv2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * transported(n - 1, n - 2) + transported(n - 1, n - 3)) * inv2h;
}

}  // namespace detail

inline GridSection covariant_derivative(const GridSection& sec, Direction dir,
                                        const GaugeConnection& conn,
                                        Stencil stencil = Stencil::central) {
  sec.grid.validate();
  const Grid2D& g = sec.grid;
  const double q = sec.charge.sign();
  GridSection out{g, std::vector<cplx>(g.size()), sec.charge};
  std::vector<cplx> line, result;
  if (dir == Direction::x) {
    line.resize(g.x.n);
    for (std::size_t j = 0; j < g.p.n; ++j) {
      const double p = g.p.at(j);
      for (std::size_t i = 0; i < g.x.n; ++i) line[i] = sec.at(i, j);
      detail::covariant_line(line, g.x, [&](double x) { return conn.a_x(x, p); }, q, stencil, result);
      for (std::size_t i = 0; i < g.x.n; ++i) out.at(i, j) = result[i];
    }
  } else {
    line.resize(g.p.n);
    for (std::size_t i = 0; i < g.x.n; ++i) {
      const double x = g.x.at(i);
      for (std::size_t j = 0; j < g.p.n; ++j) line[j] = sec.at(i, j);
      detail::covariant_line(line, g.p, [&](double p) { return conn.a_p(x, p); }, q, stencil, result);
      for (std::size_t j = 0; j < g.p.n; ++j) out.at(i, j) = result[j];
    }
  }
  return out;
}

/// Interior-averaged ([nabla_x, nabla_p] psi) / psi; equals -i q_v + O(h^2)
/// for the vacuum connection in any gauge.
inline cplx curvature_numeric(const GaugeConnection& conn, const GridSection& probe,
                              Stencil stencil = Stencil::central, double zero_tol = 1e-12) {
  probe.grid.validate();
  const Grid2D& g = probe.grid;
  double scale = 0.0;
  for (const cplx& v : probe.values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 1; i + 1 < g.x.n; ++i)
    for (std::size_t j = 1; j + 1 < g.p.n; ++j)
      if (!(std::abs(probe.at(i, j)) > zero_tol * scale))
        throw Error(ErrorKind::DivisionNearZero, "probe vanishes inside the grid");

  const GridSection xp = covariant_derivative(covariant_derivative(probe, Direction::p, conn, stencil),
                                              Direction::x, conn, stencil);
  const GridSection px = covariant_derivative(covariant_derivative(probe, Direction::x, conn, stencil),
                                              Direction::p, conn, stencil);
  cplx sum{};
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < g.x.n; ++i)
    for (std::size_t j = 1; j + 1 < g.p.n; ++j) {
      sum += (xp.at(i, j) - px.at(i, j)) / probe.at(i, j);
      ++count;
    }
  return sum / static_cast<double>(count);
}

/// Extracts the line section of a grid section that is already polarized
/// (independent of p for coordinate, of x for momentum).
inline LineSection polarized_line(const GridSection& sec, Representation rep, double tol = 1e-10) {
  sec.validate();
  const Grid2D& g = sec.grid;
  double scale = 0.0;
  for (const cplx& v : sec.values) scale = std::max(scale, std::abs(v));
  const bool coord = rep == Representation::coordinate;
  const Axis& axis = coord ? g.x : g.p;
  LineSection out{rep, axis, std::vector<cplx>(axis.n), sec.charge};
  for (std::size_t i = 0; i < g.x.n; ++i)
    for (std::size_t j = 0; j < g.p.n; ++j) {
      const cplx ref = coord ? sec.at(i, 0) : sec.at(0, j);
      if (std::abs(sec.at(i, j) - ref) > tol * scale)
        throw Error(ErrorKind::WrongPolarization,
                    coord ? "section depends on p" : "section depends on x");
    }
  for (std::size_t k = 0; k < axis.n; ++k) out.values[k] = coord ? sec.at(k, 0) : sec.at(0, k);
  return out;
}

/// x-hat and p-hat acting on polarized line sections.
///   coordinate, either charge: x-hat = x - x0,        p-hat = -i d_x
///   momentum, charge q:         x-hat = i q d_p - x0,  p-hat = q p
class CanonicalOperators {
 public:
  CanonicalOperators(Representation rep, QuantumCharge charge, double shift = 0.0)
      : rep_(rep), charge_(charge), shift_(shift) {
    require_unit_charge(charge);
  }

  Representation representation() const { return rep_; }
  QuantumCharge charge() const { return charge_; }
  double shift() const { return shift_; }

  LineSection x_hat(const LineSection& sec) const {
    check(sec);
    LineSection out = sec;
    if (rep_ == Representation::coordinate) {
      for (std::size_t i = 0; i < sec.values.size(); ++i)
        out.values[i] = (sec.axis.at(i) - shift_) * sec.values[i];
    } else {
      const auto d = differentiate(sec.values, sec.step());
      for (std::size_t i = 0; i < sec.values.size(); ++i)
        out.values[i] = I * charge_.sign() * d[i] - shift_ * sec.values[i];
    }
    return out;
  }

  LineSection p_hat(const LineSection& sec) const {
    check(sec);
    LineSection out = sec;
    if (rep_ == Representation::coordinate) {
      const auto d = differentiate(sec.values, sec.step());
      for (std::size_t i = 0; i < sec.values.size(); ++i) out.values[i] = -I * d[i];
    } else {
      for (std::size_t i = 0; i < sec.values.size(); ++i)
        out.values[i] = charge_.sign() * sec.axis.at(i) * sec.values[i];
    }
    return out;
  }

  /// [p-hat, x-hat] psi; -i psi up to O(h^2) away from the two end samples.
  LineSection commutator(const LineSection& sec) const {
    LineSection px = p_hat(x_hat(sec));
    const LineSection xp = x_hat(p_hat(sec));
    for (std::size_t i = 0; i < px.values.size(); ++i) px.values[i] -= xp.values[i];
    return px;
  }

  CanonicalOperators translated(double x0) const { return {rep_, charge_, shift_ + x0}; }

 private:
  void check(const LineSection& sec) const {
    sec.validate();
    if (sec.rep != rep_)
      throw Error(ErrorKind::WrongPolarization, "section is polarized for the other representation");
    if (sec.charge != charge_)
      throw Error(ErrorKind::ChargeMismatch, "operator and section charges differ");
  }

  Representation rep_;
  QuantumCharge charge_;
  double shift_;
};

inline CanonicalOperators canonical_operators(Representation rep, QuantumCharge charge) {
  return {rep, charge};
}

/// Automorphism exp(p x0 J): x-hat -> x-hat - x0, p-hat unchanged.
inline CanonicalOperators translate_operator(const CanonicalOperators& ops, double x0) {
  return ops.translated(x0);
}

// ---------------------------------------------------------------------------
// C^2 = V^+ (+) V^- with orthonormal basis v+- = (1, -+i)/sqrt2.

using Fiber2 = std::array<cplx, 2>;

inline Fiber2 fiber_basis(QuantumCharge charge) {
  require_unit_charge(charge);
  return {cplx(1.0 / sqrt2, 0.0), cplx(0.0, -charge.sign() / sqrt2)};
}

inline cplx hermitian_product(const Fiber2& a, const Fiber2& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

template <class T>
struct DoubledSection {
  T plus;
  T minus;
};

inline DoubledSection<cplx> decompose(const Fiber2& psi) {
  return {(psi[0] + I * psi[1]) / sqrt2, (psi[0] - I * psi[1]) / sqrt2};
}

inline Fiber2 recompose(const DoubledSection<cplx>& d) {
  return {(d.plus + d.minus) / sqrt2, (-I * d.plus + I * d.minus) / sqrt2};
}

inline DoubledSection<std::vector<cplx>> decompose(const std::vector<cplx>& psi1,
                                                   const std::vector<cplx>& psi2) {
  if (psi1.size() != psi2.size())
    throw Error(ErrorKind::InvalidArgument, "component sizes differ");
  DoubledSection<std::vector<cplx>> out{std::vector<cplx>(psi1.size()), std::vector<cplx>(psi1.size())};
  for (std::size_t i = 0; i < psi1.size(); ++i) {
    const auto d = decompose(Fiber2{psi1[i], psi2[i]});
    out.plus[i] = d.plus;
    out.minus[i] = d.minus;
  }
  return out;
}

inline std::array<std::vector<cplx>, 2> recompose(const DoubledSection<std::vector<cplx>>& d) {
  if (d.plus.size() != d.minus.size())
    throw Error(ErrorKind::InvalidArgument, "component sizes differ");
  std::array<std::vector<cplx>, 2> out{std::vector<cplx>(d.plus.size()), std::vector<cplx>(d.plus.size())};
  for (std::size_t i = 0; i < d.plus.size(); ++i) {
    const auto v = recompose(DoubledSection<cplx>{d.plus[i], d.minus[i]});
    out[0][i] = v[0];
    out[1][i] = v[1];
  }
  return out;
}

/// U(1)_v acting on the fiber coordinates: psi+- -> e^{+-i theta} psi+-.
inline DoubledSection<cplx> rotate_fiber(const DoubledSection<cplx>& d, double theta) {
  return {std::polar(1.0, theta) * d.plus, std::polar(1.0, -theta) * d.minus};
}

/// Same action in matrix form, e^{theta J} on the C^2 column.
inline Fiber2 rotate_fiber(const Fiber2& psi, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * psi[0] - s * psi[1], s * psi[0] + c * psi[1]};
}

}  // namespace bundleqm::bundles
