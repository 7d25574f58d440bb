#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "core.hpp"
#include "sections.hpp"

namespace bundleqm::quadrature {

/// Gauss-Hermite rule for the weight e^{-x^2}.
///
/// Nodes come from the eigenvalues of the symmetric Jacobi matrix
/// (Golub-Welsch); `weights` are sqrt(pi) times the squared first eigenvector
/// components. `scaled_weights` hold w_k e^{x_k^2}, which are needed to
/// integrate functions that already carry their own Gaussian decay; they are
/// evaluated from the Christoffel identity 1 / sum_j phi_j(x_k)^2 over
/// orthonormal Hermite functions, which stays accurate where w_k underflows.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  std::size_t order() const { return nodes.size(); }

  /// Sum of w_k f(x_k), approximating the integral of e^{-x^2} f(x).
  template <class F>
  auto integrate_weighted(F&& f) const {
    decltype(f(0.0)) sum{};
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(nodes[k]);
    return sum;
  }

  /// Sum of w_k e^{x_k^2} g(x_k), approximating the integral of g(x) when g
  /// decays like a Gaussian.
  template <class F>
  auto integrate(F&& g) const {
    decltype(g(0.0)) sum{};
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += scaled_weights[k] * g(nodes[k]);
    return sum;
  }
};

/// Orthonormal Hermite functions phi_0..phi_{count-1} at x (weight already
/// included, normalized in L^2(R, dx)).
inline std::vector<double> hermite_functions(double x, std::size_t count) {
  std::vector<double> phi(count);
  if (count == 0) return phi;
  phi[0] = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) phi[1] = sqrt2 * x * phi[0];
  for (std::size_t n = 1; n + 1 < count; ++n) {
    const double nd = static_cast<double>(n);
    phi[n + 1] = std::sqrt(2.0 / (nd + 1.0)) * x * phi[n] - std::sqrt(nd / (nd + 1.0)) * phi[n - 1];
  }
  return phi;
}

/// Hermite function of width w: h_n(x) = phi_n(x / w) / sqrt(w).
inline double hermite_function(std::size_t n, double x, double w = 1.0) {
  return hermite_functions(x / w, n + 1)[n] / std::sqrt(w);
}

inline GaussHermite gauss_hermite(std::size_t order) {
  if (order == 0) throw Error(ErrorKind::InvalidArgument, "quadrature order must be positive");
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 0; k + 1 < n; ++k) off[k] = std::sqrt(0.5 * static_cast<double>(k + 1));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidArgument, "Jacobi eigenproblem failed");

  GaussHermite rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  rule.scaled_weights.resize(order);
  const double scale = std::max(1.0, std::abs(solver.eigenvalues()[n - 1]));
  for (std::size_t k = 0; k < order; ++k) {
    const double a = solver.eigenvalues()[static_cast<Eigen::Index>(k)];
    const double b = solver.eigenvalues()[static_cast<Eigen::Index>(order - 1 - k)];
    if (std::abs(a + b) > 1e-14 * scale)
      throw Error(ErrorKind::InvalidArgument, "Gauss-Hermite nodes are not symmetric");
    rule.nodes[k] = 0.5 * (a - b);
  }
  for (std::size_t k = 0; k < order; ++k) {
    const double v0 = solver.eigenvectors()(0, static_cast<Eigen::Index>(k));
    const double v1 = solver.eigenvectors()(0, static_cast<Eigen::Index>(order - 1 - k));
    rule.weights[k] = std::sqrt(pi) * 0.5 * (v0 * v0 + v1 * v1);
    const auto phi = hermite_functions(rule.nodes[k], order);
    double s = 0.0;
    for (double v : phi) s += v * v;
    rule.scaled_weights[k] = 1.0 / s;
  }
  return rule;
}

/// Band-limited (Whittaker-Shannon) interpolation of uniformly sampled
/// values; zero outside the sampled interval.
inline cplx sinc_interpolate(const std::vector<cplx>& values, const Axis& axis, double x) {
  if (x < axis.min || x > axis.max) return {};
  const double u = (x - axis.min) / axis.step();
  const double nearest = std::round(u);
  if (std::abs(u - nearest) < 1e-13) return values[static_cast<std::size_t>(nearest)];
  // sin(pi (u - j)) = (-1)^(m - j) sin(pi f) with u = m + f
  const double m = std::floor(u);
  const double f = u - m;
  cplx sum{};
  double sign = std::fmod(m, 2.0) == 0.0 ? 1.0 : -1.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    sum += sign * values[j] / (u - static_cast<double>(j));
    sign = -sign;
  }
  return sum * std::sin(pi * f) / pi;
}

}  // namespace bundleqm::quadrature
