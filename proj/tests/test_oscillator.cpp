#include <catch_amalgamated.hpp>

#include <random>

#include "bundleqm/oscillator.hpp"
#include "support/oracles.hpp"

using namespace bundleqm;
using namespace bundleqm::oscillator;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::InvalidArgument;
}

FockState random_state(std::mt19937& rng, std::size_t n, int q) {
  std::normal_distribution<double> n01;
  FockState s{std::vector<cplx>(n), QuantumCharge{q}, 1.0};
  for (cplx& c : s.coeffs) c = {n01(rng), n01(rng)};
  return s;
}

}  // namespace

TEST_CASE("Hamiltonian examples", "[oscillator]") {
  const auto h0 = hamiltonian_apply(eigenstate(0, QuantumCharge{1}), OscillatorParams(1, 1));
  CHECK(h0.coeffs[0] == cplx(0.5));
  const auto h3 = hamiltonian_apply(eigenstate(3, QuantumCharge{1}), OscillatorParams(1, 2));
  CHECK(h3.coeffs[3] == cplx(7.0));

  std::mt19937 rng(1);
  const OscillatorParams p(1, 1.3);
  const auto a = random_state(rng, 8, 1), b = random_state(rng, 8, 1);
  const cplx s(0.2, 1.1), t(-0.4, 0.3);
  FockState c = a;
  for (std::size_t k = 0; k < 8; ++k) c.coeffs[k] = s * a.coeffs[k] + t * b.coeffs[k];
  const auto ha = hamiltonian_apply(a, p), hb = hamiltonian_apply(b, p), hc = hamiltonian_apply(c, p);
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(hc.coeffs[k] - s * ha.coeffs[k] - t * hb.coeffs[k]) < 1e-13);
}

TEST_CASE("energy levels of both charges", "[oscillator]") {
  const OscillatorParams p(1, 1);
  const auto e0 = energy_level(0, QuantumCharge{1}, p);
  CHECK(e0.E == 0.5);
  const auto e5 = energy_level(5, QuantumCharge{1}, p);
  CHECK(e5.E == 5.5);
  const auto a5 = energy_level(5, QuantumCharge{-1}, p);
  CHECK(a5.E == 5.5);
  CHECK(a5.q_l == -5);
  CHECK(a5.q_v == -1);
  for (int n = 0; n < 40; ++n)
    CHECK(energy_level(n, QuantumCharge{1}, OscillatorParams(1, 2.7)).E ==
          energy_level(n, QuantumCharge{-1}, OscillatorParams(1, 2.7)).E);
}

TEST_CASE("eigenstates", "[oscillator]") {
  const auto e0 = eigenstate(0, QuantumCharge{1});
  REQUIRE(e0.coeffs.size() == 1);
  CHECK(e0.coeffs[0] == cplx(1.0));
  const OscillatorParams p(1, 1);
  const auto e5 = eigenstate(5, QuantumCharge{-1});
  CHECK(hamiltonian_apply(e5, p).coeffs[5] == cplx(5.5));
  CHECK(e5.norm2() == 1.0);
}

TEST_CASE("winding charges", "[oscillator]") {
  const auto p3 = winding_charges(eigenstate(3, QuantumCharge{1}));
  CHECK(p3.q_l == 3);
  CHECK(p3.q_v == 1);
  const auto m3 = winding_charges(eigenstate(3, QuantumCharge{-1}));
  CHECK(m3.q_l == -3);
  CHECK(m3.q_v == -1);
  for (int q : {1, -1}) {
    const auto v = winding_charges(eigenstate(0, QuantumCharge{q}));
    CHECK(v.q_l == 0);
    CHECK(v.q_v == q);
  }
  FockState mix{{cplx(0.6), cplx(0), cplx(0, 0.8)}, QuantumCharge{1}, 1.0};
  const auto w = winding_charges(mix);
  CHECK_FALSE(w.q_l.has_value());
  REQUIRE(w.occupancy.size() == 2);
  CHECK(w.occupancy[0].n == 0);
  CHECK_THAT(w.occupancy[0].weight, WithinAbs(0.36, 1e-15));
  CHECK(w.occupancy[1].n == 2);
  CHECK_THAT(w.occupancy[1].weight, WithinAbs(0.64, 1e-15));
}

TEST_CASE("Schroedinger evolution examples", "[oscillator]") {
  const OscillatorParams p(1, 1.5);
  for (std::size_t n : {0u, 1u, 4u}) {
    const auto out = evolve_schrodinger({eigenstate(n, QuantumCharge{1}), 0.0}, 2 * pi / p.omega, p);
    CHECK(std::abs(out.state.coeffs[n] + 1.0) < 1e-13);
    CHECK_THAT(out.t, WithinRel(2 * pi / p.omega, 1e-15));
  }
  std::mt19937 rng(2);
  const auto s = random_state(rng, 6, 1);
  CHECK(evolve_schrodinger({s, 0.0}, 0.0, p).state.coeffs == s.coeffs);

  // particle phase winds counterclockwise
  const auto q = evolve_schrodinger({eigenstate(0, QuantumCharge{1}), 0.0}, 0.1, p).state.coeffs[0];
  CHECK(q.imag() > 0.0);
  const auto qm = evolve_schrodinger({eigenstate(0, QuantumCharge{-1}), 0.0}, 0.1, p).state.coeffs[0];
  CHECK(qm.imag() < 0.0);
  const auto qphys =
      evolve_schrodinger({eigenstate(0, QuantumCharge{1}), 0.0}, 0.1, p, FrequencyConvention::physical).state.coeffs[0];
  CHECK(qphys.imag() < 0.0);
}

TEST_CASE("evolution mirrors under charge conjugation and preserves the norm", "[oscillator][property]") {
  const OscillatorParams p(0.8, 1.7);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto plus = random_state(rng, 9, 1);
    auto minus = plus;
    minus.charge = QuantumCharge{-1};
    for (cplx& c : minus.coeffs) c = std::conj(c);
    const double dt = 0.37 * trial - 1.0;
    const auto a = evolve_schrodinger({plus, 0.0}, dt, p).state;
    const auto b = evolve_schrodinger({minus, 0.0}, dt, p).state;
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) CHECK(std::abs(std::conj(a.coeffs[k]) - b.coeffs[k]) < 1e-14);
    CHECK_THAT(a.norm2(), WithinRel(plus.norm2(), 1e-14));
  }
}

TEST_CASE("doubled sections evolve componentwise without cross terms", "[oscillator][property]") {
  const OscillatorParams p(1, 1);
  std::mt19937 rng(4);
  auto plus = random_state(rng, 5, 1);
  auto minus = random_state(rng, 5, -1);
  const bundles::DoubledSection<FockState> d{plus, minus};
  const double total = d.plus.norm2() + d.minus.norm2();
  const bundles::DoubledSection<FockState> e{evolve_schrodinger({d.plus, 0.0}, 1.3, p).state,
                                             evolve_schrodinger({d.minus, 0.0}, 1.3, p).state};
  CHECK_THAT(e.plus.norm2() + e.minus.norm2(), WithinRel(total, 1e-14));
  // fiber norm |psi+ v+ + psi- v-|^2 = |psi+|^2 + |psi-|^2 at every point
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.0, 0.5)}) {
    const cplx a = polarizations::bargmann_function(e.plus, z);
    const cplx b = polarizations::bargmann_function(e.minus, std::conj(z));
    const auto vec = bundles::recompose(bundles::DoubledSection<cplx>{a, b});
    CHECK_THAT(std::norm(vec[0]) + std::norm(vec[1]), WithinRel(std::norm(a) + std::norm(b), 1e-13));
  }
}

TEST_CASE("coordinate-rep evolution matches a Crank-Nicolson oracle", "[oscillator][oracle]") {
  const OscillatorParams p(1, 1);
  const Axis axis = Axis::centered(10.0, 0.01);
  FockState s{{cplx(0.6), cplx(0, 0.48), cplx(0.64 * 0.6), cplx(-0.64 * 0.8)}, QuantumCharge{1}, 1.0};
  const double t = 1.0;
  const auto start = polarizations::inverse_bargmann(s, axis);
  const auto cn = oracle::crank_nicolson(start.values, axis.min, axis.step(), p.m, p.omega, t, 4000);
  const auto exact = polarizations::inverse_bargmann(evolve_schrodinger({s, 0.0}, t, p).state, axis);
  double d = 0.0;
  for (std::size_t i = 0; i < axis.n; ++i) d = std::max(d, std::abs(cn[i] - exact.values[i]));
  CHECK(d < 1e-4);
}

TEST_CASE("covariant Laplacian eigenvalues", "[oscillator]") {
  const OscillatorParams p(1, 1);
  const Grid2D g = Grid2D::square(6.0, 1e-2);
  const auto r0 = laplacian_consistency(0, p, g);
  CHECK_THAT(r0.eigenvalue, WithinAbs(-1.0, 1e-3));
  const auto r2 = laplacian_consistency(2, p, g);
  CHECK_THAT(r2.eigenvalue, WithinAbs(-5.0, 5e-3));
  CHECK_THAT(r2.energy, WithinAbs(2.5, 5e-3));
  const auto m2 = laplacian_consistency(2, p, g, QuantumCharge{-1});
  CHECK_THAT(m2.eigenvalue, WithinAbs(-5.0, 5e-3));
  // non-unit width: expected -(2/w^2)(n + 1/2), energy omega (n + 1/2)
  const OscillatorParams q(1, 2);
  const auto r1 = laplacian_consistency(1, q, Grid2D{{-6 * q.w(), 6 * q.w(), 849}, {-6 / q.w(), 6 / q.w(), 1201}});
  CHECK_THAT(r1.eigenvalue, WithinRel(-6.0, 1e-3));
  CHECK_THAT(r1.energy, WithinRel(3.0, 1e-3));
}

TEST_CASE("Laplacian check errors", "[oscillator]") {
  const OscillatorParams p(1, 1);
  CHECK(kind_of([&] { laplacian_consistency(0, p, Grid2D{{-3, 3, 4}, {-3, 3, 4}}); }) == ErrorKind::GridTooSmall);
  CHECK(kind_of([&] { laplacian_consistency(6, p, Grid2D::square(6.0, 0.5)); }) == ErrorKind::ResolutionInsufficient);
}

TEST_CASE("coordinate Hamiltonian spectrum", "[oscillator][property]") {
  const OscillatorParams p(1, 1);
  const auto ev = spectrum(hamiltonian_matrix(11, p));
  for (std::size_t n = 0; n < ev.size(); ++n) CHECK_THAT(ev[n], WithinAbs(n + 0.5, 1e-6));
}

TEST_CASE("Husimi examples", "[oscillator]") {
  CHECK_THAT(husimi_at(eigenstate(0, QuantumCharge{1}), 0.0), WithinAbs(1 / pi, 1e-15));
  CHECK(husimi_at(eigenstate(1, QuantumCharge{1}), 0.0) == 0.0);
  CHECK_THAT(husimi_at(eigenstate(1, QuantumCharge{1}), std::polar(1.0, 0.7)), WithinRel(1 / (pi * std::exp(1.0)), 1e-14));
  // oracle: r^2 e^{-r^2}/pi has its maximum at r = 1
  for (double r : {0.9, 0.99, 1.01, 1.1}) CHECK(husimi_at(eigenstate(1, QuantumCharge{1}), r) < 1 / (pi * std::exp(1.0)));
}

TEST_CASE("Husimi normalization, positivity and ring", "[oscillator][property]") {
  const Grid2D g = Grid2D::square(8.0, 0.02);
  for (std::size_t n = 0; n <= 10; ++n)
    for (int q : {1, -1}) {
      const auto f = husimi(eigenstate(n, QuantumCharge{q}), g);
      CHECK_THAT(integrate(f), WithinAbs(1.0, 1e-6));
      CHECK(*std::min_element(f.values.begin(), f.values.end()) >= 0.0);
      const auto peak = argmax(f);
      CHECK(std::abs(std::abs(peak.z) - std::sqrt(double(n))) <= sqrt2 * g.x.step());
      // Q_n = (|z'|^2)^n e^{-|z'|^2} / (pi n!) pointwise
      const double r2 = std::norm(peak.z);
      CHECK_THAT(peak.value, WithinRel(std::pow(r2, double(n)) * std::exp(-r2) / (pi * std::tgamma(n + 1.0)), 1e-12));
    }
}

TEST_CASE("Husimi of an antiparticle superposition is the mirror image", "[oscillator][property]") {
  FockState s{{cplx(0.5), cplx(0, 0.5), cplx(0.5, 0.5)}, QuantumCharge{1}, 1.0};
  FockState m = s;
  m.charge = QuantumCharge{-1};
  for (cplx z : {cplx(0.3, 0.8), cplx(-1.2, 0.1)}) CHECK_THAT(husimi_at(m, z), WithinRel(husimi_at(s, std::conj(z)), 1e-14));
}

TEST_CASE("charge density", "[oscillator]") {
  const Axis axis = Axis::centered(12.0, 0.01);
  const auto plus = charge_density(eigenstate(3, QuantumCharge{1}), axis);
  CHECK_THAT(plus.total, WithinAbs(1.0, 1e-6));
  const auto minus = charge_density(eigenstate(3, QuantumCharge{-1}), axis);
  CHECK_THAT(minus.total, WithinAbs(-1.0, 1e-6));
  for (std::size_t i = 0; i < axis.n; ++i) CHECK(minus.density[i] <= 0.0);

  // a state that vanishes on half the line contributes nothing there
  const auto half = sample_line(Representation::coordinate, axis, QuantumCharge{1}, [](double x) {
    return x <= 0.0 ? cplx(0.0) : cplx(2.0 * x * std::exp(-x * x) * std::pow(2.0 / pi, 0.25) * std::sqrt(2.0));
  });
  const auto d = charge_density(half, 1e-6);
  for (std::size_t i = 0; axis.at(i) <= 0.0; ++i) CHECK(d.density[i] == 0.0);
  CHECK_THAT(d.total, WithinAbs(1.0, 1e-6));

  FockState big{{cplx(1.0), cplx(1.0)}, QuantumCharge{1}, 1.0};
  CHECK(kind_of([&] { charge_density(big, axis); }) == ErrorKind::NotNormalized);
}
