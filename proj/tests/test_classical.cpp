#include <catch_amalgamated.hpp>

#include <random>

#include "bundleqm/classical.hpp"
#include "support/oracles.hpp"

using namespace bundleqm;
using namespace bundleqm::classical;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<cplx> circle_samples(int k, int count) {
  std::vector<cplx> z(count);
  for (int i = 0; i < count; ++i) z[i] = std::polar(1.0, k * 2.0 * pi * i / (count - 1));
  z.back() = z.front();
  return z;
}

}  // namespace

TEST_CASE("phase point complex views", "[classical]") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 100; ++k) {
    const PhasePoint pt{u(rng), u(rng)};
    const double w2 = 0.37;
    CHECK(pt.z_minus(w2) == std::conj(pt.z_plus(w2)));
    const auto back = PhasePoint::from_z_plus(pt.z_plus(w2), w2);
    CHECK_THAT(back.x, WithinAbs(pt.x, 1e-14));
    CHECK_THAT(back.p, WithinAbs(pt.p, 1e-14));
    const auto back2 = PhasePoint::from_z_minus(pt.z_minus(w2), w2);
    CHECK_THAT(back2.p, WithinAbs(pt.p, 1e-14));
  }
}

TEST_CASE("oscillator parameters", "[classical]") {
  const OscillatorParams p(2.0, 3.0);
  CHECK(p.w2() * p.m * p.omega == 1.0);
  CHECK_THROWS_AS(OscillatorParams(0.0, 1.0), Error);
  CHECK_THROWS_AS(OscillatorParams(1.0, -1.0), Error);
}

TEST_CASE("hamiltonian energy examples", "[classical]") {
  const OscillatorParams unit(1, 1);
  CHECK(hamiltonian_energy({0, 0}, unit) == 0.0);
  CHECK(hamiltonian_energy({1, 1}, unit) == 1.0);
  // |z| = rho0 = w gives E = omega rho0^2 / w^2 = omega
  const OscillatorParams p(1, 2);
  const PhasePoint pt = PhasePoint::from_z_plus(std::polar(p.w(), 0.3), p.w2());
  CHECK_THAT(hamiltonian_energy(pt, p), WithinRel(2.0, 1e-14));
}

TEST_CASE("hamiltonian vector field examples", "[classical]") {
  const auto v = hamiltonian_vector_field({1, 0}, OscillatorParams(1, 1));
  CHECK(v.dx == 0.0);
  CHECK(v.dp == -1.0);
  const auto o = hamiltonian_vector_field({0, 0}, OscillatorParams(1, 1));
  CHECK(o.dx == 0.0);
  CHECK(o.dp == 0.0);

  // omega times the rotation generator at (1, 2), m=1, omega=3
  const OscillatorParams p(1, 3);
  const auto r = rotation_generator({1, 2}, p);
  const auto h = hamiltonian_vector_field({1, 2}, p);
  CHECK_THAT(p.omega * r.dx, WithinAbs(2.0, 1e-14));
  CHECK_THAT(p.omega * r.dp, WithinAbs(-9.0, 1e-14));
  CHECK_THAT(h.dx, WithinAbs(p.omega * r.dx, 1e-14));
  CHECK_THAT(h.dp, WithinAbs(p.omega * r.dp, 1e-14));
}

TEST_CASE("exact flow examples", "[classical]") {
  const OscillatorParams p(1, 1);
  const double t = pi / 2;
  const cplx a = evolve_classical({1.0, QuantumCharge{1}}, t, p);
  const cplx b = evolve_classical({1.0, QuantumCharge{-1}}, t, p);
  CHECK_THAT(std::abs(a - I), WithinAbs(0, 1e-15));
  CHECK_THAT(std::abs(b + I), WithinAbs(0, 1e-15));
  CHECK(evolve_classical({0.0, QuantumCharge{1}}, 3.7, p) == cplx{});
  // physical convention flips both
  const cplx c = evolve_classical({1.0, QuantumCharge{1}}, t, p, FrequencyConvention::physical);
  CHECK_THAT(std::abs(c + I), WithinAbs(0, 1e-15));
}

TEST_CASE("exact flow agrees with a leapfrog integration of Hamilton's equations", "[classical][oracle]") {
  const OscillatorParams p(1.5, 0.8);
  const PhasePoint start{0.7, -1.2};
  const cplx z0 = start.z_plus(p.w2());
  for (double t : {0.5, 2.0, 7.3}) {
    const auto [x, pp] = oracle::leapfrog(start.x, start.p, p.m, p.omega, t, 1000000);
    const auto exact = PhasePoint::from_z_plus(evolve_classical({z0, QuantumCharge{1}}, t, p), p.w2());
    CHECK_THAT(exact.x, WithinAbs(x, 1e-8));
    CHECK_THAT(exact.p, WithinAbs(pp, 1e-8));
  }
}

TEST_CASE("winding number examples", "[classical]") {
  CHECK(winding_number(circle_samples(1, 256)) == 1);
  CHECK(winding_number(circle_samples(-1, 256)) == -1);
  CHECK(winding_number(std::vector<cplx>(256, 1.0)) == 0);
  const auto three = circle_samples(3, 256);
  CHECK(winding_number(three) == 3);
  CHECK(oracle::unwrap_winding(three) == 3);
}

TEST_CASE("winding number errors", "[classical]") {
  auto expect = [](const std::vector<cplx>& z, ErrorKind kind) {
    try {
      winding_number(z);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
    }
  };
  auto z = circle_samples(1, 64);
  z[10] = 0.0;
  expect(z, ErrorKind::ZeroCrossing);
  // half-turn steps are ambiguous in direction
  expect(circle_samples(1, 3), ErrorKind::Undersampled);
  expect(circle_samples(2, 5), ErrorKind::Undersampled);
  auto open = circle_samples(1, 64);
  open.back() = std::polar(1.0, 0.1);
  expect(open, ErrorKind::OpenCurve);
}

TEST_CASE("moment map and reduction", "[classical]") {
  CHECK(moment_map(cplx(1, 1)) == 2.0);
  CHECK(moment_map(0.0) == 0.0);
  const OscillatorParams p(1, 1);
  for (int k = 0; k < 100; ++k) {
    const double t = p.period() * k / 100.0;
    CHECK_THAT(moment_map(evolve_classical({cplx(0, 2), QuantumCharge{1}}, t, p)), WithinAbs(4.0, 1e-13));
  }

  const auto r = symplectic_reduce(1.0, 4);
  CHECK(r.reduced_point == cplx(1.0));
  const std::array<cplx, 4> want{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (int k = 0; k < 4; ++k) CHECK_THAT(std::abs(r.level_circle[k] - want[k]), WithinAbs(0, 1e-15));

  for (const cplx& v : symplectic_reduce(std::polar(2.0, pi / 4), 50).level_circle)
    CHECK_THAT(moment_map(v), WithinAbs(4.0, 1e-13));

  try {
    symplectic_reduce(0.0, 4);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroPoint);
  }
}

TEST_CASE("Kahler metric", "[classical]") {
  const auto g1 = kahler_metric(OscillatorParams(1, 1));
  CHECK(g1.g_xx == 1.0);
  CHECK(g1.g_pp == 1.0);
  const auto g4 = kahler_metric(OscillatorParams(1, 4));
  CHECK_THAT(g4.g_pp, WithinAbs(1.0 / 16, 1e-16));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int k = 0; k < 20; ++k) {
    const OscillatorParams p(u(rng), u(rng));
    const auto g = kahler_metric(p);
    CHECK(g.g_xx > 0.0);
    CHECK(g.g_pp > 0.0);
    // omega_ac J^c_b is (1/w^2) times the identity in (x1, x2)
    const auto c = kahler_from_structures(p);
    CHECK_THAT(c[0][0], WithinRel(1.0 / p.w2(), 1e-14));
    CHECK_THAT(c[1][1], WithinRel(1.0 / p.w2(), 1e-14));
    CHECK(c[0][1] == 0.0);
    CHECK(c[1][0] == 0.0);
  }
}

TEST_CASE("energy conservation along the exact flow", "[classical][property]") {
  const OscillatorParams p(0.7, 2.3);
  for (int q : {1, -1}) {
    const ClassicalState s{cplx(0.4, -1.3), QuantumCharge{q}};
    const double e0 = hamiltonian_energy(PhasePoint::from_z(s.z0, s.charge, p.w2()), p);
    for (int k = 0; k < 200; ++k) {
      const cplx z = evolve_classical(s, 0.037 * k, p);
      CHECK_THAT(hamiltonian_energy(PhasePoint::from_z(z, s.charge, p.w2()), p), WithinRel(e0, 1e-12));
    }
  }
}

TEST_CASE("charge conjugation is time reversal", "[classical][property]") {
  const OscillatorParams p(1, 1.7);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 100; ++k) {
    const cplx z0(u(rng), u(rng));
    const double t = u(rng);
    const cplx a = std::conj(evolve_classical({z0, QuantumCharge{1}}, t, p));
    const cplx b = evolve_classical({std::conj(z0), QuantumCharge{-1}}, t, p);
    CHECK_THAT(std::abs(a - b), WithinAbs(0, 1e-12));
  }
}

TEST_CASE("trajectory winding equals periods times charge", "[classical][property]") {
  const OscillatorParams p(1, 2);
  for (int k : {1, 2, 3})
    for (int q : {1, -1}) {
      const auto rows = trajectory({cplx(1, 0.5), QuantumCharge{q}}, p, k, 64 * k + 1);
      std::vector<cplx> z;
      for (const auto& r : rows) z.push_back(r.z);
      CHECK(winding_number(z) == k * q);
      CHECK(oracle::unwrap_winding(z) == k * q);
    }
}

TEST_CASE("U(1) invariance of the moment map", "[classical][property]") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-pi, pi);
  const cplx z(1.3, -0.4);
  for (int k = 0; k < 100; ++k) CHECK_THAT(moment_map(std::polar(1.0, u(rng)) * z), WithinRel(moment_map(z), 1e-14));
}

TEST_CASE("complex structure squares to minus one", "[classical][property]") {
  for (int s : {1, -1}) {
    const ComplexStructure j{s};
    const auto sq = j.squared();
    CHECK(sq[0][0] == -1.0);
    CHECK(sq[1][1] == -1.0);
    CHECK(sq[0][1] == 0.0);
    CHECK(sq[1][0] == 0.0);
    const auto m = j.matrix();
    const auto f = j.flipped().matrix();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(f[a][b] == -m[a][b]);
  }
}
