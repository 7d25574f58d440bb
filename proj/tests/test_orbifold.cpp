#include <catch_amalgamated.hpp>

#include "bundleqm/classical.hpp"
#include "bundleqm/orbifold.hpp"
#include "support/oracles.hpp"

using namespace bundleqm;
using namespace bundleqm::orbifold;
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

}  // namespace

TEST_CASE("cone geometry", "[orbifold]") {
  CHECK_THAT(ConeGeometry(3).cone_angle(), WithinRel(2 * pi / 3, 1e-15));
  CHECK_THAT(ConeGeometry(3).defect_angle(), WithinRel(4 * pi / 3, 1e-15));
  CHECK(ConeGeometry(1).defect_angle() == 0.0);
  CHECK(kind_of([] { ConeGeometry(0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("branched cover examples", "[orbifold]") {
  CHECK(branched_cover(cplx(0, 1), 2) == cplx(-1, 0));
  CHECK(branched_cover(cplx(2, 0), 3) == cplx(8, 0));
  CHECK(branched_cover(cplx(0.7, -0.2), 1) == cplx(0.7, -0.2));
  // the n roots of unity collapse to one fiber point
  for (int n : {2, 3, 5})
    for (int k = 0; k < n; ++k) CHECK(std::abs(branched_cover(std::polar(1.3, 2 * pi * k / n), n) - std::pow(1.3, n)) < 1e-13);
}

TEST_CASE("cover inverse", "[orbifold]") {
  CHECK(std::abs(cover_inverse(cplx(-1, 0), 2, 0) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(cover_inverse(cplx(-1, 0), 2, 1) - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(cover_inverse(cplx(8, 0), 3, 0) - cplx(2, 0)) < 1e-14);
  CHECK(cover_inverse(cplx(0, 0), 4, 3) == cplx(0, 0));
  CHECK(kind_of([] { cover_inverse(cplx(1, 0), 3, 3); }) == ErrorKind::BranchOutOfRange);
  CHECK(kind_of([] { cover_inverse(cplx(1, 0), 3, -1); }) == ErrorKind::BranchOutOfRange);
}

TEST_CASE("cover inverse round trip and distinct sheets", "[orbifold][property]") {
  for (int n : {1, 2, 3, 6})
    for (cplx psi : {cplx(0.3, 0.4), cplx(-2, 1e-3), cplx(-1, -1), cplx(5, 0)}) {
      std::vector<cplx> roots;
      for (int b = 0; b < n; ++b) {
        const cplx z = cover_inverse(psi, n, b);
        CHECK(std::abs(branched_cover(z, n) - psi) < 1e-12 * std::abs(psi));
        roots.push_back(z);
      }
      for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b) CHECK(std::abs(roots[a] - roots[b]) > 1e-6);
    }
}

TEST_CASE("cone metric examples", "[orbifold]") {
  const auto g1 = cone_metric(cplx(0.4, -0.3), 1);
  CHECK(g1.conformal_factor == 2.0);
  CHECK_THAT(g1.rho, WithinRel(sqrt2 * 0.5, 1e-15));
  CHECK_THAT(cone_metric(cplx(1, 0), 2).conformal_factor, WithinRel(0.5, 1e-15));
  CHECK_THAT(cone_metric(cplx(1, 0), 4).conformal_factor, WithinRel(0.125, 1e-15));
  const auto g = cone_metric(cplx(0, -8), 3);
  CHECK_THAT(g.rho, WithinRel(2 * sqrt2, 1e-14));
  CHECK_THAT(g.phi, WithinRel(1.5 * pi, 1e-15));
  CHECK_THAT(g.g_phi_phi, WithinRel(8.0 / 9.0, 1e-14));
  CHECK(kind_of([] { cone_metric(cplx(0, 0), 2); }) == ErrorKind::OriginSingular);
  CHECK(kind_of([] { cone_metric(cplx(1e-14, 0), 3); }) == ErrorKind::OriginSingular);
  CHECK_NOTHROW(cone_metric(cplx(0, 0), 1));
}

TEST_CASE("cone metric is the pullback of the flat metric", "[orbifold][property]") {
  // a curve upstairs and its image must have equal length
  for (int n : {2, 3, 5}) {
    const Curve up = [](double t) { return cplx(1.0 + 0.3 * std::cos(t), 0.2 + t) * std::polar(1.0, 0.1 * t); };
    const Curve down = [&](double t) { return branched_cover(up(t), n); };
    CHECK_THAT(cone_length(down, n, 0.0, 1.5), WithinRel(flat_length(up, 0.0, 1.5), 1e-9));
  }
}

TEST_CASE("circumference ratio of a circle around the tip", "[orbifold][property]") {
  for (int n : {2, 3, 4}) {
    const double r = 1.7;
    const Curve circle = [&](double t) { return std::polar(r, t); };
    const auto g = cone_metric(cplx(r, 0), n);
    const double length = cone_length(circle, n, 0.0, 2 * pi);
    // circumference / radial distance equals the cone angle 2 pi / n
    CHECK_THAT(length / g.rho, WithinRel(ConeGeometry(n).cone_angle(), 1e-10));
  }
}

TEST_CASE("holonomy examples", "[orbifold]") {
  const auto c = circle_loop(0.0, 1.0, 512);
  CHECK(std::abs(levi_civita_transport(c, 1).holonomy) < 1e-12);
  CHECK_THAT(levi_civita_transport(c, 2).holonomy, WithinAbs(pi, 1e-5));
  CHECK_THAT(levi_civita_transport(c, 3).holonomy, WithinAbs(4 * pi / 3, 1e-5));
  const auto off = circle_loop(cplx(3, 0), 1.0, 512);
  CHECK(std::abs(levi_civita_transport(off, 4).holonomy) < 1e-8);
  const auto t = levi_civita_transport(c, 2, cplx(0, 2));
  CHECK(std::abs(t.vector - cplx(0, -2)) < 1e-5);
  CHECK_THAT(t.holonomy_mod, WithinAbs(pi, 1e-5));
}

TEST_CASE("holonomy matches the exact polygon oracle", "[orbifold][property]") {
  const std::vector<Loop> loops{circle_loop(cplx(0.2, -0.1), 1.0, 64), square_loop(0.0, 2.0, 3),
                                ellipse_loop(cplx(0.1, 0.1), 3.0, 0.5, 200, 0.4), circle_loop(cplx(2, 2), 0.5, 32)};
  for (const auto& loop : loops)
    for (int n : {1, 2, 3, 5, 8}) CHECK_THAT(levi_civita_transport(loop, n).holonomy, WithinAbs(oracle::cone_holonomy(loop, n), 1e-12));
}

TEST_CASE("holonomy equals the enclosed curvature on any enclosing loop", "[orbifold][property]") {
  for (int n : {1, 2, 3, 5}) {
    const double defect = 2 * pi * (n - 1) / n;
    for (const auto& loop : {circle_loop(0.0, 0.5, 4096), square_loop(cplx(0.3, 0.1), 1.0, 8),
                             ellipse_loop(0.0, 2.0, 0.3, 4096, 1.1)})
      CHECK_THAT(levi_civita_transport(loop, n).holonomy, WithinAbs(defect, 1e-5));
    // clockwise reverses the rotation
    auto rev = circle_loop(0.0, 0.5, 4096);
    std::reverse(rev.begin(), rev.end());
    CHECK_THAT(levi_civita_transport(rev, n).holonomy, WithinAbs(-defect, 1e-5));
  }
}

TEST_CASE("transport is an isometry", "[orbifold][property]") {
  for (int n : {2, 3, 7})
    for (cplx v0 : {cplx(1, 0), cplx(0.3, -2)}) {
      const auto t = levi_civita_transport(ellipse_loop(cplx(0.5, 0), 2.0, 1.0, 300, 0.2), n, v0);
      CHECK_THAT(std::abs(t.vector), WithinRel(std::abs(v0), 1e-8));
    }
}

TEST_CASE("holonomy counts turns like the winding number", "[orbifold][property]") {
  Loop twice;
  for (int k = 0; k <= 2048; ++k) twice.push_back(std::polar(1.0, 4 * pi * k / 2048));
  const long wn = classical::winding_number(twice);
  CHECK(wn == 2);
  CHECK(wn == oracle::unwrap_winding(twice));
  CHECK_THAT(levi_civita_transport(twice, 3).holonomy, WithinAbs(wn * 4 * pi / 3, 1e-5));
  CHECK(levi_civita_transport(twice, 3).holonomy_mod < 2 * pi);
}

TEST_CASE("loop validation", "[orbifold]") {
  Loop open{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  CHECK(kind_of([&] { levi_civita_transport(open, 2); }) == ErrorKind::OpenCurve);
  Loop through{cplx(-1, 0), cplx(1, 0), cplx(1, 1), cplx(-1, 1), cplx(-1, 0)};
  CHECK(kind_of([&] { levi_civita_transport(through, 2); }) == ErrorKind::ZeroCrossing);
  Loop vertex{cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 0)};
  CHECK(kind_of([&] { levi_civita_transport(vertex, 2); }) == ErrorKind::ZeroCrossing);
  CHECK(kind_of([] { circle_loop(0.0, -1.0, 8); }) == ErrorKind::InvalidArgument);
}
