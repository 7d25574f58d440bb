#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "bundles.hpp"
#include "classical.hpp"
#include "config.hpp"
#include "core.hpp"
#include "io.hpp"
#include "orbifold.hpp"
#include "oscillator.hpp"
#include "polarizations.hpp"
#include "sections.hpp"

// Invariant suites driven by `bundleqm verify`. Each check records what was
// measured against which tolerance; a suite passes iff all checks do.
namespace bundleqm::verify {

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct Report {
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  void add(std::string suite, std::string name, double measured, double tol) {
    checks.push_back({std::move(suite), std::move(name), measured, tol, std::isfinite(measured) && measured <= tol});
  }

  /// Equality checks, e.g. winding numbers: measured = |got - want|, tol 0.
  void add_exact(std::string suite, std::string name, double got, double want) {
    const double d = std::abs(got - want);
    checks.push_back({std::move(suite), std::move(name), d, 0.0, d == 0.0});
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ccr", "gauge", "spectrum", "bargmann", "husimi", "holonomy",
                                              "charge-mirror"};
  return names;
}

inline bool is_suite(const std::string& s) {
  return s == "all" || std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end();
}

namespace detail {

inline GridSection gaussian_probe(QuantumCharge q, double half = 4.0, double h = 1e-2) {
  return sample_section(Grid2D::square(half, h), q,
                        [](double x, double p) { return cplx(std::exp(-0.25 * (x * x + p * p)), 0.0); });
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace detail

inline void suite_ccr(const config::RunConfig& cfg, Report& r) {
  using bundles::canonical_operators;
  const double tol = cfg.tolerance("ccr", 1e-4);
  const Axis axis = Axis::centered(6.0, 1e-3);
  for (auto rep : {Representation::coordinate, Representation::momentum})
    for (int q : {1, -1}) {
      const QuantumCharge charge{q};
      const auto ops = canonical_operators(rep, charge);
      const LineSection psi = sample_line(rep, axis, charge, [](double s) { return cplx(std::exp(-0.5 * s * s), 0.0); });
      const LineSection c = ops.commutator(psi);
      double err = 0.0;
      for (std::size_t i = 2; i + 2 < axis.n; ++i) err = std::max(err, std::abs(c.values[i] + I * psi.values[i]));
      r.add("ccr", std::string(rep == Representation::coordinate ? "coordinate" : "momentum") +
                       (q > 0 ? " q=+1" : " q=-1") + " |[p,x]psi + i psi|",
            err, tol);
    }
  for (int q : {1, -1}) {
    const cplx c = bundles::curvature_numeric(bundles::vacuum_connection(), detail::gaussian_probe(QuantumCharge{q}));
    r.add("ccr", std::string("curvature q=") + (q > 0 ? "+1" : "-1") + " |F + i q|", std::abs(c + I * double(q)),
          cfg.tolerance("curvature", 1e-3));
  }
}

inline void suite_gauge(const config::RunConfig& cfg, Report& r) {
  using bundles::GaugeFunction;
  const double tol = cfg.tolerance("gauge", 1e-8);
  const auto vac = bundles::vacuum_connection();
  for (int q : {1, -1}) {
    const auto probe = detail::gaussian_probe(QuantumCharge{q});
    const std::string tag = q > 0 ? " q=+1" : " q=-1";

    // plain central differences, the three canonical gauges
    std::vector<cplx> c;
    for (const auto& a : {GaugeFunction::identity(), GaugeFunction::coordinate(), GaugeFunction::momentum()})
      c.push_back(bundles::curvature_numeric(bundles::gauge_transform(vac, a), probe));
    double spread = 0.0;
    for (const cplx& v : c) spread = std::max(spread, std::abs(v - c[0]));
    r.add("gauge", "central stencil spread over vacuum, -px/2, +px/2" + tag, spread, tol);

    // link stencil, five gauges with the probe rephased along
    const auto poly = GaugeFunction::from_function(
        [](double x, double p) { return 0.3 * x * x * p - 0.2 * p * p + 0.1 * x * p * p * p + 0.05 * x; }, 1e-3,
        "polynomial");
    c.clear();
    for (const auto& a : {GaugeFunction::identity(), GaugeFunction::coordinate(), GaugeFunction::momentum(),
                          GaugeFunction::translation(1.0), poly})
      c.push_back(bundles::curvature_numeric(bundles::gauge_transform(vac, a), bundles::rephase(probe, a),
                                             bundles::Stencil::link));
    spread = 0.0;
    for (const cplx& v : c) spread = std::max(spread, std::abs(v - c[0]));
    r.add("gauge", "link stencil spread over five gauges" + tag, spread, tol);
  }
}

inline void suite_spectrum(const config::RunConfig& cfg, Report& r) {
  const auto params = cfg.params();
  double fock = 0.0, degeneracy = 0.0;
  for (std::size_t n = 0; n <= 10; ++n) {
    for (int q : {1, -1}) {
      const auto s = oscillator::eigenstate(n, QuantumCharge{q}, params.w());
      const auto h = oscillator::hamiltonian_apply(s, params);
      fock = std::max(fock, std::abs(h.coeffs[n] - params.omega * (n + 0.5)));
    }
    degeneracy = std::max(degeneracy, std::abs(oscillator::energy_level(int(n), QuantumCharge{1}, params).E -
                                               oscillator::energy_level(int(n), QuantumCharge{-1}, params).E));
  }
  r.add_exact("spectrum", "Fock energies omega(n+1/2), n<=10, max error", fock, 0.0);
  r.add_exact("spectrum", "particle/antiparticle degeneracy, max |dE|", degeneracy, 0.0);
  oscillator::CoordinateBasisOptions opt;
  opt.axis = Axis::centered(12.0 * params.w(), 1e-4 * params.w());
  opt.quad_order = cfg.quadrature_order;
  const auto ev = oscillator::spectrum(oscillator::hamiltonian_matrix(11, params, opt));
  double err = 0.0;
  for (std::size_t n = 0; n < ev.size(); ++n) err = std::max(err, std::abs(ev[n] - params.omega * (n + 0.5)));
  r.add("spectrum", "coordinate Hamiltonian eigenvalues vs omega(n+1/2), n<=10", err / params.omega,
        cfg.tolerance("spectrum", 1e-6));
}

inline void suite_bargmann(const config::RunConfig& cfg, Report& r) {
  const auto params = cfg.params();
  const std::size_t N = 20;
  const std::size_t order = std::max<std::size_t>(cfg.quadrature_order, 2 * N + 2);
  const Axis axis = Axis::centered(12.0 * params.w(), 1e-2 * params.w());
  double off = 0.0, diag = 0.0, roundtrip = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    const LineSection h = oscillator::hermite_line(n, axis, params);
    const auto c = polarizations::bargmann_transform(h, N, order, params);
    for (std::size_t k = 0; k <= N; ++k)
      (k == n ? diag : off) = std::max(k == n ? diag : off, std::abs(c.coeffs[k] - (k == n ? 1.0 : 0.0)));
    const LineSection back = polarizations::inverse_bargmann(c, axis);
    roundtrip = std::max(roundtrip, std::abs(back.norm2() - c.norm2()));
  }
  r.add("bargmann", "h_n -> e_n, n<=20: max off-diagonal coefficient", off, cfg.tolerance("bargmann", 1e-10));
  r.add("bargmann", "h_n -> e_n, n<=20: max |c_n - 1|", diag, cfg.tolerance("bargmann", 1e-10));
  r.add("bargmann", "round-trip norm error", roundtrip, cfg.tolerance("unitarity", 1e-8));
}

inline void suite_husimi(const config::RunConfig& cfg, Report& r) {
  const double h = 0.02;
  const Grid2D grid = Grid2D::square(8.0, h);
  const auto q0 = oscillator::husimi_at(oscillator::eigenstate(0, QuantumCharge{1}), 0.0);
  r.add("husimi", "Q_0(0) - 1/pi", std::abs(q0 - 1.0 / pi), cfg.tolerance("husimi_origin", 1e-12));
  double norm = 0.0, ring = 0.0, negative = 0.0;
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto field = oscillator::husimi(oscillator::eigenstate(n, QuantumCharge{1}), grid);
    norm = std::max(norm, std::abs(oscillator::integrate(field) - 1.0));
    const auto peak = oscillator::argmax(field);
    ring = std::max(ring, std::abs(std::abs(peak.z) - std::sqrt(double(n))));
    negative = std::max(negative, -*std::min_element(field.values.begin(), field.values.end()));
  }
  r.add("husimi", "max |integral Q_n - 1|, n<=10", norm, cfg.tolerance("husimi_norm", 1e-6));
  r.add("husimi", "max ||argmax z'| - sqrt n|, within one cell diagonal", ring, sqrt2 * h);
  r.add("husimi", "positivity, -min Q", std::max(negative, 0.0), 0.0);
}

inline void suite_holonomy(const config::RunConfig& cfg, Report& r) {
  const double tol = cfg.tolerance("holonomy", 1e-5);
  const std::array<std::pair<const char*, orbifold::Loop>, 3> loops{
      {{"circle", orbifold::circle_loop(0.0, 1.0, 4096)},
       {"square", orbifold::square_loop(cplx(0.2, -0.1), 1.2, 1024)},
       {"ellipse", orbifold::ellipse_loop(cplx(0.3, 0.1), 1.5, 0.7, 4096, 0.4)}}};
  for (int n : {1, 2, 3, 5}) {
    const orbifold::ConeGeometry cone(n);
    for (const auto& [shape, loop] : loops) {
      const auto t = orbifold::levi_civita_transport(loop, n);
      r.add("holonomy", "n=" + std::to_string(n) + " " + shape + " |holonomy - 2pi(n-1)/n|",
            std::abs(t.holonomy - cone.defect_angle()), tol);
    }
    const auto away = orbifold::levi_civita_transport(orbifold::circle_loop(5.0, 1.0, 4096), n);
    r.add("holonomy", "n=" + std::to_string(n) + " loop not enclosing the tip |holonomy|", std::abs(away.holonomy),
          cfg.tolerance("holonomy_zero", 1e-8));
  }
}

inline void suite_charge_mirror(const config::RunConfig& cfg, Report& r) {
  const double tol = cfg.tolerance("mirror", 1e-12);
  const auto params = cfg.params();
  polarizations::FockState plus{{cplx(0.5, 0.1), cplx(-0.3, 0.4), cplx(0.2, -0.6), cplx(0.1, 0.25)},
                                QuantumCharge{1}, params.w()};
  polarizations::FockState minus = plus;
  minus.charge = QuantumCharge{-1};
  for (cplx& c : minus.coeffs) c = std::conj(c);

  // Schroedinger evolution
  const double dt = 0.731;
  const auto ep = oscillator::evolve_schrodinger({plus, 0.0}, dt, params, cfg.convention).state;
  const auto em = oscillator::evolve_schrodinger({minus, 0.0}, dt, params, cfg.convention).state;
  std::vector<cplx> conj_ep = ep.coeffs;
  for (cplx& c : conj_ep) c = std::conj(c);
  r.add("charge-mirror", "evolution: psi_-(conj c) vs conj psi_+(c)", detail::max_abs_diff(em.coeffs, conj_ep), tol);

  // classical flow
  double flow = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double t = 0.13 * k;
    const cplx z0(0.7, -1.1);
    const cplx a = classical::evolve_classical({z0, QuantumCharge{1}}, t, params, cfg.convention);
    const cplx b = classical::evolve_classical({std::conj(z0), QuantumCharge{-1}}, t, params, cfg.convention);
    flow = std::max(flow, std::abs(std::conj(a) - b));
  }
  r.add("charge-mirror", "classical flow: conj evolve(z0,+1) vs evolve(conj z0,-1)", flow, tol);

  // Husimi
  const Grid2D zgrid = Grid2D::square(4.0, 0.1);
  const auto qp = oscillator::husimi(plus, zgrid);
  const auto qm = oscillator::husimi(minus, zgrid);
  double hus = 0.0;
  for (std::size_t k = 0; k < qp.values.size(); ++k) hus = std::max(hus, std::abs(qp.values[k] - qm.values[k]));
  r.add("charge-mirror", "Husimi of conjugated antiparticle state", hus, tol);

  // Dolbeault residual on a sampled holomorphic section and its conjugate
  const Grid2D g = Grid2D::square(4.0, 0.05);
  const auto f = [](cplx z) { return cplx(0.3, 0.2) + z * z - cplx(0.0, 0.5) * z * z * z; };
  const auto sp = polarizations::holomorphic_section(g, params, QuantumCharge{1}, f);
  GridSection sm = sp;
  sm.charge = QuantumCharge{-1};
  for (cplx& v : sm.values) v = std::conj(v);
  auto rp = polarizations::dolbeault_residual(sp, params);
  const auto rm = polarizations::dolbeault_residual(sm, params);
  for (cplx& v : rp.values) v = std::conj(v);
  r.add("charge-mirror", "Dolbeault residual of conjugated section", detail::max_abs_diff(rp.values, rm.values), tol);

  // curvature
  auto probe = detail::gaussian_probe(QuantumCharge{1});
  for (std::size_t k = 0; k < probe.values.size(); ++k) probe.values[k] *= std::polar(1.0, 0.1 * double(k % 7));
  GridSection probe_m = probe;
  probe_m.charge = QuantumCharge{-1};
  for (cplx& v : probe_m.values) v = std::conj(v);
  const cplx cp = bundles::curvature_numeric(bundles::vacuum_connection(), probe);
  const cplx cm = bundles::curvature_numeric(bundles::vacuum_connection(), probe_m);
  r.add("charge-mirror", "curvature of conjugated probe", std::abs(std::conj(cp) - cm), tol);

  // charge totals
  const Axis axis = Axis::centered(12.0 * params.w(), 1e-2 * params.w());
  const double n2 = plus.norm2();
  polarizations::FockState up = plus, down = minus;
  for (cplx& c : up.coeffs) c /= std::sqrt(n2);
  for (cplx& c : down.coeffs) c /= std::sqrt(n2);
  const double tp = oscillator::charge_density(up, axis).total;
  const double tm = oscillator::charge_density(down, axis).total;
  r.add("charge-mirror", "charge totals +1 / -1", std::max(std::abs(tp - 1.0), std::abs(tm + 1.0)),
        cfg.tolerance("charge", 1e-6));
}

/// Runs one suite, or every suite for "all". Unknown names throw
/// InvalidArgument.
inline Report run(const std::string& suite, const config::RunConfig& cfg) {
  if (!is_suite(suite)) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  Report r;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("ccr")) suite_ccr(cfg, r);
  if (want("gauge")) suite_gauge(cfg, r);
  if (want("spectrum")) suite_spectrum(cfg, r);
  if (want("bargmann")) suite_bargmann(cfg, r);
  if (want("husimi")) suite_husimi(cfg, r);
  if (want("holonomy")) suite_holonomy(cfg, r);
  if (want("charge-mirror")) suite_charge_mirror(cfg, r);
  return r;
}

inline void print(const Report& r, std::ostream& os) {
  for (const Check& c : r.checks)
    os << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << "  measured=" << io::format_double(c.measured)
       << " tol=" << io::format_double(c.tolerance) << '\n';
  const auto failed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.passed; });
  os << r.checks.size() - failed << '/' << r.checks.size() << " checks passed\n";
}

inline io::json to_json(const Report& r) {
  io::json checks = io::json::array();
  for (const Check& c : r.checks)
    checks.push_back({{"suite", c.suite}, {"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  return {{"checks", checks}, {"passed", r.ok()}};
}

}  // namespace bundleqm::verify
