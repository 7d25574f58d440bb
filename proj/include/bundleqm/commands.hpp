#pragma once

#include <cmath>
#include <filesystem>
#include <ostream>
#include <string>

#include "classical.hpp"
#include "config.hpp"
#include "core.hpp"
#include "io.hpp"
#include "oscillator.hpp"
#include "verify.hpp"

// Batch commands behind the CLI. Exit codes: 0 success, 1 failed
// verification, 2 bad arguments or configuration.
namespace bundleqm::commands {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

struct Context {
  config::RunConfig config;
  std::string run_id;  // empty: UTC stamp
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

namespace detail {

inline int usage(const Context& ctx, const std::string& msg) {
  if (ctx.err) *ctx.err << "error: " << msg << '\n';
  return exit_usage;
}

template <class Body>
int guarded(const Context& ctx, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return usage(ctx, e.what());
  }
}

}  // namespace detail

/// spectrum.json with [{E, n, q_l, q_v}] for both charges.
inline int cmd_spectrum(const Context& ctx, int n_max) {
  return detail::guarded(ctx, [&] {
    if (n_max < 0) return detail::usage(ctx, "--n-max must be non-negative");
    ctx.config.validate();
    const auto dir = config::run_directory(ctx.config, ctx.run_id);
    const auto path = dir / "spectrum.json";
    io::write_text(path, io::dump_json(io::spectrum_json(n_max, ctx.config.params())));
    if (ctx.out) *ctx.out << "wrote " << path.string() << '\n';
    return exit_ok;
  });
}

/// trajectory.csv (t,x,p,re_z,im_z); prints the winding number when the run
/// covers whole periods.
inline int cmd_simulate(const Context& ctx, cplx z0, int charge, double periods, long samples) {
  return detail::guarded(ctx, [&] {
    if (charge != 1 && charge != -1) return detail::usage(ctx, "--charge must be +1 or -1");
    if (samples < 2 || samples > 10000000) return detail::usage(ctx, "--samples must lie in [2, 1e7]");
    if (!(periods > 0.0) || !std::isfinite(periods)) return detail::usage(ctx, "--periods must be positive");
    if (z0 == cplx{}) return detail::usage(ctx, "z0 = 0 is the excluded fixed point of the flow");
    ctx.config.validate();
    const auto params = ctx.config.params();
    const classical::ClassicalState state{z0, QuantumCharge{charge}};
    const auto rows = classical::trajectory(state, params, periods, static_cast<int>(samples),
                                            ctx.config.convention);
    const auto dir = config::run_directory(ctx.config, ctx.run_id);
    const auto path = dir / "trajectory.csv";
    io::write_text(path, io::trajectory_csv(rows));
    if (ctx.out) {
      *ctx.out << "wrote " << path.string() << '\n';
      std::vector<cplx> zs;
      zs.reserve(rows.size());
      for (const auto& r : rows) zs.push_back(r.z);
      try {
        *ctx.out << "winding number: " << classical::winding_number(zs) << '\n';
      } catch (const Error& e) {
        *ctx.out << "winding number: undefined (" << e.what() << ")\n";
      }
    }
    return exit_ok;
  });
}

/// husimi.pgm (or husimi.csv) plus husimi.json with the value range and peak.
inline int cmd_husimi(const Context& ctx, int n, int charge, int resolution, bool ascii, bool csv) {
  return detail::guarded(ctx, [&] {
    if (n < 0) return detail::usage(ctx, "--n must be non-negative");
    if (charge != 1 && charge != -1) return detail::usage(ctx, "--charge must be +1 or -1");
    if (resolution < 16) return detail::usage(ctx, "--resolution must be at least 16");
    ctx.config.validate();
    // room for the ring |z'| = sqrt n plus the Gaussian tail
    const double half = std::ceil(std::sqrt(double(n)) + 4.0);
    const Axis axis{-half, half, static_cast<std::size_t>(resolution)};
    const auto field = oscillator::husimi(oscillator::eigenstate(std::size_t(n), QuantumCharge{charge}),
                                          Grid2D{axis, axis});
    const auto peak = oscillator::argmax(field);
    const auto dir = config::run_directory(ctx.config, ctx.run_id);
    const auto image = dir / (csv ? "husimi.csv" : "husimi.pgm");
    io::write_text(image, csv ? io::husimi_csv(field) : io::husimi_pgm(field, ascii));
    const double lo = *std::min_element(field.values.begin(), field.values.end());
    const io::json side{{"n", n},
                        {"charge", charge},
                        {"resolution", resolution},
                        {"extent", {{"re", {-half, half}}, {"im", {-half, half}}}},
                        {"min", lo},
                        {"max", peak.value},
                        {"argmax", {{"re", peak.z.real()}, {"im", peak.z.imag()}, {"abs2", std::norm(peak.z)}}},
                        {"format", csv ? "csv" : (ascii ? "P2" : "P5")}};
    io::write_text(dir / "husimi.json", io::dump_json(side));
    if (ctx.out)
      *ctx.out << "wrote " << image.string() << "\nmax Q = " << io::format_double(peak.value)
               << " at |z'|^2 = " << io::format_double(std::norm(peak.z)) << '\n';
    return exit_ok;
  });
}

/// Runs a suite; writes verify.json and prints one line per check.
inline int cmd_verify(const Context& ctx, const std::string& suite) {
  return detail::guarded(ctx, [&] {
    if (!verify::is_suite(suite)) return detail::usage(ctx, "unknown suite '" + suite + "'");
    ctx.config.validate();
    const auto report = verify::run(suite, ctx.config);
    if (ctx.out) verify::print(report, *ctx.out);
    const auto dir = config::run_directory(ctx.config, ctx.run_id);
    io::write_text(dir / "verify.json", io::dump_json(verify::to_json(report)));
    return report.ok() ? exit_ok : exit_failed;
  });
}

}  // namespace bundleqm::commands
