#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "bundleqm/commands.hpp"
#include "bundleqm/config.hpp"

using namespace bundleqm;

int main(int argc, char** argv) {
  CLI::App app{"Geometric quantization of the oscillator and anti-oscillator: batch runs and checks."};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_id;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--run-id", run_id, "name of the run subdirectory (default: UTC stamp)");

  int n_max = 10;
  auto* spectrum = app.add_subcommand("spectrum", "energy levels of both charges as JSON");
  spectrum->add_option("--n-max", n_max, "highest level")->capture_default_str();

  std::vector<double> z0{1.0, 0.0};
  int charge = 1;
  double periods = 1.0;
  long samples = 256;
  auto* simulate = app.add_subcommand("simulate", "classical trajectory as CSV, with its winding number");
  simulate->add_option("--z0", z0, "initial point: RE [IM]")->expected(1, 2)->capture_default_str();
  simulate->add_option("--charge", charge, "+1 particle, -1 antiparticle")->capture_default_str();
  simulate->add_option("--periods", periods, "duration in classical periods")->capture_default_str();
  simulate->add_option("--samples", samples, "number of time samples")->capture_default_str();

  int level = 0;
  int resolution = 129;
  bool ascii = false;
  bool csv = false;
  auto* husimi = app.add_subcommand("husimi", "Husimi Q-function of an eigenstate as PGM or CSV");
  husimi->add_option("--n", level, "Fock level")->capture_default_str();
  husimi->add_option("--charge", charge, "+1 particle, -1 antiparticle")->capture_default_str();
  husimi->add_option("--resolution", resolution, "pixels per side (>= 16)")->capture_default_str();
  husimi->add_flag("--ascii", ascii, "plain P2 instead of binary P5");
  husimi->add_flag("--csv", csv, "write re,im,q rows instead of an image");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "ccr, gauge, spectrum, bargmann, husimi, holonomy, charge-mirror or all")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : commands::exit_usage;
  }

  commands::Context ctx;
  ctx.run_id = run_id;
  ctx.out = &std::cout;
  ctx.err = &std::cerr;
  try {
    if (!config_path.empty()) ctx.config = config::load(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return commands::exit_usage;
  }

  if (spectrum->parsed()) return commands::cmd_spectrum(ctx, n_max);
  if (simulate->parsed())
    return commands::cmd_simulate(ctx, cplx(z0[0], z0.size() > 1 ? z0[1] : 0.0), charge, periods, samples);
  if (husimi->parsed()) return commands::cmd_husimi(ctx, level, charge, resolution, ascii, csv);
  return commands::cmd_verify(ctx, suite);
}
