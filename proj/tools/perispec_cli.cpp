// perispec_cli: run a convergence experiment from a JSON config.
//
//   perispec_cli solve-ode   --config ode.json
//   perispec_cli solve-rhp   --config rhp.json --output rhp.csv
//   perispec_cli spectrum    --config spec2.json
//   perispec_cli convergence --config any.json
//
// Exit status: 0 on success, 1 on solver or I/O failure, 2 on a bad config
// or command line.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "perispec/error.hpp"
#include "perispec/harness.hpp"

namespace {

enum class Family { any, ode, rhp, spectrum };

bool matches(Family f, perispec::Experiment e) {
  using perispec::Experiment;
  switch (f) {
    case Family::any:
      return true;
    case Family::ode:
      return e == Experiment::ode3;
    case Family::rhp:
      return e == Experiment::rhp;
    case Family::spectrum:
      return e == Experiment::spectrum2 || e == Experiment::spectrum3;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Galerkin convergence experiments for periodic ODEs, spectra and scalar RH problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  bool serial = false;
  struct Sub {
    const char* name;
    const char* help;
    Family family;
  };
  const Sub subs[] = {
      {"solve-ode", "third-order ODE experiment (ode3)", Family::ode},
      {"solve-rhp", "Riemann-Hilbert experiment (rhp)", Family::rhp},
      {"spectrum", "eigenvalue experiments (spectrum2, spectrum3)", Family::spectrum},
      {"convergence", "any experiment named by the config", Family::any},
  };
  Family chosen = Family::any;
  for (const auto& s : subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("-c,--config", config_path, "JSON experiment config")->required();
    cmd->add_option("-o,--output", output_path, "CSV output path (overrides output_path; '-' for stdout)");
    cmd->add_flag("--serial", serial, "use the serial kernels");
    cmd->callback([&chosen, f = s.family] { chosen = f; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  perispec::ExperimentConfig cfg;
  try {
    cfg = perispec::load_config(config_path);
  } catch (const perispec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (!matches(chosen, cfg.experiment)) {
    std::cerr << "config error: experiment '" << perispec::to_string(cfg.experiment)
              << "' does not belong to this subcommand\n";
    return 2;
  }
  if (!output_path.empty()) cfg.output_path = output_path == "-" ? std::string() : output_path;

  try {
    const auto report =
        perispec::run_experiment(cfg, serial ? perispec::Exec::serial : perispec::Exec::parallel);
    if (cfg.output_path.empty())
      std::cout << perispec::format_csv(report);
    else
      perispec::emit_csv(report, cfg.output_path);
  } catch (const perispec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
