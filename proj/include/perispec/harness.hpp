#pragma once

// Convergence experiments: configuration, the four reproduction pipelines,
// log-log slope fitting and CSV output.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perispec/kernels.hpp"
#include "perispec/operators.hpp"

namespace perispec {

enum class Experiment {
  ode3,       // -u''' + g u = h
  spectrum2,  // eigenvalues of -d^2 + g
  spectrum3,  // eigenvalues of -i d^3 + g
  rhp,        // phi^+ = phi^- g on the circle
};

std::string_view to_string(Experiment e);
std::string_view to_string(Discretization d);

/// Errors below this are treated as the double-precision floor and left out
/// of slope fits.
inline constexpr double kErrorFloor = 1e-12;

struct ExperimentConfig {
  Experiment experiment = Experiment::ode3;
  double alpha = 1.51;
  double epsilon = 0.0;  // rhp: jump amplitude; spectra: scale on g
  double s = 0.0;        // error norm H^s
  double t = 1.0;        // data regularity (ell for the spectra)
  std::vector<long> n_list;
  long n_ref = 0;
  Discretization mode = Discretization::finite_section;
  std::string output_path;  // empty: write to stdout
  double lambda_cap = 50.0;  // spectra: fit on |lambda| <= cap

  /// Published parameters for each experiment.
  static ExperimentConfig defaults(Experiment e);
  /// Throws ConfigError.
  void validate() const;
};

/// JSON object with the ExperimentConfig keys; omitted keys take the
/// experiment's defaults, unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ConvergenceRow {
  long n = 0;
  double error = 0.0;
};

struct EigenRow {
  long n = 0;
  double lambda = 0.0;
  double d = 0.0;
  double r = 0.0;
};

struct ConvergenceReport {
  Experiment experiment = Experiment::ode3;
  std::vector<ConvergenceRow> rows;     // ascending N
  std::optional<double> fitted_slope;   // empty when < 2 usable rows
  std::vector<std::size_t> fit_range;   // indices into rows used by the fit
  /// When the floor leaves fewer than two usable rows, the slope implied by
  /// the last usable error and the floor at the next N; the true slope is at
  /// most this value.
  std::optional<double> slope_bound;
  double predicted_slope = 0.0;
  std::vector<EigenRow> eigen_rows;  // spectrum experiments only
  std::vector<std::string> notes;    // exclusions, warnings, limitations
};

struct SlopeFit {
  double slope = 0.0;
  std::vector<std::size_t> used;
};

/// Least-squares slope of log(error) against log(N) over rows whose error is
/// positive and not below `floor`. Throws InvalidArgument with fewer than two.
SlopeFit fit_slope_detailed(std::span<const ConvergenceRow> rows, double floor = 0.0);
double fit_slope(std::span<const ConvergenceRow> rows, double floor = 0.0);

/// Deterministic for a given config. Solver failures are rethrown as
/// SolverError naming the failing N.
ConvergenceReport run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

/// CSV text: header, rows in ascending N, "# slope=<value>", then notes.
std::string format_csv(const ConvergenceReport& report);
void emit_csv(const ConvergenceReport& report, const std::filesystem::path& path);

/// Operators and data of the published experiments.
DiffOpSpec third_order_ode_operator(double alpha, double ell, const BandWindow& coeff_window);
DiffOpSpec second_order_spectral_operator(double alpha, double scale, double ell, const BandWindow& coeff_window);
DiffOpSpec third_order_spectral_operator(double alpha, double scale, double ell, const BandWindow& coeff_window);

}  // namespace perispec
