#include "perispec/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <system_error>

#include "perispec/error.hpp"
#include "perispec/ode.hpp"
#include "perispec/rhp.hpp"
#include "perispec/spectrum.hpp"

namespace perispec {

namespace {

using nlohmann::json;

/// Coefficient window for the data of collocation runs: grid samples are
/// exact Laurent sums of this window, so it must reach far past every N.
constexpr long kCollocationSeriesWindow = (1L << 18) + 1;

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::vector<long> arithmetic(long first, long last, long step) {
  std::vector<long> out;
  for (long n = first; n <= last; n += step) out.push_back(n);
  return out;
}

/// Run f(N) for every N, in parallel when asked. Results come back in list
/// order; the first failure in list order is rethrown with its N.
template <class T, class F>
std::vector<T> sweep(const std::vector<long>& ns, Exec exec, F&& f) {
  const long count = static_cast<long>(ns.size());
  std::vector<T> results(count);
  std::vector<std::exception_ptr> failures(count);
  auto one = [&](long i) {
    try {
      results[i] = f(ns[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  if (exec == Exec::serial) {
    for (long i = 0; i < count; ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) one(i);
  }
  for (long i = 0; i < count; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const SolverError& e) {
      throw SolverError("N=" + std::to_string(ns[i]) + ": " + e.what(), e.condition_estimate());
    } catch (const std::exception& e) {
      throw SolverError("N=" + std::to_string(ns[i]) + ": " + e.what());
    }
  }
  return results;
}

CoeffVec reference_solve_failed(long n_ref, const std::exception& e) {
  throw SolverError("reference N=" + std::to_string(n_ref) + ": " + e.what());
}

void finish_fit(ConvergenceReport& report) {
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (!(row.error > 0.0))
      report.notes.push_back("excluded N=" + std::to_string(row.n) + " error=" + fmt(row.error) + " (not positive)");
    else if (row.error < kErrorFloor)
      report.notes.push_back("excluded N=" + std::to_string(row.n) + " error=" + fmt(row.error) +
                             " (below floor " + fmt(kErrorFloor) + ")");
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < report.rows.size(); ++i)
    if (report.rows[i].error >= kErrorFloor) usable.push_back(i);

  if (usable.size() >= 2) {
    const SlopeFit fit = fit_slope_detailed(report.rows, kErrorFloor);
    report.fitted_slope = fit.slope;
    report.fit_range = fit.used;
    return;
  }
  report.notes.push_back("slope undefined: fewer than two rows above the floor");
  if (usable.size() == 1 && usable.front() + 1 < report.rows.size()) {
    const auto& last = report.rows[usable.front()];
    const auto& next = report.rows[usable.front() + 1];
    const double bound = (std::log(kErrorFloor) - std::log(last.error)) /
                         (std::log(static_cast<double>(next.n)) - std::log(static_cast<double>(last.n)));
    report.slope_bound = bound;
    report.notes.push_back("slope_bound=" + fmt(bound) + " (error at N=" + std::to_string(next.n) +
                           " is below the floor, so the decay between N=" + std::to_string(last.n) +
                           " and N=" + std::to_string(next.n) + " is at least this steep)");
  }
}

ConvergenceReport run_ode3(const ExperimentConfig& cfg, Exec exec) {
  const bool colloc = cfg.mode == Discretization::collocation;
  const BandWindow coeff_window(colloc ? kCollocationSeriesWindow : 2 * cfg.n_ref + 1);
  const DiffOpSpec spec = third_order_ode_operator(cfg.alpha, cfg.t, coeff_window);
  const CoeffVec f = synth_powerlaw(PowerLaw::h, cfg.alpha, 0.0, coeff_window);

  CoeffVec reference;
  try {
    reference = solve_ode(spec, f, BandWindow(cfg.n_ref), cfg.mode, SolveOptions{.exec = exec});
  } catch (const std::exception& e) {
    reference_solve_failed(cfg.n_ref, e);
  }
  const SobolevOrder s{cfg.s};
  const auto errors = sweep<double>(cfg.n_list, exec, [&](long n) {
    const CoeffVec u = solve_ode(spec, f, BandWindow(n), cfg.mode, SolveOptions{.exec = Exec::serial});
    return diff_norm(reference, u, s);
  });

  ConvergenceReport report;
  report.experiment = cfg.experiment;
  report.predicted_slope = cfg.s - cfg.t - 3.0;
  for (std::size_t i = 0; i < errors.size(); ++i) report.rows.push_back({cfg.n_list[i], errors[i]});
  return report;
}

ConvergenceReport run_rhp(const ExperimentConfig& cfg, Exec exec) {
  const bool colloc = cfg.mode == Discretization::collocation;
  const BandWindow coeff_window(colloc ? kCollocationSeriesWindow : 2 * cfg.n_ref + 1);
  const JumpSpec jump = JumpSpec::certify(synth_powerlaw(PowerLaw::gg, cfg.alpha, cfg.epsilon, coeff_window));

  ConvergenceReport report;
  report.experiment = cfg.experiment;
  report.predicted_slope = cfg.s - cfg.t;
  if (const long wind = winding_number(jump.g, 16 * cfg.n_ref); wind != 0)
    report.notes.push_back("warning: g has winding number " + std::to_string(wind) +
                           "; the problem is not uniquely solvable in the assumed form");

  RHSolution reference{CoeffVec{}, BandWindow(cfg.n_ref)};
  try {
    reference = solve_rhp(jump, BandWindow(cfg.n_ref), cfg.mode, SolveOptions{.exec = exec});
  } catch (const std::exception& e) {
    reference_solve_failed(cfg.n_ref, e);
  }
  const SobolevOrder s{cfg.s};
  const auto errors = sweep<double>(cfg.n_list, exec, [&](long n) {
    const RHSolution sol = solve_rhp(jump, BandWindow(n), cfg.mode, SolveOptions{.exec = Exec::serial});
    return diff_norm(reference.u, sol.u, s);
  });
  for (std::size_t i = 0; i < errors.size(); ++i) report.rows.push_back({cfg.n_list[i], errors[i]});
  return report;
}

ConvergenceReport run_spectrum(const ExperimentConfig& cfg, Exec exec) {
  const BandWindow coeff_window(2 * cfg.n_ref + 1);
  const DiffOpSpec spec = cfg.experiment == Experiment::spectrum2
                              ? second_order_spectral_operator(cfg.alpha, cfg.epsilon, cfg.t, coeff_window)
                              : third_order_spectral_operator(cfg.alpha, cfg.epsilon, cfg.t, coeff_window);
  const EigenReport reference = [&] {
    try {
      return eigenvalues_self_adjoint(spec, BandWindow(cfg.n_ref), exec);
    } catch (const std::exception& e) {
      throw SolverError("reference N=" + std::to_string(cfg.n_ref) + ": " + e.what());
    }
  }();

  struct PerN {
    double max_d = 0.0;
    long within_cap = 0;
    std::vector<EigenDistance> distances;
  };
  const auto per_n = sweep<PerN>(cfg.n_list, exec, [&](long n) {
    PerN out;
    out.distances = eigen_distances(eigenvalues_self_adjoint(spec, BandWindow(n), Exec::serial), reference);
    for (const auto& e : out.distances) {
      if (std::abs(e.lambda) <= cfg.lambda_cap) {
        out.max_d = std::max(out.max_d, e.d);
        ++out.within_cap;
      }
    }
    return out;
  });

  ConvergenceReport report;
  report.experiment = cfg.experiment;
  report.predicted_slope = -cfg.t;
  for (std::size_t i = 0; i < per_n.size(); ++i) {
    const long n = cfg.n_list[i];
    report.rows.push_back({n, per_n[i].max_d});
    if (per_n[i].within_cap == 0)
      report.notes.push_back("N=" + std::to_string(n) + ": no eigenvalue with |lambda| <= " + fmt(cfg.lambda_cap));
    for (const auto& e : per_n[i].distances) report.eigen_rows.push_back({n, e.lambda, e.d, e.r});
  }
  report.notes.push_back("error(N) = max d_j over |lambda_j| <= " + fmt(cfg.lambda_cap) +
                         "; double precision limits d_j to about 1e-14 and rows below " + fmt(kErrorFloor) +
                         " are left out of the fit, so the asymptotic rates visible only in extended "
                         "precision are not reproduced");
  return report;
}

std::optional<Experiment> experiment_from(std::string_view name) {
  if (name == "ode3") return Experiment::ode3;
  if (name == "spectrum2") return Experiment::spectrum2;
  if (name == "spectrum3") return Experiment::spectrum3;
  if (name == "rhp") return Experiment::rhp;
  return std::nullopt;
}

double number_field(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

long integer_field(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<long>();
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::ode3:
      return "ode3";
    case Experiment::spectrum2:
      return "spectrum2";
    case Experiment::spectrum3:
      return "spectrum3";
    case Experiment::rhp:
      return "rhp";
  }
  return "?";
}

std::string_view to_string(Discretization d) {
  return d == Discretization::finite_section ? "finite_section" : "collocation";
}

// ---------------------------------------------------------------------------
// Operators of the published experiments

DiffOpSpec third_order_ode_operator(double alpha, double ell, const BandWindow& coeff_window) {
  DiffOpSpec spec = DiffOpSpec::constant({{3, -1.0}}, ell);
  spec.var_coeffs = {synth_powerlaw(PowerLaw::g, alpha, 0.0, coeff_window)};
  spec.validate();
  return spec;
}

DiffOpSpec second_order_spectral_operator(double alpha, double scale, double ell, const BandWindow& coeff_window) {
  DiffOpSpec spec = DiffOpSpec::constant({{2, -1.0}}, ell);
  spec.var_coeffs = {scale * synth_powerlaw(PowerLaw::g, alpha, 0.0, coeff_window)};
  spec.validate();
  return spec;
}

DiffOpSpec third_order_spectral_operator(double alpha, double scale, double ell, const BandWindow& coeff_window) {
  DiffOpSpec spec = DiffOpSpec::constant({{3, cd(0.0, -1.0)}}, ell);
  spec.var_coeffs = {scale * synth_powerlaw(PowerLaw::g, alpha, 0.0, coeff_window)};
  spec.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Configuration

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  switch (e) {
    case Experiment::ode3:
      cfg.alpha = 1.51;
      cfg.t = 1.0;
      cfg.s = 0.0;
      cfg.n_list = arithmetic(40, 400, 20);
      cfg.n_ref = 2001;
      break;
    case Experiment::rhp:
      cfg.alpha = 1.51;
      cfg.t = 1.0;
      cfg.s = 0.25;
      cfg.epsilon = 0.01;
      cfg.n_list = arithmetic(40, 400, 20);
      cfg.n_ref = 2000;
      break;
    case Experiment::spectrum2:
    case Experiment::spectrum3:
      cfg.alpha = 2.51;
      cfg.t = 2.0;
      cfg.s = 0.0;
      cfg.epsilon = 1.0;
      cfg.n_list = {41, 81, 161, 321};
      cfg.n_ref = 501;
      break;
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (!(alpha > 0.5)) throw ConfigError("alpha must exceed 1/2, got " + fmt(alpha));
  if (!std::isfinite(epsilon) || !std::isfinite(s) || !std::isfinite(t))
    throw ConfigError("epsilon, s and t must be finite");
  if (n_list.empty()) throw ConfigError("N_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw ConfigError("N_list entries must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigError("N_list must be strictly ascending");
  }
  if (n_ref <= n_list.back())
    throw ConfigError("N_ref (" + std::to_string(n_ref) + ") must exceed max(N_list) (" +
                      std::to_string(n_list.back()) + ")");
  if (!(lambda_cap > 0.0)) throw ConfigError("lambda_cap must be positive");
  const bool spectral = experiment == Experiment::spectrum2 || experiment == Experiment::spectrum3;
  if (spectral && mode != Discretization::finite_section)
    throw ConfigError("spectrum experiments use the finite-section matrix; mode must be finite_section");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const auto exp_it = doc.find("experiment");
  if (exp_it == doc.end() || !exp_it->is_string()) throw ConfigError("config needs a string 'experiment' key");
  const auto experiment = experiment_from(exp_it->get<std::string>());
  if (!experiment)
    throw ConfigError("unknown experiment '" + exp_it->get<std::string>() +
                      "' (expected ode3, spectrum2, spectrum3 or rhp)");

  ExperimentConfig cfg = ExperimentConfig::defaults(*experiment);
  for (const auto& [key, value] : doc.items()) {
    if (key == "experiment") {
      continue;
    } else if (key == "alpha") {
      cfg.alpha = number_field(value, key);
    } else if (key == "epsilon") {
      cfg.epsilon = number_field(value, key);
    } else if (key == "s") {
      cfg.s = number_field(value, key);
    } else if (key == "t") {
      cfg.t = number_field(value, key);
    } else if (key == "N_ref") {
      cfg.n_ref = integer_field(value, key);
    } else if (key == "lambda_cap") {
      cfg.lambda_cap = number_field(value, key);
    } else if (key == "N_list") {
      if (!value.is_array()) throw ConfigError("config key 'N_list' must be an array of integers");
      cfg.n_list.clear();
      for (const auto& n : value) cfg.n_list.push_back(integer_field(n, key));
    } else if (key == "mode") {
      if (!value.is_string()) throw ConfigError("config key 'mode' must be a string");
      const auto m = value.get<std::string>();
      if (m == "finite_section")
        cfg.mode = Discretization::finite_section;
      else if (m == "collocation")
        cfg.mode = Discretization::collocation;
      else
        throw ConfigError("unknown mode '" + m + "' (expected finite_section or collocation)");
    } else if (key == "output_path") {
      if (!value.is_string()) throw ConfigError("config key 'output_path' must be a string");
      cfg.output_path = value.get<std::string>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

// ---------------------------------------------------------------------------
// Fitting and running

SlopeFit fit_slope_detailed(std::span<const ConvergenceRow> rows, double floor) {
  SlopeFit fit;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].error > 0.0 && rows[i].error >= floor && rows[i].n > 0) fit.used.push_back(i);
  if (fit.used.size() < 2)
    throw InvalidArgument("fit_slope: need at least two rows with positive error, have " +
                          std::to_string(fit.used.size()));
  double mx = 0.0, my = 0.0;
  for (std::size_t i : fit.used) {
    mx += std::log(static_cast<double>(rows[i].n));
    my += std::log(rows[i].error);
  }
  mx /= static_cast<double>(fit.used.size());
  my /= static_cast<double>(fit.used.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i : fit.used) {
    const double dx = std::log(static_cast<double>(rows[i].n)) - mx;
    sxy += dx * (std::log(rows[i].error) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InvalidArgument("fit_slope: all usable rows share one N");
  fit.slope = sxy / sxx;
  return fit;
}

double fit_slope(std::span<const ConvergenceRow> rows, double floor) { return fit_slope_detailed(rows, floor).slope; }

ConvergenceReport run_experiment(const ExperimentConfig& cfg, Exec exec) {
  cfg.validate();
  ConvergenceReport report;
  switch (cfg.experiment) {
    case Experiment::ode3:
      report = run_ode3(cfg, exec);
      break;
    case Experiment::rhp:
      report = run_rhp(cfg, exec);
      break;
    case Experiment::spectrum2:
    case Experiment::spectrum3:
      report = run_spectrum(cfg, exec);
      break;
  }
  finish_fit(report);
  return report;
}

std::string format_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  const bool spectral = report.experiment == Experiment::spectrum2 || report.experiment == Experiment::spectrum3;
  if (spectral) {
    out << "N,lambda,d,r\n";
    for (const auto& row : report.eigen_rows)
      out << row.n << ',' << fmt(row.lambda) << ',' << fmt(row.d) << ',' << fmt(row.r) << '\n';
    for (const auto& row : report.rows) out << "# error N=" << row.n << " max_d=" << fmt(row.error) << '\n';
  } else {
    out << "N,error\n";
    for (const auto& row : report.rows) out << row.n << ',' << fmt(row.error) << '\n';
  }
  out << "# slope=" << (report.fitted_slope ? fmt(*report.fitted_slope) : std::string("undefined")) << '\n';
  for (const auto& note : report.notes) out << "# " << note << '\n';
  return out.str();
}

void emit_csv(const ConvergenceReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << format_csv(report);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace perispec
