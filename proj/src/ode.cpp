#include "perispec/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "perispec/error.hpp"

namespace perispec {

Eigen::VectorXcd solve_checked(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& rhs, const SolveOptions& opts) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  // rcond() alone can miss exact singularity (a zero pivot yields a NaN
  // estimate that may come back as 1), so the pivot spread of U also counts.
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double pivot_min = pivots.size() ? pivots.minCoeff() : 1.0;
  const double pivot_ratio = pivot_min > 0.0 ? pivots.maxCoeff() / pivot_min : INFINITY;
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 && std::isfinite(pivot_ratio) ? std::max(1.0 / rcond, pivot_ratio) : INFINITY;
  if (!(cond <= opts.condition_cap)) {
    std::ostringstream msg;
    msg << "linear system is numerically singular: condition estimate " << cond << " exceeds cap "
        << opts.condition_cap << " (N = " << a.rows() << ")";
    throw SolverError(msg.str(), cond);
  }
  Eigen::VectorXcd x = lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  const double residual = (a * x - rhs).norm();
  if (!(residual <= opts.residual_tol * rhs_norm) && !(rhs_norm == 0.0 && residual == 0.0)) {
    std::ostringstream msg;
    msg << "solve residual " << residual << " exceeds " << opts.residual_tol << " * ||rhs|| = "
        << opts.residual_tol * rhs_norm << " (N = " << a.rows() << ", condition estimate " << cond << ")";
    throw SolverError(msg.str(), cond);
  }
  return x;
}

CoeffVec solve_ode(const DiffOpSpec& spec, const CoeffVec& f, const BandWindow& w, Discretization mode,
                   const SolveOptions& opts) {
  const bool fs = mode == Discretization::finite_section;
  const OperatorMatrix a = fs ? assemble_finite_section_ode(spec, w, opts.exec)
                              : assemble_collocation_ode(spec, w, opts.exec);
  const CoeffVec rhs = fs ? project(f, w) : interpolate_function(f, w.size());
  return from_vector(solve_checked(a.entries, to_vector(rhs, w), opts), w);
}

CoeffVec exact_constant_solve(const DiffOpSpec& spec, const CoeffVec& f) {
  spec.validate();
  for (const auto& a : spec.var_coeffs)
    for (long j = a.j_min(); j <= a.j_max(); ++j)
      if (j != 0 && a[j] != cd{})
        throw InvalidArgument("exact_constant_solve: variable coefficient has non-constant mode " + std::to_string(j));
  CoeffVec u = CoeffVec::zeros(f.j_min(), f.j_max());
  for (long m = f.j_min(); m <= f.j_max(); ++m) {
    const cd sigma = spec.constant_symbol(m);
    if (sigma == cd{}) throw InvalidArgument("exact_constant_solve: symbol vanishes at mode " + std::to_string(m));
    u.at(m) = f[m] / sigma;
  }
  return u;
}

}  // namespace perispec
