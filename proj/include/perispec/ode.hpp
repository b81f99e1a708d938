#pragma once

#include <Eigen/Dense>

#include "perispec/fourier.hpp"
#include "perispec/operators.hpp"

namespace perispec {

struct SolveOptions {
  double condition_cap = 1e12;
  double residual_tol = 1e-10;  // relative to ||rhs||_2
  Exec exec = Exec::parallel;
};

/// Dense LU solve with partial pivoting. Throws SolverError when the
/// reciprocal-condition estimate of the factorization exceeds the cap or the
/// relative residual exceeds the tolerance.
Eigen::VectorXcd solve_checked(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& rhs, const SolveOptions& opts);

/// (L0 + P_N L1) u_N = P_N f   or   (L0 + I_N L1) u_N = I_N f,  u_N in ran P_N.
/// For collocation, f must carry enough modes for its grid samples to be
/// accurate; the samples are the exact (aliased) Laurent sums of f's window.
CoeffVec solve_ode(const DiffOpSpec& spec, const CoeffVec& f, const BandWindow& w, Discretization mode,
                   const SolveOptions& opts = {});

/// Diagonal division u_m = f_m / sigma(m), for operators whose variable
/// coefficients are all constant. Throws on a vanishing symbol.
CoeffVec exact_constant_solve(const DiffOpSpec& spec, const CoeffVec& f);

}  // namespace perispec
