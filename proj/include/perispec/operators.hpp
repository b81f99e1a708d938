#pragma once

// Dense matrix representations over ran P_N of the operators used by the
// solvers: differential symbols, multiplication (Toeplitz), the Cauchy
// projectors, the Fredholm regulator, the Hankel-type compact piece, and
// the finite-section / collocation discretizations built from them.
//
// Row and column index i of every matrix corresponds to mode i - N_minus.

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "perispec/fourier.hpp"
#include "perispec/kernels.hpp"

namespace perispec {

enum class Discretization { finite_section, collocation };

/// L u = sum_{j=q}^{k} c_j u^{(j)} + sum_{j=0}^{p} a_j(theta) u^{(j)}
///       `------- L0 -------'     `---------- L1 ----------'
struct DiffOpSpec {
  int k = 0;
  int q = 0;
  std::vector<cd> const_coeffs;     // c_q .. c_k
  std::vector<CoeffVec> var_coeffs;  // a_0 .. a_p; empty means L1 = 0
  double ell = 1.0;                  // declared regularity of the a_j

  /// Constant part from (order, coefficient) terms; q and k are inferred.
  static DiffOpSpec constant(std::vector<std::pair<int, cd>> terms, double ell = 1.0);

  int p() const { return static_cast<int>(var_coeffs.size()) - 1; }
  bool has_variable_part() const;

  /// sigma_0(m) = sum_j c_j (i m)^j.
  cd symbol(long m) const;
  /// sigma_0(m) plus the mode-0 part of every a_j times (i m)^j; equals the
  /// full symbol when every a_j is constant.
  cd constant_symbol(long m) const;

  bool is_pure_derivative() const;
  /// Real constant symbol and a formally self-adjoint L1.
  bool is_self_adjoint(double tol = 1e-12) const;

  /// Throws InvalidArgument unless q <= k, c_k != 0 and p < k.
  void validate() const;
};

struct JumpSpec {
  CoeffVec g;
  double min_modulus = 0.0;

  /// Certify min |g| on a uniform grid (default 16 x window, clamped to
  /// [256, 2^20]). Throws InvalidArgument when g vanishes on the grid.
  static JumpSpec certify(CoeffVec g, long grid = 0);
};

/// Winding number of g around 0 along the unit circle, from an M-point grid.
long winding_number(const CoeffVec& g, long grid);

struct OperatorMatrix {
  BandWindow window;
  Eigen::MatrixXcd entries;
  SobolevOrder dom{};
  SobolevOrder codom{};

  /// entries * P_N u, returned on the window.
  CoeffVec apply(const CoeffVec& u) const;
};

Eigen::VectorXcd to_vector(const CoeffVec& u, const BandWindow& w);
CoeffVec from_vector(const Eigen::VectorXcd& v, const BandWindow& w);

OperatorMatrix assemble_L0(const DiffOpSpec& spec, const BandWindow& w);

/// P_N M(h) P_N: entry (r, c) = h_{mode(r) - mode(c)}.
OperatorMatrix assemble_mult_toeplitz(const CoeffVec& h, const BandWindow& w, Exec exec = Exec::parallel);

/// I_N M(a) on ran P_N from the samples of a on the N-point grid; column m
/// is I_N(a e_m), computed by FFT.
Eigen::MatrixXcd interpolated_multiplier(std::span<const cd> samples, const BandWindow& w,
                                         Exec exec = Exec::parallel);

struct CauchyProjectors {
  OperatorMatrix plus;   // keeps modes j >= 0
  OperatorMatrix minus;  // plus - Id: -1 on modes j < 0
};
CauchyProjectors assemble_cauchy_projectors(const BandWindow& w);

/// Distance from z to {sigma_0(m) : m in Z}.
double symbol_distance(const DiffOpSpec& spec, cd z);

/// A point off the symbol set of L0; see operators.cpp for the rule.
cd choose_zeta(const DiffOpSpec& spec);

/// N = (L0 - zeta)^{-1}: diagonal 1/(sigma_0(m) - zeta).
OperatorMatrix assemble_regulator(const DiffOpSpec& spec, cd zeta, const BandWindow& w);

/// L0 + P_N L1 on ran P_N.
OperatorMatrix assemble_finite_section_ode(const DiffOpSpec& spec, const BandWindow& w,
                                           Exec exec = Exec::parallel);
/// L0 + I_N L1 on ran P_N.
OperatorMatrix assemble_collocation_ode(const DiffOpSpec& spec, const BandWindow& w,
                                        Exec exec = Exec::parallel);

/// Id - P_N M(g-1) C^-  or  Id - I_N M(g-1) C^-  on ran P_N.
OperatorMatrix assemble_sie(const JumpSpec& jump, const BandWindow& w, Discretization mode,
                            Exec exec = Exec::parallel);

/// Matrix of u -> C^+((C^- u) h): entry (row k >= 0, column -j, j >= 1) is -h_{j+k}.
OperatorMatrix assemble_hankel(const CoeffVec& h, const BandWindow& w);

/// ||W_t A W_s^{-1}||_2 with W_r = diag((1+|m|)^r): the H^s -> H^t norm.
double operator_norm_weighted(const OperatorMatrix& a, SobolevOrder s, SobolevOrder t);

}  // namespace perispec
