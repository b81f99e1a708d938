#include "perispec/rhp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "perispec/error.hpp"
#include "perispec/kernels.hpp"

namespace perispec {

namespace {

constexpr double kCircleTol = 8 * std::numeric_limits<double>::epsilon();

/// Modes >= 0 of u (zero function if there are none).
CoeffVec plus_part(const CoeffVec& u) { return u.j_max() >= 0 ? u.padded(0, u.j_max()) : CoeffVec{}; }
/// Modes < 0 of u.
CoeffVec minus_part(const CoeffVec& u) { return u.j_min() < 0 ? u.padded(u.j_min(), -1) : CoeffVec{}; }

Side side_of(cd z, std::optional<Side> side) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) <= kCircleTol) {
    if (!side) throw InvalidArgument("evaluate_phi: z lies on the unit circle; a boundary side is required");
    return *side;
  }
  const Side natural = r < 1.0 ? Side::plus : Side::minus;
  if (side && *side != natural) throw InvalidArgument("evaluate_phi: requested side contradicts |z|");
  return natural;
}

}  // namespace

RHSolution solve_rhp(const JumpSpec& jump, const BandWindow& w, Discretization mode, const SolveOptions& opts) {
  if (!(jump.min_modulus > 0.0)) throw InvalidArgument("solve_rhp: jump function must be bounded away from zero");
  const OperatorMatrix a = assemble_sie(jump, w, mode, opts.exec);
  const CoeffVec h = jump.g - CoeffVec{{0, 1.0}};
  const CoeffVec rhs = mode == Discretization::finite_section ? project(h, w) : interpolate_function(h, w.size());
  return {from_vector(solve_checked(a.entries, to_vector(rhs, w), opts), w), w};
}

cd evaluate_phi(const RHSolution& sol, cd z, std::optional<Side> side) {
  return evaluate_phi(sol, std::span<const cd>(&z, 1), side, Exec::serial).front();
}

std::vector<cd> evaluate_phi(const RHSolution& sol, std::span<const cd> zs, std::optional<Side> side, Exec exec) {
  std::vector<Side> sides;
  sides.reserve(zs.size());
  for (const cd& z : zs) sides.push_back(side_of(z, side));

  const CoeffVec up = plus_part(sol.u);
  const CoeffVec um = minus_part(sol.u);
  std::vector<cd> in(zs.size()), out(zs.size());
  kernels::laurent_sum(exec, up.coeffs(), up.j_min(), zs, in);
  kernels::laurent_sum(exec, um.coeffs(), um.j_min(), zs, out);

  std::vector<cd> phi(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) phi[i] = sides[i] == Side::plus ? 1.0 + in[i] : 1.0 - out[i];
  return phi;
}

double jump_residual(const RHSolution& sol, const JumpSpec& jump, long grid) {
  if (grid < sol.window.size())
    throw InvalidArgument("jump_residual: grid of " + std::to_string(grid) + " points is smaller than the window");
  const auto cp = evaluate_on_grid(plus_part(sol.u), grid);
  const auto cm = evaluate_on_grid(minus_part(sol.u), grid);
  const auto g = evaluate_on_grid(jump.g, grid);
  double worst = 0.0;
  for (long l = 0; l < grid; ++l) {
    const cd phi_plus = 1.0 + cp[l];
    const cd phi_minus = 1.0 - cm[l];
    worst = std::max(worst, std::abs(phi_plus - phi_minus * g[l]));
  }
  return worst;
}

}  // namespace perispec
