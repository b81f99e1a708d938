#pragma once

// Scalar Riemann-Hilbert problem on the unit circle:
//   phi^+ = phi^- g on |z| = 1,   phi(z) -> 1 as z -> infinity,
// with phi = 1 + C u. The density u solves C^+ u - (C^- u) g = g - 1.

#include <optional>
#include <span>
#include <vector>

#include "perispec/fourier.hpp"
#include "perispec/ode.hpp"
#include "perispec/operators.hpp"

namespace perispec {

struct RHSolution {
  CoeffVec u;
  BandWindow window;
};

enum class Side { plus, minus };

RHSolution solve_rhp(const JumpSpec& jump, const BandWindow& w, Discretization mode, const SolveOptions& opts = {});

/// phi(z) from truncated Laurent sums: 1 + sum_{j>=0} u_j z^j inside the
/// disk, 1 - sum_{j<0} u_j z^j outside. On |z| = 1 a side is required.
cd evaluate_phi(const RHSolution& sol, cd z, std::optional<Side> side = std::nullopt);
std::vector<cd> evaluate_phi(const RHSolution& sol, std::span<const cd> zs, std::optional<Side> side = std::nullopt,
                             Exec exec = Exec::parallel);

/// max_l |phi^+(z_l) - phi^-(z_l) g(z_l)| over the M-point grid on the circle.
double jump_residual(const RHSolution& sol, const JumpSpec& jump, long grid);

}  // namespace perispec
