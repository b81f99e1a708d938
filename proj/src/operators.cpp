#include "perispec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "perispec/error.hpp"
#include "perispec/fft.hpp"

namespace perispec {

namespace {

long floor_mod(long j, long n) {
  const long r = j % n;
  return r < 0 ? r + n : r;
}

/// (i m)^j, exact in double while |m|^j < 2^53.
cd ipow(long m, int j) {
  const cd im(0.0, static_cast<double>(m));
  cd out(1.0, 0.0);
  for (int e = 0; e < j; ++e) out *= im;
  return out;
}

Eigen::MatrixXcd diagonal_symbol(const DiffOpSpec& spec, const BandWindow& w) {
  Eigen::VectorXcd d(w.size());
  for (long i = 0; i < w.size(); ++i) d(i) = spec.symbol(w.mode_at(i));
  return d.asDiagonal();
}

Eigen::MatrixXcd identity(const BandWindow& w) { return Eigen::MatrixXcd::Identity(w.size(), w.size()); }

/// Multiply column of mode m by (i m)^j in place.
void scale_columns_by_derivative(Eigen::MatrixXcd& a, const BandWindow& w, int j) {
  if (j == 0) return;
  for (long c = 0; c < w.size(); ++c) a.col(c) *= ipow(w.mode_at(c), j);
}

CoeffVec minus_one(const CoeffVec& g) { return g - CoeffVec{{0, 1.0}}; }

}  // namespace

// ---------------------------------------------------------------------------
// DiffOpSpec

DiffOpSpec DiffOpSpec::constant(std::vector<std::pair<int, cd>> terms, double ell) {
  if (terms.empty()) throw InvalidArgument("DiffOpSpec::constant: no terms");
  int lo = terms.front().first;
  int hi = lo;
  for (const auto& [order, c] : terms) {
    if (order < 0) throw InvalidArgument("DiffOpSpec::constant: negative derivative order");
    lo = std::min(lo, order);
    hi = std::max(hi, order);
  }
  DiffOpSpec spec;
  spec.k = hi;
  spec.q = lo;
  spec.ell = ell;
  spec.const_coeffs.assign(hi - lo + 1, cd{});
  for (const auto& [order, c] : terms) spec.const_coeffs[order - lo] += c;
  spec.validate();
  return spec;
}

bool DiffOpSpec::has_variable_part() const {
  for (const auto& a : var_coeffs)
    for (const cd& c : a.coeffs())
      if (c != cd{}) return true;
  return false;
}

cd DiffOpSpec::symbol(long m) const {
  const cd im(0.0, static_cast<double>(m));
  cd power(1.0, 0.0);
  cd total{};
  for (int j = 0; j <= k; ++j) {
    if (j >= q) total += const_coeffs[j - q] * power;
    power *= im;
  }
  return total;
}

cd DiffOpSpec::constant_symbol(long m) const {
  cd total = symbol(m);
  for (int j = 0; j <= p(); ++j) total += var_coeffs[j][0] * ipow(m, j);
  return total;
}

bool DiffOpSpec::is_pure_derivative() const {
  if (has_variable_part() || const_coeffs.back() != cd(1.0)) return false;
  for (std::size_t j = 0; j + 1 < const_coeffs.size(); ++j)
    if (const_coeffs[j] != cd{}) return false;
  return true;
}

bool DiffOpSpec::is_self_adjoint(double tol) const {
  // c_j (i m)^j = c_j i^j m^j is real for every m iff each c_j i^j is real.
  for (int j = q; j <= k; ++j) {
    const cd c = const_coeffs[j - q] * ipow(1, j);
    if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c))) return false;
  }
  if (!has_variable_part()) return true;

  // Entry (r, c) of L1 is sum_j a_j[r-c] (i c)^j. Hermitian symmetry for a
  // fixed offset d = r - c is a polynomial identity of degree p in c, so
  // p + 1 sample columns decide it.
  long reach = 0;
  for (const auto& a : var_coeffs) reach = std::max({reach, std::labs(a.j_min()), std::labs(a.j_max())});
  for (long d = -reach; d <= reach; ++d) {
    for (long c = 0; c <= p(); ++c) {
      cd lhs{}, rhs{};
      for (int j = 0; j <= p(); ++j) {
        lhs += var_coeffs[j][d] * ipow(c, j);
        rhs += var_coeffs[j][-d] * ipow(c + d, j);
      }
      if (std::abs(lhs - std::conj(rhs)) > tol * std::max(1.0, std::abs(lhs))) return false;
    }
  }
  return true;
}

void DiffOpSpec::validate() const {
  if (k < 0 || q < 0 || q > k)
    throw InvalidArgument("DiffOpSpec: need 0 <= q <= k, got q=" + std::to_string(q) + " k=" + std::to_string(k));
  if (static_cast<int>(const_coeffs.size()) != k - q + 1)
    throw InvalidArgument("DiffOpSpec: expected " + std::to_string(k - q + 1) + " constant coefficients, got " +
                          std::to_string(const_coeffs.size()));
  if (const_coeffs.back() == cd{}) throw InvalidArgument("DiffOpSpec: leading coefficient c_k must be nonzero");
  if (!var_coeffs.empty() && p() >= k)
    throw InvalidArgument("DiffOpSpec: variable part order p=" + std::to_string(p()) + " must be below k=" +
                          std::to_string(k));
}

// ---------------------------------------------------------------------------
// JumpSpec

JumpSpec JumpSpec::certify(CoeffVec g, long grid) {
  if (grid <= 0) grid = std::clamp(16 * static_cast<long>(g.size()), 256L, 1L << 20);
  const auto samples = evaluate_on_grid(g, grid);
  double lo = std::abs(samples.front());
  double hi = lo;
  for (const cd& s : samples) {
    lo = std::min(lo, std::abs(s));
    hi = std::max(hi, std::abs(s));
  }
  if (!(lo > 1e-13 * hi))
    throw InvalidArgument("JumpSpec: g vanishes on the unit circle (min |g| = " + std::to_string(lo) + " on a " +
                          std::to_string(grid) + "-point grid)");
  return JumpSpec{std::move(g), lo};
}

long winding_number(const CoeffVec& g, long grid) {
  const auto s = evaluate_on_grid(g, grid);
  double total = 0.0;
  for (long l = 0; l < grid; ++l) {
    const cd a = s[l];
    const cd b = s[(l + 1) % grid];
    if (a == cd{} || b == cd{}) throw InvalidArgument("winding_number: g vanishes on the grid");
    total += std::arg(b / a);
  }
  return std::lround(total / (2.0 * std::numbers::pi));
}

// ---------------------------------------------------------------------------
// OperatorMatrix helpers

Eigen::VectorXcd to_vector(const CoeffVec& u, const BandWindow& w) {
  Eigen::VectorXcd v(w.size());
  for (long i = 0; i < w.size(); ++i) v(i) = u[w.mode_at(i)];
  return v;
}

CoeffVec from_vector(const Eigen::VectorXcd& v, const BandWindow& w) {
  if (v.size() != w.size()) throw InvalidArgument("from_vector: length does not match window");
  return CoeffVec(w.min_mode(), std::vector<cd>(v.data(), v.data() + v.size()));
}

CoeffVec OperatorMatrix::apply(const CoeffVec& u) const {
  return from_vector(entries * to_vector(u, window), window);
}

// ---------------------------------------------------------------------------
// Assembly

OperatorMatrix assemble_L0(const DiffOpSpec& spec, const BandWindow& w) {
  spec.validate();
  return {w, diagonal_symbol(spec, w), SobolevOrder{static_cast<double>(spec.k)}, SobolevOrder{0.0}};
}

OperatorMatrix assemble_mult_toeplitz(const CoeffVec& h, const BandWindow& w, Exec exec) {
  // T(r, c) = h_{mode(r) - mode(c)} = h_{r - c}.
  return {w, kernels::toeplitz(exec, h.coeffs(), h.j_min(), w.size())};
}

Eigen::MatrixXcd interpolated_multiplier(std::span<const cd> samples, const BandWindow& w, Exec exec) {
  const long n = w.size();
  if (static_cast<long>(samples.size()) != n)
    throw InvalidArgument("interpolated_multiplier: need one sample per grid point");
  std::vector<cd> roots(n);
  for (long k = 0; k < n; ++k) roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / n);

  const FftPlan plan(n, FftPlan::Direction::forward);
  Eigen::MatrixXcd out(n, n);
  const double scale = 1.0 / static_cast<double>(n);
  auto fill_column = [&](long c, std::vector<cd>& buf, std::vector<cd>& spec) {
    const long m = w.mode_at(c);
    for (long l = 0; l < n; ++l) buf[l] = samples[l] * roots[floor_mod(m * l, n)];
    plan.execute(buf, spec);
    for (long r = 0; r < n; ++r) out(r, c) = spec[floor_mod(w.mode_at(r), n)] * scale;
  };

  if (exec == Exec::serial) {
    std::vector<cd> buf(n), spec(n);
    for (long c = 0; c < n; ++c) fill_column(c, buf, spec);
  } else {
#pragma omp parallel
    {
      std::vector<cd> buf(n), spec(n);
#pragma omp for schedule(static)
      for (long c = 0; c < n; ++c) fill_column(c, buf, spec);
    }
  }
  return out;
}

CauchyProjectors assemble_cauchy_projectors(const BandWindow& w) {
  Eigen::VectorXcd plus(w.size());
  for (long i = 0; i < w.size(); ++i) plus(i) = w.mode_at(i) >= 0 ? 1.0 : 0.0;
  Eigen::MatrixXcd cp = plus.asDiagonal();
  Eigen::MatrixXcd cm = cp - identity(w);
  return {OperatorMatrix{w, std::move(cp)}, OperatorMatrix{w, std::move(cm)}};
}

double symbol_distance(const DiffOpSpec& spec, cd z) {
  spec.validate();
  const double d0 = std::abs(spec.symbol(0) - z);
  if (spec.k == 0) return d0;
  // |sigma_0(m)| >= |c_k| |m| - sum_{j<k} |c_j| for |m| >= 1, so beyond
  // reach every symbol value is farther from z than sigma_0(0).
  double lower = 0.0;
  for (std::size_t j = 0; j + 1 < spec.const_coeffs.size(); ++j) lower += std::abs(spec.const_coeffs[j]);
  const double ck = std::abs(spec.const_coeffs.back());
  const long reach = static_cast<long>(std::ceil((d0 + lower + std::abs(z)) / ck)) + 1;
  double best = d0;
  for (long m = 1; m <= reach; ++m)
    best = std::min({best, std::abs(spec.symbol(m) - z), std::abs(spec.symbol(-m) - z)});
  return best;
}

cd choose_zeta(const DiffOpSpec& spec) {
  spec.validate();
  // For L0 = d^k the symbol is i^k m^k. With k odd it is imaginary and 1 is
  // off it. With k even it is (-1)^{k/2} m^k, a half-line through
  // (-1)^{k/2} itself (m = 1), so the opposite sign is used.
  if (spec.is_pure_derivative() && spec.k >= 1) {
    if (spec.k % 2 == 1) return 1.0;
    return (spec.k / 2) % 2 == 0 ? -1.0 : 1.0;
  }
  for (int r = 1; r <= 16; ++r) {
    const double x = r;
    for (cd candidate : {cd(x, 0), cd(-x, 0), cd(0, x), cd(0, -x)})
      if (symbol_distance(spec, candidate) > 0.5) return candidate;
  }
  throw Error("choose_zeta: no candidate among the first 64 is separated from the symbol set of L0");
}

OperatorMatrix assemble_regulator(const DiffOpSpec& spec, cd zeta, const BandWindow& w) {
  spec.validate();
  Eigen::VectorXcd d(w.size());
  for (long i = 0; i < w.size(); ++i) {
    const cd gap = spec.symbol(w.mode_at(i)) - zeta;
    if (std::abs(gap) <= 1e-14 * std::max(1.0, std::abs(zeta)))
      throw InvalidArgument("assemble_regulator: zeta coincides with the symbol at mode " +
                            std::to_string(w.mode_at(i)));
    d(i) = 1.0 / gap;
  }
  return {w, d.asDiagonal(), SobolevOrder{0.0}, SobolevOrder{static_cast<double>(spec.k)}};
}

OperatorMatrix assemble_finite_section_ode(const DiffOpSpec& spec, const BandWindow& w, Exec exec) {
  spec.validate();
  Eigen::MatrixXcd a = diagonal_symbol(spec, w);
  for (int j = 0; j <= spec.p(); ++j) {
    Eigen::MatrixXcd t = kernels::toeplitz(exec, spec.var_coeffs[j].coeffs(), spec.var_coeffs[j].j_min(), w.size());
    scale_columns_by_derivative(t, w, j);
    a += t;
  }
  return {w, std::move(a), SobolevOrder{static_cast<double>(spec.k)}, SobolevOrder{0.0}};
}

OperatorMatrix assemble_collocation_ode(const DiffOpSpec& spec, const BandWindow& w, Exec exec) {
  spec.validate();
  Eigen::MatrixXcd a = diagonal_symbol(spec, w);
  for (int j = 0; j <= spec.p(); ++j) {
    const auto samples = evaluate_on_grid(spec.var_coeffs[j], w.size());
    Eigen::MatrixXcd t = interpolated_multiplier(samples, w, exec);
    scale_columns_by_derivative(t, w, j);
    a += t;
  }
  return {w, std::move(a), SobolevOrder{static_cast<double>(spec.k)}, SobolevOrder{0.0}};
}

OperatorMatrix assemble_sie(const JumpSpec& jump, const BandWindow& w, Discretization mode, Exec exec) {
  const CoeffVec h = minus_one(jump.g);
  Eigen::MatrixXcd mult;
  if (mode == Discretization::finite_section) {
    mult = kernels::toeplitz(exec, h.coeffs(), h.j_min(), w.size());
  } else {
    const auto samples = evaluate_on_grid(h, w.size());
    mult = interpolated_multiplier(samples, w, exec);
  }
  // Id - M C^-, with C^- = -1 on negative modes and 0 elsewhere.
  Eigen::MatrixXcd a = identity(w);
  for (long c = 0; c < w.size(); ++c)
    if (w.mode_at(c) < 0) a.col(c) += mult.col(c);
  return {w, std::move(a)};
}

OperatorMatrix assemble_hankel(const CoeffVec& h, const BandWindow& w) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(w.size(), w.size());
  for (long k = 0; k <= w.n_plus(); ++k)
    for (long j = 1; j <= w.n_minus(); ++j) a(w.index_of(k), w.index_of(-j)) = -h[j + k];
  return {w, std::move(a)};
}

double operator_norm_weighted(const OperatorMatrix& a, SobolevOrder s, SobolevOrder t) {
  const BandWindow& w = a.window;
  const Eigen::MatrixXcd& m = a.entries;
  const bool diagonal = (m - Eigen::MatrixXcd(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  if (diagonal) {
    double best = 0.0;
    for (long i = 0; i < w.size(); ++i) {
      const long mode = w.mode_at(i);
      best = std::max(best, std::abs(m(i, i)) * t.weight(mode) / s.weight(mode));
    }
    return best;
  }
  Eigen::MatrixXcd scaled(w.size(), w.size());
  for (long c = 0; c < w.size(); ++c)
    for (long r = 0; r < w.size(); ++r)
      scaled(r, c) = m(r, c) * t.weight(w.mode_at(r)) / s.weight(w.mode_at(c));
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(scaled);
  return svd.singularValues()(0);
}

}  // namespace perispec
