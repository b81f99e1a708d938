#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "perispec/error.hpp"
#include "perispec/fft.hpp"
#include "perispec/kernels.hpp"
#include "perispec/operators.hpp"
#include "perispec/spectrum.hpp"

using namespace perispec;

namespace {

// Force real thread teams even on a single-core machine so the parallel
// paths actually split work.
struct Threads {
  Threads() { omp_set_num_threads(4); }
} const threads_guard;

std::vector<cd> random_points(std::mt19937& rng, long n) {
  std::uniform_real_distribution<double> radius(0.3, 3.0), angle(0.0, 6.283185307179586);
  std::vector<cd> z(n);
  for (auto& x : z) x = std::polar(radius(rng), angle(rng));
  return z;
}

bool bitwise_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (long c = 0; c < a.cols(); ++c)
    for (long r = 0; r < a.rows(); ++r)
      if (a(r, c).real() != b(r, c).real() || a(r, c).imag() != b(r, c).imag()) return false;
  return true;
}

}  // namespace

TEST_CASE("laurent sum matches direct evaluation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const CoeffVec u = oracle::random_window(rng, 12);
    const auto z = random_points(rng, 17);
    std::vector<cd> out(z.size());
    kernels::laurent_sum_serial(u.coeffs(), u.j_min(), z, out);
    for (std::size_t i = 0; i < z.size(); ++i) {
      cd ref{};
      for (long j = u.j_min(); j <= u.j_max(); ++j) ref += u[j] * std::pow(z[i], static_cast<double>(j));
      CHECK(std::abs(out[i] - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
    }
  }
  std::vector<cd> one(1);
  const std::vector<cd> pt{cd(0.5, 0.5)};
  CHECK_THROWS_AS(kernels::laurent_sum_serial({}, 0, pt, one), InvalidArgument);
  std::vector<cd> two(2);
  const CoeffVec c{{0, 1.0}};
  CHECK_THROWS_AS(kernels::laurent_sum_serial(c.coeffs(), 0, pt, two), InvalidArgument);
}

TEST_CASE("parallel laurent sum is bitwise identical to serial") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const CoeffVec u = oracle::random_window(rng, 60);
    const auto z = random_points(rng, 1000);
    std::vector<cd> a(z.size()), b(z.size());
    kernels::laurent_sum_serial(u.coeffs(), u.j_min(), z, a);
    kernels::laurent_sum_omp(u.coeffs(), u.j_min(), z, b);
    bool same = true;
    for (std::size_t i = 0; i < z.size(); ++i) same = same && a[i].real() == b[i].real() && a[i].imag() == b[i].imag();
    CHECK(same);
  }
}

TEST_CASE("toeplitz kernels") {
  std::mt19937 rng(13);
  for (long n : {1L, 2L, 5L, 32L, 129L}) {
    const CoeffVec h = oracle::random_window(rng, n + 3);
    const BandWindow w(n);
    const auto s = kernels::toeplitz_serial(h.coeffs(), h.j_min(), n);
    const auto p = kernels::toeplitz_omp(h.coeffs(), h.j_min(), n);
    CHECK(bitwise_equal(s, p));
    CHECK(oracle::max_abs(s - oracle::toeplitz(h, w)) == 0.0);
  }
}

TEST_CASE("assembly is bitwise identical across execution modes") {
  std::mt19937 rng(14);
  const BandWindow w(97);
  const CoeffVec a = oracle::random_window(rng, 150);
  const auto samples = evaluate_on_grid(a, w.size());
  CHECK(bitwise_equal(interpolated_multiplier(samples, w, Exec::serial),
                      interpolated_multiplier(samples, w, Exec::parallel)));
  CHECK(bitwise_equal(assemble_mult_toeplitz(a, w, Exec::serial).entries,
                      assemble_mult_toeplitz(a, w, Exec::parallel).entries));

  DiffOpSpec spec = DiffOpSpec::constant({{3, -1.0}});
  spec.var_coeffs = {oracle::random_window(rng, 40), oracle::random_window(rng, 40)};
  CHECK(bitwise_equal(assemble_finite_section_ode(spec, w, Exec::serial).entries,
                      assemble_finite_section_ode(spec, w, Exec::parallel).entries));
  CHECK(bitwise_equal(assemble_collocation_ode(spec, w, Exec::serial).entries,
                      assemble_collocation_ode(spec, w, Exec::parallel).entries));

  const JumpSpec jump = JumpSpec::certify(CoeffVec{{0, 1.0}} + 0.05 * oracle::random_window(rng, 30));
  for (auto mode : {Discretization::finite_section, Discretization::collocation})
    CHECK(bitwise_equal(assemble_sie(jump, w, mode, Exec::serial).entries,
                        assemble_sie(jump, w, mode, Exec::parallel).entries));
}

TEST_CASE("resolvent grid is identical across execution modes") {
  DiffOpSpec spec = DiffOpSpec::constant({{2, -1.0}}, 2.0);
  spec.var_coeffs = {synth_powerlaw(PowerLaw::g, 2.51, 0.0, BandWindow(81))};
  std::vector<cd> zs;
  for (int i = 0; i < 24; ++i) zs.emplace_back(0.7 * i - 3.0, 0.25 * (i % 5));
  const auto a = resolvent_norm_grid(spec, BandWindow(41), zs, SobolevOrder{1.0}, Exec::serial);
  const auto b = resolvent_norm_grid(spec, BandWindow(41), zs, SobolevOrder{1.0}, Exec::parallel);
  CHECK(a == b);
}

TEST_CASE("fft plan") {
  std::mt19937 rng(15);
  for (long n : {1L, 2L, 3L, 8L, 31L, 100L}) {
    std::vector<cd> in(n);
    for (auto& x : in) x = oracle::random_cd(rng);
    FftPlan fwd(n, FftPlan::Direction::forward);
    FftPlan bwd(n, FftPlan::Direction::backward);
    CHECK(fwd.size() == n);
    std::vector<cd> out(n), back(n);
    fwd.execute(in, out);
    for (long k = 0; k < n; ++k) {
      cd ref{};
      for (long l = 0; l < n; ++l) ref += in[l] * oracle::cis(-oracle::grid_point(k * l % n, n));
      CHECK(std::abs(out[k] - ref) < 1e-12 * n);
    }
    bwd.execute(out, back);
    for (long l = 0; l < n; ++l) CHECK(std::abs(back[l] / static_cast<double>(n) - in[l]) < 1e-13);

    // In place.
    std::vector<cd> inplace = in;
    fwd.execute(inplace, inplace);
    for (long k = 0; k < n; ++k) CHECK(std::abs(inplace[k] - out[k]) < 1e-13 * n);

    FftPlan moved = std::move(fwd);
    CHECK(moved.size() == n);
    std::vector<cd> again(n);
    moved.execute(in, again);
    CHECK(again == out);
  }
  CHECK_THROWS_AS(FftPlan(0, FftPlan::Direction::forward), InvalidArgument);
}
