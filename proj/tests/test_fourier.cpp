#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "perispec/error.hpp"
#include "perispec/fourier.hpp"

using namespace perispec;
using oracle::cis;

TEST_CASE("band window identities") {
  for (long n = 1; n <= 64; ++n) {
    const BandWindow w(n);
    CHECK(w.n_plus() + w.n_minus() + 1 == n);
    CHECK(w.min_mode() == -(n / 2));
    CHECK(w.max_mode() == (n - 1) / 2);
    for (long i = 0; i < n; ++i) CHECK(w.index_of(w.mode_at(i)) == i);
  }
  CHECK_THROWS_AS(BandWindow(0), InvalidArgument);
}

TEST_CASE("coeffvec windows and arithmetic") {
  const CoeffVec u{{-1, 2.0}, {0, 1.0}, {5, 3.0}};
  CHECK(u.j_min() == -1);
  CHECK(u.j_max() == 5);
  CHECK(u.size() == 7);
  CHECK(u[2] == cd{});
  CHECK(u[99] == cd{});
  CHECK(u[5] == cd{3.0});

  const CoeffVec v{{-3, 1.0}, {1, 4.0}};
  const CoeffVec sum = u + v;
  CHECK(sum.j_min() == -3);
  CHECK(sum.j_max() == 5);
  CHECK(sum[-3] == cd{1.0});
  CHECK(sum[1] == cd{4.0});
  CHECK(sum[-1] == cd{2.0});
  CHECK((u - u)[5] == cd{});
  CHECK((cd(0, 2) * u)[0] == cd(0, 2));

  CoeffVec w = CoeffVec::zeros(0, 2);
  CHECK_THROWS_AS(w.at(3), InvalidArgument);
  CHECK_THROWS_AS(CoeffVec(0, {}), InvalidArgument);
}

TEST_CASE("project") {
  const CoeffVec u{{-1, 2.0}, {0, 1.0}, {5, 3.0}};
  const CoeffVec p = project(u, BandWindow(4));
  CHECK(p.j_min() == -2);
  CHECK(p.j_max() == 1);
  CHECK(p[-2] == cd{});
  CHECK(p[-1] == cd{2.0});
  CHECK(p[0] == cd{1.0});
  CHECK(p[1] == cd{});

  const CoeffVec inside{{-1, cd(1, 2)}, {1, cd(3, -1)}};
  const CoeffVec q = project(inside, BandWindow(5));
  CHECK(oracle::max_abs_diff(q, inside) == 0.0);
}

TEST_CASE("project is idempotent and contracts every sobolev norm") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<long> pick_n(1, 40);
  std::uniform_real_distribution<double> pick_s(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const CoeffVec u = oracle::random_window(rng, 30);
    const BandWindow w(pick_n(rng));
    const CoeffVec p = project(u, w);
    const CoeffVec pp = project(p, w);
    CHECK(oracle::max_abs_diff(p, pp) == 0.0);
    const SobolevOrder s{pick_s(rng)};
    CHECK(sobolev_norm(p, s) <= sobolev_norm(u, s));
  }
}

TEST_CASE("projection error rate is uniform in N") {
  // ||u - P_N u||_0 / N^{0-2} over N for u in H^2 with power-law decay.
  const BandWindow big(1 << 16 | 1);
  const CoeffVec u = synth_powerlaw(PowerLaw::g, 2.51, 0.0, big);
  const SobolevOrder t{0.0}, s{2.0};
  const double us = sobolev_norm(u, s);
  double lo = INFINITY, hi = 0.0;
  for (long n : {16L, 17L, 32L, 63L, 64L, 128L, 200L, 256L, 511L, 512L, 1024L}) {
    const double err = diff_norm(u, project(u, BandWindow(n)), t);
    const double ratio = err / (std::pow(static_cast<double>(n), t.s - s.s) * us);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  MESSAGE("projection rate constant D = " << hi);
  CHECK(hi / lo < 10.0);
}

TEST_CASE("interpolation minus projection rate is uniform in N") {
  const BandWindow big(1 << 16 | 1);
  const CoeffVec u = synth_powerlaw(PowerLaw::g, 2.51, 0.0, big);
  const SobolevOrder t{0.0}, s{2.0};
  const double us = sobolev_norm(u, s);
  double lo = INFINITY, hi = 0.0;
  for (long n : {16L, 17L, 32L, 63L, 64L, 128L, 200L, 256L, 511L, 512L, 1024L}) {
    const double gap = diff_norm(interpolate_function(u, n), project(u, BandWindow(n)), t);
    const double ratio = gap / (std::pow(static_cast<double>(n), t.s - s.s) * us);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  MESSAGE("interpolation rate constant C = " << hi);
  CHECK(hi / lo < 10.0);
}

TEST_CASE("interpolate") {
  SUBCASE("band-limited sample") {
    std::vector<cd> v(8);
    for (long l = 0; l < 8; ++l) v[l] = cis(oracle::grid_point(l, 8));
    const CoeffVec u = interpolate(v);
    CHECK(u.j_min() == -4);
    CHECK(u.j_max() == 3);
    CHECK(std::abs(u[1] - 1.0) < 1e-14);
    for (long j = -4; j <= 3; ++j)
      if (j != 1) CHECK(std::abs(u[j]) < 1e-14);
  }
  SUBCASE("mode N+1 aliases onto mode 1") {
    std::vector<cd> v(8);
    for (long l = 0; l < 8; ++l) v[l] = cis(9.0 * oracle::grid_point(l, 8));
    const CoeffVec u = interpolate(v);
    CHECK(std::abs(u[1] - 1.0) < 1e-14);
    CHECK(std::abs(u[0]) < 1e-14);
  }
  SUBCASE("superposition of aliases") {
    const cd a(0.5, -1.0), b(2.0, 0.25);
    const CoeffVec src{{1, a}, {9, b}};
    const CoeffVec u = interpolate(oracle::samples(src, 8));
    CHECK(std::abs(u[1] - (a + b)) < 1e-13);
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(interpolate(std::span<const cd>{}), InvalidArgument);
  }
  SUBCASE("matches the naive DFT") {
    std::mt19937 rng(7);
    for (long n : {1L, 2L, 3L, 7L, 8L, 15L, 64L, 97L}) {
      std::vector<cd> v(n);
      for (auto& x : v) x = oracle::random_cd(rng);
      CHECK(oracle::max_abs_diff(interpolate(v), oracle::naive_dft(v)) < 1e-13);
    }
  }
}

TEST_CASE("evaluate_on_grid") {
  const cd c(1.5, -0.5);
  for (const cd& x : evaluate_on_grid(CoeffVec{{0, c}}, 5)) CHECK(std::abs(x - c) < 1e-15);

  const auto s = evaluate_on_grid(CoeffVec{{1, 1.0}}, 4);
  REQUIRE(s.size() == 4);
  CHECK(std::abs(s[0] - cd(1, 0)) < 1e-15);
  CHECK(std::abs(s[1] - cd(0, 1)) < 1e-15);
  CHECK(std::abs(s[2] - cd(-1, 0)) < 1e-15);
  CHECK(std::abs(s[3] - cd(0, -1)) < 1e-15);

  CHECK_THROWS_AS(evaluate_on_grid(CoeffVec{}, 0), InvalidArgument);

  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const CoeffVec u = oracle::random_window(rng, 40);
    const long n = 1 + trial;
    const auto fast = evaluate_on_grid(u, n);
    const auto slow = oracle::samples(u, n);
    double worst = 0.0, scale = 1.0;
    for (long l = 0; l < n; ++l) {
      worst = std::max(worst, std::abs(fast[l] - slow[l]));
      scale = std::max(scale, std::abs(slow[l]));
    }
    CHECK(worst < 1e-12 * scale);
  }
}

TEST_CASE("round trip is exact on band-limited input") {
  std::mt19937 rng(2024);
  for (long n = 1; n <= 128; ++n) {
    const BandWindow w(n);
    const CoeffVec u = oracle::random_coeffs(rng, w.min_mode(), w.max_mode());
    const CoeffVec back = interpolate(evaluate_on_grid(u, n));
    CHECK(diff_norm(u, back, SobolevOrder{0}) <= 1e-13 * sobolev_norm(u, SobolevOrder{0}));
  }
}

TEST_CASE("aliasing identity") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> pick_n(1, 64);
  for (int trial = 0; trial < 200; ++trial) {
    const CoeffVec u = oracle::random_window(rng, 200);
    const long n = pick_n(rng);
    const CoeffVec ui = interpolate(evaluate_on_grid(u, n));
    const BandWindow w(n);
    for (long j = w.min_mode(); j <= w.max_mode(); ++j) CHECK(std::abs(ui[j] - oracle::aliased(u, n, j)) <= 1e-12);
  }
}

TEST_CASE("sobolev norm") {
  for (double s : {-2.0, 0.0, 0.5, 3.0}) CHECK(sobolev_norm(CoeffVec{{0, 3.0}}, SobolevOrder{s}) == doctest::Approx(3.0));
  CHECK(sobolev_norm(CoeffVec{{2, 1.0}}, SobolevOrder{1.0}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(SobolevOrder{-1.5}.weight(7) > 0.0);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const CoeffVec u = oracle::random_window(rng, 50);
    double l2 = 0.0;
    for (long j = u.j_min(); j <= u.j_max(); ++j) l2 += std::norm(u[j]);
    CHECK(sobolev_norm(u, SobolevOrder{0.0}) == doctest::Approx(std::sqrt(l2)).epsilon(1e-14));
    CHECK(sobolev_norm(u, SobolevOrder{-0.5}) <= sobolev_norm(u, SobolevOrder{0.25}));
    CHECK(sobolev_norm(u, SobolevOrder{0.25}) <= sobolev_norm(u, SobolevOrder{1.75}));
  }
}

TEST_CASE("sobolev norm of h in H^1 matches the zeta closed form") {
  // |h_j|^2 (1+|j|)^2 = (1+|j|)^{-1.02}, so ||h||_1^2 = 1 + 2 (zeta(1.02) - 1).
  // The partial sums converge very slowly; the tail is added in closed form.
  const double a = 1.02;
  const double exact = std::sqrt(1.0 + 2.0 * (std::riemann_zeta(a) - 1.0));
  auto corrected = [&](long reach) {
    const CoeffVec h = synth_powerlaw(PowerLaw::h, 1.51, 0.0, BandWindow(2 * reach + 1));
    const double partial = sobolev_norm(h, SobolevOrder{1.0});
    // sum_{n > M} n^{-a} by Euler-Maclaurin, M = reach + 1 the last term kept.
    const double m = static_cast<double>(reach + 1);
    const double tail = std::pow(m, 1.0 - a) / (a - 1.0) - 0.5 * std::pow(m, -a) + a / 12.0 * std::pow(m, -a - 1.0);
    return std::sqrt(partial * partial + 2.0 * tail);
  };
  const double at5 = corrected(100000);
  const double at6 = corrected(1000000);
  CHECK(std::isfinite(at5));
  CHECK(std::abs(at5 - at6) <= 1e-4 * at6);
  CHECK(std::abs(at6 - exact) <= 1e-9 * exact);
}

TEST_CASE("diff_norm") {
  const CoeffVec u{{-2, cd(1, 1)}, {3, 2.0}};
  CHECK(diff_norm(u, u, SobolevOrder{1.0}) == 0.0);
  CHECK(diff_norm(CoeffVec{{0, 1.0}}, CoeffVec{{1, 1.0}}, SobolevOrder{0.0}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  std::mt19937 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const CoeffVec a = oracle::random_window(rng, 20);
    const CoeffVec b = oracle::random_window(rng, 20);
    const CoeffVec c = oracle::random_window(rng, 20);
    const SobolevOrder s{static_cast<double>(trial % 7) - 3.0};
    const double ab = diff_norm(a, b, s), bc = diff_norm(b, c, s), ac = diff_norm(a, c, s);
    CHECK(ac <= (ab + bc) * (1 + 1e-14));
    CHECK(ab == diff_norm(b, a, s));
  }
}

TEST_CASE("multiply is the exact product") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const CoeffVec u = oracle::random_window(rng, 12);
    const CoeffVec v = oracle::random_window(rng, 12);
    const CoeffVec fast = multiply(u, v);
    const CoeffVec conv = oracle::convolve(u, v);
    const CoeffVec grid = oracle::grid_product(u, v);
    CHECK(oracle::max_abs_diff(fast, conv) < 1e-12);
    CHECK(oracle::max_abs_diff(grid, conv) < 1e-12);
  }
}

TEST_CASE("submultiplicativity holds with a finite constant") {
  // (1+|j|)^s <= 2^s ((1+|k|)^s + (1+|j-k|)^s) and Young's inequality give
  // ||uv||_s <= 2^{s+1} sqrt(sum_j (1+|j|)^{-2s}) ||u||_s ||v||_s for s > 1/2.
  std::mt19937 rng(8080);
  for (double s : {0.75, 1.0, 1.5, 2.0}) {
    const double c = std::pow(2.0, s + 1.0) * std::sqrt(2.0 * std::riemann_zeta(2.0 * s) - 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const CoeffVec u = oracle::random_window(rng, 16);
      const CoeffVec v = oracle::random_window(rng, 16);
      const double ratio = sobolev_norm(multiply(u, v), SobolevOrder{s}) /
                           (sobolev_norm(u, SobolevOrder{s}) * sobolev_norm(v, SobolevOrder{s}));
      worst = std::max(worst, ratio);
    }
    MESSAGE("s=" << s << " bound C=" << c << " worst observed ratio " << worst);
    CHECK(worst <= c);
  }
}

TEST_CASE("synth_powerlaw") {
  const BandWindow w(21);
  const CoeffVec g = synth_powerlaw(PowerLaw::g, 2.51, 0.0, w);
  CHECK(g.j_min() == -10);
  CHECK(g.j_max() == 10);
  CHECK(g[0] == cd(1.0));
  CHECK(std::abs(g[3] - std::pow(4.0, -2.51)) < 1e-16);
  CHECK(std::abs(g[-3] - std::pow(4.0, -2.51)) < 1e-16);

  const CoeffVec h = synth_powerlaw(PowerLaw::h, 1.51, 0.0, w);
  CHECK(h[0] == cd(1.0));
  CHECK(std::abs(h[-2] + std::pow(3.0, -1.51)) < 1e-16);
  CHECK(std::abs(h[2] - std::pow(3.0, -1.51)) < 1e-16);

  const CoeffVec gg = synth_powerlaw(PowerLaw::gg, 1.51, 0.01, w);
  CHECK(gg[0] == cd(1.0));
  CHECK(std::abs(gg[1] - 0.01 * std::pow(2.0, -1.51)) < 1e-18);

  CHECK_THROWS_AS(synth_powerlaw(PowerLaw::g, 0.5, 0.0, w), InvalidArgument);
  CHECK_THROWS_AS(synth_powerlaw(PowerLaw::h, 0.2, 0.0, w), InvalidArgument);
}
