// Serial reference kernels against their OpenMP versions. Laurent sums on the
// uniform grid are also timed through an FFT, the fast path for that case.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "perispec/fft.hpp"
#include "perispec/fourier.hpp"
#include "perispec/kernels.hpp"
#include "perispec/operators.hpp"

using namespace perispec;
using cd = std::complex<double>;

namespace {

std::vector<cd> random_vector(long n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cd> v(n);
  for (auto& x : v) x = {nd(rng), nd(rng)};
  return v;
}

std::vector<cd> unit_grid(long n) {
  std::vector<cd> z(n);
  for (long l = 0; l < n; ++l) z[l] = std::polar(1.0, 2.0 * std::numbers::pi * l / static_cast<double>(n));
  return z;
}

void laurent(benchmark::State& state, Exec exec) {
  const long n = state.range(0);
  const auto coeffs = random_vector(n, 1);
  const auto z = unit_grid(n);
  std::vector<cd> out(n);
  for (auto _ : state) {
    kernels::laurent_sum(exec, coeffs, -(n / 2), z, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void laurent_fft(benchmark::State& state) {
  const long n = state.range(0);
  const auto coeffs = random_vector(n, 1);
  const FftPlan plan(n, FftPlan::Direction::backward);
  std::vector<cd> buf(n), out(n);
  for (auto _ : state) {
    // Mode j goes to slot j mod n.
    for (long i = 0; i < n; ++i) buf[((i - n / 2) % n + n) % n] = coeffs[i];
    plan.execute(buf, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void toeplitz(benchmark::State& state, Exec exec) {
  const long n = state.range(0);
  const auto coeffs = random_vector(2 * n - 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::toeplitz(exec, coeffs, -(n - 1), n));
}

void multiplier(benchmark::State& state, Exec exec) {
  const long n = state.range(0);
  const auto samples = random_vector(n, 3);
  const BandWindow w(n);
  for (auto _ : state) benchmark::DoNotOptimize(interpolated_multiplier(samples, w, exec));
}

}  // namespace

BENCHMARK_CAPTURE(laurent, serial, Exec::serial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(laurent, omp, Exec::parallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(laurent_fft)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(toeplitz, serial, Exec::serial)->RangeMultiplier(4)->Range(64, 2048);
BENCHMARK_CAPTURE(toeplitz, omp, Exec::parallel)->RangeMultiplier(4)->Range(64, 2048);
BENCHMARK_CAPTURE(multiplier, serial, Exec::serial)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK_CAPTURE(multiplier, omp, Exec::parallel)->RangeMultiplier(4)->Range(64, 1024);

BENCHMARK_MAIN();
