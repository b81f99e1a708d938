#include "perispec/kernels.hpp"

#include <algorithm>

#include "perispec/error.hpp"

namespace perispec::kernels {

namespace {

cd laurent_at(std::span<const cd> coeffs, long j_min, cd z) {
  const long j_max = j_min + static_cast<long>(coeffs.size()) - 1;
  cd total{};
  if (j_max >= 0) {
    const long lo = std::max(0L, j_min);
    cd acc{};
    for (long j = j_max; j >= lo; --j) acc = acc * z + coeffs[j - j_min];
    for (long j = 0; j < lo; ++j) acc *= z;
    total += acc;
  }
  if (j_min < 0) {
    // sum_{n} c_{-n} w^n, w = 1/z, n = n_lo .. -j_min
    const cd w = 1.0 / z;
    const long n_lo = std::max(1L, -j_max);
    cd acc{};
    for (long n = -j_min; n >= n_lo; --n) acc = acc * w + coeffs[-n - j_min];
    for (long n = 0; n < n_lo; ++n) acc *= w;
    total += acc;
  }
  return total;
}

void check_sizes(std::span<const cd> coeffs, std::span<const cd> points, std::span<cd> out) {
  if (coeffs.empty()) throw InvalidArgument("laurent_sum: empty coefficient window");
  if (points.size() != out.size()) throw InvalidArgument("laurent_sum: output size mismatch");
}

inline cd tap(std::span<const cd> coeffs, long j_min, long j) {
  const long k = j - j_min;
  return (k >= 0 && k < static_cast<long>(coeffs.size())) ? coeffs[k] : cd{};
}

}  // namespace

void laurent_sum_serial(std::span<const cd> coeffs, long j_min, std::span<const cd> points,
                        std::span<cd> out) {
  check_sizes(coeffs, points, out);
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = laurent_at(coeffs, j_min, points[i]);
}

void laurent_sum_omp(std::span<const cd> coeffs, long j_min, std::span<const cd> points, std::span<cd> out) {
  check_sizes(coeffs, points, out);
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = laurent_at(coeffs, j_min, points[i]);
}

Eigen::MatrixXcd toeplitz_serial(std::span<const cd> coeffs, long j_min, long n) {
  Eigen::MatrixXcd t(n, n);
  for (long c = 0; c < n; ++c)
    for (long r = 0; r < n; ++r) t(r, c) = tap(coeffs, j_min, r - c);
  return t;
}

Eigen::MatrixXcd toeplitz_omp(std::span<const cd> coeffs, long j_min, long n) {
  Eigen::MatrixXcd t(n, n);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < n; ++c)
    for (long r = 0; r < n; ++r) t(r, c) = tap(coeffs, j_min, r - c);
  return t;
}

}  // namespace perispec::kernels
