#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference and an
// OpenMP version; the two produce bitwise-identical results (each output
// element is computed by exactly one thread in the same order), which the
// test suite checks. Higher layers select a variant through Exec.

#include <Eigen/Dense>

#include <complex>
#include <span>

namespace perispec {

enum class Exec { serial, parallel };

namespace kernels {

using cd = std::complex<double>;

/// out[i] = sum_{j=j_min}^{j_min+len-1} coeffs[j - j_min] * points[i]^j.
/// Horner in z for j >= 0 and in 1/z for j < 0.
void laurent_sum_serial(std::span<const cd> coeffs, long j_min, std::span<const cd> points,
                        std::span<cd> out);
void laurent_sum_omp(std::span<const cd> coeffs, long j_min, std::span<const cd> points,
                     std::span<cd> out);

/// T(r, c) = h_{r-c} on an n x n grid (rows/columns share one mode map, so
/// the mode offset cancels). coeffs hold modes j_min .. j_min+len-1.
Eigen::MatrixXcd toeplitz_serial(std::span<const cd> coeffs, long j_min, long n);
Eigen::MatrixXcd toeplitz_omp(std::span<const cd> coeffs, long j_min, long n);

inline void laurent_sum(Exec exec, std::span<const cd> coeffs, long j_min, std::span<const cd> points,
                        std::span<cd> out) {
  exec == Exec::serial ? laurent_sum_serial(coeffs, j_min, points, out)
                       : laurent_sum_omp(coeffs, j_min, points, out);
}

inline Eigen::MatrixXcd toeplitz(Exec exec, std::span<const cd> coeffs, long j_min, long n) {
  return exec == Exec::serial ? toeplitz_serial(coeffs, j_min, n) : toeplitz_omp(coeffs, j_min, n);
}

}  // namespace kernels
}  // namespace perispec
