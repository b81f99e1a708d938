#pragma once

// Coefficient-space representation of periodic functions on the circle.
//
// A function u(theta) = sum_j u_j e^{i j theta} is stored as the finite window
// of Laurent coefficients u_{j_min} .. u_{j_max}. Modes outside the window are
// zero. All transforms use the grid x_l = 2 pi l / N, l = 0..N-1, and the
// normalization u_j = (1/N) sum_l u(x_l) e^{-i j x_l}, so that interpolate()
// inverts evaluate_on_grid() on band-limited input.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace perispec {

using cd = std::complex<double>;

/// The index set of ran P_N: modes -N_minus .. N_plus with
/// N_minus = floor(N/2), N_plus = floor((N-1)/2).
class BandWindow {
 public:
  explicit BandWindow(long n);

  long size() const { return n_; }
  long n_minus() const { return n_ / 2; }
  long n_plus() const { return (n_ - 1) / 2; }
  long min_mode() const { return -n_minus(); }
  long max_mode() const { return n_plus(); }

  bool contains(long mode) const { return mode >= min_mode() && mode <= max_mode(); }
  long index_of(long mode) const { return mode + n_minus(); }
  long mode_at(long index) const { return index - n_minus(); }

  friend bool operator==(const BandWindow&, const BandWindow&) = default;

 private:
  long n_;
};

/// Sobolev smoothness index. Mode j carries weight (1 + |j|)^s.
struct SobolevOrder {
  double s = 0.0;

  double weight(long j) const;
};

class CoeffVec {
 public:
  /// The zero function, stored as a single mode-0 coefficient.
  CoeffVec();
  CoeffVec(long j_min, std::vector<cd> coeffs);
  /// Sparse literal: {{mode, value}, ...}; the window spans min..max mode.
  CoeffVec(std::initializer_list<std::pair<long, cd>> entries);

  static CoeffVec zeros(long j_min, long j_max);
  static CoeffVec zeros(const BandWindow& w);

  long j_min() const { return j_min_; }
  long j_max() const { return j_min_ + static_cast<long>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  bool contains(long mode) const { return mode >= j_min() && mode <= j_max(); }

  /// Coefficient of mode j; zero outside the window.
  cd operator[](long mode) const { return contains(mode) ? coeffs_[mode - j_min_] : cd{}; }
  /// Mutable access; mode must lie inside the window.
  cd& at(long mode);

  std::span<const cd> coeffs() const { return coeffs_; }
  std::span<cd> coeffs() { return coeffs_; }

  /// Copy onto modes lo..hi (zero-padding or truncating).
  CoeffVec padded(long lo, long hi) const;

  CoeffVec& operator+=(const CoeffVec& other);
  CoeffVec& operator-=(const CoeffVec& other);
  CoeffVec& operator*=(cd scale);

  friend CoeffVec operator+(CoeffVec a, const CoeffVec& b) { return a += b; }
  friend CoeffVec operator-(CoeffVec a, const CoeffVec& b) { return a -= b; }
  friend CoeffVec operator*(cd scale, CoeffVec a) { return a *= scale; }

 private:
  long j_min_;
  std::vector<cd> coeffs_;
};

/// P_N u: keep modes inside the window, zero elsewhere. Output window is w.
CoeffVec project(const CoeffVec& u, const BandWindow& w);

/// I_N from N equispaced samples; output window is BandWindow(values.size()).
CoeffVec interpolate(std::span<const cd> values);

/// u(x_l), l = 0..n-1, exact for any window (modes are folded mod n first).
std::vector<cd> evaluate_on_grid(const CoeffVec& u, long n);

/// I_N u computed from the samples of u on the n-point grid.
CoeffVec interpolate_function(const CoeffVec& u, long n);

/// (sum_j |u_j|^2 (1+|j|)^{2s})^{1/2}.
double sobolev_norm(const CoeffVec& u, SobolevOrder s);

/// sobolev_norm(u - v) after zero-padding both to the union window.
double diff_norm(const CoeffVec& u, const CoeffVec& v, SobolevOrder s);

/// Exact product of two Laurent polynomials (grid product on a window that
/// holds every product mode, so nothing aliases).
CoeffVec multiply(const CoeffVec& u, const CoeffVec& v);

enum class PowerLaw {
  g,   // g_j = (1+|j|)^-alpha
  h,   // h_0 = 1, h_j = sign(j) (1+|j|)^-alpha
  gg,  // g_0 = 1, g_j = epsilon (1+|j|)^-alpha
};

/// Power-law test coefficients restricted to the window. alpha must exceed 1/2.
CoeffVec synth_powerlaw(PowerLaw kind, double alpha, double epsilon, const BandWindow& w);

}  // namespace perispec
