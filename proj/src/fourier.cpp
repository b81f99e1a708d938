#include "perispec/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "perispec/error.hpp"
#include "perispec/fft.hpp"

namespace perispec {

namespace {

long floor_mod(long j, long n) {
  const long r = j % n;
  return r < 0 ? r + n : r;
}

}  // namespace

BandWindow::BandWindow(long n) : n_(n) {
  if (n < 1) throw InvalidArgument("BandWindow: N must be positive, got " + std::to_string(n));
}

double SobolevOrder::weight(long j) const { return std::pow(1.0 + static_cast<double>(std::labs(j)), s); }

CoeffVec::CoeffVec() : j_min_(0), coeffs_(1) {}

CoeffVec::CoeffVec(long j_min, std::vector<cd> coeffs) : j_min_(j_min), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("CoeffVec: coefficient window must hold at least one mode");
}

CoeffVec::CoeffVec(std::initializer_list<std::pair<long, cd>> entries) : CoeffVec() {
  if (entries.size() == 0) return;
  long lo = entries.begin()->first;
  long hi = lo;
  for (const auto& [mode, value] : entries) {
    lo = std::min(lo, mode);
    hi = std::max(hi, mode);
  }
  j_min_ = lo;
  coeffs_.assign(hi - lo + 1, cd{});
  for (const auto& [mode, value] : entries) coeffs_[mode - lo] += value;
}

CoeffVec CoeffVec::zeros(long j_min, long j_max) {
  if (j_max < j_min) throw InvalidArgument("CoeffVec::zeros: empty mode range");
  return CoeffVec(j_min, std::vector<cd>(j_max - j_min + 1));
}

CoeffVec CoeffVec::zeros(const BandWindow& w) { return zeros(w.min_mode(), w.max_mode()); }

cd& CoeffVec::at(long mode) {
  if (!contains(mode))
    throw InvalidArgument("CoeffVec::at: mode " + std::to_string(mode) + " outside window [" +
                          std::to_string(j_min()) + ", " + std::to_string(j_max()) + "]");
  return coeffs_[mode - j_min_];
}

CoeffVec CoeffVec::padded(long lo, long hi) const {
  CoeffVec out = zeros(lo, hi);
  const long a = std::max(lo, j_min());
  const long b = std::min(hi, j_max());
  for (long j = a; j <= b; ++j) out.coeffs_[j - lo] = coeffs_[j - j_min_];
  return out;
}

CoeffVec& CoeffVec::operator+=(const CoeffVec& other) {
  if (other.j_min() < j_min() || other.j_max() > j_max())
    *this = padded(std::min(j_min(), other.j_min()), std::max(j_max(), other.j_max()));
  for (long j = other.j_min(); j <= other.j_max(); ++j) coeffs_[j - j_min_] += other[j];
  return *this;
}

CoeffVec& CoeffVec::operator-=(const CoeffVec& other) {
  if (other.j_min() < j_min() || other.j_max() > j_max())
    *this = padded(std::min(j_min(), other.j_min()), std::max(j_max(), other.j_max()));
  for (long j = other.j_min(); j <= other.j_max(); ++j) coeffs_[j - j_min_] -= other[j];
  return *this;
}

CoeffVec& CoeffVec::operator*=(cd scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

CoeffVec project(const CoeffVec& u, const BandWindow& w) { return u.padded(w.min_mode(), w.max_mode()); }

CoeffVec interpolate(std::span<const cd> values) {
  if (values.empty()) throw InvalidArgument("interpolate: no samples");
  const long n = static_cast<long>(values.size());
  const BandWindow w(n);
  std::vector<cd> spectrum(n);
  FftPlan(n, FftPlan::Direction::forward).execute(values, spectrum);
  CoeffVec out = CoeffVec::zeros(w);
  const double scale = 1.0 / static_cast<double>(n);
  for (long j = w.min_mode(); j <= w.max_mode(); ++j) out.at(j) = spectrum[floor_mod(j, n)] * scale;
  return out;
}

std::vector<cd> evaluate_on_grid(const CoeffVec& u, long n) {
  if (n < 1) throw InvalidArgument("evaluate_on_grid: grid size must be positive");
  std::vector<cd> folded(n);
  for (long j = u.j_min(); j <= u.j_max(); ++j) folded[floor_mod(j, n)] += u[j];
  std::vector<cd> samples(n);
  FftPlan(n, FftPlan::Direction::backward).execute(folded, samples);
  return samples;
}

CoeffVec interpolate_function(const CoeffVec& u, long n) { return interpolate(evaluate_on_grid(u, n)); }

double sobolev_norm(const CoeffVec& u, SobolevOrder s) {
  double total = 0.0;
  for (long j = u.j_min(); j <= u.j_max(); ++j) {
    const double w = s.weight(j);
    total += std::norm(u[j]) * w * w;
  }
  return std::sqrt(total);
}

double diff_norm(const CoeffVec& u, const CoeffVec& v, SobolevOrder s) {
  const long lo = std::min(u.j_min(), v.j_min());
  const long hi = std::max(u.j_max(), v.j_max());
  return sobolev_norm(u.padded(lo, hi) - v, s);
}

CoeffVec multiply(const CoeffVec& u, const CoeffVec& v) {
  const long lo = u.j_min() + v.j_min();
  const long hi = u.j_max() + v.j_max();
  const long reach = std::max(std::labs(lo), std::labs(hi));
  const long n = 2 * reach + 1;
  auto a = evaluate_on_grid(u, n);
  const auto b = evaluate_on_grid(v, n);
  for (long l = 0; l < n; ++l) a[l] *= b[l];
  return interpolate(a).padded(lo, hi);
}

CoeffVec synth_powerlaw(PowerLaw kind, double alpha, double epsilon, const BandWindow& w) {
  if (!(alpha > 0.5))
    throw InvalidArgument("synth_powerlaw: alpha must exceed 1/2 for square-summable coefficients, got " +
                          std::to_string(alpha));
  CoeffVec out = CoeffVec::zeros(w);
  for (long j = w.min_mode(); j <= w.max_mode(); ++j) {
    const double decay = std::pow(1.0 + static_cast<double>(std::labs(j)), -alpha);
    double value = 0.0;
    switch (kind) {
      case PowerLaw::g:
        value = decay;
        break;
      case PowerLaw::h:
        value = j == 0 ? 1.0 : (j > 0 ? decay : -decay);
        break;
      case PowerLaw::gg:
        value = j == 0 ? 1.0 : epsilon * decay;
        break;
    }
    out.at(j) = value;
  }
  return out;
}

}  // namespace perispec
