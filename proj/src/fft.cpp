#include "perispec/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "perispec/error.hpp"

namespace perispec {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FftPlan::FftPlan(long n, Direction dir) : n_(n) {
  if (n < 1) throw InvalidArgument("FftPlan: length must be positive, got " + std::to_string(n));
  // Out-of-place, unaligned plan so execute() can be pointed at arbitrary
  // std::vector storage through the new-array interface.
  std::vector<std::complex<double>> in(n), out(n);
  const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(in.data()), as_fftw(out.data()), sign,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_ == nullptr) throw Error("FftPlan: FFTW failed to create a plan of length " + std::to_string(n));
}

FftPlan::~FftPlan() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

FftPlan::FftPlan(FftPlan&& other) noexcept
    : n_(std::exchange(other.n_, 0)), plan_(std::exchange(other.plan_, nullptr)) {}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    std::swap(n_, other.n_);
    std::swap(plan_, other.plan_);
  }
  return *this;
}

void FftPlan::execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const {
  if (static_cast<long>(in.size()) != n_ || static_cast<long>(out.size()) != n_)
    throw InvalidArgument("FftPlan::execute: buffer length does not match plan length");
  // c2c out-of-place transforms leave the input untouched.
  auto* src = const_cast<std::complex<double>*>(in.data());
  if (src == out.data()) {
    std::vector<std::complex<double>> tmp(in.begin(), in.end());
    fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(tmp.data()), as_fftw(out.data()));
    return;
  }
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(src), as_fftw(out.data()));
}

}  // namespace perispec
