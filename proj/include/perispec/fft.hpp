#pragma once

#include <complex>
#include <span>

namespace perispec {

/// RAII handle on a 1-D complex FFTW plan of fixed length.
///
/// Planning is serialized behind a process-wide mutex; execute() is safe to
/// call concurrently from several threads on distinct buffers.
class FftPlan {
 public:
  enum class Direction { forward, backward };

  FftPlan(long n, Direction dir);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  long size() const { return n_; }

  /// forward:  out_k = sum_l in_l e^{-2 pi i k l / n}
  /// backward: out_l = sum_k in_k e^{+2 pi i k l / n}
  /// Unnormalized. in and out may alias.
  void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

 private:
  long n_ = 0;
  void* plan_ = nullptr;
};

}  // namespace perispec
