#include "hht/hilbert.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "core/error.hpp"

namespace hhelm {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
};

class FftwPlan {
 public:
  FftwPlan(std::size_t n, fftw_complex* buf, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) fail(ErrorCode::NumericalFailure, "FFT planning failed");
  }
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace

std::vector<std::complex<double>> analytic_signal(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 4) fail(ErrorCode::InvalidArgument, "analytic signal needs at least 4 samples");

  FftwBuffer buf(n);
  FftwPlan forward(n, buf.data, FFTW_FORWARD);
  FftwPlan backward(n, buf.data, FFTW_BACKWARD);
  for (std::size_t i = 0; i < n; ++i) {
    buf.data[i][0] = x[i];
    buf.data[i][1] = 0.0;
  }
  forward.execute();

  // Bins 1..(n-1)/2 are strictly positive; n/2 is Nyquist when n is even.
  const std::size_t positive_end = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
  for (std::size_t k = 1; k < positive_end; ++k) {
    buf.data[k][0] *= 2.0;
    buf.data[k][1] *= 2.0;
  }
  const std::size_t negative_begin = (n % 2 == 0) ? n / 2 + 1 : (n + 1) / 2;
  for (std::size_t k = negative_begin; k < n; ++k) {
    buf.data[k][0] = 0.0;
    buf.data[k][1] = 0.0;
  }
  backward.execute();

  std::vector<std::complex<double>> z(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = {buf.data[i][0] * scale, buf.data[i][1] * scale};
  return z;
}

std::vector<double> unwrap_phase(std::span<const double> wrapped) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out(wrapped.begin(), wrapped.end());
  double offset = 0.0;
  for (std::size_t i = 1; i < wrapped.size(); ++i) {
    const double delta = wrapped[i] - wrapped[i - 1];
    offset -= two_pi * std::round(delta / two_pi);
    out[i] = wrapped[i] + offset;
  }
  return out;
}

std::vector<double> instantaneous_frequency(std::span<const double> phase, double fs) {
  const std::size_t n = phase.size();
  std::vector<double> f(n, 0.0);
  if (n < 2) return f;
  const double scale = fs / (2.0 * std::numbers::pi);
  f[0] = (phase[1] - phase[0]) * scale;
  f[n - 1] = (phase[n - 1] - phase[n - 2]) * scale;
  for (std::size_t i = 1; i + 1 < n; ++i) f[i] = 0.5 * (phase[i + 1] - phase[i - 1]) * scale;
  return f;
}

AnalyticSeries hilbert_spectrum(std::span<const double> x, double fs) {
  const auto z = analytic_signal(x);
  AnalyticSeries out;
  out.amplitude.resize(z.size());
  std::vector<double> wrapped(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out.amplitude[i] = std::abs(z[i]);
    wrapped[i] = std::arg(z[i]);
  }
  out.phase = unwrap_phase(wrapped);
  out.inst_freq = instantaneous_frequency(out.phase, fs);
  return out;
}

}  // namespace hhelm
