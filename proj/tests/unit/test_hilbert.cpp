#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "hht/hilbert.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace hhelm;
using testing::code_of;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("analytic signal of a cosine has unit amplitude and constant frequency") {
  const double fs = 256.0;
  const std::size_t n = 2048;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(2.0 * kPi * 5.0 * static_cast<double>(i) / fs);
  const AnalyticSeries a = hilbert_spectrum(x, fs);
  for (std::size_t i = n / 20; i < n - n / 20; ++i) {
    CHECK(std::fabs(a.amplitude[i] - 1.0) <= 0.01);
    CHECK(std::fabs(a.inst_freq[i] - 5.0) <= 0.1);
  }
}

TEST_CASE("constant input stays constant") {
  const std::vector<double> x(64, -3.0);
  const auto z = analytic_signal(x);
  for (const auto& v : z) {
    CHECK(v.real() == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(std::fabs(v.imag()) < 1e-12);
  }
  for (double a : hilbert_spectrum(x, 100.0).amplitude) CHECK(a == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("linear chirp frequency tracks the closed-form ramp") {
  const double fs = 256.0;
  const double dur = 8.0;
  const std::size_t n = static_cast<std::size_t>(fs * dur);
  const double f0 = 2.0, f1 = 10.0, rate = (f1 - f0) / dur;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    x[i] = std::cos(2.0 * kPi * (f0 * t + 0.5 * rate * t * t));
  }
  const AnalyticSeries a = hilbert_spectrum(x, fs);
  for (std::size_t i = n / 20; i < n - n / 20; ++i) {
    const double expected = f0 + rate * static_cast<double>(i) / fs;
    CHECK(std::fabs(a.inst_freq[i] - expected) <= 0.05 * expected);
  }
}

TEST_CASE("FFT construction matches a brute-force DFT for odd and even lengths") {
  for (std::size_t n : {64u, 65u, 100u, 129u}) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (double& v : x) v = g(rng);
    const auto fast = analytic_signal(x);
    const auto slow = oracle::dft_analytic(x);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(fast[i] - slow[i]) < 1e-10);
    }
  }
}

TEST_CASE("real part fidelity and nonnegative amplitude") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = oracle::multitone(1000 + seed, 256.0, seed, 0.3);
    const auto z = analytic_signal(x);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::fabs(z[i].real() - x[i]));
      scale = std::max(scale, std::fabs(x[i]));
    }
    CHECK(worst <= 1e-9 * scale);
    const AnalyticSeries a = hilbert_spectrum(x, 256.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(a.amplitude[i] >= 0.0);
      CHECK(std::isfinite(a.inst_freq[i]));
      if (i > 0) CHECK(std::fabs(a.phase[i] - a.phase[i - 1]) <= kPi);
    }
  }
}

TEST_CASE("instantaneous_frequency examples") {
  const double fs = 256.0;
  std::vector<double> linear(300), flat(300, 1.25), quad(300);
  for (std::size_t i = 0; i < 300; ++i) {
    const double t = static_cast<double>(i) / fs;
    linear[i] = 2.0 * kPi * 5.0 * t;
    quad[i] = 2.0 * kPi * (3.0 * t + 4.0 * t * t);
  }
  for (double f : instantaneous_frequency(linear, fs)) CHECK(std::fabs(f - 5.0) < 1e-9);
  for (double f : instantaneous_frequency(flat, fs)) CHECK(f == 0.0);
  const auto qf = instantaneous_frequency(quad, fs);
  for (std::size_t i = 1; i + 1 < 300; ++i) {
    const double t = static_cast<double>(i) / fs;
    CHECK(std::fabs(qf[i] - (3.0 + 8.0 * t)) < 1e-6);
  }
}

TEST_CASE("unwrap_phase removes 2π jumps") {
  std::vector<double> truth(200), wrapped(200);
  for (std::size_t i = 0; i < 200; ++i) {
    truth[i] = 0.3 * static_cast<double>(i);
    wrapped[i] = std::remainder(truth[i], 2.0 * kPi);
  }
  const auto u = unwrap_phase(wrapped);
  for (std::size_t i = 0; i < 200; ++i) CHECK(std::fabs(u[i] - truth[i]) < 1e-9);
}

TEST_CASE("short input is rejected") {
  CHECK(code_of([] { analytic_signal(std::vector<double>{1, 2, 3}); }) == ErrorCode::InvalidArgument);
}
