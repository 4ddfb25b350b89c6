#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hhelm {

/// Instantaneous amplitude, unwrapped phase and frequency of one series.
struct AnalyticSeries {
  std::vector<double> amplitude;
  std::vector<double> phase;      // radians, unwrapped
  std::vector<double> inst_freq;  // Hz
};

/// Analytic signal by the one-sided spectrum construction: negative bins
/// zeroed, strictly positive bins doubled, DC (and Nyquist for even length)
/// kept as is.
std::vector<std::complex<double>> analytic_signal(std::span<const double> x);

/// Removes 2π jumps between consecutive phase samples.
std::vector<double> unwrap_phase(std::span<const double> wrapped);

/// d(phase)/dt · fs / 2π; central differences inside, one-sided at the edges.
std::vector<double> instantaneous_frequency(std::span<const double> phase, double fs);

AnalyticSeries hilbert_spectrum(std::span<const double> x, double fs);

}  // namespace hhelm
