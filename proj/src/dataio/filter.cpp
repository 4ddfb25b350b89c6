#include "dataio/filter.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hhelm {

void FilterSpec::validate(double fs) const {
  if (!(cutoff > 0.0) || !(cutoff < fs / 2.0)) {
    fail(ErrorCode::InvalidConfig, "cutoff " + std::to_string(cutoff) + " Hz must lie in (0, fs/2) for fs " +
                                       std::to_string(fs));
  }
  if (taps % 2 == 0 || taps < 33) fail(ErrorCode::InvalidConfig, "filter taps must be odd and >= 33");
}

std::vector<double> design_lowpass(const FilterSpec& spec, double fs) {
  spec.validate(fs);
  const std::size_t n = spec.taps;
  const double centre = static_cast<double>(n - 1) / 2.0;
  const double fc = spec.cutoff / fs;  // cycles per sample
  std::vector<double> h(n);
  // Compute the first half and mirror it so the kernel is exactly symmetric.
  for (std::size_t i = 0; i <= n / 2; ++i) {
    const double m = static_cast<double>(i) - centre;
    const double sinc = m == 0.0 ? 2.0 * fc : std::sin(2.0 * std::numbers::pi * fc * m) / (std::numbers::pi * m);
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    h[i] = sinc * window;
    h[n - 1 - i] = h[i];
  }
  double sum = 0.0;
  for (double v : h) sum += v;
  for (double& v : h) v /= sum;
  return h;
}

Signal lowpass_filter(const Signal& signal, const FilterSpec& spec) {
  signal.validate();
  const auto h = design_lowpass(spec, signal.fs);
  const auto& x = signal.samples;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const auto half = static_cast<std::ptrdiff_t>(spec.taps / 2);

  // Point reflection about an endpoint; recursion covers pads longer than n.
  auto at = [&](auto&& self, std::ptrdiff_t i) -> double {
    if (i < 0) return 2.0 * x.front() - self(self, -i);
    if (i >= n) return 2.0 * x.back() - self(self, 2 * (n - 1) - i);
    return x[static_cast<std::size_t>(i)];
  };

  Signal out{std::vector<double>(x.size()), signal.fs};
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    double acc = 0.0;
    if (t >= half && t + half < n) {
      const double* base = x.data() + (t - half);
      for (std::size_t k = 0; k < h.size(); ++k) acc += h[k] * base[k];
    } else {
      for (std::size_t k = 0; k < h.size(); ++k) acc += h[k] * at(at, t - half + static_cast<std::ptrdiff_t>(k));
    }
    out.samples[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

}  // namespace hhelm
