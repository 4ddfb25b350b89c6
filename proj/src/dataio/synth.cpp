#include "dataio/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "core/random.hpp"

namespace hhelm {

void SynthConfig::validate() const {
  if (n_per_class < 1) fail(ErrorCode::InvalidConfig, "n_per_class must be >= 1");
  if (!(drift_amplitude >= 0.0) || !(noise_sigma >= 0.0) || !(alpha_amplitude >= 0.0)) {
    fail(ErrorCode::InvalidConfig, "amplitudes must be finite and >= 0");
  }
  if (!std::isfinite(drift_amplitude) || !std::isfinite(noise_sigma) || !std::isfinite(alpha_amplitude)) {
    fail(ErrorCode::InvalidConfig, "amplitudes must be finite and >= 0");
  }
  if (!(fs > 0.0) || !std::isfinite(fs)) fail(ErrorCode::InvalidConfig, "fs must be > 0");
  if (standard_length(fs) < 4) fail(ErrorCode::InvalidConfig, "fs too low for an 8 s trial");
}

TrialSet synth_scp(const SynthConfig& config) {
  config.validate();
  const std::size_t n = standard_length(config.fs);
  const auto active_start = static_cast<double>(std::llround(kBaselineSeconds * config.fs));
  const double ramp_len = kRampSeconds * config.fs;

  // Raised-cosine onset reaching full shift exactly at the first active sample.
  std::vector<double> shape(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) - (active_start - ramp_len)) / ramp_len;
    shape[i] = u <= 0.0 ? 0.0 : u >= 1.0 ? 1.0 : 0.5 - 0.5 * std::cos(std::numbers::pi * u);
  }

  TrialSet set;
  set.fs = config.fs;
  set.trials.reserve(2 * config.n_per_class);
  for (std::size_t k = 0; k < 2 * config.n_per_class; ++k) {
    const Label label = (k % 2 == 0) ? Label::Negativity : Label::Positivity;
    const double sign = label == Label::Negativity ? -1.0 : 1.0;

    std::mt19937_64 rng(mix_seed(config.seed, k));
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    const double phase = phase_dist(rng);

    TrialRecord t;
    char id[32];
    std::snprintf(id, sizeof id, "trial_%05zu", k + 1);
    t.id = id;
    t.session = static_cast<int>((k / 2) % 8) + 1;
    t.label = label;
    t.fs = config.fs;
    t.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double time = static_cast<double>(i) / config.fs;
      double v = sign * config.drift_amplitude * shape[i];
      v += config.alpha_amplitude * std::sin(2.0 * std::numbers::pi * kAlphaHz * time + phase);
      v += config.noise_sigma * noise(rng);
      t.samples[i] = v;
    }
    set.trials.push_back(std::move(t));
  }
  return set;
}

}  // namespace hhelm
