#pragma once

#include <cstddef>
#include <cstdint>

#include "dataio/trials.hpp"

namespace hhelm {

inline constexpr double kRampSeconds = 0.25;
inline constexpr double kAlphaHz = 10.0;

/// Synthetic slow-cortical-potential trials, a stand-in for clinical
/// recordings. Each trial is a DC shift that ramps in over the 0.25 s before
/// the active phase and holds through it (negative for negativity trials,
/// positive for positivity), plus a 10 Hz alpha oscillation with random phase
/// and white Gaussian noise.
struct SynthConfig {
  std::size_t n_per_class = 100;
  double drift_amplitude = 10.0;
  double noise_sigma = 10.0;
  double alpha_amplitude = 5.0;
  double fs = 256.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Classes interleaved (negativity first), sessions cycling 1..8 per class,
/// ids `trial_00001`.... Every trial draws from its own seeded stream.
TrialSet synth_scp(const SynthConfig& config);

}  // namespace hhelm
