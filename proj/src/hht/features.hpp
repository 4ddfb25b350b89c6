#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hht/emd.hpp"
#include "hht/signal.hpp"

namespace hhelm {

inline constexpr std::size_t kStatCount = 11;
inline constexpr std::size_t kModeBins = 64;

/// Order of the values returned by stat_features.
enum class Statistic : std::size_t {
  Mean,
  StdDev,          // sample (n − 1)
  Min,
  Max,
  Skewness,        // Fisher-Pearson g1
  Kurtosis,        // fourth standardized moment (not excess)
  Mode,            // midpoint of the fullest of 64 equal-width bins
  CentralMoment5,
  Cumulant4,       // μ4 − 3μ2²
  Correlation,     // Pearson, against the reference series
  Covariance,      // sample, against the reference series
};

std::string_view statistic_name(Statistic s);

using StatValues = std::array<double, kStatCount>;

/// Throws ShapeMismatch when lengths differ or are below 2.
StatValues stat_features(std::span<const double> series, std::span<const double> reference);

enum class FeatureSource {
  RawImf,     // the IMF samples
  Amplitude,  // instantaneous amplitude of the IMF's analytic signal
};

std::string_view source_name(FeatureSource s);

struct FeatureConfig {
  bool raw_imf = true;
  bool amplitude = true;

  std::vector<FeatureSource> sources() const;
  void validate() const;
};

struct FeatureSlot {
  std::size_t imf;  // 0-based
  FeatureSource source;
  Statistic stat;
};

/// Column layout of a feature vector: imf-major, then source, then statistic.
struct FeatureLayout {
  std::vector<FeatureSlot> slots;

  static FeatureLayout make(std::size_t max_imfs, const FeatureConfig& config);
  std::size_t width() const { return slots.size(); }
  std::vector<std::string> names() const;
};

struct FeatureVector {
  std::vector<double> values;
  std::size_t imf_count = 0;  // IMFs actually present before padding
};

/// EMD of an (already filtered) trial, then per-IMF statistics on each
/// configured source with the trial itself as the reference series. Slots of
/// absent IMFs stay zero.
FeatureVector trial_feature_vector(const Signal& trial, const EmdConfig& emd_config,
                                   const FeatureConfig& feature_config);

}  // namespace hhelm
