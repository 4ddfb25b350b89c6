#include "hht/features.hpp"

#include <algorithm>
#include <cmath>

#include "hht/hilbert.hpp"

namespace hhelm {

std::string_view statistic_name(Statistic s) {
  switch (s) {
    case Statistic::Mean: return "mean";
    case Statistic::StdDev: return "std";
    case Statistic::Min: return "min";
    case Statistic::Max: return "max";
    case Statistic::Skewness: return "skew";
    case Statistic::Kurtosis: return "kurt";
    case Statistic::Mode: return "mode";
    case Statistic::CentralMoment5: return "moment5";
    case Statistic::Cumulant4: return "cumulant4";
    case Statistic::Correlation: return "corr";
    case Statistic::Covariance: return "cov";
  }
  return "unknown";
}

std::string_view source_name(FeatureSource s) {
  return s == FeatureSource::RawImf ? "raw" : "amp";
}

StatValues stat_features(std::span<const double> series, std::span<const double> reference) {
  const std::size_t n = series.size();
  if (n != reference.size()) fail(ErrorCode::ShapeMismatch, "series and reference lengths differ");
  if (n < 2) fail(ErrorCode::ShapeMismatch, "statistics need at least 2 samples");

  StatValues out{};
  auto set = [&out](Statistic s, double v) { out[static_cast<std::size_t>(s)] = v; };

  const auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  set(Statistic::Min, lo);
  set(Statistic::Max, hi);
  const bool constant = lo == hi;

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  if (constant) mean = lo;
  set(Statistic::Mean, mean);

  double m2 = 0.0, m3 = 0.0, m4 = 0.0, m5 = 0.0;
  for (double v : series) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
    m5 += d2 * d2 * d;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double sum_sq = m2;
  m2 *= inv_n;
  m3 *= inv_n;
  m4 *= inv_n;
  m5 *= inv_n;

  set(Statistic::StdDev, constant ? 0.0 : std::sqrt(sum_sq / static_cast<double>(n - 1)));
  set(Statistic::Skewness, constant ? 0.0 : m3 / std::pow(m2, 1.5));
  set(Statistic::Kurtosis, constant ? 0.0 : m4 / (m2 * m2));
  set(Statistic::CentralMoment5, m5);
  set(Statistic::Cumulant4, m4 - 3.0 * m2 * m2);

  if (constant) {
    set(Statistic::Mode, lo);
  } else {
    std::array<std::size_t, kModeBins> counts{};
    const double width = (hi - lo) / static_cast<double>(kModeBins);
    for (double v : series) {
      auto bin = static_cast<std::size_t>((v - lo) / width);
      counts[std::min(bin, kModeBins - 1)]++;
    }
    const auto best = static_cast<std::size_t>(
        std::distance(counts.begin(), std::max_element(counts.begin(), counts.end())));
    set(Statistic::Mode, lo + (static_cast<double>(best) + 0.5) * width);
  }

  const auto [rlo, rhi] = std::minmax_element(reference.begin(), reference.end());
  const bool ref_constant = *rlo == *rhi;
  double ref_mean = 0.0;
  for (double v : reference) ref_mean += v;
  ref_mean /= static_cast<double>(n);
  if (ref_constant) ref_mean = *rlo;

  double cross = 0.0;
  double ref_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = reference[i] - ref_mean;
    cross += (series[i] - mean) * dr;
    ref_sq += dr * dr;
  }
  set(Statistic::Covariance, cross / static_cast<double>(n - 1));
  set(Statistic::Correlation,
      (constant || ref_constant) ? 0.0 : cross / std::sqrt(sum_sq * ref_sq));
  return out;
}

std::vector<FeatureSource> FeatureConfig::sources() const {
  std::vector<FeatureSource> out;
  if (raw_imf) out.push_back(FeatureSource::RawImf);
  if (amplitude) out.push_back(FeatureSource::Amplitude);
  return out;
}

void FeatureConfig::validate() const {
  if (!raw_imf && !amplitude) fail(ErrorCode::InvalidConfig, "at least one feature source is required");
}

FeatureLayout FeatureLayout::make(std::size_t max_imfs, const FeatureConfig& config) {
  config.validate();
  FeatureLayout layout;
  const auto sources = config.sources();
  layout.slots.reserve(max_imfs * sources.size() * kStatCount);
  for (std::size_t imf = 0; imf < max_imfs; ++imf)
    for (FeatureSource src : sources)
      for (std::size_t s = 0; s < kStatCount; ++s)
        layout.slots.push_back({imf, src, static_cast<Statistic>(s)});
  return layout;
}

std::vector<std::string> FeatureLayout::names() const {
  std::vector<std::string> out;
  out.reserve(slots.size());
  for (const auto& slot : slots) {
    out.push_back("imf" + std::to_string(slot.imf + 1) + "_" + std::string(source_name(slot.source)) +
                  "_" + std::string(statistic_name(slot.stat)));
  }
  return out;
}

FeatureVector trial_feature_vector(const Signal& trial, const EmdConfig& emd_config,
                                   const FeatureConfig& feature_config) {
  feature_config.validate();
  const ImfSet imfs = emd(trial, emd_config);
  const auto sources = feature_config.sources();

  FeatureVector out;
  out.values.assign(emd_config.max_imfs * sources.size() * kStatCount, 0.0);
  out.imf_count = std::min(imfs.imfs.size(), emd_config.max_imfs);

  std::size_t offset = 0;
  for (std::size_t k = 0; k < emd_config.max_imfs; ++k) {
    for (FeatureSource src : sources) {
      if (k < out.imf_count) {
        const auto& imf = imfs.imfs[k];
        StatValues stats;
        if (src == FeatureSource::RawImf) {
          stats = stat_features(imf, trial.samples);
        } else {
          stats = stat_features(hilbert_spectrum(imf, trial.fs).amplitude, trial.samples);
        }
        std::copy(stats.begin(), stats.end(), out.values.begin() + static_cast<std::ptrdiff_t>(offset));
      }
      offset += kStatCount;
    }
  }
  return out;
}

}  // namespace hhelm
