#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dataio/filter.hpp"
#include "dataio/trials.hpp"
#include "elm/elm.hpp"
#include "eval/eval.hpp"
#include "hht/emd.hpp"
#include "hht/features.hpp"

namespace hhelm {

/// Union of the stage configurations. Defaults: 10 Hz / 257-tap low-pass,
/// SD 0.2 with at most 100 siftings and 6 IMFs, raw + amplitude features,
/// layers 40-30 with the Hessenberg kernel at λ = 1e-3, 5 folds, seed 1.
struct PipelineConfig {
  FilterSpec filter;
  EmdConfig emd;
  FeatureConfig features;
  TrainConfig train{{40, 30}, SolverKind{}, 1, Activation::Sigmoid};
  std::size_t k = 5;
  std::uint64_t seed = 1;

  void validate() const;
  /// Flat key/value echo of every field, for reproducibility headers.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

struct FeatureSet {
  std::vector<std::string> ids;
  std::vector<Label> labels;
  std::vector<std::string> names;
  Matrix x;  // one row per trial

  std::size_t size() const { return ids.size(); }
};

/// Low-pass filter then EMD of one trial.
ImfSet decompose_trial(const TrialRecord& trial, const PipelineConfig& config);
Signal filtered_signal(const TrialRecord& trial, const FilterSpec& filter);

/// Columns imf_1..imf_K,residual; one row per sample.
std::string format_imf_csv(const ImfSet& imfs, std::span<const std::string> comments = {});

/// Filter → EMD → per-IMF statistics for every trial. Trials are processed in
/// parallel; row order follows the trial set.
FeatureSet extract_features(const TrialSet& trials, const PipelineConfig& config);

/// Header `trial_id,label,<feature names>`.
std::string format_features_csv(const FeatureSet& set, std::span<const std::string> comments = {});
FeatureSet parse_features_csv(std::string_view text);
void save_features_csv(const FeatureSet& set, const std::string& path,
                       std::span<const std::string> comments = {});
FeatureSet load_features_csv(const std::string& path);

/// Cross-validation of a feature set with the pipeline's train config, k and
/// seed; the full pipeline config is echoed into the report.
CvReport evaluate_features(const FeatureSet& features, const PipelineConfig& config);

std::vector<std::string> echo_lines(const PipelineConfig& config);

}  // namespace hhelm
