#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/label.hpp"
#include "elm/elm.hpp"
#include "linalg/matrix.hpp"

namespace hhelm {

/// 2×2 tally with positivity as the positive class.
struct ContingencyTable {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

/// Percentages. A metric whose denominator is zero is left empty.
struct MetricsReport {
  std::optional<double> selectivity;  // TN / (TN + FP), i.e. specificity
  std::optional<double> sensitivity;  // TP / (TP + FN)
  std::optional<double> accuracy;     // (TP + TN) / total

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

ContingencyTable contingency(std::span<const Label> predicted, std::span<const Label> actual);
MetricsReport metrics(const ContingencyTable& table);

/// fold_of[i] is the fold that holds sample i out.
using FoldAssignment = std::vector<std::size_t>;

/// Seeded shuffle within each class, then round-robin dealing that carries
/// on across classes, so per-class and total fold sizes each differ by ≤ 1.
FoldAssignment stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed);

std::vector<std::size_t> fold_members(const FoldAssignment& folds, std::size_t fold);
std::vector<std::size_t> fold_complement(const FoldAssignment& folds, std::size_t fold);

/// Subsamples the majority class down to the minority count within `train`.
/// Result is sorted ascending.
std::vector<std::size_t> balance_train_set(std::span<const std::size_t> train,
                                           std::span<const Label> labels, std::uint64_t seed);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t n_train = 0;  // after balancing
  std::size_t n_test = 0;
  ContingencyTable table;
  MetricsReport metrics;
};

struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> std_dev;  // sample standard deviation over defined folds
  std::optional<double> min;
  std::optional<double> max;
  std::size_t defined_folds = 0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

MetricSummary summarize(std::span<const std::optional<double>> values);

struct CvReport {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  TrainConfig config;
  /// Extra key/value pairs echoed into the serialized report (pipeline flags).
  std::vector<std::pair<std::string, std::string>> config_echo;
  FoldAssignment fold_of;
  std::vector<FoldResult> folds;
  MetricSummary selectivity;
  MetricSummary sensitivity;
  MetricSummary accuracy;
  std::vector<Label> predictions;  // out-of-fold prediction per sample
};

/// Model trained for one fold: balanced training portion only.
DeepElmModel fit_fold(const Matrix& features, std::span<const Label> labels, const FoldAssignment& folds,
                      std::size_t fold, const TrainConfig& config, std::uint64_t seed);

CvReport cross_validate(const Matrix& features, std::span<const Label> labels, const TrainConfig& config,
                        std::size_t k, std::uint64_t seed);

std::string report_to_json(const CvReport& report);
CvReport report_from_json(std::string_view text);
void save_report(const CvReport& report, const std::string& path);
CvReport load_report(const std::string& path);

}  // namespace hhelm
