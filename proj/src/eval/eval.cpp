#include "eval/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "core/error.hpp"
#include "core/random.hpp"

namespace hhelm {

namespace {

void check_label(Label l) {
  if (class_index(l) >= kClassCount) {
    fail(ErrorCode::InvalidLabel, "label value " + std::to_string(class_index(l)));
  }
}

std::optional<double> percent(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

// Fold seeds are separated from the split seed by stream index.
constexpr std::uint64_t kBalanceStream = 1000;

}  // namespace

ContingencyTable contingency(std::span<const Label> predicted, std::span<const Label> actual) {
  if (predicted.size() != actual.size() || predicted.empty()) {
    fail(ErrorCode::ShapeMismatch, "predicted and actual label vectors must have equal nonzero length");
  }
  ContingencyTable t;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    check_label(predicted[i]);
    check_label(actual[i]);
    const bool pred_pos = predicted[i] == Label::Positivity;
    const bool act_pos = actual[i] == Label::Positivity;
    if (pred_pos && act_pos) ++t.tp;
    else if (pred_pos) ++t.fp;
    else if (act_pos) ++t.fn;
    else ++t.tn;
  }
  return t;
}

MetricsReport metrics(const ContingencyTable& table) {
  if (table.total() == 0) fail(ErrorCode::InvalidArgument, "contingency table is empty");
  return MetricsReport{percent(table.tn, table.tn + table.fp), percent(table.tp, table.tp + table.fn),
                       percent(table.tp + table.tn, table.total())};
}

FoldAssignment stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) fail(ErrorCode::InvalidConfig, "k must be >= 2");
  std::array<std::vector<std::size_t>, kClassCount> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    check_label(labels[i]);
    by_class[class_index(labels[i])].push_back(i);
  }
  for (std::size_t c = 0; c < kClassCount; ++c) {
    if (by_class[c].size() < k) {
      fail(ErrorCode::InsufficientClassMembers, "class '" + std::string(kClassNames[c]) + "' has " +
                                                    std::to_string(by_class[c].size()) + " members, k = " +
                                                    std::to_string(k));
    }
  }

  std::mt19937_64 rng(seed);
  FoldAssignment fold_of(labels.size(), 0);
  std::size_t next = 0;
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t idx : members) {
      fold_of[idx] = next;
      next = (next + 1) % k;
    }
  }
  return fold_of;
}

std::vector<std::size_t> fold_members(const FoldAssignment& folds, std::size_t fold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < folds.size(); ++i)
    if (folds[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> fold_complement(const FoldAssignment& folds, std::size_t fold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < folds.size(); ++i)
    if (folds[i] != fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> balance_train_set(std::span<const std::size_t> train,
                                           std::span<const Label> labels, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, kClassCount> by_class;
  for (std::size_t idx : train) {
    if (idx >= labels.size()) fail(ErrorCode::ShapeMismatch, "training index out of range");
    check_label(labels[idx]);
    by_class[class_index(labels[idx])].push_back(idx);
  }
  std::size_t n = by_class[0].size();
  for (const auto& members : by_class) {
    if (members.empty()) fail(ErrorCode::DegenerateLabels, "training set lacks a class");
    n = std::min(n, members.size());
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> out;
  out.reserve(n * kClassCount);
  for (auto& members : by_class) {
    if (members.size() > n) {
      std::sort(members.begin(), members.end());
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(n);
    }
    out.insert(out.end(), members.begin(), members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

MetricSummary summarize(std::span<const std::optional<double>> values) {
  MetricSummary s;
  std::vector<double> defined;
  for (const auto& v : values)
    if (v) defined.push_back(*v);
  s.defined_folds = defined.size();
  if (defined.empty()) return s;
  const double mean = std::accumulate(defined.begin(), defined.end(), 0.0) / static_cast<double>(defined.size());
  double ss = 0.0;
  for (double v : defined) ss += (v - mean) * (v - mean);
  s.mean = mean;
  s.std_dev = defined.size() > 1 ? std::sqrt(ss / static_cast<double>(defined.size() - 1)) : 0.0;
  s.min = *std::min_element(defined.begin(), defined.end());
  s.max = *std::max_element(defined.begin(), defined.end());
  return s;
}

namespace {

std::vector<std::size_t> fold_training_rows(std::span<const Label> labels, const FoldAssignment& folds,
                                            std::size_t fold, std::uint64_t seed) {
  return balance_train_set(fold_complement(folds, fold), labels, mix_seed(seed, kBalanceStream + fold));
}

DeepElmModel fit_rows(const Matrix& features, std::span<const Label> labels,
                      const std::vector<std::size_t>& train, const TrainConfig& config) {
  std::vector<Label> train_labels;
  train_labels.reserve(train.size());
  for (std::size_t idx : train) train_labels.push_back(labels[idx]);
  return deep_elm_train(features.select_rows(train), train_labels, config);
}

}  // namespace

DeepElmModel fit_fold(const Matrix& features, std::span<const Label> labels, const FoldAssignment& folds,
                      std::size_t fold, const TrainConfig& config, std::uint64_t seed) {
  return fit_rows(features, labels, fold_training_rows(labels, folds, fold, seed), config);
}

CvReport cross_validate(const Matrix& features, std::span<const Label> labels, const TrainConfig& config,
                        std::size_t k, std::uint64_t seed) {
  config.validate();
  if (features.rows() != labels.size()) fail(ErrorCode::ShapeMismatch, "feature rows and label count differ");

  CvReport report;
  report.k = k;
  report.seed = seed;
  report.config = config;
  report.fold_of = stratified_kfold(labels, k, seed);
  report.predictions.assign(labels.size(), Label::Negativity);

  std::vector<std::optional<double>> sel, sens, acc;
  for (std::size_t f = 0; f < k; ++f) {
    const auto train = fold_training_rows(labels, report.fold_of, f, seed);
    const DeepElmModel model = fit_rows(features, labels, train, config);
    const auto test = fold_members(report.fold_of, f);
    const Prediction pred = deep_elm_predict(model, features.select_rows(test));

    std::vector<Label> actual;
    actual.reserve(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
      actual.push_back(labels[test[i]]);
      report.predictions[test[i]] = pred.labels[i];
    }

    FoldResult r;
    r.fold = f;
    r.n_train = train.size();
    r.n_test = test.size();
    r.table = contingency(pred.labels, actual);
    r.metrics = metrics(r.table);
    sel.push_back(r.metrics.selectivity);
    sens.push_back(r.metrics.sensitivity);
    acc.push_back(r.metrics.accuracy);
    report.folds.push_back(r);
  }
  report.selectivity = summarize(sel);
  report.sensitivity = summarize(sens);
  report.accuracy = summarize(acc);
  return report;
}

}  // namespace hhelm
