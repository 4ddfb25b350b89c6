#include "pipeline/sweep.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "core/error.hpp"
#include "dataio/csv.hpp"
#include "elm/elm.hpp"

namespace hhelm {

namespace {

constexpr std::uint64_t kFullGridLimit = 1'000'000;

std::vector<std::size_t> decode(std::uint64_t index, const SweepSpec& spec) {
  const std::uint64_t base = spec.values_per_layer();
  std::vector<std::size_t> layers(spec.depth);
  for (std::size_t d = spec.depth; d-- > 0;) {
    layers[d] = spec.min_units + static_cast<std::size_t>(index % base) * spec.step;
    index /= base;
  }
  return layers;
}

void append_optional(std::string& out, const std::optional<double>& v) {
  if (v) append_double(out, *v);
}

}  // namespace

void SweepSpec::validate() const {
  if (min_units < 1) fail(ErrorCode::InvalidConfig, "sweep minimum must be >= 1");
  if (max_units < min_units) fail(ErrorCode::InvalidConfig, "sweep maximum is below the minimum");
  if (step < 1) fail(ErrorCode::InvalidConfig, "sweep step must be >= 1");
  if (depth < 1 || depth > kMaxLayers) {
    fail(ErrorCode::InvalidConfig, "sweep depth must be between 1 and " + std::to_string(kMaxLayers));
  }
}

std::vector<std::vector<std::size_t>> sweep_grid(const SweepSpec& spec) {
  spec.validate();
  const std::uint64_t base = spec.values_per_layer();
  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t d = 0; d < spec.depth; ++d) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base) {
      overflow = true;
      break;
    }
    total *= base;
  }

  std::vector<std::vector<std::size_t>> out;
  if (!overflow && (spec.budget == 0 || spec.budget >= total)) {
    if (total > kFullGridLimit) fail(ErrorCode::InvalidConfig, "grid has " + std::to_string(total) + " points; set a budget");
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) out.push_back(decode(i, spec));
    return out;
  }
  if (overflow) fail(ErrorCode::InvalidConfig, "grid too large");

  // Floyd's sampling of `budget` distinct indices.
  std::mt19937_64 rng(spec.seed);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = total - spec.budget; j < total; ++j) {
    const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  out.reserve(chosen.size());
  for (std::uint64_t idx : chosen) out.push_back(decode(idx, spec));
  return out;
}

void rank_sweep(std::vector<SweepRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (!a.accuracy.mean) return false;
    if (!b.accuracy.mean) return true;
    return *a.accuracy.mean > *b.accuracy.mean;
  });
}

std::string layers_label(const std::vector<std::size_t>& layers) {
  std::string out;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(layers[i]);
  }
  return out;
}

std::string format_sweep_table(const std::vector<SweepRow>& rows, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "rank,layers,mean_accuracy,std_accuracy,mean_selectivity,mean_sensitivity\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += std::to_string(i + 1) + "," + layers_label(rows[i].layers) + ",";
    append_optional(out, rows[i].accuracy.mean);
    out += ',';
    append_optional(out, rows[i].accuracy.std_dev);
    out += ',';
    append_optional(out, rows[i].selectivity.mean);
    out += ',';
    append_optional(out, rows[i].sensitivity.mean);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> run_sweep(const FeatureSet& features, const PipelineConfig& config, const SweepSpec& spec,
                                const SweepProgress& progress) {
  config.validate();
  const auto grid = sweep_grid(spec);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& layers : grid) {
    PipelineConfig point = config;
    point.train.layer_sizes = layers;
    const CvReport report = evaluate_features(features, point);
    rows.push_back(SweepRow{layers, report.accuracy, report.selectivity, report.sensitivity});
    if (progress) progress(rows.size(), grid.size());
  }
  rank_sweep(rows);
  return rows;
}

}  // namespace hhelm
