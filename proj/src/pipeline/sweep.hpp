#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eval/eval.hpp"
#include "pipeline/pipeline.hpp"

namespace hhelm {

struct SweepSpec {
  std::size_t min_units = 100;
  std::size_t max_units = 500;
  std::size_t step = 10;
  std::size_t depth = 2;
  std::size_t budget = 0;  // 0 = full grid
  std::uint64_t seed = 1;

  void validate() const;
  std::size_t values_per_layer() const { return (max_units - min_units) / step + 1; }
};

/// Layer-size tuples over {min, min+step, ..., ≤ max}^depth in lexicographic
/// order, or a seeded uniform sample of `budget` distinct tuples (kept in
/// lexicographic order) when the budget is smaller than the grid.
std::vector<std::vector<std::size_t>> sweep_grid(const SweepSpec& spec);

struct SweepRow {
  std::vector<std::size_t> layers;
  MetricSummary accuracy;
  MetricSummary selectivity;
  MetricSummary sensitivity;
};

/// Sorted by mean accuracy, best first; undefined means last; ties keep grid
/// order.
void rank_sweep(std::vector<SweepRow>& rows);

/// CSV: rank,layers,mean_accuracy,std_accuracy,mean_selectivity,mean_sensitivity
std::string format_sweep_table(const std::vector<SweepRow>& rows, const std::vector<std::string>& comments = {});

std::string layers_label(const std::vector<std::size_t>& layers);

/// Called after each grid point with (completed, total).
using SweepProgress = std::function<void(std::size_t, std::size_t)>;

/// Cross-validates every grid point with the pipeline's kernel, activation,
/// model seed, k and CV seed; returns rows ranked by rank_sweep.
std::vector<SweepRow> run_sweep(const FeatureSet& features, const PipelineConfig& config, const SweepSpec& spec,
                                const SweepProgress& progress = {});

}  // namespace hhelm
