#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "dataio/csv.hpp"

namespace hhelm {

namespace {

std::string join_sizes(const std::vector<std::size_t>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(sizes[i]);
  }
  return out;
}

std::string boundary_name(BoundaryPolicy b) { return b == BoundaryPolicy::Mirror ? "mirror" : "none"; }

// Runs body(i) for i in [0, n) across hardware threads; rethrows the first
// failure after all workers stop.
template <typename Body>
void parallel_for(std::size_t n, Body body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!stop.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

void PipelineConfig::validate() const {
  emd.validate();
  features.validate();
  train.validate();
  if (k < 2) fail(ErrorCode::InvalidConfig, "k must be >= 2");
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::echo() const {
  return {
      {"filter_cutoff_hz", format_double(filter.cutoff)},
      {"filter_taps", std::to_string(filter.taps)},
      {"emd_sd_threshold", format_double(emd.sd_threshold)},
      {"emd_max_siftings", std::to_string(emd.max_siftings)},
      {"emd_max_imfs", std::to_string(emd.max_imfs)},
      {"emd_boundary", boundary_name(emd.boundary)},
      {"features_raw_imf", features.raw_imf ? "true" : "false"},
      {"features_amplitude", features.amplitude ? "true" : "false"},
      {"layers", join_sizes(train.layer_sizes)},
      {"kernel", std::string(solver_name(train.kernel.variant))},
      {"ridge", format_double(train.kernel.ridge)},
      {"activation", std::string(activation_name(train.activation))},
      {"model_seed", std::to_string(train.seed)},
      {"k", std::to_string(k)},
      {"seed", std::to_string(seed)},
  };
}

std::vector<std::string> echo_lines(const PipelineConfig& config) {
  std::vector<std::string> lines;
  for (const auto& [key, value] : config.echo()) lines.push_back(key + "=" + value);
  return lines;
}

Signal filtered_signal(const TrialRecord& trial, const FilterSpec& filter) {
  return lowpass_filter(Signal{trial.samples, trial.fs}, filter);
}

ImfSet decompose_trial(const TrialRecord& trial, const PipelineConfig& config) {
  return emd(filtered_signal(trial, config.filter), config.emd);
}

std::string format_imf_csv(const ImfSet& imfs, std::span<const std::string> comments) {
  std::string out;
  for (const auto& c : comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  for (std::size_t k = 0; k < imfs.imfs.size(); ++k) {
    out += "imf_" + std::to_string(k + 1) + ",";
  }
  out += "residual\n";
  for (std::size_t i = 0; i < imfs.residual.size(); ++i) {
    for (const auto& imf : imfs.imfs) {
      append_double(out, imf[i]);
      out += ',';
    }
    append_double(out, imfs.residual[i]);
    out += '\n';
  }
  return out;
}

FeatureSet extract_features(const TrialSet& trials, const PipelineConfig& config) {
  trials.validate();
  config.emd.validate();
  config.features.validate();
  if (!trials.trials.empty()) config.filter.validate(trials.fs);

  FeatureSet out;
  out.names = FeatureLayout::make(config.emd.max_imfs, config.features).names();
  out.x = Matrix(trials.size(), out.names.size());
  for (const auto& t : trials.trials) {
    out.ids.push_back(t.id);
    out.labels.push_back(t.label);
  }
  parallel_for(trials.size(), [&](std::size_t i) {
    const Signal filtered = filtered_signal(trials.trials[i], config.filter);
    const FeatureVector fv = trial_feature_vector(filtered, config.emd, config.features);
    std::copy(fv.values.begin(), fv.values.end(), out.x.row(i).begin());
  });
  return out;
}

std::string format_features_csv(const FeatureSet& set, std::span<const std::string> comments) {
  std::string out;
  for (const auto& c : comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  out += "trial_id,label";
  for (const auto& name : set.names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t r = 0; r < set.size(); ++r) {
    out += set.ids[r];
    out += ',';
    out += label_name(set.labels[r]);
    for (double v : set.x.row(r)) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

FeatureSet parse_features_csv(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && (lines[i].empty() || lines[i].front() == '#')) ++i;
  if (i == lines.size()) fail(ErrorCode::FormatError, "missing feature header");
  const auto header = split_fields(lines[i]);
  if (header.size() < 3 || header[0] != "trial_id" || header[1] != "label") {
    fail(ErrorCode::FormatError, "feature header must start with trial_id,label and name one feature");
  }
  FeatureSet set;
  for (std::size_t c = 2; c < header.size(); ++c) set.names.emplace_back(header[c]);
  const std::size_t width = set.names.size();

  std::vector<double> values;
  for (++i; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != header.size()) {
      fail(ErrorCode::FormatError, "row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                       " fields, header has " + std::to_string(header.size()));
    }
    const auto label = parse_label(fields[1]);
    if (!label) {
      fail(ErrorCode::ParseError, "row " + std::to_string(line_no) + ": unknown label '" +
                                      std::string(fields[1]) + "'");
    }
    set.ids.emplace_back(fields[0]);
    set.labels.push_back(*label);
    for (std::size_t c = 0; c < width; ++c) {
      const auto v = parse_double(fields[2 + c]);
      if (!v || !std::isfinite(*v)) {
        fail(ErrorCode::ParseError, "row " + std::to_string(line_no) + ": feature '" + set.names[c] +
                                        "' is not a finite number");
      }
      values.push_back(*v);
    }
  }
  set.x = Matrix(set.ids.size(), width, std::move(values));
  return set;
}

void save_features_csv(const FeatureSet& set, const std::string& path, std::span<const std::string> comments) {
  write_file_atomic(path, format_features_csv(set, comments));
}

FeatureSet load_features_csv(const std::string& path) { return parse_features_csv(read_file(path)); }

CvReport evaluate_features(const FeatureSet& features, const PipelineConfig& config) {
  config.validate();
  CvReport report = cross_validate(features.x, features.labels, config.train, config.k, config.seed);
  report.config_echo = config.echo();
  return report;
}

}  // namespace hhelm
