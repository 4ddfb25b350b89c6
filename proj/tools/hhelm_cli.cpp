// hhelm-cli: synthesis, decomposition, feature extraction, cross-validated
// evaluation, hidden-size sweeps and solver benchmarks over the C API.

#include <hhelm/hhelm.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  bool quiet = false;
};

Globals g;

void info(const std::string& msg) {
  if (!g.quiet) std::fprintf(stderr, "hhelm: %s\n", msg.c_str());
}

int exit_for(hhelm_status s) {
  switch (s) {
    case HHELM_OK: return kOk;
    case HHELM_ERR_INVALID_ARGUMENT:
    case HHELM_ERR_INVALID_CONFIG: return kUsage;
    case HHELM_ERR_NUMERICAL_FAILURE:
    case HHELM_ERR_SINGULAR_MATRIX: return kNumerical;
    default: return kData;
  }
}

// Thrown to unwind out of a command with the status already reported.
struct Failed {
  int code;
};

void check(hhelm_status s) {
  if (s == HHELM_OK) return;
  std::fprintf(stderr, "hhelm: error: %s\n", hhelm_last_error());
  throw Failed{exit_for(s)};
}

void usage_error(const std::string& msg) {
  std::fprintf(stderr, "hhelm: usage error: %s\n", msg.c_str());
  throw Failed{kUsage};
}

std::string require_out(const char* what) {
  if (g.out.empty()) usage_error(std::string("--out is required (") + what + ")");
  return g.out;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Owning wrapper for the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Trials = Handle<hhelm_trials, hhelm_trials_free>;
using Imfs = Handle<hhelm_imfs, hhelm_imfs_free>;
using Features = Handle<hhelm_features, hhelm_features_free>;
using Report = Handle<hhelm_report, hhelm_report_free>;
using Model = Handle<hhelm_model, hhelm_model_free>;
using Sweep = Handle<hhelm_sweep, hhelm_sweep_free>;
using Bench = Handle<hhelm_bench, hhelm_bench_free>;

// Comment lines in a form the C API takes.
struct Comments {
  std::vector<std::string> lines;
  std::vector<const char*> ptrs;

  void add(std::string line) { lines.push_back(std::move(line)); }
  const char* const* data() {
    ptrs.clear();
    for (const auto& l : lines) ptrs.push_back(l.c_str());
    return ptrs.data();
  }
  size_t size() const { return lines.size(); }
};

// Flags shared by the pipeline-driven subcommands.
struct PipelineFlags {
  hhelm_pipeline_config config{};
  std::string boundary = "mirror";
  std::vector<std::string> sources{"raw", "amp"};
  std::vector<size_t> layers;
  std::string kernel;
  std::string activation = "sigmoid";

  PipelineFlags() {
    hhelm_pipeline_config_default(&config);
    layers.assign(config.layer_sizes, config.layer_sizes + config.n_layers);
    kernel = hhelm_solver_name(config.solver);
  }

  void add_signal_flags(CLI::App* app) {
    app->add_option("--cutoff", config.filter_cutoff_hz, "Low-pass cutoff in Hz")->capture_default_str();
    app->add_option("--taps", config.filter_taps, "FIR length (odd, >= 33)")->capture_default_str();
    app->add_option("--sd", config.emd_sd_threshold, "Sifting SD threshold")->capture_default_str();
    app->add_option("--max-siftings", config.emd_max_siftings, "Sifting iterations per IMF")->capture_default_str();
    app->add_option("--max-imfs", config.emd_max_imfs, "IMFs extracted per trial")->capture_default_str();
    app->add_option("--boundary", boundary, "Envelope boundary handling")
        ->check(CLI::IsMember({"mirror", "none"}))
        ->capture_default_str();
  }

  void add_feature_flags(CLI::App* app) {
    app->add_option("--sources", sources, "Feature sources")
        ->delimiter(',')
        ->check(CLI::IsMember({"raw", "amp"}))
        ->capture_default_str();
  }

  void add_train_flags(CLI::App* app, bool with_layers) {
    if (with_layers) {
      app->add_option("--layers", layers, "Autoencoder sizes, e.g. 370,430,260")
          ->delimiter(',')
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
    }
    app->add_option("--kernel", kernel, "Output-weight solver")
        ->check(CLI::IsMember({"svd", "hessenberg", "lu"}))
        ->capture_default_str();
    app->add_option("--ridge", config.ridge, "Ridge lambda")->capture_default_str();
    app->add_option("--activation", activation, "Hidden activation")
        ->check(CLI::IsMember({"sigmoid", "linear"}))
        ->capture_default_str();
    app->add_option("--model-seed", config.model_seed, "Seed for random hidden weights")->capture_default_str();
    app->add_option("--k", config.k, "Cross-validation folds")->capture_default_str();
  }

  // Folds string flags into the config and validates it.
  const hhelm_pipeline_config* finish() {
    config.seed = g.seed;
    config.emd_mirror_boundary = boundary == "mirror";
    config.features_raw_imf = 0;
    config.features_amplitude = 0;
    for (const auto& s : sources) {
      if (s == "raw") config.features_raw_imf = 1;
      if (s == "amp") config.features_amplitude = 1;
    }
    if (layers.empty() || layers.size() > HHELM_MAX_LAYERS) {
      usage_error("--layers takes 1 to " + std::to_string(HHELM_MAX_LAYERS) + " sizes");
    }
    config.n_layers = layers.size();
    for (size_t i = 0; i < layers.size(); ++i) config.layer_sizes[i] = layers[i];
    check(hhelm_parse_solver(kernel.c_str(), &config.solver));
    config.activation = activation == "linear" ? HHELM_LINEAR : HHELM_SIGMOID;
    check(hhelm_pipeline_config_validate(&config));
    return &config;
  }

  void echo(Comments& comments) const {
    const size_t n = hhelm_pipeline_config_echo_count(&config);
    for (size_t i = 0; i < n; ++i) {
      const size_t len = hhelm_pipeline_config_echo_line(&config, i, nullptr, 0);
      std::string line(len, '\0');
      hhelm_pipeline_config_echo_line(&config, i, line.data(), len + 1);
      comments.add(line);
    }
  }
};

int cmd_synth(hhelm_synth_config& config) {
  const std::string out = require_out("trials CSV path");
  config.seed = g.seed;
  Trials trials;
  check(hhelm_synth(&config, trials.out()));
  Comments comments;
  comments.add("hhelm-cli synth");
  comments.add("n_per_class=" + std::to_string(config.n_per_class));
  comments.add("drift_amplitude=" + num(config.drift_amplitude));
  comments.add("noise_sigma=" + num(config.noise_sigma));
  comments.add("alpha_amplitude=" + num(config.alpha_amplitude));
  comments.add("fs=" + num(config.fs));
  comments.add("seed=" + std::to_string(config.seed));
  check(hhelm_trials_save(trials.get(), out.c_str(), comments.data(), comments.size()));
  info("wrote " + std::to_string(hhelm_trials_count(trials.get())) + " trials to " + out);
  return kOk;
}

int cmd_decompose(PipelineFlags& flags, const std::string& input, const std::vector<std::string>& ids) {
  const std::string out_dir = require_out("output directory");
  const hhelm_pipeline_config* config = flags.finish();
  Trials trials;
  check(hhelm_trials_load(input.c_str(), trials.out()));

  std::vector<size_t> selected;
  if (ids.empty()) {
    for (size_t i = 0; i < hhelm_trials_count(trials.get()); ++i) selected.push_back(i);
  } else {
    for (const auto& id : ids) {
      size_t index = 0;
      check(hhelm_trials_find(trials.get(), id.c_str(), &index));
      selected.push_back(index);
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "hhelm: error: cannot create %s: %s\n", out_dir.c_str(), ec.message().c_str());
    return kData;
  }
  info("filter cutoff: " + num(config->filter_cutoff_hz) + " Hz, " + std::to_string(config->filter_taps) + " taps");

  Comments comments;
  comments.add("hhelm-cli decompose");
  comments.add("input=" + input);
  flags.echo(comments);
  for (size_t index : selected) {
    Imfs imfs;
    check(hhelm_decompose(trials.get(), index, config, imfs.out()));
    const std::string id = hhelm_trials_id(trials.get(), index);
    Comments per_trial = comments;
    per_trial.add("trial_id=" + id);
    const std::string path = (std::filesystem::path(out_dir) / (id + "_imfs.csv")).string();
    check(hhelm_imfs_save(imfs.get(), path.c_str(), per_trial.data(), per_trial.size()));
    info(id + ": " + std::to_string(hhelm_imfs_count(imfs.get())) + " IMFs -> " + path);
  }
  return kOk;
}

int cmd_features(PipelineFlags& flags, const std::string& input) {
  const std::string out = require_out("feature CSV path");
  const hhelm_pipeline_config* config = flags.finish();
  Trials trials;
  check(hhelm_trials_load(input.c_str(), trials.out()));
  Features features;
  check(hhelm_features_extract(trials.get(), config, features.out()));
  Comments comments;
  comments.add("hhelm-cli features");
  comments.add("input=" + input);
  flags.echo(comments);
  check(hhelm_features_save(features.get(), out.c_str(), comments.data(), comments.size()));
  info("wrote " + std::to_string(hhelm_features_rows(features.get())) + " x " +
       std::to_string(hhelm_features_cols(features.get())) + " features to " + out);
  return kOk;
}

void log_metric(const hhelm_report* report, hhelm_metric metric, const char* name) {
  hhelm_metric_summary s{};
  check(hhelm_report_metric(report, metric, &s));
  info(std::string(name) + ": mean " + fmt(s.mean) + ", std " + fmt(s.std_dev) + " over " +
       std::to_string(s.defined_folds) + " folds");
}

int cmd_evaluate(PipelineFlags& flags, const std::string& input, const std::string& model_path) {
  const std::string out = require_out("report path");
  const hhelm_pipeline_config* config = flags.finish();
  Features features;
  check(hhelm_features_load(input.c_str(), features.out()));
  Report report;
  check(hhelm_evaluate(features.get(), config, report.out()));
  check(hhelm_report_save(report.get(), out.c_str()));
  log_metric(report.get(), HHELM_METRIC_SELECTIVITY, "selectivity");
  log_metric(report.get(), HHELM_METRIC_SENSITIVITY, "sensitivity");
  log_metric(report.get(), HHELM_METRIC_ACCURACY, "accuracy");
  info("wrote report to " + out);
  if (!model_path.empty()) {
    Model model;
    check(hhelm_model_train(features.get(), config, model.out()));
    check(hhelm_model_save(model.get(), model_path.c_str()));
    info("wrote model trained on all rows to " + model_path);
  }
  return kOk;
}

void sweep_progress(size_t done, size_t total, void*) {
  if (!g.quiet) std::fprintf(stderr, "hhelm: sweep %zu/%zu\n", done, total);
}

int cmd_sweep(PipelineFlags& flags, const std::string& input, hhelm_sweep_spec& spec) {
  const std::string out = require_out("sweep table path");
  const hhelm_pipeline_config* config = flags.finish();
  spec.seed = g.seed;
  Features features;
  check(hhelm_features_load(input.c_str(), features.out()));
  Sweep sweep;
  check(hhelm_sweep_run(features.get(), config, &spec, sweep_progress, nullptr, sweep.out()));

  Comments comments;
  comments.add("hhelm-cli sweep");
  comments.add("input=" + input);
  comments.add("min=" + std::to_string(spec.min_units) + " max=" + std::to_string(spec.max_units) +
               " step=" + std::to_string(spec.step) + " depth=" + std::to_string(spec.depth) +
               " budget=" + std::to_string(spec.budget));
  flags.echo(comments);
  check(hhelm_sweep_save(sweep.get(), out.c_str(), comments.data(), comments.size()));

  if (hhelm_sweep_count(sweep.get()) > 0) {
    std::vector<size_t> sizes(HHELM_MAX_LAYERS);
    const size_t depth = hhelm_sweep_layers(sweep.get(), 0, sizes.data(), sizes.size());
    std::string label;
    for (size_t i = 0; i < depth; ++i) label += (i ? "-" : "") + std::to_string(sizes[i]);
    hhelm_metric_summary acc{};
    check(hhelm_sweep_metric(sweep.get(), 0, HHELM_METRIC_ACCURACY, &acc));
    std::printf("best layers %s mean accuracy %s\n", label.c_str(), fmt(acc.mean).c_str());
  }
  info("wrote " + std::to_string(hhelm_sweep_count(sweep.get())) + " rows to " + out);
  return kOk;
}

int cmd_solver_bench(const std::vector<size_t>& sizes, double ridge) {
  const std::string out = require_out("benchmark table path");
  Bench bench;
  check(hhelm_solver_bench(sizes.data(), sizes.size(), ridge, g.seed, bench.out()));
  Comments comments;
  comments.add("hhelm-cli solver-bench");
  std::string list;
  for (size_t i = 0; i < sizes.size(); ++i) list += (i ? "," : "") + std::to_string(sizes[i]);
  comments.add("sizes=" + list);
  comments.add("ridge=" + num(ridge));
  comments.add("seed=" + std::to_string(g.seed));
  comments.add("seconds is wall time and varies between runs");
  check(hhelm_bench_save(bench.get(), out.c_str(), comments.data(), comments.size()));
  for (size_t i = 0; i < hhelm_bench_count(bench.get()); ++i) {
    hhelm_bench_row r{};
    check(hhelm_bench_row_at(bench.get(), i, &r));
    char line[160];
    std::snprintf(line, sizeof line, "size %zu %-10s %.6f s deviation %.3e", r.size, hhelm_solver_name(r.solver),
                  r.seconds, r.deviation);
    info(line);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-Huang features and Deep ELM classification of EEG trials"};
  app.set_version_flag("--version", hhelm_version());
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Seed for every random choice of the command")->capture_default_str();
  app.add_option("--out", g.out, "Output file (directory for decompose)");
  app.add_flag("--quiet", g.quiet, "Suppress progress messages");

  hhelm_synth_config synth{};
  hhelm_synth_config_default(&synth);
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic trials");
  synth_cmd->add_option("--n-per-class", synth.n_per_class, "Trials per class")->capture_default_str();
  synth_cmd->add_option("--drift", synth.drift_amplitude, "Active-phase DC shift")->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise_sigma, "Gaussian noise sigma")->capture_default_str();
  synth_cmd->add_option("--alpha", synth.alpha_amplitude, "10 Hz alpha amplitude")->capture_default_str();
  synth_cmd->add_option("--fs", synth.fs, "Sampling rate in Hz")->capture_default_str();

  PipelineFlags decompose_flags;
  std::string decompose_input;
  std::vector<std::string> trial_ids;
  auto* decompose_cmd = app.add_subcommand("decompose", "Filter and decompose trials into IMFs");
  decompose_cmd->add_option("--input", decompose_input, "Trials CSV")->required();
  decompose_cmd->add_option("--trial", trial_ids, "Trial id to decompose (repeatable; default all)");
  decompose_flags.add_signal_flags(decompose_cmd);

  PipelineFlags feature_flags;
  std::string features_input;
  auto* features_cmd = app.add_subcommand("features", "Extract HHT statistics per trial");
  features_cmd->add_option("--input", features_input, "Trials CSV")->required();
  feature_flags.add_signal_flags(features_cmd);
  feature_flags.add_feature_flags(features_cmd);

  PipelineFlags evaluate_flags;
  std::string evaluate_input;
  std::string model_path;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Cross-validate a Deep ELM on a feature CSV");
  evaluate_cmd->add_option("--input", evaluate_input, "Feature CSV")->required();
  evaluate_cmd->add_option("--save-model", model_path, "Also train on all rows and save the model here");
  evaluate_flags.add_train_flags(evaluate_cmd, true);

  PipelineFlags sweep_flags;
  std::string sweep_input;
  hhelm_sweep_spec spec{};
  hhelm_sweep_spec_default(&spec);
  auto* sweep_cmd = app.add_subcommand("sweep", "Cross-validate a grid of hidden-layer sizes");
  sweep_cmd->add_option("--input", sweep_input, "Feature CSV")->required();
  sweep_cmd->add_option("--min", spec.min_units, "Smallest layer size")->capture_default_str();
  sweep_cmd->add_option("--max", spec.max_units, "Largest layer size")->capture_default_str();
  sweep_cmd->add_option("--step", spec.step, "Size increment")->capture_default_str();
  sweep_cmd->add_option("--depth", spec.depth, "Number of autoencoder layers")->capture_default_str();
  sweep_cmd->add_option("--budget", spec.budget, "Random subset size (0 = full grid)")->capture_default_str();
  sweep_flags.add_train_flags(sweep_cmd, false);

  std::vector<size_t> bench_sizes{50, 100, 200};
  double bench_ridge = 1e-3;
  auto* bench_cmd = app.add_subcommand("solver-bench", "Time the three output-weight kernels");
  bench_cmd->add_option("--sizes", bench_sizes, "System sizes")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--ridge", bench_ridge, "Ridge lambda")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth_cmd) return cmd_synth(synth);
    if (*decompose_cmd) return cmd_decompose(decompose_flags, decompose_input, trial_ids);
    if (*features_cmd) return cmd_features(feature_flags, features_input);
    if (*evaluate_cmd) return cmd_evaluate(evaluate_flags, evaluate_input, model_path);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, sweep_input, spec);
    if (*bench_cmd) return cmd_solver_bench(bench_sizes, bench_ridge);
  } catch (const Failed& f) {
    return f.code;
  }
  return kUsage;
}
