#include "hhelm/hhelm.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "dataio/csv.hpp"
#include "dataio/synth.hpp"
#include "pipeline/bench.hpp"
#include "pipeline/pipeline.hpp"
#include "pipeline/sweep.hpp"

struct hhelm_trials {
  hhelm::TrialSet set;
};

struct hhelm_imfs {
  hhelm::ImfSet imfs;
};

struct hhelm_features {
  hhelm::FeatureSet set;
};

struct hhelm_report {
  hhelm::CvReport report;
};

struct hhelm_model {
  hhelm::DeepElmModel model;
};

struct hhelm_sweep {
  std::vector<hhelm::SweepRow> rows;
};

struct hhelm_bench {
  std::vector<hhelm::BenchRow> rows;
};

namespace {

thread_local std::string g_last_error;

hhelm_status status_of(hhelm::ErrorCode code) {
  using hhelm::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return HHELM_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidMatrix: return HHELM_ERR_INVALID_MATRIX;
    case ErrorCode::ShapeMismatch: return HHELM_ERR_SHAPE_MISMATCH;
    case ErrorCode::InvalidConfig: return HHELM_ERR_INVALID_CONFIG;
    case ErrorCode::NumericalFailure: return HHELM_ERR_NUMERICAL_FAILURE;
    case ErrorCode::SingularMatrix: return HHELM_ERR_SINGULAR_MATRIX;
    case ErrorCode::InsufficientExtrema: return HHELM_ERR_INSUFFICIENT_EXTREMA;
    case ErrorCode::DegenerateLabels: return HHELM_ERR_DEGENERATE_LABELS;
    case ErrorCode::InvalidLabel: return HHELM_ERR_INVALID_LABEL;
    case ErrorCode::InsufficientClassMembers: return HHELM_ERR_INSUFFICIENT_CLASS_MEMBERS;
    case ErrorCode::ParseError: return HHELM_ERR_PARSE;
    case ErrorCode::FormatError: return HHELM_ERR_FORMAT;
    case ErrorCode::IoError: return HHELM_ERR_IO;
    case ErrorCode::NotFound: return HHELM_ERR_NOT_FOUND;
  }
  return HHELM_ERR_INTERNAL;
}

template <typename Fn>
hhelm_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HHELM_OK;
  } catch (const hhelm::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HHELM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HHELM_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) hhelm::fail(hhelm::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

hhelm::SolverVariant to_variant(hhelm_solver s) {
  switch (s) {
    case HHELM_SOLVER_SVD: return hhelm::SolverVariant::MoorePenroseSvd;
    case HHELM_SOLVER_HESSENBERG: return hhelm::SolverVariant::HessenbergGram;
    case HHELM_SOLVER_LU: return hhelm::SolverVariant::LuGram;
  }
  hhelm::fail(hhelm::ErrorCode::InvalidConfig, "unknown solver " + std::to_string(static_cast<int>(s)));
}

hhelm_solver from_variant(hhelm::SolverVariant v) {
  switch (v) {
    case hhelm::SolverVariant::MoorePenroseSvd: return HHELM_SOLVER_SVD;
    case hhelm::SolverVariant::HessenbergGram: return HHELM_SOLVER_HESSENBERG;
    case hhelm::SolverVariant::LuGram: return HHELM_SOLVER_LU;
  }
  return HHELM_SOLVER_SVD;
}

hhelm::PipelineConfig to_pipeline(const hhelm_pipeline_config* c) {
  require(c, "config");
  if (c->n_layers > HHELM_MAX_LAYERS) {
    hhelm::fail(hhelm::ErrorCode::InvalidConfig, "at most " + std::to_string(HHELM_MAX_LAYERS) + " layers");
  }
  if (c->activation != HHELM_SIGMOID && c->activation != HHELM_LINEAR) {
    hhelm::fail(hhelm::ErrorCode::InvalidConfig, "unknown activation");
  }
  hhelm::PipelineConfig p;
  p.filter.cutoff = c->filter_cutoff_hz;
  p.filter.taps = c->filter_taps;
  p.emd.sd_threshold = c->emd_sd_threshold;
  p.emd.max_siftings = c->emd_max_siftings;
  p.emd.max_imfs = c->emd_max_imfs;
  p.emd.boundary = c->emd_mirror_boundary ? hhelm::BoundaryPolicy::Mirror : hhelm::BoundaryPolicy::None;
  p.features.raw_imf = c->features_raw_imf != 0;
  p.features.amplitude = c->features_amplitude != 0;
  p.train.layer_sizes.assign(c->layer_sizes, c->layer_sizes + c->n_layers);
  p.train.kernel = hhelm::SolverKind{to_variant(c->solver), c->ridge};
  p.train.seed = c->model_seed;
  p.train.activation = c->activation == HHELM_LINEAR ? hhelm::Activation::Linear : hhelm::Activation::Sigmoid;
  p.k = c->k;
  p.seed = c->seed;
  return p;
}

std::vector<std::string> comment_lines(const char* const* comments, size_t n) {
  if (n > 0) require(comments, "comments");
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    require(comments[i], "comment line");
    out.emplace_back(comments[i]);
  }
  return out;
}

double or_nan(const std::optional<double>& v) { return v ? *v : std::numeric_limits<double>::quiet_NaN(); }

hhelm_metric_summary summary_of(const hhelm::MetricSummary& s) {
  return hhelm_metric_summary{or_nan(s.mean), or_nan(s.std_dev), or_nan(s.min), or_nan(s.max), s.defined_folds};
}

const hhelm::MetricSummary& pick(hhelm_metric metric, const hhelm::MetricSummary& sel,
                                 const hhelm::MetricSummary& sens, const hhelm::MetricSummary& acc) {
  switch (metric) {
    case HHELM_METRIC_SELECTIVITY: return sel;
    case HHELM_METRIC_SENSITIVITY: return sens;
    case HHELM_METRIC_ACCURACY: return acc;
  }
  hhelm::fail(hhelm::ErrorCode::InvalidArgument, "unknown metric");
}

void check_index(size_t index, size_t size, const char* what) {
  if (index >= size) {
    hhelm::fail(hhelm::ErrorCode::InvalidArgument, std::string(what) + " index " + std::to_string(index) +
                                                       " out of range (size " + std::to_string(size) + ")");
  }
}

hhelm_label c_label(hhelm::Label l) { return static_cast<hhelm_label>(hhelm::class_index(l)); }

}  // namespace

extern "C" {

const char* hhelm_version(void) { return "0.1.0"; }

const char* hhelm_status_name(hhelm_status status) {
  switch (status) {
    case HHELM_OK: return "Ok";
    case HHELM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HHELM_ERR_INVALID_MATRIX: return "InvalidMatrix";
    case HHELM_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
    case HHELM_ERR_INVALID_CONFIG: return "InvalidConfig";
    case HHELM_ERR_NUMERICAL_FAILURE: return "NumericalFailure";
    case HHELM_ERR_SINGULAR_MATRIX: return "SingularMatrix";
    case HHELM_ERR_INSUFFICIENT_EXTREMA: return "InsufficientExtrema";
    case HHELM_ERR_DEGENERATE_LABELS: return "DegenerateLabels";
    case HHELM_ERR_INVALID_LABEL: return "InvalidLabel";
    case HHELM_ERR_INSUFFICIENT_CLASS_MEMBERS: return "InsufficientClassMembers";
    case HHELM_ERR_PARSE: return "ParseError";
    case HHELM_ERR_FORMAT: return "FormatError";
    case HHELM_ERR_IO: return "IoError";
    case HHELM_ERR_NOT_FOUND: return "NotFound";
    case HHELM_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* hhelm_last_error(void) { return g_last_error.c_str(); }

const char* hhelm_solver_name(hhelm_solver solver) {
  switch (solver) {
    case HHELM_SOLVER_SVD: return "svd";
    case HHELM_SOLVER_HESSENBERG: return "hessenberg";
    case HHELM_SOLVER_LU: return "lu";
  }
  return "unknown";
}

hhelm_status hhelm_parse_solver(const char* name, hhelm_solver* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const auto v = hhelm::parse_solver(name);
    if (!v) hhelm::fail(hhelm::ErrorCode::InvalidConfig, std::string("unknown kernel '") + name + "'");
    *out = from_variant(*v);
  });
}

void hhelm_synth_config_default(hhelm_synth_config* config) {
  if (!config) return;
  const hhelm::SynthConfig d;
  *config = hhelm_synth_config{d.n_per_class, d.drift_amplitude, d.noise_sigma, d.alpha_amplitude, d.fs, d.seed};
}

void hhelm_pipeline_config_default(hhelm_pipeline_config* config) {
  if (!config) return;
  const hhelm::PipelineConfig d;
  hhelm_pipeline_config c{};
  c.filter_cutoff_hz = d.filter.cutoff;
  c.filter_taps = d.filter.taps;
  c.emd_sd_threshold = d.emd.sd_threshold;
  c.emd_max_siftings = d.emd.max_siftings;
  c.emd_max_imfs = d.emd.max_imfs;
  c.emd_mirror_boundary = d.emd.boundary == hhelm::BoundaryPolicy::Mirror;
  c.features_raw_imf = d.features.raw_imf;
  c.features_amplitude = d.features.amplitude;
  c.n_layers = d.train.layer_sizes.size();
  for (size_t i = 0; i < c.n_layers; ++i) c.layer_sizes[i] = d.train.layer_sizes[i];
  c.solver = from_variant(d.train.kernel.variant);
  c.ridge = d.train.kernel.ridge;
  c.activation = d.train.activation == hhelm::Activation::Linear ? HHELM_LINEAR : HHELM_SIGMOID;
  c.model_seed = d.train.seed;
  c.k = d.k;
  c.seed = d.seed;
  *config = c;
}

hhelm_status hhelm_pipeline_config_validate(const hhelm_pipeline_config* config) {
  return guarded([&] { to_pipeline(config).validate(); });
}

size_t hhelm_pipeline_config_echo_count(const hhelm_pipeline_config* config) {
  size_t n = 0;
  guarded([&] { n = hhelm::echo_lines(to_pipeline(config)).size(); });
  return n;
}

size_t hhelm_pipeline_config_echo_line(const hhelm_pipeline_config* config, size_t index, char* buf,
                                       size_t buf_size) {
  size_t length = 0;
  guarded([&] {
    const auto lines = hhelm::echo_lines(to_pipeline(config));
    check_index(index, lines.size(), "echo line");
    const std::string& line = lines[index];
    length = line.size();
    if (buf && buf_size > 0) {
      const size_t n = std::min(buf_size - 1, line.size());
      std::memcpy(buf, line.data(), n);
      buf[n] = '\0';
    }
  });
  return length;
}

hhelm_status hhelm_synth(const hhelm_synth_config* config, hhelm_trials** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    hhelm::SynthConfig c;
    c.n_per_class = config->n_per_class;
    c.drift_amplitude = config->drift_amplitude;
    c.noise_sigma = config->noise_sigma;
    c.alpha_amplitude = config->alpha_amplitude;
    c.fs = config->fs;
    c.seed = config->seed;
    *out = new hhelm_trials{hhelm::synth_scp(c)};
  });
}

hhelm_status hhelm_trials_load(const char* path, hhelm_trials** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hhelm_trials{hhelm::load_trials_csv(path)};
  });
}

hhelm_status hhelm_trials_save(const hhelm_trials* trials, const char* path, const char* const* comments,
                               size_t n_comments) {
  return guarded([&] {
    require(trials, "trials");
    require(path, "path");
    hhelm::save_trials_csv(trials->set, path, comment_lines(comments, n_comments));
  });
}

void hhelm_trials_free(hhelm_trials* trials) { delete trials; }

size_t hhelm_trials_count(const hhelm_trials* trials) { return trials ? trials->set.size() : 0; }

size_t hhelm_trials_length(const hhelm_trials* trials) { return trials ? trials->set.sample_count() : 0; }

double hhelm_trials_fs(const hhelm_trials* trials) { return trials ? trials->set.fs : 0.0; }

const char* hhelm_trials_id(const hhelm_trials* trials, size_t index) {
  if (!trials || index >= trials->set.size()) return nullptr;
  return trials->set.trials[index].id.c_str();
}

hhelm_label hhelm_trials_label(const hhelm_trials* trials, size_t index) {
  if (!trials || index >= trials->set.size()) return HHELM_NEGATIVITY;
  return c_label(trials->set.trials[index].label);
}

const double* hhelm_trials_samples(const hhelm_trials* trials, size_t index) {
  if (!trials || index >= trials->set.size()) return nullptr;
  return trials->set.trials[index].samples.data();
}

hhelm_status hhelm_trials_find(const hhelm_trials* trials, const char* id, size_t* index) {
  return guarded([&] {
    require(trials, "trials");
    require(id, "id");
    require(index, "index");
    *index = trials->set.find(id);
  });
}

hhelm_status hhelm_decompose(const hhelm_trials* trials, size_t index, const hhelm_pipeline_config* config,
                             hhelm_imfs** out) {
  return guarded([&] {
    require(trials, "trials");
    require(out, "out");
    const hhelm::PipelineConfig p = to_pipeline(config);
    check_index(index, trials->set.size(), "trial");
    p.filter.validate(trials->set.fs);
    *out = new hhelm_imfs{hhelm::decompose_trial(trials->set.trials[index], p)};
  });
}

void hhelm_imfs_free(hhelm_imfs* imfs) { delete imfs; }

size_t hhelm_imfs_count(const hhelm_imfs* imfs) { return imfs ? imfs->imfs.imfs.size() : 0; }

size_t hhelm_imfs_length(const hhelm_imfs* imfs) { return imfs ? imfs->imfs.residual.size() : 0; }

const double* hhelm_imfs_component(const hhelm_imfs* imfs, size_t k) {
  if (!imfs || k >= imfs->imfs.imfs.size()) return nullptr;
  return imfs->imfs.imfs[k].data();
}

const double* hhelm_imfs_residual(const hhelm_imfs* imfs) { return imfs ? imfs->imfs.residual.data() : nullptr; }

hhelm_status hhelm_imfs_save(const hhelm_imfs* imfs, const char* path, const char* const* comments,
                             size_t n_comments) {
  return guarded([&] {
    require(imfs, "imfs");
    require(path, "path");
    const auto lines = comment_lines(comments, n_comments);
    hhelm::write_file_atomic(path, hhelm::format_imf_csv(imfs->imfs, lines));
  });
}

hhelm_status hhelm_features_extract(const hhelm_trials* trials, const hhelm_pipeline_config* config,
                                    hhelm_features** out) {
  return guarded([&] {
    require(trials, "trials");
    require(out, "out");
    *out = new hhelm_features{hhelm::extract_features(trials->set, to_pipeline(config))};
  });
}

hhelm_status hhelm_features_load(const char* path, hhelm_features** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hhelm_features{hhelm::load_features_csv(path)};
  });
}

hhelm_status hhelm_features_save(const hhelm_features* features, const char* path, const char* const* comments,
                                 size_t n_comments) {
  return guarded([&] {
    require(features, "features");
    require(path, "path");
    hhelm::save_features_csv(features->set, path, comment_lines(comments, n_comments));
  });
}

void hhelm_features_free(hhelm_features* features) { delete features; }

size_t hhelm_features_rows(const hhelm_features* features) { return features ? features->set.size() : 0; }

size_t hhelm_features_cols(const hhelm_features* features) { return features ? features->set.names.size() : 0; }

const char* hhelm_features_name(const hhelm_features* features, size_t col) {
  if (!features || col >= features->set.names.size()) return nullptr;
  return features->set.names[col].c_str();
}

const char* hhelm_features_id(const hhelm_features* features, size_t row) {
  if (!features || row >= features->set.size()) return nullptr;
  return features->set.ids[row].c_str();
}

hhelm_label hhelm_features_label(const hhelm_features* features, size_t row) {
  if (!features || row >= features->set.size()) return HHELM_NEGATIVITY;
  return c_label(features->set.labels[row]);
}

const double* hhelm_features_row(const hhelm_features* features, size_t row) {
  if (!features || row >= features->set.size()) return nullptr;
  return features->set.x.row(row).data();
}

hhelm_status hhelm_evaluate(const hhelm_features* features, const hhelm_pipeline_config* config,
                            hhelm_report** out) {
  return guarded([&] {
    require(features, "features");
    require(out, "out");
    *out = new hhelm_report{hhelm::evaluate_features(features->set, to_pipeline(config))};
  });
}

hhelm_status hhelm_report_load(const char* path, hhelm_report** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hhelm_report{hhelm::load_report(path)};
  });
}

hhelm_status hhelm_report_save(const hhelm_report* report, const char* path) {
  return guarded([&] {
    require(report, "report");
    require(path, "path");
    hhelm::save_report(report->report, path);
  });
}

void hhelm_report_free(hhelm_report* report) { delete report; }

hhelm_status hhelm_report_metric(const hhelm_report* report, hhelm_metric metric, hhelm_metric_summary* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    const auto& r = report->report;
    *out = summary_of(pick(metric, r.selectivity, r.sensitivity, r.accuracy));
  });
}

size_t hhelm_report_fold_count(const hhelm_report* report) { return report ? report->report.folds.size() : 0; }

hhelm_status hhelm_report_fold(const hhelm_report* report, size_t index, hhelm_fold_summary* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    check_index(index, report->report.folds.size(), "fold");
    const auto& f = report->report.folds[index];
    *out = hhelm_fold_summary{f.fold,
                              f.n_train,
                              f.n_test,
                              f.table.tp,
                              f.table.fp,
                              f.table.tn,
                              f.table.fn,
                              or_nan(f.metrics.selectivity),
                              or_nan(f.metrics.sensitivity),
                              or_nan(f.metrics.accuracy)};
  });
}

size_t hhelm_report_prediction_count(const hhelm_report* report) {
  return report ? report->report.predictions.size() : 0;
}

hhelm_label hhelm_report_prediction(const hhelm_report* report, size_t index) {
  if (!report || index >= report->report.predictions.size()) return HHELM_NEGATIVITY;
  return c_label(report->report.predictions[index]);
}

hhelm_status hhelm_metrics(size_t tp, size_t fp, size_t tn, size_t fn, double* selectivity, double* sensitivity,
                           double* accuracy) {
  return guarded([&] {
    const hhelm::ContingencyTable table{tp, fp, tn, fn};
    if (table.total() == 0) hhelm::fail(hhelm::ErrorCode::InvalidArgument, "empty contingency table");
    const hhelm::MetricsReport m = hhelm::metrics(table);
    if (selectivity) *selectivity = or_nan(m.selectivity);
    if (sensitivity) *sensitivity = or_nan(m.sensitivity);
    if (accuracy) *accuracy = or_nan(m.accuracy);
  });
}

hhelm_status hhelm_model_train(const hhelm_features* features, const hhelm_pipeline_config* config,
                               hhelm_model** out) {
  return guarded([&] {
    require(features, "features");
    require(out, "out");
    const hhelm::PipelineConfig p = to_pipeline(config);
    *out = new hhelm_model{hhelm::deep_elm_train(features->set.x, features->set.labels, p.train)};
  });
}

hhelm_status hhelm_model_predict(const hhelm_model* model, const hhelm_features* features, hhelm_label* labels,
                                 double* scores) {
  return guarded([&] {
    require(model, "model");
    require(features, "features");
    require(labels, "labels");
    const hhelm::Prediction p = hhelm::deep_elm_predict(model->model, features->set.x);
    for (size_t i = 0; i < p.labels.size(); ++i) labels[i] = c_label(p.labels[i]);
    if (scores) std::copy(p.scores.values().begin(), p.scores.values().end(), scores);
  });
}

hhelm_status hhelm_model_save(const hhelm_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    hhelm::save_model(model->model, path);
  });
}

hhelm_status hhelm_model_load(const char* path, hhelm_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hhelm_model{hhelm::load_model(path)};
  });
}

void hhelm_model_free(hhelm_model* model) { delete model; }

void hhelm_sweep_spec_default(hhelm_sweep_spec* spec) {
  if (!spec) return;
  const hhelm::SweepSpec d;
  *spec = hhelm_sweep_spec{d.min_units, d.max_units, d.step, d.depth, d.budget, d.seed};
}

hhelm_status hhelm_sweep_run(const hhelm_features* features, const hhelm_pipeline_config* config,
                             const hhelm_sweep_spec* spec, hhelm_progress_fn progress, void* user,
                             hhelm_sweep** out) {
  return guarded([&] {
    require(features, "features");
    require(spec, "spec");
    require(out, "out");
    const hhelm::SweepSpec s{spec->min_units, spec->max_units, spec->step, spec->depth, spec->budget, spec->seed};
    hhelm::SweepProgress report;
    if (progress) report = [&](std::size_t done, std::size_t total) { progress(done, total, user); };
    *out = new hhelm_sweep{hhelm::run_sweep(features->set, to_pipeline(config), s, report)};
  });
}

void hhelm_sweep_free(hhelm_sweep* sweep) { delete sweep; }

size_t hhelm_sweep_count(const hhelm_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

size_t hhelm_sweep_layers(const hhelm_sweep* sweep, size_t rank, size_t* sizes, size_t capacity) {
  if (!sweep || rank >= sweep->rows.size()) return 0;
  const auto& layers = sweep->rows[rank].layers;
  for (size_t i = 0; sizes && i < std::min(capacity, layers.size()); ++i) sizes[i] = layers[i];
  return layers.size();
}

hhelm_status hhelm_sweep_metric(const hhelm_sweep* sweep, size_t rank, hhelm_metric metric,
                                hhelm_metric_summary* out) {
  return guarded([&] {
    require(sweep, "sweep");
    require(out, "out");
    check_index(rank, sweep->rows.size(), "sweep row");
    const auto& r = sweep->rows[rank];
    *out = summary_of(pick(metric, r.selectivity, r.sensitivity, r.accuracy));
  });
}

hhelm_status hhelm_sweep_save(const hhelm_sweep* sweep, const char* path, const char* const* comments,
                              size_t n_comments) {
  return guarded([&] {
    require(sweep, "sweep");
    require(path, "path");
    hhelm::write_file_atomic(path, hhelm::format_sweep_table(sweep->rows, comment_lines(comments, n_comments)));
  });
}

hhelm_status hhelm_solve_output_weights(const double* h, size_t n, size_t l, const double* t, size_t m,
                                        hhelm_solver solver, double ridge, double* beta) {
  return guarded([&] {
    require(h, "h");
    require(t, "t");
    require(beta, "beta");
    if (n == 0 || l == 0 || m == 0) hhelm::fail(hhelm::ErrorCode::ShapeMismatch, "matrix dimensions must be >= 1");
    const hhelm::Matrix hm(n, l, std::vector<double>(h, h + n * l));
    const hhelm::Matrix tm(n, m, std::vector<double>(t, t + n * m));
    const hhelm::Matrix b = hhelm::solve_output_weights(hm, tm, hhelm::SolverKind{to_variant(solver), ridge});
    std::copy(b.values().begin(), b.values().end(), beta);
  });
}

hhelm_status hhelm_solver_bench(const size_t* sizes, size_t n_sizes, double ridge, uint64_t seed,
                                hhelm_bench** out) {
  return guarded([&] {
    if (n_sizes > 0) require(sizes, "sizes");
    require(out, "out");
    const std::vector<std::size_t> list(sizes, sizes + n_sizes);
    *out = new hhelm_bench{hhelm::solver_bench(list, ridge, seed)};
  });
}

void hhelm_bench_free(hhelm_bench* bench) { delete bench; }

size_t hhelm_bench_count(const hhelm_bench* bench) { return bench ? bench->rows.size() : 0; }

hhelm_status hhelm_bench_row_at(const hhelm_bench* bench, size_t index, hhelm_bench_row* out) {
  return guarded([&] {
    require(bench, "bench");
    require(out, "out");
    check_index(index, bench->rows.size(), "bench row");
    const auto& r = bench->rows[index];
    *out = hhelm_bench_row{r.size, from_variant(r.variant), r.seconds, r.deviation};
  });
}

hhelm_status hhelm_bench_save(const hhelm_bench* bench, const char* path, const char* const* comments,
                              size_t n_comments) {
  return guarded([&] {
    require(bench, "bench");
    require(path, "path");
    hhelm::write_file_atomic(path, hhelm::format_bench_table(bench->rows, comment_lines(comments, n_comments)));
  });
}

}  // extern "C"
