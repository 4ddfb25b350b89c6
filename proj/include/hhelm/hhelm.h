/*
 * hhelm: Hilbert-Huang features and Deep ELM classification of EEG trials.
 *
 * Plain C interface over opaque handles. Every fallible call returns an
 * hhelm_status; on failure hhelm_last_error() describes the cause for the
 * calling thread. Handles are owned by the caller and released with the
 * matching *_free function (NULL is accepted). Matrices cross the boundary
 * as row-major double buffers.
 */
#ifndef HHELM_HHELM_H
#define HHELM_HHELM_H

#include <stddef.h>
#include <stdint.h>

#if defined(HHELM_BUILDING_LIBRARY)
#define HHELM_API __attribute__((visibility("default")))
#else
#define HHELM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hhelm_status {
  HHELM_OK = 0,
  HHELM_ERR_INVALID_ARGUMENT = 1,
  HHELM_ERR_INVALID_MATRIX = 2,
  HHELM_ERR_SHAPE_MISMATCH = 3,
  HHELM_ERR_INVALID_CONFIG = 4,
  HHELM_ERR_NUMERICAL_FAILURE = 5,
  HHELM_ERR_SINGULAR_MATRIX = 6,
  HHELM_ERR_INSUFFICIENT_EXTREMA = 7,
  HHELM_ERR_DEGENERATE_LABELS = 8,
  HHELM_ERR_INVALID_LABEL = 9,
  HHELM_ERR_INSUFFICIENT_CLASS_MEMBERS = 10,
  HHELM_ERR_PARSE = 11,
  HHELM_ERR_FORMAT = 12,
  HHELM_ERR_IO = 13,
  HHELM_ERR_NOT_FOUND = 14,
  HHELM_ERR_INTERNAL = 15
} hhelm_status;

typedef enum hhelm_label { HHELM_NEGATIVITY = 0, HHELM_POSITIVITY = 1 } hhelm_label;

typedef enum hhelm_solver {
  HHELM_SOLVER_SVD = 0,
  HHELM_SOLVER_HESSENBERG = 1,
  HHELM_SOLVER_LU = 2
} hhelm_solver;

typedef enum hhelm_activation { HHELM_SIGMOID = 0, HHELM_LINEAR = 1 } hhelm_activation;

typedef enum hhelm_metric {
  HHELM_METRIC_SELECTIVITY = 0,
  HHELM_METRIC_SENSITIVITY = 1,
  HHELM_METRIC_ACCURACY = 2
} hhelm_metric;

#define HHELM_MAX_LAYERS 8

HHELM_API const char* hhelm_version(void);
HHELM_API const char* hhelm_status_name(hhelm_status status);
/* Message of the last failure on this thread; "" if none. */
HHELM_API const char* hhelm_last_error(void);
HHELM_API const char* hhelm_solver_name(hhelm_solver solver);
/* Accepts "svd", "hessenberg", "lu". */
HHELM_API hhelm_status hhelm_parse_solver(const char* name, hhelm_solver* out);

/* ---- configuration ---------------------------------------------------- */

typedef struct hhelm_synth_config {
  size_t n_per_class;
  double drift_amplitude;
  double noise_sigma;
  double alpha_amplitude;
  double fs;
  uint64_t seed;
} hhelm_synth_config;

HHELM_API void hhelm_synth_config_default(hhelm_synth_config* config);

typedef struct hhelm_pipeline_config {
  double filter_cutoff_hz;
  size_t filter_taps;
  double emd_sd_threshold;
  size_t emd_max_siftings;
  size_t emd_max_imfs;
  int emd_mirror_boundary;
  int features_raw_imf;
  int features_amplitude;
  size_t n_layers;
  size_t layer_sizes[HHELM_MAX_LAYERS];
  hhelm_solver solver;
  double ridge;
  hhelm_activation activation;
  uint64_t model_seed;
  size_t k;
  uint64_t seed; /* fold assignment and balancing */
} hhelm_pipeline_config;

HHELM_API void hhelm_pipeline_config_default(hhelm_pipeline_config* config);
HHELM_API hhelm_status hhelm_pipeline_config_validate(const hhelm_pipeline_config* config);
/* Number of "key=value" echo lines for the configuration. */
HHELM_API size_t hhelm_pipeline_config_echo_count(const hhelm_pipeline_config* config);
/* Copies echo line `index` into buf (truncated, always NUL-terminated);
 * returns the full length. */
HHELM_API size_t hhelm_pipeline_config_echo_line(const hhelm_pipeline_config* config, size_t index,
                                                 char* buf, size_t buf_size);

/* ---- trial sets ------------------------------------------------------- */

typedef struct hhelm_trials hhelm_trials;

HHELM_API hhelm_status hhelm_synth(const hhelm_synth_config* config, hhelm_trials** out);
HHELM_API hhelm_status hhelm_trials_load(const char* path, hhelm_trials** out);
/* Comment lines are written as "# line" before the header. */
HHELM_API hhelm_status hhelm_trials_save(const hhelm_trials* trials, const char* path,
                                         const char* const* comments, size_t n_comments);
HHELM_API void hhelm_trials_free(hhelm_trials* trials);
HHELM_API size_t hhelm_trials_count(const hhelm_trials* trials);
HHELM_API size_t hhelm_trials_length(const hhelm_trials* trials);
HHELM_API double hhelm_trials_fs(const hhelm_trials* trials);
HHELM_API const char* hhelm_trials_id(const hhelm_trials* trials, size_t index);
HHELM_API hhelm_label hhelm_trials_label(const hhelm_trials* trials, size_t index);
HHELM_API const double* hhelm_trials_samples(const hhelm_trials* trials, size_t index);
HHELM_API hhelm_status hhelm_trials_find(const hhelm_trials* trials, const char* id, size_t* index);

/* ---- decomposition ---------------------------------------------------- */

typedef struct hhelm_imfs hhelm_imfs;

/* Low-pass filter then EMD of one trial. */
HHELM_API hhelm_status hhelm_decompose(const hhelm_trials* trials, size_t index,
                                       const hhelm_pipeline_config* config, hhelm_imfs** out);
HHELM_API void hhelm_imfs_free(hhelm_imfs* imfs);
HHELM_API size_t hhelm_imfs_count(const hhelm_imfs* imfs);
HHELM_API size_t hhelm_imfs_length(const hhelm_imfs* imfs);
HHELM_API const double* hhelm_imfs_component(const hhelm_imfs* imfs, size_t k);
HHELM_API const double* hhelm_imfs_residual(const hhelm_imfs* imfs);
/* Columns imf_1..imf_K,residual. */
HHELM_API hhelm_status hhelm_imfs_save(const hhelm_imfs* imfs, const char* path,
                                       const char* const* comments, size_t n_comments);

/* ---- features --------------------------------------------------------- */

typedef struct hhelm_features hhelm_features;

HHELM_API hhelm_status hhelm_features_extract(const hhelm_trials* trials, const hhelm_pipeline_config* config,
                                              hhelm_features** out);
HHELM_API hhelm_status hhelm_features_load(const char* path, hhelm_features** out);
HHELM_API hhelm_status hhelm_features_save(const hhelm_features* features, const char* path,
                                           const char* const* comments, size_t n_comments);
HHELM_API void hhelm_features_free(hhelm_features* features);
HHELM_API size_t hhelm_features_rows(const hhelm_features* features);
HHELM_API size_t hhelm_features_cols(const hhelm_features* features);
HHELM_API const char* hhelm_features_name(const hhelm_features* features, size_t col);
HHELM_API const char* hhelm_features_id(const hhelm_features* features, size_t row);
HHELM_API hhelm_label hhelm_features_label(const hhelm_features* features, size_t row);
HHELM_API const double* hhelm_features_row(const hhelm_features* features, size_t row);

/* ---- cross-validation reports ----------------------------------------- */

typedef struct hhelm_report hhelm_report;

/* Undefined values are NaN. */
typedef struct hhelm_metric_summary {
  double mean;
  double std_dev;
  double min;
  double max;
  size_t defined_folds;
} hhelm_metric_summary;

typedef struct hhelm_fold_summary {
  size_t fold;
  size_t n_train;
  size_t n_test;
  size_t tp, fp, tn, fn;
  double selectivity;
  double sensitivity;
  double accuracy;
} hhelm_fold_summary;

HHELM_API hhelm_status hhelm_evaluate(const hhelm_features* features, const hhelm_pipeline_config* config,
                                      hhelm_report** out);
HHELM_API hhelm_status hhelm_report_load(const char* path, hhelm_report** out);
HHELM_API hhelm_status hhelm_report_save(const hhelm_report* report, const char* path);
HHELM_API void hhelm_report_free(hhelm_report* report);
HHELM_API hhelm_status hhelm_report_metric(const hhelm_report* report, hhelm_metric metric,
                                           hhelm_metric_summary* out);
HHELM_API size_t hhelm_report_fold_count(const hhelm_report* report);
HHELM_API hhelm_status hhelm_report_fold(const hhelm_report* report, size_t index, hhelm_fold_summary* out);
HHELM_API size_t hhelm_report_prediction_count(const hhelm_report* report);
HHELM_API hhelm_label hhelm_report_prediction(const hhelm_report* report, size_t index);

/* Percent metrics of a 2x2 table (positivity positive); NaN when undefined. */
HHELM_API hhelm_status hhelm_metrics(size_t tp, size_t fp, size_t tn, size_t fn, double* selectivity,
                                     double* sensitivity, double* accuracy);

/* ---- models ----------------------------------------------------------- */

typedef struct hhelm_model hhelm_model;

/* Trains on every row of the feature set with the config's train settings. */
HHELM_API hhelm_status hhelm_model_train(const hhelm_features* features, const hhelm_pipeline_config* config,
                                         hhelm_model** out);
/* labels has one slot per feature row; scores (optional) has 2 per row. */
HHELM_API hhelm_status hhelm_model_predict(const hhelm_model* model, const hhelm_features* features,
                                           hhelm_label* labels, double* scores);
HHELM_API hhelm_status hhelm_model_save(const hhelm_model* model, const char* path);
HHELM_API hhelm_status hhelm_model_load(const char* path, hhelm_model** out);
HHELM_API void hhelm_model_free(hhelm_model* model);

/* ---- hidden-size sweep ------------------------------------------------ */

typedef struct hhelm_sweep_spec {
  size_t min_units;
  size_t max_units;
  size_t step;
  size_t depth;
  size_t budget; /* 0 evaluates the full grid */
  uint64_t seed;
} hhelm_sweep_spec;

typedef struct hhelm_sweep hhelm_sweep;
typedef void (*hhelm_progress_fn)(size_t done, size_t total, void* user);

HHELM_API void hhelm_sweep_spec_default(hhelm_sweep_spec* spec);
HHELM_API hhelm_status hhelm_sweep_run(const hhelm_features* features, const hhelm_pipeline_config* config,
                                       const hhelm_sweep_spec* spec, hhelm_progress_fn progress, void* user,
                                       hhelm_sweep** out);
HHELM_API void hhelm_sweep_free(hhelm_sweep* sweep);
HHELM_API size_t hhelm_sweep_count(const hhelm_sweep* sweep);
/* Rows are ranked best first. */
HHELM_API size_t hhelm_sweep_layers(const hhelm_sweep* sweep, size_t rank, size_t* sizes, size_t capacity);
HHELM_API hhelm_status hhelm_sweep_metric(const hhelm_sweep* sweep, size_t rank, hhelm_metric metric,
                                          hhelm_metric_summary* out);
/* Columns rank,layers,mean_accuracy,std_accuracy,mean_selectivity,mean_sensitivity. */
HHELM_API hhelm_status hhelm_sweep_save(const hhelm_sweep* sweep, const char* path,
                                        const char* const* comments, size_t n_comments);

/* ---- solvers ---------------------------------------------------------- */

/* beta (l x m) for h (n x l) and t (n x m). */
HHELM_API hhelm_status hhelm_solve_output_weights(const double* h, size_t n, size_t l, const double* t, size_t m,
                                                  hhelm_solver solver, double ridge, double* beta);

typedef struct hhelm_bench hhelm_bench;

typedef struct hhelm_bench_row {
  size_t size;
  hhelm_solver solver;
  double seconds;
  double deviation;
} hhelm_bench_row;

HHELM_API hhelm_status hhelm_solver_bench(const size_t* sizes, size_t n_sizes, double ridge, uint64_t seed,
                                          hhelm_bench** out);
HHELM_API void hhelm_bench_free(hhelm_bench* bench);
HHELM_API size_t hhelm_bench_count(const hhelm_bench* bench);
HHELM_API hhelm_status hhelm_bench_row_at(const hhelm_bench* bench, size_t index, hhelm_bench_row* out);
/* Columns size,kernel,seconds,deviation_from_svd. */
HHELM_API hhelm_status hhelm_bench_save(const hhelm_bench* bench, const char* path, const char* const* comments,
                                        size_t n_comments);

#ifdef __cplusplus
}
#endif

#endif /* HHELM_HHELM_H */
