#include <json.hpp>

#include "core/error.hpp"
#include "dataio/csv.hpp"
#include "eval/eval.hpp"

namespace hhelm {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kReportFormat = "hhelm-cv-report";
constexpr int kReportVersion = 1;

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> read_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json summary_json(const MetricSummary& s) {
  Json j;
  j["mean"] = optional_number(s.mean);
  j["std"] = optional_number(s.std_dev);
  j["min"] = optional_number(s.min);
  j["max"] = optional_number(s.max);
  j["defined_folds"] = s.defined_folds;
  return j;
}

MetricSummary summary_from(const Json& j) {
  MetricSummary s;
  s.mean = read_optional(j.at("mean"));
  s.std_dev = read_optional(j.at("std"));
  s.min = read_optional(j.at("min"));
  s.max = read_optional(j.at("max"));
  s.defined_folds = j.at("defined_folds").get<std::size_t>();
  return s;
}

}  // namespace

std::string report_to_json(const CvReport& report) {
  Json j;
  j["format"] = kReportFormat;
  j["version"] = kReportVersion;
  j["k"] = report.k;
  j["seed"] = report.seed;

  Json config;
  config["layers"] = report.config.layer_sizes;
  config["kernel"] = solver_name(report.config.kernel.variant);
  config["ridge"] = report.config.kernel.ridge;
  config["model_seed"] = report.config.seed;
  config["activation"] = activation_name(report.config.activation);
  Json echo = Json::object();
  for (const auto& [key, value] : report.config_echo) echo[key] = value;
  config["pipeline"] = std::move(echo);
  j["config"] = std::move(config);

  Json summary;
  summary["selectivity"] = summary_json(report.selectivity);
  summary["sensitivity"] = summary_json(report.sensitivity);
  summary["accuracy"] = summary_json(report.accuracy);
  j["summary"] = std::move(summary);

  Json folds = Json::array();
  for (const auto& f : report.folds) {
    Json fj;
    fj["fold"] = f.fold;
    fj["n_train"] = f.n_train;
    fj["n_test"] = f.n_test;
    fj["tp"] = f.table.tp;
    fj["fp"] = f.table.fp;
    fj["tn"] = f.table.tn;
    fj["fn"] = f.table.fn;
    fj["selectivity"] = optional_number(f.metrics.selectivity);
    fj["sensitivity"] = optional_number(f.metrics.sensitivity);
    fj["accuracy"] = optional_number(f.metrics.accuracy);
    folds.push_back(std::move(fj));
  }
  j["folds"] = std::move(folds);
  j["fold_of"] = report.fold_of;
  Json preds = Json::array();
  for (Label l : report.predictions) preds.push_back(class_index(l));
  j["predictions"] = std::move(preds);
  return j.dump(2) + "\n";
}

CvReport report_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kReportFormat) fail(ErrorCode::FormatError, "not a CV report");
    if (j.at("version").get<int>() != kReportVersion) fail(ErrorCode::FormatError, "unsupported report version");

    CvReport r;
    r.k = j.at("k").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const Json& config = j.at("config");
    r.config.layer_sizes = config.at("layers").get<std::vector<std::size_t>>();
    const auto variant = parse_solver(config.at("kernel").get<std::string>());
    if (!variant) fail(ErrorCode::FormatError, "unknown kernel in report");
    r.config.kernel = SolverKind{*variant, config.at("ridge").get<double>()};
    r.config.seed = config.at("model_seed").get<std::uint64_t>();
    const auto act = parse_activation(config.at("activation").get<std::string>());
    if (!act) fail(ErrorCode::FormatError, "unknown activation in report");
    r.config.activation = *act;
    for (const auto& [key, value] : config.at("pipeline").items()) {
      r.config_echo.emplace_back(key, value.get<std::string>());
    }

    const Json& summary = j.at("summary");
    r.selectivity = summary_from(summary.at("selectivity"));
    r.sensitivity = summary_from(summary.at("sensitivity"));
    r.accuracy = summary_from(summary.at("accuracy"));

    for (const Json& fj : j.at("folds")) {
      FoldResult f;
      f.fold = fj.at("fold").get<std::size_t>();
      f.n_train = fj.at("n_train").get<std::size_t>();
      f.n_test = fj.at("n_test").get<std::size_t>();
      f.table = {fj.at("tp").get<std::size_t>(), fj.at("fp").get<std::size_t>(),
                 fj.at("tn").get<std::size_t>(), fj.at("fn").get<std::size_t>()};
      f.metrics = {read_optional(fj.at("selectivity")), read_optional(fj.at("sensitivity")),
                   read_optional(fj.at("accuracy"))};
      r.folds.push_back(f);
    }
    r.fold_of = j.at("fold_of").get<FoldAssignment>();
    for (const Json& p : j.at("predictions")) r.predictions.push_back(label_from_index(p.get<std::size_t>()));
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("CV report: ") + e.what());
  }
}

void save_report(const CvReport& report, const std::string& path) {
  write_file_atomic(path, report_to_json(report));
}

CvReport load_report(const std::string& path) { return report_from_json(read_file(path)); }

}  // namespace hhelm
