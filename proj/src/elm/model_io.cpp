#include <json.hpp>

#include "core/error.hpp"
#include "dataio/csv.hpp"
#include "elm/elm.hpp"

namespace hhelm {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kModelFormat = "hhelm-deep-elm";
constexpr int kModelVersion = 1;

Json matrix_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["values"] = std::vector<double>(m.values().begin(), m.values().end());
  return j;
}

Matrix matrix_from(const Json& j) {
  return Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                j.at("values").get<std::vector<double>>());
}

}  // namespace

std::string model_to_json(const DeepElmModel& model) {
  Json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["class_names"] = model.class_names;
  j["kernel"] = {{"variant", solver_name(model.kernel.variant)}, {"ridge", model.kernel.ridge}};
  j["seed"] = model.seed;
  j["activation"] = activation_name(model.activation);
  j["normalization"] = {{"mean", model.normalization.mean}, {"scale", model.normalization.scale}};
  Json layers = Json::array();
  for (const auto& layer : model.ae_layers) {
    Json lj = matrix_json(layer.beta);
    lj["activation"] = activation_name(layer.activation);
    layers.push_back(std::move(lj));
  }
  j["ae_layers"] = std::move(layers);
  j["readout"] = matrix_json(model.readout);
  return j.dump(1) + "\n";
}

DeepElmModel model_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat) fail(ErrorCode::FormatError, "not a Deep ELM model");
    if (j.at("version").get<int>() != kModelVersion) fail(ErrorCode::FormatError, "unsupported model version");

    DeepElmModel m;
    m.class_names = j.at("class_names").get<std::array<std::string, kClassCount>>();
    const auto variant = parse_solver(j.at("kernel").at("variant").get<std::string>());
    if (!variant) fail(ErrorCode::FormatError, "unknown kernel");
    m.kernel = SolverKind{*variant, j.at("kernel").at("ridge").get<double>()};
    m.seed = j.at("seed").get<std::uint64_t>();
    const auto act = parse_activation(j.at("activation").get<std::string>());
    if (!act) fail(ErrorCode::FormatError, "unknown activation");
    m.activation = *act;
    m.normalization.mean = j.at("normalization").at("mean").get<std::vector<double>>();
    m.normalization.scale = j.at("normalization").at("scale").get<std::vector<double>>();
    for (const Json& lj : j.at("ae_layers")) {
      const auto layer_act = parse_activation(lj.at("activation").get<std::string>());
      if (!layer_act) fail(ErrorCode::FormatError, "unknown layer activation");
      m.ae_layers.push_back(AutoencoderLayer{matrix_from(lj), *layer_act});
    }
    m.readout = matrix_from(j.at("readout"));
    m.check_consistency();
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("model document: ") + e.what());
  }
}

void save_model(const DeepElmModel& model, const std::string& path) {
  write_file_atomic(path, model_to_json(model));
}

DeepElmModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

}  // namespace hhelm
