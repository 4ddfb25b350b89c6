#include "elm/elm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/random.hpp"

namespace hhelm {

std::string_view activation_name(Activation a) {
  return a == Activation::Sigmoid ? "sigmoid" : "linear";
}

std::optional<Activation> parse_activation(std::string_view name) {
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "linear") return Activation::Linear;
  return std::nullopt;
}

void apply_activation(Matrix& m, Activation a) {
  if (a == Activation::Linear) return;
  for (double& v : m.values()) v = 1.0 / (1.0 + std::exp(-v));
}

Matrix ElmLayer::hidden_output(const Matrix& x) const {
  if (x.cols() != input_weights.rows()) {
    fail(ErrorCode::ShapeMismatch, "input width " + std::to_string(x.cols()) + " but layer expects " +
                                       std::to_string(input_weights.rows()));
  }
  Matrix h = x * input_weights;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    auto row = h.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += biases[c];
  }
  apply_activation(h, activation);
  return h;
}

ElmLayer make_random_layer(std::size_t input_width, std::size_t hidden, std::uint64_t seed,
                           Activation activation) {
  if (input_width == 0 || hidden == 0) fail(ErrorCode::InvalidConfig, "layer widths must be >= 1");
  ElmLayer layer;
  layer.input_weights = random_orthogonal(input_width, hidden, mix_seed(seed, 0));
  const Matrix b = random_orthogonal(1, hidden, mix_seed(seed, 1));
  layer.biases.assign(b.values().begin(), b.values().end());
  layer.activation = activation;
  return layer;
}

ElmModel elm_train(const Matrix& x, const Matrix& t, std::size_t hidden, const SolverKind& kernel,
                   std::uint64_t seed, Activation activation) {
  if (x.rows() == 0 || x.cols() == 0) fail(ErrorCode::ShapeMismatch, "empty training input");
  if (x.rows() != t.rows()) fail(ErrorCode::ShapeMismatch, "inputs and targets differ in row count");
  ElmModel model;
  model.layer = make_random_layer(x.cols(), hidden, seed, activation);
  model.beta = solve_output_weights(model.layer.hidden_output(x), t, kernel);
  return model;
}

Matrix AutoencoderLayer::forward(const Matrix& x) const {
  if (x.cols() != input_width()) {
    fail(ErrorCode::ShapeMismatch, "autoencoder expects width " + std::to_string(input_width()) +
                                       ", got " + std::to_string(x.cols()));
  }
  Matrix r = x * beta.transposed();
  apply_activation(r, activation);
  return r;
}

AutoencoderLayer elm_ae_train(const Matrix& x, std::size_t hidden, const SolverKind& kernel,
                              std::uint64_t seed, Activation activation) {
  if (x.rows() == 0 || x.cols() == 0) fail(ErrorCode::ShapeMismatch, "empty autoencoder input");
  const ElmLayer layer = make_random_layer(x.cols(), hidden, seed, activation);
  return AutoencoderLayer{solve_output_weights(layer.hidden_output(x), x, kernel), activation};
}

Normalization Normalization::fit(const Matrix& x) {
  Normalization n;
  const std::size_t d = x.cols();
  n.mean.assign(d, 0.0);
  n.scale.assign(d, 1.0);
  if (x.rows() == 0) return n;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < d; ++c) n.mean[c] += x(r, c);
  for (double& m : n.mean) m /= static_cast<double>(x.rows());
  std::vector<double> var(d, 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dv = x(r, c) - n.mean[c];
      var[c] += dv * dv;
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    const double sd = std::sqrt(var[c] / static_cast<double>(x.rows()));
    if (sd > 0.0 && std::isfinite(sd)) n.scale[c] = sd;
  }
  return n;
}

Matrix Normalization::apply(const Matrix& x) const {
  if (x.cols() != mean.size()) {
    fail(ErrorCode::ShapeMismatch, "feature width " + std::to_string(x.cols()) + " but model expects " +
                                       std::to_string(mean.size()));
  }
  Matrix out = x;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] - mean[c]) / scale[c];
  }
  return out;
}

void TrainConfig::validate() const {
  if (layer_sizes.empty() || layer_sizes.size() > kMaxLayers) {
    fail(ErrorCode::InvalidConfig, "layer count must be between 1 and " + std::to_string(kMaxLayers));
  }
  for (std::size_t s : layer_sizes) {
    if (s == 0) fail(ErrorCode::InvalidConfig, "layer sizes must be >= 1");
  }
  kernel.validate();
}

void DeepElmModel::check_consistency() const {
  if (normalization.mean.size() != normalization.scale.size() || normalization.mean.empty()) {
    fail(ErrorCode::ShapeMismatch, "normalization vectors are inconsistent");
  }
  std::size_t width = input_width();
  for (std::size_t k = 0; k < ae_layers.size(); ++k) {
    if (ae_layers[k].input_width() != width) {
      fail(ErrorCode::ShapeMismatch, "layer " + std::to_string(k) + " expects width " +
                                         std::to_string(ae_layers[k].input_width()) + ", chain gives " +
                                         std::to_string(width));
    }
    width = ae_layers[k].output_width();
  }
  if (readout.rows() != width || readout.cols() != kClassCount) {
    fail(ErrorCode::ShapeMismatch, "readout shape does not match last layer width and class count");
  }
}

Matrix one_hot(std::span<const Label> labels) {
  Matrix t(labels.size(), kClassCount);
  for (std::size_t i = 0; i < labels.size(); ++i) t(i, class_index(labels[i])) = 1.0;
  return t;
}

DeepElmModel deep_elm_train(const Matrix& x, std::span<const Label> labels, const TrainConfig& config) {
  config.validate();
  if (x.rows() != labels.size()) fail(ErrorCode::ShapeMismatch, "feature rows and label count differ");
  if (x.cols() == 0) fail(ErrorCode::ShapeMismatch, "empty feature width");
  std::array<std::size_t, kClassCount> counts{};
  for (Label l : labels) counts[class_index(l)]++;
  for (std::size_t c = 0; c < kClassCount; ++c) {
    if (counts[c] < 2) {
      fail(ErrorCode::DegenerateLabels, "class '" + std::string(kClassNames[c]) + "' has " +
                                            std::to_string(counts[c]) + " samples, need >= 2");
    }
  }

  DeepElmModel model;
  model.kernel = config.kernel;
  model.seed = config.seed;
  model.activation = config.activation;
  model.normalization = Normalization::fit(x);

  Matrix rep = model.normalization.apply(x);
  for (std::size_t k = 0; k < config.layer_sizes.size(); ++k) {
    AutoencoderLayer layer = elm_ae_train(rep, config.layer_sizes[k], config.kernel,
                                          mix_seed(config.seed, k), config.activation);
    rep = layer.forward(rep);
    model.ae_layers.push_back(std::move(layer));
  }
  model.readout = solve_output_weights(rep, one_hot(labels), config.kernel);
  model.check_consistency();
  return model;
}

Matrix deep_elm_represent(const DeepElmModel& model, const Matrix& x) {
  Matrix rep = model.normalization.apply(x);
  for (const auto& layer : model.ae_layers) rep = layer.forward(rep);
  return rep;
}

Prediction deep_elm_predict(const DeepElmModel& model, const Matrix& x) {
  Prediction p;
  p.scores = deep_elm_represent(model, x) * model.readout;
  p.labels.reserve(p.scores.rows());
  for (std::size_t r = 0; r < p.scores.rows(); ++r) {
    p.labels.push_back(p.scores(r, 1) > p.scores(r, 0) ? Label::Positivity : Label::Negativity);
  }
  return p;
}

}  // namespace hhelm
