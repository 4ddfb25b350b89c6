#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/label.hpp"
#include "linalg/matrix.hpp"
#include "linalg/solvers.hpp"

namespace hhelm {

enum class Activation { Sigmoid, Linear };

std::string_view activation_name(Activation a);
std::optional<Activation> parse_activation(std::string_view name);
void apply_activation(Matrix& m, Activation a);

/// Random hidden mapping x ↦ g(x·W + b).
struct ElmLayer {
  Matrix input_weights;         // d × L
  std::vector<double> biases;   // L
  Activation activation = Activation::Sigmoid;

  Matrix hidden_output(const Matrix& x) const;
};

/// Seeded hidden layer: orthonormal W (columns when d ≥ L, rows otherwise)
/// and a unit-norm bias vector.
ElmLayer make_random_layer(std::size_t input_width, std::size_t hidden, std::uint64_t seed,
                           Activation activation = Activation::Sigmoid);

struct ElmModel {
  ElmLayer layer;
  Matrix beta;  // L × m

  Matrix predict(const Matrix& x) const { return layer.hidden_output(x) * beta; }
};

/// Single-hidden-layer ELM fit of x → t.
ElmModel elm_train(const Matrix& x, const Matrix& t, std::size_t hidden, const SolverKind& kernel,
                   std::uint64_t seed, Activation activation = Activation::Sigmoid);

/// Learned autoencoder projection; the representation is g(x·βᵀ).
struct AutoencoderLayer {
  Matrix beta;  // L × d
  Activation activation = Activation::Sigmoid;

  std::size_t input_width() const { return beta.cols(); }
  std::size_t output_width() const { return beta.rows(); }
  Matrix forward(const Matrix& x) const;
};

/// ELM autoencoder: random hidden layer from the seed, β solves H·β ≈ x.
AutoencoderLayer elm_ae_train(const Matrix& x, std::size_t hidden, const SolverKind& kernel,
                              std::uint64_t seed, Activation activation = Activation::Sigmoid);

/// Per-feature z-score; features with zero spread keep scale 1.
struct Normalization {
  std::vector<double> mean;
  std::vector<double> scale;

  static Normalization fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
};

inline constexpr std::size_t kMaxLayers = 8;

struct TrainConfig {
  std::vector<std::size_t> layer_sizes;
  SolverKind kernel;
  std::uint64_t seed = 1;
  Activation activation = Activation::Sigmoid;

  void validate() const;
};

struct DeepElmModel {
  Normalization normalization;
  std::vector<AutoencoderLayer> ae_layers;
  Matrix readout;  // last width × 2
  SolverKind kernel;
  std::uint64_t seed = 0;
  Activation activation = Activation::Sigmoid;
  std::array<std::string, kClassCount> class_names{std::string(kClassNames[0]),
                                                   std::string(kClassNames[1])};

  std::size_t input_width() const { return normalization.mean.size(); }
  /// Throws ShapeMismatch if adjacent widths do not chain.
  void check_consistency() const;
};

struct Prediction {
  std::vector<Label> labels;
  Matrix scores;  // n × 2
};

Matrix one_hot(std::span<const Label> labels);

/// Stacked autoencoders on z-scored input, then a least-squares readout to
/// one-hot targets with the same kernel.
DeepElmModel deep_elm_train(const Matrix& x, std::span<const Label> labels, const TrainConfig& config);

/// Hidden representation after the last autoencoder layer.
Matrix deep_elm_represent(const DeepElmModel& model, const Matrix& x);

/// Argmax over the two score columns; exact ties go to the first class.
Prediction deep_elm_predict(const DeepElmModel& model, const Matrix& x);

std::string model_to_json(const DeepElmModel& model);
DeepElmModel model_from_json(std::string_view text);
void save_model(const DeepElmModel& model, const std::string& path);
DeepElmModel load_model(const std::string& path);

}  // namespace hhelm
