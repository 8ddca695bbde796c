#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ofs/kernels.hpp"
#include "ofs/matrix.hpp"
#include "ofs/types.hpp"

namespace ofs::nn {

enum class Activation : std::uint8_t { ReLU = 1, Sigmoid = 2, Softmax = 3 };

/// Dense stack: input -> hidden... (ReLU, dropout) -> output (sigmoid when a
/// single unit, softmax otherwise). An empty `hidden` gives logistic regression.
struct MlpArchitecture {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden{256, 128};
  std::size_t output_dim = 1;
  double dropout_rate = 0.1;

  static MlpArchitecture for_subtask(std::size_t input_dim, Subtask subtask);

  Activation hidden_activation() const noexcept { return Activation::ReLU; }
  Activation output_activation() const noexcept { return output_dim == 1 ? Activation::Sigmoid : Activation::Softmax; }
  std::size_t layer_count() const noexcept { return hidden.size() + 1; }
  std::size_t layer_inputs(std::size_t layer) const { return layer == 0 ? input_dim : hidden[layer - 1]; }
  std::size_t layer_outputs(std::size_t layer) const { return layer < hidden.size() ? hidden[layer] : output_dim; }
  /// Classes represented by the output (2 for a sigmoid unit).
  std::size_t class_count() const noexcept { return output_dim == 1 ? 2 : output_dim; }

  /// Throws Config on a zero dimension or dropout outside [0, 1).
  void validate() const;

  bool operator==(const MlpArchitecture&) const = default;
};

struct DenseLayer {
  Matrix weights;  // out x in
  std::vector<double> bias;

  bool operator==(const DenseLayer&) const = default;
};

struct MlpParams {
  std::vector<DenseLayer> layers;

  std::size_t parameter_count() const;
  bool all_finite() const;
  bool operator==(const MlpParams&) const = default;
};

/// Glorot-uniform weights, zero biases.
MlpParams init_params(const MlpArchitecture& arch, std::uint64_t seed);
MlpParams zeros_like(const MlpParams& params);

/// Train mode draws inverted-dropout masks from `seed`; Eval applies none.
struct ForwardMode {
  bool train = false;
  std::uint64_t seed = 0;

  static ForwardMode training(std::uint64_t seed) { return {true, seed}; }
  static ForwardMode eval() { return {false, 0}; }
};

struct ForwardCache {
  std::vector<Matrix> inputs;           // per layer: its input (after the previous dropout)
  std::vector<Matrix> pre_activations;  // per layer
  std::vector<Matrix> masks;            // per hidden layer: 0 or 1/(1-rate); empty in eval
  Matrix output;                        // batch x output_dim probabilities
};

/// Batch forward pass; `batch` is rows x input_dim. Throws DimensionMismatch.
ForwardCache forward(const MlpParams& params, const MlpArchitecture& arch, const Matrix& batch, ForwardMode mode,
                     kernels::Backend backend = kernels::Backend::Parallel);

/// Single-example convenience wrapper.
std::vector<double> forward(const MlpParams& params, const MlpArchitecture& arch, std::span<const double> x,
                            ForwardMode mode = ForwardMode::eval());

inline constexpr double kProbabilityFloor = 1e-7;

/// Weighted cross-entropy. One output: binary, target 1 means the positive
/// class. Several outputs: categorical. Probabilities are clamped to
/// [1e-7, 1 - 1e-7] before the log.
double weighted_loss(std::span<const double> output, ClassId target, double weight);

/// Exact gradient of sum_b weighted_loss(output_b, targets_b, weights_b) for
/// the dropout masks recorded in `cache`.
MlpParams backward(const MlpParams& params, const MlpArchitecture& arch, const ForwardCache& cache,
                   std::span<const ClassId> targets, std::span<const double> weights,
                   kernels::Backend backend = kernels::Backend::Parallel);

/// Probability vector over classes for one output row ((1-p, p) for a sigmoid unit).
std::vector<double> class_probabilities(std::span<const double> output);

/// Sigmoid: positive class iff p >= threshold. Softmax: argmax, lowest index on ties.
ClassId decide(std::span<const double> output, double threshold = 0.5);

}  // namespace ofs::nn
