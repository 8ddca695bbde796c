#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ofs/adam.hpp"
#include "ofs/feature_store.hpp"
#include "ofs/mlp.hpp"

namespace ofs::nn {

struct TrainConfig {
  std::size_t max_epochs = 50;
  std::size_t batch_size = 32;
  /// Epochs without a validation-F1 improvement before stopping.
  std::size_t patience = 3;
  std::uint64_t seed = 0;
  double decision_threshold = 0.5;
  AdamConfig adam;
  kernels::Backend backend = kernels::Backend::Parallel;

  void validate() const;
};

struct Dataset {
  Matrix x;
  std::vector<ClassId> y;

  std::size_t size() const noexcept { return y.size(); }
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_f1 = 0.0;
  bool improved = false;

  bool operator==(const EpochRecord&) const = default;
};

struct TrainResult {
  MlpParams params;  // snapshot from best_epoch, never simply the last epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  double best_f1 = -std::numeric_limits<double>::infinity();
};

/// Tracks the best score and counts epochs without strict improvement.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

  /// Returns true when `score` is a new best.
  bool observe(double score);
  bool should_stop() const noexcept { return stale_ >= patience_; }
  double best() const noexcept { return best_; }
  std::size_t best_epoch() const noexcept { return best_epoch_; }

 private:
  std::size_t patience_;
  std::size_t epoch_ = 0;
  std::size_t stale_ = 0;
  std::size_t best_epoch_ = 0;
  double best_ = -std::numeric_limits<double>::infinity();
};

/// Scores parameters after each epoch (1-based epoch index).
using Validator = std::function<double(const MlpParams&, std::size_t epoch)>;

/// Mini-batch Adam on class-weighted cross-entropy. The batch loss is
/// sum(w_i * L_i) / sum(w_i). Throws NonFiniteLoss naming epoch and batch.
TrainResult train(const MlpArchitecture& arch, const Dataset& train_data, std::span<const double> class_weights,
                  const TrainConfig& config, const Validator& validator);

/// Early stopping on validation macro F1.
TrainResult train(const MlpArchitecture& arch, const Dataset& train_data, const Dataset& val_data,
                  std::span<const double> class_weights, const TrainConfig& config);

/// Eval-mode outputs, batch x output_dim.
Matrix predict_outputs(const MlpParams& params, const MlpArchitecture& arch, const Matrix& x,
                       kernels::Backend backend = kernels::Backend::Parallel);

/// Predicted class per row.
std::vector<ClassId> predict_labels(const MlpParams& params, const MlpArchitecture& arch, const Matrix& x,
                                    double threshold, kernels::Backend backend = kernels::Backend::Parallel);

double validation_macro_f1(const MlpParams& params, const MlpArchitecture& arch, const Dataset& data, double threshold,
                           kernels::Backend backend = kernels::Backend::Parallel);

struct Prediction {
  ExampleId id = 0;
  ClassId label = 0;
  std::vector<double> probabilities;  // one per class
};

/// Throws DimensionMismatch when the feature width differs from the model input.
std::vector<Prediction> predict(const MlpParams& params, const MlpArchitecture& arch,
                                const features::AlignedFeatures& features, double threshold,
                                kernels::Backend backend = kernels::Backend::Parallel);

}  // namespace ofs::nn
