#include "ofs/trainer.hpp"

#include <cmath>
#include <numeric>

#include "ofs/error.hpp"
#include "ofs/metrics.hpp"
#include "ofs/random.hpp"

namespace ofs::nn {
namespace {

constexpr std::size_t kPredictChunk = 1024;

Matrix gather_rows(const Matrix& x, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), x.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = x.row(rows[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  if (max_epochs == 0) throw Error(ErrorCode::Config, "max_epochs must be positive");
  if (batch_size == 0) throw Error(ErrorCode::Config, "batch_size must be positive");
  if (patience == 0) throw Error(ErrorCode::Config, "patience must be positive");
  if (!(decision_threshold > 0.0 && decision_threshold < 1.0))
    throw Error(ErrorCode::Config, "decision threshold must lie in (0, 1)");
  if (!(adam.learning_rate > 0.0)) throw Error(ErrorCode::Config, "learning rate must be positive");
}

bool EarlyStopping::observe(double score) {
  ++epoch_;
  if (score > best_) {
    best_ = score;
    best_epoch_ = epoch_;
    stale_ = 0;
    return true;
  }
  ++stale_;
  return false;
}

TrainResult train(const MlpArchitecture& arch, const Dataset& train_data, std::span<const double> class_weights,
                  const TrainConfig& config, const Validator& validator) {
  arch.validate();
  config.validate();
  if (train_data.size() == 0) throw Error(ErrorCode::Config, "training set is empty");
  if (train_data.x.rows() != train_data.size())
    throw Error(ErrorCode::DimensionMismatch, "feature rows and labels differ in count");
  if (class_weights.size() != arch.class_count())
    throw Error(ErrorCode::DimensionMismatch, "expected one class weight per output class");
  for (ClassId y : train_data.y)
    if (y < 0 || static_cast<std::size_t>(y) >= class_weights.size())
      throw Error(ErrorCode::UnknownLabel, "training label " + std::to_string(y) + " has no class weight");

  TrainResult result;
  MlpParams params = init_params(arch, config.seed);
  AdamState adam = AdamState::for_params(params, config.adam);
  EarlyStopping stopping(config.patience);

  std::vector<std::size_t> order(train_data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<ClassId> targets;
  std::vector<double> row_weights;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Rng::derive(config.seed, epoch).shuffle(std::span(order));
    double weighted_loss_sum = 0.0;
    double weight_sum = 0.0;

    for (std::size_t start = 0, batch_no = 0; start < order.size(); start += config.batch_size, ++batch_no) {
      const auto rows = std::span(order).subspan(start, std::min(config.batch_size, order.size() - start));
      const Matrix x = gather_rows(train_data.x, rows);
      targets.clear();
      row_weights.clear();
      double batch_weight = 0.0;
      for (std::size_t r : rows) {
        targets.push_back(train_data.y[r]);
        row_weights.push_back(class_weights[static_cast<std::size_t>(train_data.y[r])]);
        batch_weight += row_weights.back();
      }

      const auto mode = ForwardMode::training(Rng::derive(config.seed, epoch, batch_no + 1).next());
      const ForwardCache cache = forward(params, arch, x, mode, config.backend);
      double batch_loss = 0.0;
      for (std::size_t b = 0; b < rows.size(); ++b)
        batch_loss += weighted_loss(cache.output.row(b), targets[b], row_weights[b]);
      if (!std::isfinite(batch_loss))
        throw Error(ErrorCode::NonFiniteLoss,
                    "epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch_no + 1));
      weighted_loss_sum += batch_loss;
      weight_sum += batch_weight;

      for (double& w : row_weights) w /= batch_weight;
      const MlpParams grads = backward(params, arch, cache, targets, row_weights, config.backend);
      adam_step(params, grads, adam);
    }
    if (!params.all_finite())
      throw Error(ErrorCode::NonFiniteLoss, "parameters diverged in epoch " + std::to_string(epoch));

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = weighted_loss_sum / weight_sum;
    record.val_f1 = validator(params, epoch);
    record.improved = stopping.observe(record.val_f1);
    if (record.improved) {
      result.params = params;
      result.best_epoch = epoch;
      result.best_f1 = record.val_f1;
    }
    result.history.push_back(record);
    if (stopping.should_stop()) break;
  }
  return result;
}

TrainResult train(const MlpArchitecture& arch, const Dataset& train_data, const Dataset& val_data,
                  std::span<const double> class_weights, const TrainConfig& config) {
  if (val_data.size() == 0) throw Error(ErrorCode::Config, "validation set is empty");
  return train(arch, train_data, class_weights, config, [&](const MlpParams& params, std::size_t) {
    return validation_macro_f1(params, arch, val_data, config.decision_threshold, config.backend);
  });
}

Matrix predict_outputs(const MlpParams& params, const MlpArchitecture& arch, const Matrix& x,
                       kernels::Backend backend) {
  if (x.cols() != arch.input_dim)
    throw Error(ErrorCode::DimensionMismatch, "features have width " + std::to_string(x.cols()) + ", model expects " +
                                                  std::to_string(arch.input_dim));
  Matrix out(x.rows(), arch.output_dim);
  std::vector<std::size_t> rows;
  for (std::size_t start = 0; start < x.rows(); start += kPredictChunk) {
    rows.resize(std::min(kPredictChunk, x.rows() - start));
    std::iota(rows.begin(), rows.end(), start);
    const ForwardCache cache = forward(params, arch, gather_rows(x, rows), ForwardMode::eval(), backend);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto src = cache.output.row(r);
      std::copy(src.begin(), src.end(), out.row(start + r).begin());
    }
  }
  return out;
}

std::vector<ClassId> predict_labels(const MlpParams& params, const MlpArchitecture& arch, const Matrix& x,
                                    double threshold, kernels::Backend backend) {
  const Matrix outputs = predict_outputs(params, arch, x, backend);
  std::vector<ClassId> labels(outputs.rows());
  for (std::size_t r = 0; r < outputs.rows(); ++r) labels[r] = decide(outputs.row(r), threshold);
  return labels;
}

double validation_macro_f1(const MlpParams& params, const MlpArchitecture& arch, const Dataset& data, double threshold,
                           kernels::Backend backend) {
  const auto preds = predict_labels(params, arch, data.x, threshold, backend);
  return metrics::macro_f1_score(preds, data.y, arch.class_count());
}

std::vector<Prediction> predict(const MlpParams& params, const MlpArchitecture& arch,
                                const features::AlignedFeatures& features, double threshold,
                                kernels::Backend backend) {
  const Matrix outputs = predict_outputs(params, arch, features.matrix, backend);
  std::vector<Prediction> out(outputs.rows());
  for (std::size_t r = 0; r < outputs.rows(); ++r)
    out[r] = {features.ids[r], decide(outputs.row(r), threshold), class_probabilities(outputs.row(r))};
  return out;
}

}  // namespace ofs::nn
