#pragma once

#include <cstdint>

#include "ofs/mlp.hpp"

namespace ofs::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::uint64_t step = 0;
  MlpParams first_moment;
  MlpParams second_moment;

  static AdamState for_params(const MlpParams& params, AdamConfig config = {});
};

/// Bias-corrected Adam update of `params` in place; increments state.step.
void adam_step(MlpParams& params, const MlpParams& grads, AdamState& state);

}  // namespace ofs::nn
