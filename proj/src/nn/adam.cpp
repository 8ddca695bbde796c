#include "ofs/adam.hpp"

#include <cmath>

#include "ofs/error.hpp"

namespace ofs::nn {
namespace {

void update(std::span<double> p, std::span<const double> g, std::span<double> m, std::span<double> v,
            const AdamConfig& c, double correction1, double correction2) {
  const auto n = static_cast<std::int64_t>(p.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g[i];
    v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g[i] * g[i];
    const double m_hat = m[i] / correction1;
    const double v_hat = v[i] / correction2;
    p[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

}  // namespace

AdamState AdamState::for_params(const MlpParams& params, AdamConfig config) {
  return {config, 0, zeros_like(params), zeros_like(params)};
}

void adam_step(MlpParams& params, const MlpParams& grads, AdamState& state) {
  if (grads.layers.size() != params.layers.size() || state.first_moment.layers.size() != params.layers.size())
    throw Error(ErrorCode::DimensionMismatch, "gradient/optimizer shapes do not match the parameters");
  ++state.step;
  const auto t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.config.beta1, t);
  const double correction2 = 1.0 - std::pow(state.config.beta2, t);
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    DenseLayer& p = params.layers[l];
    const DenseLayer& g = grads.layers[l];
    if (g.weights.size() != p.weights.size() || g.bias.size() != p.bias.size())
      throw Error(ErrorCode::DimensionMismatch, "gradient shape mismatch in layer " + std::to_string(l));
    update(p.weights.values(), g.weights.values(), state.first_moment.layers[l].weights.values(),
           state.second_moment.layers[l].weights.values(), state.config, correction1, correction2);
    update(p.bias, g.bias, state.first_moment.layers[l].bias, state.second_moment.layers[l].bias, state.config,
           correction1, correction2);
  }
}

}  // namespace ofs::nn
