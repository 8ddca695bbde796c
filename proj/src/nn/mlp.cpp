#include "ofs/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "ofs/error.hpp"
#include "ofs/random.hpp"

namespace ofs::nn {
namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void softmax_row(std::span<const double> z, std::span<double> p) {
  const double peak = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) total += (p[k] = std::exp(z[k] - peak));
  for (double& v : p) v /= total;
}

bool in_clamp_range(double p) { return p > kProbabilityFloor && p < 1.0 - kProbabilityFloor; }

double clamp_probability(double p) { return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor); }

}  // namespace

MlpArchitecture MlpArchitecture::for_subtask(std::size_t input_dim, Subtask subtask) {
  MlpArchitecture arch;
  arch.input_dim = input_dim;
  arch.output_dim = ofs::output_dim(subtask);
  return arch;
}

void MlpArchitecture::validate() const {
  if (input_dim == 0 || output_dim == 0) throw Error(ErrorCode::Config, "layer dimensions must be positive");
  for (std::size_t h : hidden)
    if (h == 0) throw Error(ErrorCode::Config, "hidden layer width must be positive");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw Error(ErrorCode::Config, "dropout rate must lie in [0, 1)");
}

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.bias.size();
  return n;
}

bool MlpParams::all_finite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(layers.begin(), layers.end(), [&](const DenseLayer& l) {
    return std::all_of(l.weights.values().begin(), l.weights.values().end(), finite) &&
           std::all_of(l.bias.begin(), l.bias.end(), finite);
  });
}

MlpParams init_params(const MlpArchitecture& arch, std::uint64_t seed) {
  arch.validate();
  Rng rng(seed);
  MlpParams params;
  for (std::size_t l = 0; l < arch.layer_count(); ++l) {
    const std::size_t in = arch.layer_inputs(l);
    const std::size_t out = arch.layer_outputs(l);
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    DenseLayer layer{Matrix(out, in), std::vector<double>(out, 0.0)};
    for (double& w : layer.weights.values()) w = rng.uniform(-limit, limit);
    params.layers.push_back(std::move(layer));
  }
  return params;
}

MlpParams zeros_like(const MlpParams& params) {
  MlpParams z;
  for (const auto& l : params.layers)
    z.layers.push_back({Matrix(l.weights.rows(), l.weights.cols()), std::vector<double>(l.bias.size(), 0.0)});
  return z;
}

ForwardCache forward(const MlpParams& params, const MlpArchitecture& arch, const Matrix& batch, ForwardMode mode,
                     kernels::Backend backend) {
  if (batch.cols() != arch.input_dim)
    throw Error(ErrorCode::DimensionMismatch, "input has " + std::to_string(batch.cols()) + " features, model expects " +
                                                  std::to_string(arch.input_dim));
  if (params.layers.size() != arch.layer_count())
    throw Error(ErrorCode::DimensionMismatch, "parameters do not match the architecture");

  ForwardCache cache;
  const std::size_t n_layers = arch.layer_count();
  cache.inputs.reserve(n_layers);
  cache.pre_activations.resize(n_layers);
  cache.inputs.push_back(batch);

  const bool dropout = mode.train && arch.dropout_rate > 0.0;
  const double keep_scale = 1.0 / (1.0 - arch.dropout_rate);
  Rng rng(mode.seed);

  for (std::size_t l = 0; l < n_layers; ++l) {
    const DenseLayer& layer = params.layers[l];
    Matrix& z = cache.pre_activations[l];
    kernels::dense_forward(backend, cache.inputs[l], layer.weights, layer.bias, z);
    if (l + 1 == n_layers) break;

    Matrix a = z;
    for (double& v : a.values()) v = v > 0.0 ? v : 0.0;
    if (dropout) {
      // Masks are drawn serially so they do not depend on the thread count.
      Matrix mask(a.rows(), a.cols());
      for (double& m : mask.values()) m = rng.uniform() < arch.dropout_rate ? 0.0 : keep_scale;
      for (std::size_t i = 0; i < a.size(); ++i) a.values()[i] *= mask.values()[i];
      cache.masks.push_back(std::move(mask));
    }
    cache.inputs.push_back(std::move(a));
  }

  const Matrix& logits = cache.pre_activations.back();
  cache.output.resize(logits.rows(), logits.cols());
  for (std::size_t b = 0; b < logits.rows(); ++b) {
    if (arch.output_dim == 1)
      cache.output(b, 0) = sigmoid(logits(b, 0));
    else
      softmax_row(logits.row(b), cache.output.row(b));
  }
  return cache;
}

std::vector<double> forward(const MlpParams& params, const MlpArchitecture& arch, std::span<const double> x,
                            ForwardMode mode) {
  Matrix batch(1, x.size());
  std::copy(x.begin(), x.end(), batch.row(0).begin());
  const ForwardCache cache = forward(params, arch, batch, mode, kernels::Backend::Serial);
  return {cache.output.row(0).begin(), cache.output.row(0).end()};
}

double weighted_loss(std::span<const double> output, ClassId target, double weight) {
  if (output.size() == 1) {
    const double p = clamp_probability(output[0]);
    return target == 1 ? -weight * std::log(p) : -weight * std::log(1.0 - p);
  }
  return -weight * std::log(clamp_probability(output[static_cast<std::size_t>(target)]));
}

MlpParams backward(const MlpParams& params, const MlpArchitecture& arch, const ForwardCache& cache,
                   std::span<const ClassId> targets, std::span<const double> weights, kernels::Backend backend) {
  const std::size_t batch = cache.output.rows();
  if (targets.size() != batch || weights.size() != batch)
    throw Error(ErrorCode::DimensionMismatch, "targets/weights do not match the batch");

  // d loss / d logits for sigmoid+BCE and softmax+CE; zero where the clamp is active.
  Matrix delta(batch, arch.output_dim);
  for (std::size_t b = 0; b < batch; ++b) {
    const auto p = cache.output.row(b);
    const auto y = static_cast<std::size_t>(targets[b]);
    if (arch.output_dim == 1) {
      if (in_clamp_range(p[0])) delta(b, 0) = weights[b] * (p[0] - static_cast<double>(y));
    } else if (in_clamp_range(p[y])) {
      for (std::size_t k = 0; k < arch.output_dim; ++k) delta(b, k) = weights[b] * (p[k] - (k == y ? 1.0 : 0.0));
    }
  }

  MlpParams grads;
  grads.layers.resize(params.layers.size());
  Matrix upstream;
  for (std::size_t l = params.layers.size(); l-- > 0;) {
    DenseLayer& g = grads.layers[l];
    g.bias.assign(params.layers[l].bias.size(), 0.0);
    kernels::dense_backward_params(backend, cache.inputs[l], delta, g.weights, g.bias);
    if (l == 0) break;

    kernels::dense_backward_input(backend, delta, params.layers[l].weights, upstream);
    const Matrix& z = cache.pre_activations[l - 1];
    const bool masked = !cache.masks.empty();
    for (std::size_t i = 0; i < upstream.size(); ++i) {
      double d = z.values()[i] > 0.0 ? upstream.values()[i] : 0.0;
      if (masked) d *= cache.masks[l - 1].values()[i];
      upstream.values()[i] = d;
    }
    std::swap(delta, upstream);
  }
  return grads;
}

std::vector<double> class_probabilities(std::span<const double> output) {
  if (output.size() == 1) return {1.0 - output[0], output[0]};
  return {output.begin(), output.end()};
}

ClassId decide(std::span<const double> output, double threshold) {
  if (output.size() == 1) return output[0] >= threshold ? 1 : 0;
  return static_cast<ClassId>(std::max_element(output.begin(), output.end()) - output.begin());
}

}  // namespace ofs::nn
