#include "ofs/kernels.hpp"

#include <cassert>
#include <cstdint>

namespace ofs::kernels::parallel {

void dense_forward(const Matrix& input, const Matrix& weights, std::span<const double> bias, Matrix& output) {
  assert(input.cols() == weights.cols() && bias.size() == weights.rows());
  const auto batch = static_cast<std::int64_t>(input.rows());
  const auto outs = static_cast<std::int64_t>(weights.rows());
  const std::size_t in_dim = input.cols();
  output.resize(input.rows(), weights.rows());

#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t b = 0; b < batch; ++b) {
    for (std::int64_t o = 0; o < outs; ++o) {
      const double* x = input.data() + b * in_dim;
      const double* w = weights.data() + o * in_dim;
      double acc = 0.0;
      for (std::size_t i = 0; i < in_dim; ++i) acc += x[i] * w[i];
      output(b, o) = acc + bias[o];
    }
  }
}

void dense_backward_input(const Matrix& grad_output, const Matrix& weights, Matrix& grad_input) {
  assert(grad_output.cols() == weights.rows());
  const auto batch = static_cast<std::int64_t>(grad_output.rows());
  const std::size_t outs = weights.rows();
  const std::size_t in_dim = weights.cols();
  grad_input.resize(grad_output.rows(), in_dim);

  // Row-accumulating form: for each (b, i) the sum still runs over o in
  // ascending order, matching the reference.
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < batch; ++b) {
    double* gi = grad_input.data() + b * in_dim;
    const double* go = grad_output.data() + b * outs;
    for (std::size_t o = 0; o < outs; ++o) {
      const double g = go[o];
      const double* w = weights.data() + o * in_dim;
      for (std::size_t i = 0; i < in_dim; ++i) gi[i] += g * w[i];
    }
  }
}

void dense_backward_params(const Matrix& input, const Matrix& grad_output, Matrix& grad_weights,
                           std::span<double> grad_bias) {
  assert(input.rows() == grad_output.rows() && grad_bias.size() == grad_output.cols());
  const std::size_t batch = input.rows();
  const auto outs = static_cast<std::int64_t>(grad_output.cols());
  const std::size_t in_dim = input.cols();
  grad_weights.resize(grad_output.cols(), in_dim);

#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < outs; ++o) {
    double* gw = grad_weights.data() + o * in_dim;
    double bias_acc = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      const double g = grad_output(b, o);
      const double* x = input.data() + b * in_dim;
      for (std::size_t i = 0; i < in_dim; ++i) gw[i] += g * x[i];
      bias_acc += g;
    }
    grad_bias[o] = bias_acc;
  }
}

}  // namespace ofs::kernels::parallel
