#include "ofs/kernels.hpp"

#include <cassert>

namespace ofs::kernels::serial {

void dense_forward(const Matrix& input, const Matrix& weights, std::span<const double> bias, Matrix& output) {
  assert(input.cols() == weights.cols() && bias.size() == weights.rows());
  output.resize(input.rows(), weights.rows());
  for (std::size_t b = 0; b < input.rows(); ++b) {
    for (std::size_t o = 0; o < weights.rows(); ++o) {
      double acc = 0.0;
      for (std::size_t i = 0; i < input.cols(); ++i) acc += input(b, i) * weights(o, i);
      output(b, o) = acc + bias[o];
    }
  }
}

void dense_backward_input(const Matrix& grad_output, const Matrix& weights, Matrix& grad_input) {
  assert(grad_output.cols() == weights.rows());
  grad_input.resize(grad_output.rows(), weights.cols());
  for (std::size_t b = 0; b < grad_output.rows(); ++b) {
    for (std::size_t i = 0; i < weights.cols(); ++i) {
      double acc = 0.0;
      for (std::size_t o = 0; o < weights.rows(); ++o) acc += grad_output(b, o) * weights(o, i);
      grad_input(b, i) = acc;
    }
  }
}

void dense_backward_params(const Matrix& input, const Matrix& grad_output, Matrix& grad_weights,
                           std::span<double> grad_bias) {
  assert(input.rows() == grad_output.rows() && grad_bias.size() == grad_output.cols());
  grad_weights.resize(grad_output.cols(), input.cols());
  for (std::size_t o = 0; o < grad_output.cols(); ++o) {
    for (std::size_t i = 0; i < input.cols(); ++i) {
      double acc = 0.0;
      for (std::size_t b = 0; b < input.rows(); ++b) acc += grad_output(b, o) * input(b, i);
      grad_weights(o, i) = acc;
    }
    double acc = 0.0;
    for (std::size_t b = 0; b < input.rows(); ++b) acc += grad_output(b, o);
    grad_bias[o] = acc;
  }
}

}  // namespace ofs::kernels::serial
