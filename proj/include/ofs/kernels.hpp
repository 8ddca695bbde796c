#pragma once

#include <span>

#include "ofs/matrix.hpp"

// Dense-layer kernels. Each has a plain serial reference and an OpenMP
// version; the OpenMP version partitions over output elements only, so every
// element is accumulated in the same order and results are bit-identical.
namespace ofs::kernels {

enum class Backend { Serial, Parallel };

namespace serial {

/// output(b, o) = bias(o) + sum_i input(b, i) * weights(o, i)
void dense_forward(const Matrix& input, const Matrix& weights, std::span<const double> bias, Matrix& output);

/// grad_input(b, i) = sum_o grad_output(b, o) * weights(o, i)
void dense_backward_input(const Matrix& grad_output, const Matrix& weights, Matrix& grad_input);

/// grad_weights(o, i) = sum_b grad_output(b, o) * input(b, i); grad_bias(o) = sum_b grad_output(b, o)
void dense_backward_params(const Matrix& input, const Matrix& grad_output, Matrix& grad_weights,
                           std::span<double> grad_bias);

}  // namespace serial

namespace parallel {

void dense_forward(const Matrix& input, const Matrix& weights, std::span<const double> bias, Matrix& output);
void dense_backward_input(const Matrix& grad_output, const Matrix& weights, Matrix& grad_input);
void dense_backward_params(const Matrix& input, const Matrix& grad_output, Matrix& grad_weights,
                           std::span<double> grad_bias);

}  // namespace parallel

inline void dense_forward(Backend backend, const Matrix& input, const Matrix& weights,
                          std::span<const double> bias, Matrix& output) {
  backend == Backend::Serial ? serial::dense_forward(input, weights, bias, output)
                             : parallel::dense_forward(input, weights, bias, output);
}

inline void dense_backward_input(Backend backend, const Matrix& grad_output, const Matrix& weights,
                                 Matrix& grad_input) {
  backend == Backend::Serial ? serial::dense_backward_input(grad_output, weights, grad_input)
                             : parallel::dense_backward_input(grad_output, weights, grad_input);
}

inline void dense_backward_params(Backend backend, const Matrix& input, const Matrix& grad_output,
                                  Matrix& grad_weights, std::span<double> grad_bias) {
  backend == Backend::Serial ? serial::dense_backward_params(input, grad_output, grad_weights, grad_bias)
                             : parallel::dense_backward_params(input, grad_output, grad_weights, grad_bias);
}

}  // namespace ofs::kernels
