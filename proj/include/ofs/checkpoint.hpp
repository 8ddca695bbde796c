#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ofs/mlp.hpp"

namespace ofs::nn {

/// A named block of model input (a feature file or an ensemble member).
struct InputBlock {
  std::string name;
  std::size_t dim = 0;

  bool operator==(const InputBlock&) const = default;
};

struct Checkpoint {
  MlpArchitecture arch;
  MlpParams params;
  std::vector<InputBlock> inputs;  // dims sum to arch.input_dim

  bool operator==(const Checkpoint&) const = default;
};

/// OFSMLP01 layout, little-endian:
///   "OFSMLP01"
///   u32 input_dim | u32 hidden_count | hidden_count x u32 | u32 output_dim
///   u8 hidden_activation | u8 output_activation | f64 dropout_rate
///   u32 block_count | block_count x (u32 name_len, name bytes, u32 dim)
///   per layer: out*in f64 weights (row-major, out x in), then out f64 biases
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);

/// Throws BadMagic, BadHeader, TruncatedFile, TrailingBytes, NonFiniteValue.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace ofs::nn
