#include "ofs/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "ofs/binary_io.hpp"
#include "ofs/error.hpp"

namespace ofs::nn {
namespace {

constexpr char kMagic[8] = {'O', 'F', 'S', 'M', 'L', 'P', '0', '1'};
constexpr std::uint32_t kMaxDim = 1u << 24;

template <typename T>
void read_or_throw(std::istream& in, T& value, const std::string& where) {
  if (!binary::read(in, value)) throw Error(ErrorCode::TruncatedFile, where + "file ends early");
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  ck.arch.validate();
  std::size_t block_total = 0;
  for (const auto& block : ck.inputs) block_total += block.dim;
  if (!ck.inputs.empty() && block_total != ck.arch.input_dim)
    throw Error(ErrorCode::DimensionMismatch, "input block widths do not sum to the input dimension");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(kMagic, sizeof(kMagic));
  binary::write(out, static_cast<std::uint32_t>(ck.arch.input_dim));
  binary::write(out, static_cast<std::uint32_t>(ck.arch.hidden.size()));
  for (std::size_t h : ck.arch.hidden) binary::write(out, static_cast<std::uint32_t>(h));
  binary::write(out, static_cast<std::uint32_t>(ck.arch.output_dim));
  binary::write(out, static_cast<std::uint8_t>(ck.arch.hidden_activation()));
  binary::write(out, static_cast<std::uint8_t>(ck.arch.output_activation()));
  binary::write(out, ck.arch.dropout_rate);
  binary::write(out, static_cast<std::uint32_t>(ck.inputs.size()));
  for (const auto& block : ck.inputs) {
    binary::write_string(out, block.name);
    binary::write(out, static_cast<std::uint32_t>(block.dim));
  }
  for (const auto& layer : ck.params.layers) {
    for (double w : layer.weights.values()) binary::write(out, w);
    for (double b : layer.bias) binary::write(out, b);
  }
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  const std::string where = path.string() + ": ";

  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic))) throw Error(ErrorCode::TruncatedFile, where + "file ends inside the magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw Error(ErrorCode::BadMagic, where + "not an OFSMLP01 file");

  Checkpoint ck;
  std::uint32_t input_dim = 0, hidden_count = 0, output_dim = 0;
  read_or_throw(in, input_dim, where);
  read_or_throw(in, hidden_count, where);
  if (hidden_count > 64) throw Error(ErrorCode::BadHeader, where + "implausible hidden layer count");
  ck.arch.input_dim = input_dim;
  ck.arch.hidden.resize(hidden_count);
  for (auto& h : ck.arch.hidden) {
    std::uint32_t v = 0;
    read_or_throw(in, v, where);
    h = v;
  }
  read_or_throw(in, output_dim, where);
  ck.arch.output_dim = output_dim;
  std::uint8_t hidden_act = 0, output_act = 0;
  read_or_throw(in, hidden_act, where);
  read_or_throw(in, output_act, where);
  read_or_throw(in, ck.arch.dropout_rate, where);

  if (input_dim == 0 || input_dim > kMaxDim || output_dim == 0 || output_dim > kMaxDim)
    throw Error(ErrorCode::BadHeader, where + "bad layer dimensions");
  for (std::size_t h : ck.arch.hidden)
    if (h == 0 || h > kMaxDim) throw Error(ErrorCode::BadHeader, where + "bad hidden layer width");
  if (hidden_act != static_cast<std::uint8_t>(ck.arch.hidden_activation()) ||
      output_act != static_cast<std::uint8_t>(ck.arch.output_activation()))
    throw Error(ErrorCode::BadHeader, where + "unsupported activation codes");
  if (!(ck.arch.dropout_rate >= 0.0 && ck.arch.dropout_rate < 1.0))
    throw Error(ErrorCode::BadHeader, where + "dropout rate out of range");

  std::uint32_t blocks = 0;
  read_or_throw(in, blocks, where);
  if (blocks > 4096) throw Error(ErrorCode::BadHeader, where + "implausible input block count");
  std::size_t block_total = 0;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    InputBlock block;
    std::uint32_t dim = 0;
    if (!binary::read_string(in, block.name, 4096)) throw Error(ErrorCode::TruncatedFile, where + "file ends early");
    read_or_throw(in, dim, where);
    block.dim = dim;
    block_total += dim;
    ck.inputs.push_back(std::move(block));
  }
  if (blocks > 0 && block_total != input_dim)
    throw Error(ErrorCode::BadHeader, where + "input block widths do not sum to the input dimension");

  for (std::size_t l = 0; l < ck.arch.layer_count(); ++l) {
    DenseLayer layer{Matrix(ck.arch.layer_outputs(l), ck.arch.layer_inputs(l)),
                     std::vector<double>(ck.arch.layer_outputs(l))};
    for (double& w : layer.weights.values()) read_or_throw(in, w, where);
    for (double& b : layer.bias) read_or_throw(in, b, where);
    ck.params.layers.push_back(std::move(layer));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::TrailingBytes, where + "bytes after the last layer");
  if (!ck.params.all_finite()) throw Error(ErrorCode::NonFiniteValue, where + "non-finite parameter");
  return ck;
}

}  // namespace ofs::nn
