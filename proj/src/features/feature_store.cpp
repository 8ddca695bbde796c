#include "ofs/feature_store.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include "ofs/binary_io.hpp"
#include "ofs/error.hpp"

namespace ofs::features {
namespace {

constexpr char kMagic[8] = {'O', 'F', 'S', 'F', 'E', 'A', 'T', '1'};
constexpr std::uint32_t kMaxNameLength = 4096;

std::string record_label(std::size_t index, std::uint64_t count) {
  return "record " + std::to_string(index + 1) + " of " + std::to_string(count);
}

}  // namespace

FeatureSet::FeatureSet(std::string model_name, std::size_t dim) : model_name_(std::move(model_name)), dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::BadHeader, "feature dimension must be positive");
}

void FeatureSet::add(ExampleId id, std::span<const float> vector) {
  if (vector.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(vector.size()) + " added to a dim-" + std::to_string(dim_) + " set");
  for (float v : vector)
    if (!std::isfinite(v))
      throw Error(ErrorCode::NonFiniteValue, "example " + std::to_string(id) + " has a non-finite value");
  if (!index_.emplace(id, ids_.size()).second)
    throw Error(ErrorCode::DuplicateId, "example " + std::to_string(id) + " appears twice in " + model_name_);
  ids_.push_back(id);
  values_.insert(values_.end(), vector.begin(), vector.end());
}

void FeatureSet::add(ExampleId id, std::span<const double> vector) {
  std::vector<float> rounded(vector.begin(), vector.end());
  add(id, std::span<const float>(rounded));
}

std::ptrdiff_t FeatureSet::find(ExampleId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool FeatureSet::operator==(const FeatureSet& other) const {
  return model_name_ == other.model_name_ && dim_ == other.dim_ && ids_ == other.ids_ &&
         values_.size() == other.values_.size() &&
         (values_.empty() || std::memcmp(values_.data(), other.values_.data(), values_.size() * sizeof(float)) == 0);
}

std::size_t encoded_size(std::size_t name_len, std::size_t dim, std::size_t records) {
  return sizeof(kMagic) + 4 + name_len + 4 + 8 + records * (8 + 4 * dim);
}

void write_features(const std::filesystem::path& path, const FeatureSet& set) {
  if (set.model_name().size() > kMaxNameLength) throw Error(ErrorCode::BadHeader, "model name too long");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(kMagic, sizeof(kMagic));
  binary::write_string(out, set.model_name());
  binary::write(out, static_cast<std::uint32_t>(set.dim()));
  binary::write(out, static_cast<std::uint64_t>(set.size()));
  for (std::size_t r = 0; r < set.size(); ++r) {
    binary::write(out, static_cast<std::uint64_t>(set.ids()[r]));
    for (float v : set.vector(r)) binary::write(out, v);
  }
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

FeatureSet read_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  const std::string where = path.string() + ": ";

  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic))) throw Error(ErrorCode::TruncatedFile, where + "file ends inside the magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw Error(ErrorCode::BadMagic, where + "not an OFSFEAT1 file");

  std::uint32_t name_len = 0;
  if (!binary::read(in, name_len)) throw Error(ErrorCode::TruncatedFile, where + "file ends inside the header");
  if (name_len > kMaxNameLength) throw Error(ErrorCode::BadHeader, where + "model name length " + std::to_string(name_len));
  std::string name(name_len, '\0');
  std::uint32_t dim = 0;
  std::uint64_t count = 0;
  if ((name_len > 0 && !in.read(name.data(), name_len)) || !binary::read(in, dim) || !binary::read(in, count))
    throw Error(ErrorCode::TruncatedFile, where + "file ends inside the header");
  if (dim == 0) throw Error(ErrorCode::BadHeader, where + "dimension is zero");

  // Check the length up front so a corrupt count cannot trigger a huge allocation.
  const auto header_end = static_cast<std::uint64_t>(in.tellg());
  in.seekg(0, std::ios::end);
  const auto file_size = static_cast<std::uint64_t>(in.tellg());
  in.seekg(static_cast<std::streamoff>(header_end));
  const std::uint64_t record_bytes = 8 + 4ull * dim;
  const std::uint64_t available = file_size - header_end;
  if (count > available / record_bytes)
    throw Error(ErrorCode::TruncatedFile, where + "file ends inside " + record_label(available / record_bytes, count));
  if (available != count * record_bytes)
    throw Error(ErrorCode::TrailingBytes, where + std::to_string(available - count * record_bytes) +
                                              " bytes after the last record");

  FeatureSet set(std::move(name), dim);
  std::vector<float> vec(dim);
  for (std::uint64_t r = 0; r < count; ++r) {
    std::uint64_t id = 0;
    binary::read(in, id);
    for (auto& v : vec) binary::read(in, v);
    if (!in) throw Error(ErrorCode::TruncatedFile, where + "read failed in " + record_label(r, count));
    if (!std::all_of(vec.begin(), vec.end(), [](float v) { return std::isfinite(v); }))
      throw Error(ErrorCode::NonFiniteValue, where + record_label(r, count) + " (id " + std::to_string(id) +
                                                 ") has a non-finite value");
    try {
      set.add(id, std::span<const float>(vec));
    } catch (const Error& e) {
      throw Error(e.code(), where + record_label(r, count) + ": " + e.what());
    }
  }
  return set;
}

AlignedFeatures align_concat(std::span<const FeatureSet> sets, kernels::Backend backend) {
  if (sets.empty()) throw Error(ErrorCode::EmptyIntersection, "no feature sets given");

  std::unordered_map<ExampleId, std::size_t> seen;
  for (const auto& set : sets)
    for (ExampleId id : set.ids()) ++seen[id];

  AlignedFeatures out;
  for (const auto& [id, n] : seen)
    if (n == sets.size()) out.ids.push_back(id);
  if (out.ids.empty()) throw Error(ErrorCode::EmptyIntersection, "feature sets share no example ids");
  std::sort(out.ids.begin(), out.ids.end());
  out.dropped = seen.size() - out.ids.size();

  std::vector<std::size_t> offsets;
  for (const auto& set : sets) {
    out.model_names.push_back(set.model_name());
    out.dims.push_back(set.dim());
    offsets.push_back(out.dim_total);
    out.dim_total += set.dim();
  }

  out.matrix.resize(out.ids.size(), out.dim_total);
  auto fill_row = [&](std::size_t row) {
    double* dst = out.matrix.data() + row * out.dim_total;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto src = sets[s].vector(static_cast<std::size_t>(sets[s].find(out.ids[row])));
      std::copy(src.begin(), src.end(), dst + offsets[s]);
    }
  };
  const auto rows = static_cast<std::int64_t>(out.ids.size());
  if (backend == kernels::Backend::Serial) {
    for (std::int64_t r = 0; r < rows; ++r) fill_row(static_cast<std::size_t>(r));
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) fill_row(static_cast<std::size_t>(r));
  }
  return out;
}

AlignedFeatures select_rows(const AlignedFeatures& aligned, std::span<const ExampleId> keep) {
  std::unordered_map<ExampleId, std::size_t> row_of;
  for (std::size_t r = 0; r < aligned.ids.size(); ++r) row_of.emplace(aligned.ids[r], r);

  AlignedFeatures out;
  out.model_names = aligned.model_names;
  out.dims = aligned.dims;
  out.dim_total = aligned.dim_total;
  out.ids.assign(keep.begin(), keep.end());
  out.matrix.resize(keep.size(), aligned.dim_total);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    auto it = row_of.find(keep[r]);
    if (it == row_of.end()) throw Error(ErrorCode::IdMismatch, "example " + std::to_string(keep[r]) + " has no features");
    const auto src = aligned.matrix.row(it->second);
    std::copy(src.begin(), src.end(), out.matrix.row(r).begin());
  }
  return out;
}

}  // namespace ofs::features
