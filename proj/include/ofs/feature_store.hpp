#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ofs/kernels.hpp"
#include "ofs/matrix.hpp"
#include "ofs/types.hpp"

namespace ofs::features {

/// Frozen per-example vectors produced by one encoder. Values are float32,
/// records keep insertion order, ids are unique.
class FeatureSet {
 public:
  FeatureSet() = default;
  FeatureSet(std::string model_name, std::size_t dim);

  const std::string& model_name() const noexcept { return model_name_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  /// Throws DimensionMismatch, NonFiniteValue or DuplicateId.
  void add(ExampleId id, std::span<const float> vector);
  /// Rounds each value to the nearest float32.
  void add(ExampleId id, std::span<const double> vector);

  std::span<const ExampleId> ids() const noexcept { return ids_; }
  std::span<const float> vector(std::size_t record) const { return {values_.data() + record * dim_, dim_}; }
  /// Record index of `id`, or -1.
  std::ptrdiff_t find(ExampleId id) const;

  bool operator==(const FeatureSet& other) const;

 private:
  std::string model_name_;
  std::size_t dim_ = 0;
  std::vector<ExampleId> ids_;
  std::vector<float> values_;
  std::unordered_map<ExampleId, std::size_t> index_;
};

/// OFSFEAT1, little-endian:
///   "OFSFEAT1" | u32 name_len | name | u32 dim | u64 count | count x (u64 id, dim x f32)
void write_features(const std::filesystem::path& path, const FeatureSet& set);

/// Throws BadMagic, BadHeader, TruncatedFile (naming the record ordinal),
/// NonFiniteValue, DuplicateId, TrailingBytes or IoError.
FeatureSet read_features(const std::filesystem::path& path);

/// Encoded size in bytes.
std::size_t encoded_size(std::size_t name_len, std::size_t dim, std::size_t records);

/// Row-wise concatenation of several feature sets over their common ids.
struct AlignedFeatures {
  std::vector<std::string> model_names;
  std::vector<std::size_t> dims;
  std::size_t dim_total = 0;
  std::vector<ExampleId> ids;  // sorted ascending (select_rows keeps the caller's order)
  Matrix matrix;               // ids.size() x dim_total
  std::size_t dropped = 0;     // ids present in some but not all inputs
};

/// Throws EmptyIntersection.
AlignedFeatures align_concat(std::span<const FeatureSet> sets, kernels::Backend backend = kernels::Backend::Parallel);

/// Restricts rows to `keep` (which must be a subset of aligned.ids), in the order given.
AlignedFeatures select_rows(const AlignedFeatures& aligned, std::span<const ExampleId> keep);

}  // namespace ofs::features
