#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ofs/types.hpp"

namespace ofs::corpus {

enum class LabelSource { Gold, Thresholded };

struct LabeledExample {
  ExampleId id = 0;
  std::string text;
  ClassId label = 0;
  LabelSource source = LabelSource::Gold;

  bool operator==(const LabeledExample&) const = default;
};

/// A row of confidence-scored training data; avg_conf in [0, 1].
struct ConfidenceRecord {
  ExampleId id = 0;
  std::string text;
  double avg_conf = 0.0;
};

/// Per-class loss weights w_c = 1 / (N * C_c), N = number of classes.
struct ClassWeights {
  Subtask subtask = Subtask::A;
  std::vector<std::size_t> counts;
  std::vector<double> weights;

  std::size_t class_count() const noexcept { return weights.size(); }
  double operator[](ClassId c) const { return weights.at(static_cast<std::size_t>(c)); }
};

struct SplitSpec {
  double train_fraction = 0.9;
  std::uint64_t seed = 0;
};

/// OLID TSV: header, then id, tweet, subtask_a, subtask_b, subtask_c. Rows
/// whose label for `subtask` is NULL/empty are skipped. Throws MalformedRow
/// or UnknownLabel naming the row.
std::vector<LabeledExample> load_gold(const std::filesystem::path& path, Subtask subtask);

/// Writes an OLID-shaped file with only the `subtask` column filled.
void write_gold(const std::filesystem::path& path, std::span<const LabeledExample> examples, Subtask subtask);

/// Streams a confidence-scored TSV (header with id, text/tweet and the
/// `conf_column`) row by row without holding it in memory.
void for_each_confidence_record(const std::filesystem::path& path, std::string_view conf_column,
                                const std::function<void(const ConfidenceRecord&)>& visit);

/// avg_conf >= threshold -> OFF, else NOT (sub-task A only).
LabeledExample threshold_label(const ConfidenceRecord& record, double threshold);
std::vector<LabeledExample> threshold_labels(std::span<const ConfidenceRecord> records, double threshold);

/// Throws EmptyClass when a label of the subtask never occurs.
ClassWeights class_weights(std::span<const LabeledExample> examples, Subtask subtask);
ClassWeights class_weights_from_counts(Subtask subtask, std::span<const std::size_t> counts);

/// Seeded shuffle, then the first floor(n * train_fraction) go to training.
std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>> split(std::vector<LabeledExample> examples,
                                                                          const SplitSpec& spec);

/// Reads labels from any of: an OLID file, a confidence-scored file (when
/// `conf_column` names one of its columns; thresholded at `threshold`), a
/// "id<TAB>text<TAB>label" file or a "id<TAB>label" file. The latter two may
/// carry a header row starting with "id".
std::vector<LabeledExample> read_labels(const std::filesystem::path& path, Subtask subtask,
                                        std::string_view conf_column = "average", double threshold = 0.4);

/// "id<TAB>label" with a header row.
void write_labels(const std::filesystem::path& path, std::span<const LabeledExample> examples, Subtask subtask);

}  // namespace ofs::corpus
