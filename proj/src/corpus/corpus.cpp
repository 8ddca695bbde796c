#include "ofs/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ofs/error.hpp"
#include "ofs/random.hpp"
#include "ofs/tsv.hpp"

namespace ofs::corpus {
namespace {

std::string row_context(const tsv::Reader& reader) {
  return reader.path().string() + " row " + std::to_string(reader.line_number());
}

bool is_null_label(std::string_view field) {
  return field.empty() || field == "NULL" || field == "null" || field == "NA";
}

ClassId parse_label_at(Subtask subtask, std::string_view field, const tsv::Reader& reader) {
  try {
    return parse_label(subtask, field);
  } catch (const Error&) {
    throw Error(ErrorCode::UnknownLabel, row_context(reader) + ": '" + std::string(field) + "' is not a sub-task " +
                                             std::string(to_string(subtask)) + " label");
  }
}

std::ptrdiff_t column_index(const std::vector<std::string_view>& header, std::string_view name) {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : it - header.begin();
}

}  // namespace

std::vector<LabeledExample> load_gold(const std::filesystem::path& path, Subtask subtask) {
  tsv::Reader reader(path);
  std::string line;
  if (!reader.next(line)) throw Error(ErrorCode::MalformedRow, path.string() + ": missing header row");
  const auto header = tsv::split(line);
  if (header.size() != 5)
    throw Error(ErrorCode::MalformedRow, row_context(reader) + ": expected 5 header columns, found " +
                                             std::to_string(header.size()));
  const std::size_t label_column = subtask == Subtask::A ? 2 : 4;

  std::vector<LabeledExample> examples;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = tsv::split(line);
    if (fields.size() != 5)
      throw Error(ErrorCode::MalformedRow,
                  row_context(reader) + ": expected 5 columns, found " + std::to_string(fields.size()));
    if (is_null_label(fields[label_column])) continue;
    examples.push_back({tsv::parse_id(fields[0], reader), std::string(fields[1]),
                        parse_label_at(subtask, fields[label_column], reader), LabelSource::Gold});
  }
  return examples;
}

void write_gold(const std::filesystem::path& path, std::span<const LabeledExample> examples, Subtask subtask) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "id\ttweet\tsubtask_a\tsubtask_b\tsubtask_c\n";
  for (const auto& e : examples) {
    const std::string label(label_name(subtask, e.label));
    out << e.id << '\t' << e.text << '\t' << (subtask == Subtask::A ? label : "NULL") << "\tNULL\t"
        << (subtask == Subtask::C ? label : "NULL") << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

void for_each_confidence_record(const std::filesystem::path& path, std::string_view conf_column,
                                const std::function<void(const ConfidenceRecord&)>& visit) {
  tsv::Reader reader(path);
  std::string line;
  if (!reader.next(line)) throw Error(ErrorCode::MalformedRow, path.string() + ": missing header row");
  const auto header = tsv::split(line);
  const auto id_col = column_index(header, "id");
  auto text_col = column_index(header, "text");
  if (text_col < 0) text_col = column_index(header, "tweet");
  const auto conf_col = column_index(header, conf_column);
  if (id_col < 0 || text_col < 0 || conf_col < 0)
    throw Error(ErrorCode::MalformedRow, path.string() + ": header needs id, text and '" + std::string(conf_column) + "'");

  ConfidenceRecord record;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = tsv::split(line);
    if (fields.size() != header.size())
      throw Error(ErrorCode::MalformedRow, row_context(reader) + ": expected " + std::to_string(header.size()) +
                                               " columns, found " + std::to_string(fields.size()));
    record.id = tsv::parse_id(fields[id_col], reader);
    record.text.assign(fields[text_col]);
    record.avg_conf = tsv::parse_real(fields[conf_col], reader);
    if (!(record.avg_conf >= 0.0 && record.avg_conf <= 1.0))
      throw Error(ErrorCode::MalformedRow, row_context(reader) + ": confidence outside [0, 1]");
    visit(record);
  }
}

LabeledExample threshold_label(const ConfidenceRecord& record, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error(ErrorCode::Config, "threshold must lie in (0, 1)");
  const ClassId label = record.avg_conf >= threshold ? parse_label(Subtask::A, "OFF") : parse_label(Subtask::A, "NOT");
  return {record.id, record.text, label, LabelSource::Thresholded};
}

std::vector<LabeledExample> threshold_labels(std::span<const ConfidenceRecord> records, double threshold) {
  std::vector<LabeledExample> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(threshold_label(r, threshold));
  return out;
}

ClassWeights class_weights_from_counts(Subtask subtask, std::span<const std::size_t> counts) {
  const std::size_t n_classes = class_count(subtask);
  if (counts.size() != n_classes)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n_classes) + " class counts");
  ClassWeights cw{subtask, {counts.begin(), counts.end()}, std::vector<double>(n_classes)};
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (counts[c] == 0)
      throw Error(ErrorCode::EmptyClass,
                  "class " + std::string(label_name(subtask, static_cast<ClassId>(c))) + " has no examples");
    cw.weights[c] = 1.0 / (static_cast<double>(n_classes) * static_cast<double>(counts[c]));
  }
  return cw;
}

ClassWeights class_weights(std::span<const LabeledExample> examples, Subtask subtask) {
  std::vector<std::size_t> counts(class_count(subtask), 0);
  for (const auto& e : examples) {
    if (e.label < 0 || static_cast<std::size_t>(e.label) >= counts.size())
      throw Error(ErrorCode::UnknownLabel, "example " + std::to_string(e.id) + " has an out-of-range label");
    ++counts[static_cast<std::size_t>(e.label)];
  }
  return class_weights_from_counts(subtask, counts);
}

std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>> split(std::vector<LabeledExample> examples,
                                                                          const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw Error(ErrorCode::Config, "train_fraction must lie in (0, 1)");
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(spec.seed);
  rng.shuffle(std::span(order));

  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(examples.size()) * spec.train_fraction));
  std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>> parts;
  parts.first.reserve(n_train);
  parts.second.reserve(examples.size() - n_train);
  for (std::size_t k = 0; k < order.size(); ++k)
    (k < n_train ? parts.first : parts.second).push_back(std::move(examples[order[k]]));
  return parts;
}

std::vector<LabeledExample> read_labels(const std::filesystem::path& path, Subtask subtask, std::string_view conf_column,
                                        double threshold) {
  std::vector<std::string_view> header;
  std::string first;
  {
    tsv::Reader probe(path);
    if (!probe.next(first)) return {};
    header = tsv::split(first);
  }
  if (header.size() == 5 && header[2] == "subtask_a") return load_gold(path, subtask);
  if (column_index(header, conf_column) >= 0) {
    if (subtask != Subtask::A) throw Error(ErrorCode::Config, "confidence thresholding applies to sub-task A only");
    std::vector<LabeledExample> out;
    for_each_confidence_record(path, conf_column,
                               [&](const ConfidenceRecord& r) { out.push_back(threshold_label(r, threshold)); });
    return out;
  }

  tsv::Reader reader(path);
  std::string line;
  std::vector<LabeledExample> out;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = tsv::split(line);
    if (reader.line_number() == 1 && fields[0] == "id") continue;
    if (fields.size() != 2 && fields.size() != 3)
      throw Error(ErrorCode::MalformedRow,
                  row_context(reader) + ": expected 2 or 3 columns, found " + std::to_string(fields.size()));
    LabeledExample e;
    e.id = tsv::parse_id(fields[0], reader);
    if (fields.size() == 3) e.text.assign(fields[1]);
    e.label = parse_label_at(subtask, fields.back(), reader);
    out.push_back(std::move(e));
  }
  return out;
}

void write_labels(const std::filesystem::path& path, std::span<const LabeledExample> examples, Subtask subtask) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "id\tlabel\n";
  for (const auto& e : examples) out << e.id << '\t' << label_name(subtask, e.label) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

}  // namespace ofs::corpus
