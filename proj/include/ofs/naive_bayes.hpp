#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ofs/kernels.hpp"
#include "ofs/matrix.hpp"
#include "ofs/types.hpp"

namespace ofs::baseline {

/// (term index, value) pairs with strictly increasing indices.
using SparseRow = std::vector<std::pair<std::uint32_t, double>>;

/// Whitespace-delimited, ASCII-lowercased tokens.
std::vector<std::string> tokenize(std::string_view text);

struct TfidfModel {
  std::map<std::string, std::uint32_t> vocabulary;  // indices follow sorted term order
  std::vector<double> idf;
  std::uint64_t documents = 0;

  /// Raw counts times idf, L2-normalized. Unknown tokens are ignored; a row
  /// with no known token is empty.
  SparseRow transform(std::string_view text) const;
  std::vector<SparseRow> transform(std::span<const std::string> texts,
                                   kernels::Backend backend = kernels::Backend::Parallel) const;

  bool operator==(const TfidfModel&) const = default;
};

/// idf = ln((1 + n) / (1 + df)) + 1. Throws EmptyVocabulary when no document
/// has a token.
std::pair<TfidfModel, std::vector<SparseRow>> tfidf_fit_transform(std::span<const std::string> corpus);

struct NaiveBayesModel {
  double alpha = 1.0;
  std::vector<double> log_prior;  // per class
  Matrix log_likelihood;          // classes x vocabulary

  std::size_t classes() const noexcept { return log_prior.size(); }
  bool operator==(const NaiveBayesModel&) const = default;
};

/// Multinomial NB over tf-idf "counts" with additive smoothing.
/// Classes without training documents get a log-prior of -inf.
NaiveBayesModel nb_train(std::span<const SparseRow> rows, std::span<const ClassId> labels, std::size_t classes,
                         std::size_t vocabulary_size, double alpha = 1.0);

/// Argmax of log-prior + sum tf * log-likelihood, lowest index on ties.
ClassId nb_predict(const NaiveBayesModel& model, const SparseRow& row);
std::vector<ClassId> nb_predict(const NaiveBayesModel& model, std::span<const SparseRow> rows,
                                kernels::Backend backend = kernels::Backend::Parallel);

struct NbBundle {
  Subtask subtask = Subtask::A;
  TfidfModel tfidf;
  NaiveBayesModel nb;

  bool operator==(const NbBundle&) const = default;
};

/// OFSNB001 layout, little-endian:
///   "OFSNB001" | u8 subtask | f64 alpha | u64 documents | u32 classes | u32 V
///   V x (u32 len, term bytes, f64 idf) in index order
///   classes x f64 log_prior | classes x V f64 log_likelihood
std::string encode_nb(const NbBundle& bundle);
void save_nb(const std::filesystem::path& path, const NbBundle& bundle);
NbBundle load_nb(const std::filesystem::path& path);

}  // namespace ofs::baseline
