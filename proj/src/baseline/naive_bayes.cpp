#include "ofs/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ofs/binary_io.hpp"
#include "ofs/error.hpp"

namespace ofs::baseline {
namespace {

constexpr char kMagic[8] = {'O', 'F', 'S', 'N', 'B', '0', '0', '1'};

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) {
      std::string token(text.substr(start, i - start));
      for (char& c : token)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

SparseRow TfidfModel::transform(std::string_view text) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : tokenize(text))
    if (auto it = vocabulary.find(token); it != vocabulary.end()) counts[it->second] += 1.0;

  SparseRow row;
  row.reserve(counts.size());
  double norm = 0.0;
  for (const auto& [index, tf] : counts) {
    const double v = tf * idf[index];
    row.emplace_back(index, v);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  if (norm > 0.0)
    for (auto& entry : row) entry.second /= norm;
  return row;
}

std::vector<SparseRow> TfidfModel::transform(std::span<const std::string> texts, kernels::Backend backend) const {
  std::vector<SparseRow> rows(texts.size());
  const auto n = static_cast<std::int64_t>(texts.size());
  if (backend == kernels::Backend::Serial) {
    for (std::int64_t i = 0; i < n; ++i) rows[i] = transform(texts[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) rows[i] = transform(texts[i]);
  }
  return rows;
}

std::pair<TfidfModel, std::vector<SparseRow>> tfidf_fit_transform(std::span<const std::string> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyVocabulary, "corpus is empty");
  std::map<std::string, std::uint64_t> df;
  for (const auto& doc : corpus) {
    auto tokens = tokenize(doc);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (auto& t : tokens) ++df[std::move(t)];
  }
  if (df.empty()) throw Error(ErrorCode::EmptyVocabulary, "no document contains a token");

  TfidfModel model;
  model.documents = corpus.size();
  const double n = static_cast<double>(corpus.size());
  std::uint32_t index = 0;
  for (const auto& [term, count] : df) {
    model.vocabulary.emplace(term, index++);
    model.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  auto rows = model.transform(corpus);
  return {std::move(model), std::move(rows)};
}

NaiveBayesModel nb_train(std::span<const SparseRow> rows, std::span<const ClassId> labels, std::size_t classes,
                         std::size_t vocabulary_size, double alpha) {
  if (!(alpha > 0.0 && std::isfinite(alpha))) throw Error(ErrorCode::Config, "alpha must be positive");
  if (rows.size() != labels.size()) throw Error(ErrorCode::IdMismatch, "one label per row required");
  if (rows.empty()) throw Error(ErrorCode::EmptyVocabulary, "no training rows");
  if (vocabulary_size == 0) throw Error(ErrorCode::EmptyVocabulary, "vocabulary is empty");

  Matrix feature_counts(classes, vocabulary_size);
  std::vector<double> doc_counts(classes, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const ClassId c = labels[r];
    if (c < 0 || static_cast<std::size_t>(c) >= classes)
      throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(c) + " out of range");
    doc_counts[c] += 1.0;
    for (const auto& [index, value] : rows[r]) {
      if (index >= vocabulary_size) throw Error(ErrorCode::DimensionMismatch, "term index beyond vocabulary");
      feature_counts(c, index) += value;
    }
  }

  NaiveBayesModel model;
  model.alpha = alpha;
  model.log_likelihood.resize(classes, vocabulary_size);
  const double n = static_cast<double>(rows.size());
  const double v = static_cast<double>(vocabulary_size);
  for (std::size_t c = 0; c < classes; ++c) {
    model.log_prior.push_back(doc_counts[c] > 0.0 ? std::log(doc_counts[c] / n)
                                                  : -std::numeric_limits<double>::infinity());
    double total = 0.0;
    for (double x : feature_counts.row(c)) total += x;
    const double denom = std::log(total + alpha * v);
    for (std::size_t j = 0; j < vocabulary_size; ++j)
      model.log_likelihood(c, j) = std::log(feature_counts(c, j) + alpha) - denom;
  }
  return model;
}

ClassId nb_predict(const NaiveBayesModel& model, const SparseRow& row) {
  ClassId best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.classes(); ++c) {
    double score = model.log_prior[c];
    for (const auto& [index, value] : row) score += value * model.log_likelihood(c, index);
    if (score > best_score) {
      best_score = score;
      best = static_cast<ClassId>(c);
    }
  }
  return best;
}

std::vector<ClassId> nb_predict(const NaiveBayesModel& model, std::span<const SparseRow> rows,
                                kernels::Backend backend) {
  std::vector<ClassId> out(rows.size());
  const auto n = static_cast<std::int64_t>(rows.size());
  if (backend == kernels::Backend::Serial) {
    for (std::int64_t i = 0; i < n; ++i) out[i] = nb_predict(model, rows[i]);
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = nb_predict(model, rows[i]);
  }
  return out;
}

std::string encode_nb(const NbBundle& bundle) {
  const auto& tfidf = bundle.tfidf;
  const auto& nb = bundle.nb;
  std::ostringstream out(std::ios::binary);
  out.write(kMagic, sizeof kMagic);
  binary::write(out, static_cast<std::uint8_t>(bundle.subtask));
  binary::write(out, nb.alpha);
  binary::write(out, tfidf.documents);
  binary::write(out, static_cast<std::uint32_t>(nb.classes()));
  binary::write(out, static_cast<std::uint32_t>(tfidf.idf.size()));
  // std::map iterates in sorted order, which is also index order.
  for (const auto& [term, index] : tfidf.vocabulary) {
    binary::write_string(out, term);
    binary::write(out, tfidf.idf[index]);
  }
  for (double p : nb.log_prior) binary::write(out, p);
  for (double x : nb.log_likelihood.values()) binary::write(out, x);
  return std::move(out).str();
}

void save_nb(const std::filesystem::path& path, const NbBundle& bundle) {
  const std::string bytes = encode_nb(bundle);
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    throw Error(ErrorCode::Io, "cannot write " + path.string());
}

NbBundle load_nb(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  const std::string where = path.string() + ": ";
  auto truncated = [&] { return Error(ErrorCode::TruncatedFile, where + "file ends early"); };

  char magic[8];
  if (!in.read(magic, sizeof magic)) throw truncated();
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) throw Error(ErrorCode::BadMagic, where + "not an OFSNB001 file");

  NbBundle bundle;
  std::uint8_t subtask = 0;
  std::uint32_t classes = 0, vocab = 0;
  if (!binary::read(in, subtask) || !binary::read(in, bundle.nb.alpha) || !binary::read(in, bundle.tfidf.documents) ||
      !binary::read(in, classes) || !binary::read(in, vocab))
    throw truncated();
  if (subtask > static_cast<std::uint8_t>(Subtask::C) || classes != class_count(static_cast<Subtask>(subtask)) ||
      vocab == 0 || !(bundle.nb.alpha > 0.0))
    throw Error(ErrorCode::BadHeader, where + "inconsistent header");
  bundle.subtask = static_cast<Subtask>(subtask);

  for (std::uint32_t i = 0; i < vocab; ++i) {
    std::string term;
    double idf = 0.0;
    if (!binary::read_string(in, term) || !binary::read(in, idf)) throw truncated();
    if (!std::isfinite(idf)) throw Error(ErrorCode::NonFiniteValue, where + "non-finite idf");
    bundle.tfidf.vocabulary.emplace(std::move(term), i);
    bundle.tfidf.idf.push_back(idf);
  }
  if (bundle.tfidf.vocabulary.size() != vocab) throw Error(ErrorCode::DuplicateId, where + "repeated vocabulary term");
  bundle.nb.log_prior.resize(classes);
  for (double& p : bundle.nb.log_prior)
    if (!binary::read(in, p)) throw truncated();
  bundle.nb.log_likelihood.resize(classes, vocab);
  for (double& x : bundle.nb.log_likelihood.values()) {
    if (!binary::read(in, x)) throw truncated();
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteValue, where + "non-finite likelihood");
  }
  if (in.peek() != std::ifstream::traits_type::eof()) throw Error(ErrorCode::TrailingBytes, where + "trailing bytes");
  return bundle;
}

}  // namespace ofs::baseline
