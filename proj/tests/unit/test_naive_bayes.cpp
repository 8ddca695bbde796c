#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <cstring>
#include <map>
#include <set>

#include "ofs/error.hpp"
#include "ofs/metrics.hpp"
#include "ofs/naive_bayes.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace ofs::baseline {
namespace {

double value_of(const SparseRow& row, std::uint32_t index) {
  for (const auto& [i, v] : row)
    if (i == index) return v;
  return 0.0;
}

TEST(Tfidf, SmoothedIdfByHand) {
  const std::vector<std::string> corpus{"a b", "A"};
  const auto [model, rows] = tfidf_fit_transform(corpus);
  ASSERT_EQ(model.vocabulary.size(), 2u);
  EXPECT_EQ(model.vocabulary.at("a"), 0u);
  EXPECT_EQ(model.vocabulary.at("b"), 1u);
  EXPECT_DOUBLE_EQ(model.idf[0], 1.0);
  EXPECT_NEAR(model.idf[1], std::log(1.5) + 1.0, 1e-15);
  const double norm = std::sqrt(1.0 + model.idf[1] * model.idf[1]);
  EXPECT_NEAR(value_of(rows[0], 0), 1.0 / norm, 1e-15);
  EXPECT_NEAR(value_of(rows[0], 1), model.idf[1] / norm, 1e-15);
  EXPECT_EQ(rows[1], (SparseRow{{0, 1.0}}));
}

TEST(Tfidf, SingleDocumentAndUnknownTokens) {
  const std::vector<std::string> corpus{"x y x"};
  const auto [model, rows] = tfidf_fit_transform(corpus);
  EXPECT_EQ(model.idf, (std::vector<double>{1.0, 1.0}));
  EXPECT_NEAR(value_of(rows[0], 0), 2.0 / std::sqrt(5.0), 1e-15);
  EXPECT_TRUE(model.transform("never seen").empty());
  const std::vector<std::string> empty_docs{"", "  "};
  EXPECT_OFS_ERROR(tfidf_fit_transform(empty_docs), ErrorCode::EmptyVocabulary);
  EXPECT_OFS_ERROR(tfidf_fit_transform(std::span<const std::string>{}), ErrorCode::EmptyVocabulary);
}

TEST(Tfidf, RowsAreUnitLengthAndIdfFallsWithDf) {
  const auto corpus = oracle::toy_tweets(150, 3, 0.2);
  const auto [model, rows] = tfidf_fit_transform(corpus.texts);
  for (const auto& row : rows) {
    double s = 0;
    for (const auto& [i, v] : row) s += v * v;
    if (!row.empty()) EXPECT_NEAR(s, 1.0, 1e-12);
  }
  std::map<std::string, std::size_t> df;
  for (const auto& text : corpus.texts) {
    std::set<std::string> seen;
    for (const auto& t : tokenize(text)) seen.insert(t);
    for (const auto& t : seen) ++df[t];
  }
  for (const auto& [a, da] : df)
    for (const auto& [b, db] : df)
      if (da < db) EXPECT_GT(model.idf[model.vocabulary.at(a)], model.idf[model.vocabulary.at(b)]);
  EXPECT_EQ(model.transform(corpus.texts, kernels::Backend::Serial),
            model.transform(corpus.texts, kernels::Backend::Parallel));
}

// Four documents worked through by hand: vocabulary, idf, tf-idf rows,
// smoothed class totals and the resulting decision for "hate hate".
TEST(NaiveBayes, HandWorkedCorpus) {
  const std::vector<std::string> docs{"hate you", "hate hate", "love you", "nice day"};
  const std::vector<ClassId> labels{1, 1, 0, 0};
  const auto [tfidf, rows] = tfidf_fit_transform(docs);
  const auto nb = nb_train(rows, labels, 2, tfidf.vocabulary.size());

  // vocabulary sorted: day hate love nice you
  const double idf1 = std::log(5.0 / 2.0) + 1.0;  // df = 1
  const double idf2 = std::log(5.0 / 3.0) + 1.0;  // df = 2
  EXPECT_NEAR(tfidf.idf[tfidf.vocabulary.at("hate")], idf2, 1e-15);
  EXPECT_NEAR(tfidf.idf[tfidf.vocabulary.at("day")], idf1, 1e-15);

  // class 1 feature mass: doc "hate you" -> (idf2, idf2)/(sqrt2 idf2); doc "hate hate" -> hate=1
  const double r = 1.0 / std::sqrt(2.0);
  const double hate1 = r + 1.0, you1 = r;
  const double total1 = hate1 + you1;
  EXPECT_NEAR(nb.log_likelihood(1, tfidf.vocabulary.at("hate")), std::log(hate1 + 1.0) - std::log(total1 + 5.0), 1e-12);
  EXPECT_NEAR(nb.log_likelihood(1, tfidf.vocabulary.at("love")), std::log(1.0) - std::log(total1 + 5.0), 1e-12);
  // class 0: "love you" -> (idf1, idf2) normalized; "nice day" -> r each
  const double n01 = std::sqrt(idf1 * idf1 + idf2 * idf2);
  const double total0 = (idf1 + idf2) / n01 + 2 * r;
  EXPECT_NEAR(nb.log_likelihood(0, tfidf.vocabulary.at("you")), std::log(idf2 / n01 + 1.0) - std::log(total0 + 5.0), 1e-12);
  EXPECT_NEAR(nb.log_prior[0], std::log(0.5), 1e-15);

  EXPECT_EQ(nb_predict(nb, tfidf.transform("hate hate")), 1);
  EXPECT_EQ(nb_predict(nb, tfidf.transform("nice day")), 0);
}

TEST(NaiveBayes, EmptyRowFallsBackToPriorsAndMissingClassNeverWins) {
  const std::vector<SparseRow> rows{{{0, 1.0}}, {{1, 1.0}}, {{1, 1.0}}};
  const std::vector<ClassId> labels{0, 2, 2};
  const auto nb = nb_train(rows, labels, 3, 2);
  EXPECT_EQ(nb.log_prior[1], -std::numeric_limits<double>::infinity());
  EXPECT_EQ(nb_predict(nb, SparseRow{}), 2);
  EXPECT_NE(nb_predict(nb, SparseRow{{0, 5.0}}), 1);
  const std::vector<ClassId> bad{0, 3, 1};
  EXPECT_OFS_ERROR(nb_train(rows, bad, 3, 2), ErrorCode::UnknownLabel);
  EXPECT_OFS_ERROR(nb_train(rows, labels, 3, 2, 0.0), ErrorCode::Config);
}

TEST(NaiveBayes, DuplicatingTheCorpusKeepsPredictions) {
  const auto train = oracle::toy_tweets(120, 5, 0.2);
  const auto test = oracle::toy_tweets(80, 6, 0.2);
  auto doubled = train;
  doubled.texts.insert(doubled.texts.end(), train.texts.begin(), train.texts.end());
  doubled.labels.insert(doubled.labels.end(), train.labels.begin(), train.labels.end());
  auto fit = [&](const oracle::TextCorpus& c) {
    const auto [tfidf, rows] = tfidf_fit_transform(c.texts);
    return nb_predict(nb_train(rows, c.labels, 2, tfidf.vocabulary.size()), tfidf.transform(test.texts));
  };
  EXPECT_EQ(fit(train), fit(doubled));
}

TEST(NaiveBayes, SeparatesToyTweetsAndBackendsAgree) {
  const auto train = oracle::toy_tweets(200, 7);
  const auto test = oracle::toy_tweets(200, 8);
  const auto [tfidf, rows] = tfidf_fit_transform(train.texts);
  const auto nb = nb_train(rows, train.labels, 2, tfidf.vocabulary.size());
  const auto test_rows = tfidf.transform(test.texts);
  const auto pred = nb_predict(nb, test_rows, kernels::Backend::Parallel);
  EXPECT_EQ(pred, nb_predict(nb, test_rows, kernels::Backend::Serial));
  EXPECT_GE(metrics::macro_f1_score(pred, test.labels, 2), 0.95);
}

NbBundle sample_bundle() {
  const auto train = oracle::toy_tweets(60, 9);
  auto [tfidf, rows] = tfidf_fit_transform(train.texts);
  auto nb = nb_train(rows, train.labels, 2, tfidf.vocabulary.size());
  return {Subtask::A, std::move(tfidf), std::move(nb)};
}

TEST(NbFile, DeterministicBytesAndRoundTrip) {
  testing::TempDir dir;
  const auto bundle = sample_bundle();
  EXPECT_EQ(encode_nb(bundle), encode_nb(sample_bundle()));
  save_nb(dir / "nb.bin", bundle);
  EXPECT_EQ(load_nb(dir / "nb.bin"), bundle);
  EXPECT_EQ(testing::slurp(dir / "nb.bin"), encode_nb(bundle));
  const std::size_t v = bundle.tfidf.vocabulary.size();
  std::size_t terms = 0;
  for (const auto& [t, i] : bundle.tfidf.vocabulary) terms += 4 + t.size() + 8;
  EXPECT_EQ(encode_nb(bundle).size(), 8 + 1 + 8 + 8 + 4 + 4 + terms + 2 * 8 + 2 * v * 8);
}

TEST(NbFile, CorruptionIsDetected) {
  testing::TempDir dir;
  const std::string bytes = encode_nb(sample_bundle());
  std::string bad = bytes;
  bad[3] = '?';
  testing::spit(dir / "m.bin", bad);
  EXPECT_OFS_ERROR(load_nb(dir / "m.bin"), ErrorCode::BadMagic);
  testing::spit(dir / "t.bin", bytes.substr(0, bytes.size() / 2));
  EXPECT_OFS_ERROR(load_nb(dir / "t.bin"), ErrorCode::TruncatedFile);
  testing::spit(dir / "x.bin", bytes + std::string(1, '\0'));
  EXPECT_OFS_ERROR(load_nb(dir / "x.bin"), ErrorCode::TrailingBytes);
  std::string nan = bytes;
  const double q = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan.data() + nan.size() - 8, &q, 8);
  testing::spit(dir / "n.bin", nan);
  EXPECT_OFS_ERROR(load_nb(dir / "n.bin"), ErrorCode::NonFiniteValue);
}

}  // namespace
}  // namespace ofs::baseline
