#include <gtest/gtest.h>

#include <algorithm>

#include "ofs/ensemble.hpp"
#include "ofs/error.hpp"
#include "ofs/metrics.hpp"
#include "ofs/random.hpp"
#include "test_support.hpp"

namespace ofs::ensemble {
namespace {

MemberFile member(std::string name, std::vector<ExampleId> ids, std::vector<std::vector<double>> rows) {
  MemberFile m{std::move(name), std::move(ids), Matrix(rows.size(), rows.empty() ? 0 : rows[0].size())};
  for (std::size_t r = 0; r < rows.size(); ++r) std::copy(rows[r].begin(), rows[r].end(), m.probs.row(r).begin());
  return m;
}

MemberFile random_member(Rng& rng, std::string name, std::size_t n, std::size_t classes) {
  MemberFile m{std::move(name), {}, Matrix(n, classes)};
  for (std::size_t r = 0; r < n; ++r) {
    m.ids.push_back(100 + r);
    double total = 0;
    for (double& v : m.probs.row(r)) total += (v = rng.uniform(0.01, 1.0));
    for (double& v : m.probs.row(r)) v /= total;
  }
  return m;
}

TEST(SoftVote, HandValues) {
  const std::vector<MemberFile> ms{member("a", {1}, {{0.8, 0.2}}), member("b", {1}, {{0.6, 0.4}})};
  const auto v = soft_vote(combine(ms));
  EXPECT_NEAR(v(0, 0), 0.7, 1e-12);
  EXPECT_NEAR(v(0, 1), 0.3, 1e-12);

  const std::vector<MemberFile> opposite{member("a", {1}, {{1.0, 0.0}}), member("b", {1}, {{0.0, 1.0}})};
  const auto o = soft_vote(combine(opposite));
  EXPECT_EQ(o(0, 0), 0.5);
  EXPECT_EQ(o(0, 1), 0.5);

  const std::vector<double> weights{3.0, 1.0};
  const auto w = soft_vote(combine(ms), weights);
  EXPECT_NEAR(w(0, 0), 0.75, 1e-12);
}

TEST(SoftVote, IdenticalMembersReproduceTheMember) {
  Rng rng(1);
  const auto m = random_member(rng, "m", 50, 3);
  const std::vector<MemberFile> three{m, m, m};
  const auto v = soft_vote(combine(three));
  EXPECT_EQ(v, m.probs);
  const std::vector<double> weights{0.3, 2.0, 7.0};
  EXPECT_EQ(soft_vote(combine(three), weights), m.probs);
}

TEST(SoftVote, PermutationInvariantAndInsideConvexHull) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t classes = 2 + rng.index(2);
    std::vector<MemberFile> ms;
    for (int m = 0; m < 4; ++m) ms.push_back(random_member(rng, "m" + std::to_string(m), 20, classes));
    auto reversed = ms;
    std::reverse(reversed.begin(), reversed.end());
    const auto a = soft_vote(combine(ms));
    const auto b = soft_vote(combine(reversed));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], 1e-12);
    for (std::size_t r = 0; r < 20; ++r) {
      double total = 0;
      for (std::size_t k = 0; k < classes; ++k) {
        double lo = 1, hi = 0;
        for (const auto& m : ms) {
          lo = std::min(lo, m.probs(r, k));
          hi = std::max(hi, m.probs(r, k));
        }
        EXPECT_GE(a(r, k), lo - 1e-15);
        EXPECT_LE(a(r, k), hi + 1e-15);
        total += a(r, k);
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(SoftVote, WeightValidation) {
  const std::vector<MemberFile> ms{member("a", {1}, {{0.8, 0.2}}), member("b", {1}, {{0.6, 0.4}})};
  const auto probs = combine(ms);
  const std::vector<double> zero{1.0, 0.0}, short_list{1.0};
  EXPECT_OFS_ERROR(soft_vote(probs, zero), ErrorCode::Config);
  EXPECT_OFS_ERROR(soft_vote(probs, short_list), ErrorCode::Config);
}

TEST(Combine, AlignsByIdAndRejectsMismatches) {
  const std::vector<MemberFile> ms{member("a", {2, 1}, {{0.9, 0.1}, {0.2, 0.8}}),
                                   member("b", {1, 2}, {{0.3, 0.7}, {0.6, 0.4}})};
  const auto p = combine(ms);
  EXPECT_EQ(p.ids, (std::vector<ExampleId>{1, 2}));
  EXPECT_EQ(p.probs[0](0, 0), 0.2);
  EXPECT_EQ(p.probs[1](1, 0), 0.6);

  const std::vector<MemberFile> missing{member("a", {1, 2}, {{0.5, 0.5}, {0.5, 0.5}}), member("b", {1}, {{0.5, 0.5}})};
  EXPECT_OFS_ERROR(combine(missing), ErrorCode::IdMismatch);
  const std::vector<MemberFile> dup{member("a", {1, 1}, {{0.5, 0.5}, {0.5, 0.5}})};
  EXPECT_OFS_ERROR(combine(dup), ErrorCode::DuplicateId);
  const std::vector<MemberFile> width{member("a", {1}, {{0.5, 0.5}}), member("b", {1}, {{0.2, 0.3, 0.5}})};
  EXPECT_OFS_ERROR(combine(width), ErrorCode::DimensionMismatch);
  const std::vector<MemberFile> unnormalized{member("a", {1}, {{0.5, 0.6}})};
  EXPECT_OFS_ERROR(combine(unnormalized), ErrorCode::NonFiniteValue);
}

TEST(MemberFileIo, RoundTrip) {
  testing::TempDir dir;
  Rng rng(3);
  const auto m = random_member(rng, "bert-large", 25, 3);
  write_member_file(dir / "m.tsv", m);
  const auto back = read_member_file(dir / "m.tsv");
  EXPECT_EQ(back.name, m.name);
  EXPECT_EQ(back.ids, m.ids);
  EXPECT_EQ(back.probs, m.probs);
  testing::spit(dir / "bad.tsv", "id\tp0\tp1\n1\t0.5\t0.5\n");
  EXPECT_OFS_ERROR(read_member_file(dir / "bad.tsv"), ErrorCode::BadHeader);
}

nn::TrainConfig stack_config() {
  nn::TrainConfig cfg;
  cfg.max_epochs = 60;
  cfg.patience = 10;
  cfg.seed = 5;
  cfg.adam.learning_rate = 0.05;
  return cfg;
}

TEST(Stacker, LearnsToTrustThePerfectMember) {
  Rng rng(4);
  const std::size_t n = 400;
  std::vector<ClassId> labels(n);
  MemberFile perfect{"perfect", {}, Matrix(n, 3)};
  for (std::size_t r = 0; r < n; ++r) {
    labels[r] = static_cast<ClassId>(rng.index(3));
    perfect.ids.push_back(r + 1);
    for (std::size_t k = 0; k < 3; ++k) perfect.probs(r, k) = k == static_cast<std::size_t>(labels[r]) ? 0.8 : 0.1;
  }
  auto noise = random_member(rng, "noise", n, 3);
  for (std::size_t r = 0; r < n; ++r) noise.ids[r] = r + 1;
  const std::vector<MemberFile> ms{noise, perfect};
  const auto probs = combine(ms);
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto stacker = train_stacker(probs, labels, w, stack_config());
  EXPECT_TRUE(stacker.trained);
  EXPECT_TRUE(stacker.arch.hidden.empty());
  EXPECT_EQ(stacker.arch.input_dim, 6u);
  const auto out = stack_predict(stacker, probs);
  std::vector<ClassId> pred(n);
  for (std::size_t r = 0; r < n; ++r) pred[r] = nn::decide(out.row(r));
  EXPECT_GE(metrics::macro_f1_score(pred, labels, 3), 0.95);
  EXPECT_EQ(from_checkpoint(to_checkpoint(stacker)).params, stacker.params);
  EXPECT_EQ(from_checkpoint(to_checkpoint(stacker)).member_names, stacker.member_names);
}

StackerParams fixed_stacker(std::size_t members, std::size_t classes) {
  StackerParams s;
  for (std::size_t m = 0; m < members; ++m) s.member_names.push_back("m" + std::to_string(m));
  s.arch = {members * classes, {}, classes == 2 ? 1u : classes, 0.0};
  s.params = nn::zeros_like(nn::init_params(s.arch, 0));
  s.trained = true;
  return s;
}

TEST(Stacker, ZeroWeightsGiveUniformOutput) {
  Rng rng(6);
  const std::vector<MemberFile> ms{random_member(rng, "m0", 10, 2), random_member(rng, "m1", 10, 2)};
  const auto out = stack_predict(fixed_stacker(2, 2), combine(ms));
  for (std::size_t r = 0; r < 10; ++r) EXPECT_EQ(out(r, 0), 0.5);
}

TEST(Stacker, IdentityBlockFollowsTheMember) {
  Rng rng(7);
  std::vector<MemberFile> ms{random_member(rng, "m0", 60, 3), random_member(rng, "m1", 60, 3)};
  auto s3 = fixed_stacker(2, 3);
  for (std::size_t k = 0; k < 3; ++k) s3.params.layers[0].weights(k, 3 + k) = 1.0;
  const auto probs3 = combine(ms);
  const auto out3 = stack_predict(s3, probs3);
  for (std::size_t r = 0; r < 60; ++r) EXPECT_EQ(nn::decide(out3.row(r)), nn::decide(probs3.probs[1].row(r)));

  std::vector<MemberFile> bin{random_member(rng, "m0", 60, 2), random_member(rng, "m1", 60, 2)};
  auto s2 = fixed_stacker(2, 2);
  s2.params.layers[0].weights(0, 0) = -1.0;  // logit = p1 - p0 of member 0
  s2.params.layers[0].weights(0, 1) = 1.0;
  const auto probs2 = combine(bin);
  const auto out2 = stack_predict(s2, probs2);
  for (std::size_t r = 0; r < 60; ++r) {
    ASSERT_NE(probs2.probs[0](r, 1), 0.5);
    EXPECT_EQ(out2(r, 1) >= 0.5, probs2.probs[0](r, 1) >= 0.5);
  }
}

TEST(Stacker, RejectsReorderedMembersAndBadConfig) {
  Rng rng(8);
  const auto a = random_member(rng, "a", 20, 2);
  const auto b = random_member(rng, "b", 20, 2);
  const std::vector<MemberFile> ab{a, b}, ba{b, a};
  std::vector<ClassId> labels(20);
  for (std::size_t r = 0; r < 20; ++r) labels[r] = static_cast<ClassId>(r % 2);
  const std::vector<double> w{0.5, 0.5};
  auto cfg = stack_config();
  cfg.max_epochs = 3;
  const auto s = train_stacker(combine(ab), labels, w, cfg);
  EXPECT_OFS_ERROR(stack_predict(s, combine(ba)), ErrorCode::MemberOrderMismatch);
  cfg.max_epochs = 0;
  EXPECT_OFS_ERROR(train_stacker(combine(ab), labels, w, cfg), ErrorCode::Config);
  EXPECT_OFS_ERROR(stack_predict(StackerParams{}, combine(ab)), ErrorCode::Config);
  const std::vector<ClassId> short_labels(5, 0);
  EXPECT_OFS_ERROR(train_stacker(combine(ab), short_labels, w, stack_config()), ErrorCode::IdMismatch);
}

}  // namespace
}  // namespace ofs::ensemble
