#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "ofs/checkpoint.hpp"
#include "ofs/cli.hpp"
#include "ofs/ensemble.hpp"
#include "test_support.hpp"

namespace ofs::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_in_process(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return testing::fixture(name).string(); }

// Runs the installed binary; stdout goes to a file inside `dir`.
Outcome run_binary(const testing::TempDir& dir, const std::string& args) {
  const auto out_path = dir / "stdout.txt";
  const auto err_path = dir / "stderr.txt";
  const std::string command =
      std::string(OFS_CLI_PATH) + " " + args + " >" + out_path.string() + " 2>" + err_path.string();
  const int status = std::system(command.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, testing::slurp(out_path), testing::slurp(err_path)};
}

std::vector<std::string> train_args(const testing::TempDir& dir, const std::string& features, const std::string& model) {
  return {"train-head", "--features", features, "--labels", fx("agg_labels.tsv"), "--subtask", "C",
          "--out-model", (dir / model).string(), "--max-epochs", "4", "--seed", "3"};
}

TEST(Cli, EvaluateFixture) {
  testing::TempDir dir;
  const auto r = run_binary(dir, "evaluate --pred " + fx("eval_pred.tsv") + " --gold " + fx("eval_gold.tsv") +
                                     " --out-report " + (dir / "report.txt").string());
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("macro_f1=0.25"), std::string::npos) << r.out;
  const std::string report = testing::slurp(dir / "report.txt");
  EXPECT_NE(report.find("macro_f1=0.25"), std::string::npos);
  EXPECT_NE(report.find("config_hash="), std::string::npos);
  EXPECT_NE(report.find("version=ofs "), std::string::npos);
}

TEST(Cli, TrainHeadIsReproducible) {
  testing::TempDir dir;
  auto a = run_in_process(train_args(dir, fx("agg_family_a.ofsfeat"), "a.ofsmlp"));
  auto b = run_in_process(train_args(dir, fx("agg_family_a.ofsfeat"), "b.ofsmlp"));
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(testing::slurp(dir / "a.ofsmlp"), testing::slurp(dir / "b.ofsmlp"));
  EXPECT_NE(a.out.find("best_epoch="), std::string::npos);
  EXPECT_NE(a.out.find("seed=3"), std::string::npos);
  const auto ck = nn::load_checkpoint(dir / "a.ofsmlp");
  EXPECT_EQ(ck.arch.hidden, (std::vector<std::size_t>{256, 128}));
  ASSERT_EQ(ck.inputs.size(), 1u);
  EXPECT_EQ(ck.inputs[0].name, "family-a");
}

TEST(Cli, TwoFamilyPipelineThroughPredictAndVote) {
  testing::TempDir dir;
  const std::string both = fx("agg_family_a.ofsfeat") + "," + fx("agg_family_b.ofsfeat");
  ASSERT_EQ(run_in_process(train_args(dir, both, "ab.ofsmlp")).code, 0);
  const auto ck = nn::load_checkpoint(dir / "ab.ofsmlp");
  EXPECT_EQ(ck.arch.input_dim, 32u);

  auto p = run_in_process({"predict", "--model", (dir / "ab.ofsmlp").string(), "--features", both, "--out",
                           (dir / "p.tsv").string()});
  ASSERT_EQ(p.code, 0) << p.err;
  const auto member = ensemble::read_member_file(dir / "p.tsv");
  EXPECT_EQ(member.ids.size(), 600u);

  // features in the wrong order
  const std::string swapped = fx("agg_family_b.ofsfeat") + "," + fx("agg_family_a.ofsfeat");
  auto bad = run_in_process({"predict", "--model", (dir / "ab.ofsmlp").string(), "--features", swapped, "--out",
                             (dir / "q.tsv").string()});
  EXPECT_EQ(bad.code, kDataError);
  EXPECT_NE(bad.err.find("MemberOrderMismatch"), std::string::npos) << bad.err;

  // a single-member vote reproduces the member
  auto v = run_in_process({"vote", "--members", (dir / "p.tsv").string(), "--out", (dir / "v.tsv").string()});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_EQ(ensemble::read_member_file(dir / "v.tsv").probs, member.probs);

  auto e = run_in_process({"evaluate", "--pred", (dir / "p.tsv").string(), "--gold", fx("agg_labels.tsv")});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NE(e.out.find("macro_f1="), std::string::npos);
}

TEST(Cli, StackFlow) {
  testing::TempDir dir;
  for (const char* family : {"a", "b"}) {
    const std::string feat = fx(family[0] == 'a' ? "agg_family_a.ofsfeat" : "agg_family_b.ofsfeat");
    const std::string model = std::string(family) + ".ofsmlp";
    ASSERT_EQ(run_in_process(train_args(dir, feat, model)).code, 0);
    ASSERT_EQ(run_in_process({"predict", "--model", (dir / model).string(), "--features", feat, "--out",
                              (dir / (std::string(family) + ".tsv")).string(), "--name", family})
                  .code,
              0);
  }
  const std::string members = (dir / "a.tsv").string() + "," + (dir / "b.tsv").string();
  auto s = run_in_process({"stack", "--members", members, "--labels", fx("agg_labels.tsv"), "--out-model",
                           (dir / "stack.ofsmlp").string(), "--max-epochs", "20", "--seed", "2"});
  ASSERT_EQ(s.code, 0) << s.err;
  auto p = run_in_process({"predict", "--model", (dir / "stack.ofsmlp").string(), "--members", members, "--out",
                           (dir / "stacked.tsv").string()});
  ASSERT_EQ(p.code, 0) << p.err;
  const std::string reversed = (dir / "b.tsv").string() + "," + (dir / "a.tsv").string();
  auto bad = run_in_process({"predict", "--model", (dir / "stack.ofsmlp").string(), "--members", reversed, "--out",
                             (dir / "x.tsv").string()});
  EXPECT_EQ(bad.code, kDataError);
}

TEST(Cli, ExitCodes) {
  testing::TempDir dir;
  EXPECT_EQ(run_binary(dir, "").code, kConfigError);
  EXPECT_EQ(run_binary(dir, "evaluate --pred " + fx("eval_pred.tsv")).code, kConfigError);
  EXPECT_EQ(run_binary(dir, "train-head --features " + fx("agg_family_a.ofsfeat") + " --labels " +
                                fx("agg_labels.tsv") + " --subtask C --out-model " + (dir / "m").string() +
                                " --max-epochs 0")
                .code,
            kConfigError);
  const auto corrupt = run_binary(dir, "train-head --features " + fx("truncated.ofsfeat") + " --labels " +
                                           fx("agg_labels.tsv") + " --subtask C --out-model " + (dir / "m").string());
  EXPECT_EQ(corrupt.code, kDataError);
  EXPECT_NE(corrupt.err.find("TruncatedFile"), std::string::npos) << corrupt.err;
  const auto diverged = run_binary(dir, "train-head --features " + fx("agg_family_a.ofsfeat") + " --labels " +
                                            fx("agg_labels.tsv") + " --subtask C --out-model " +
                                            (dir / "m").string() + " --max-epochs 2 --learning-rate 1e300");
  EXPECT_EQ(diverged.code, kNumericError);
  EXPECT_NE(diverged.err.find("NonFiniteLoss"), std::string::npos) << diverged.err;
}

TEST(Cli, RunConfigJson) {
  testing::TempDir dir;
  testing::spit(dir / "run.json", R"({"train-head": {"max-epochs": 2, "seed": 9}})");
  auto args = std::vector<std::string>{"--run-config", (dir / "run.json").string(), "train-head", "--features",
                                       fx("agg_family_a.ofsfeat"), "--labels", fx("agg_labels.tsv"), "--subtask", "C",
                                       "--out-model", (dir / "m.ofsmlp").string()};
  auto r = run_in_process(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("seed=9"), std::string::npos);
  EXPECT_NE(r.out.find("epoch.2."), std::string::npos);
  EXPECT_EQ(r.out.find("epoch.3."), std::string::npos);

  testing::spit(dir / "bad.json", R"({"train-head": {"no-such-flag": 1}})");
  args[1] = (dir / "bad.json").string();
  EXPECT_EQ(run_in_process(args).code, kConfigError);
}

TEST(Cli, ConfigHashDependsOnOptions) {
  testing::TempDir dir;
  auto hash_of = [&](const std::string& threshold) {
    const auto r = run_in_process({"evaluate", "--pred", fx("eval_pred.tsv"), "--gold", fx("eval_gold.tsv"),
                                   "--threshold", threshold});
    const auto at = r.out.find("config_hash=");
    return r.out.substr(at, 28);
  };
  EXPECT_EQ(hash_of("0.5"), hash_of("0.5"));
  EXPECT_NE(hash_of("0.5"), hash_of("0.6"));
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Cli, NormalizeKeepsExtraColumns) {
  testing::TempDir dir;
  auto r = run_in_process({"normalize", "--in", fx("olid_sample.tsv"), "--out", (dir / "n.tsv").string(), "--config",
                           testing::data_file("normalizer.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string out = testing::slurp(dir / "n.tsv");
  EXPECT_EQ(out.substr(0, out.find('\n')), "id\ttweet\tsubtask_a\tsubtask_b\tsubtask_c");
  EXPECT_NE(out.find("102\tcafe & croissants for everyone\tNOT\tNULL\tNULL"), std::string::npos) << out;
  EXPECT_NE(out.find("@USER @USER @USER you is not"), std::string::npos) << out;
}

TEST(Cli, WeighPrintsCountsAndWeights) {
  auto r = run_in_process({"weigh", "--in", fx("solid_sample.tsv"), "--subtask", "A"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("count.OFF=2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("weight.OFF=0.25"), std::string::npos) << r.out;
}

TEST(Cli, BaselineNbIsDeterministic) {
  testing::TempDir dir;
  auto run_nb = [&](const std::string& model) {
    return run_in_process({"baseline-nb", "--train", fx("olid_sample.tsv"), "--test", fx("olid_sample.tsv"),
                           "--subtask", "A", "--out-model", (dir / model).string(), "--out-pred",
                           (dir / "pred.tsv").string()});
  };
  auto a = run_nb("a.nb");
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(run_nb("b.nb").code, 0);
  EXPECT_EQ(testing::slurp(dir / "a.nb"), testing::slurp(dir / "b.nb"));
  EXPECT_NE(a.out.find("macro_f1="), std::string::npos);
}

}  // namespace
}  // namespace ofs::cli
