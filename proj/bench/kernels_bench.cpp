// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to taste.
#include <benchmark/benchmark.h>

#include "ofs/feature_store.hpp"
#include "ofs/kernels.hpp"
#include "ofs/normalizer.hpp"
#include "ofs/random.hpp"

namespace {

using ofs::Matrix;
using ofs::kernels::Backend;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  ofs::Rng rng(seed);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.normal();
  return m;
}

Backend backend_of(const benchmark::State& state) { return state.range(0) == 0 ? Backend::Serial : Backend::Parallel; }

// Shapes of the first layer of the default head on two concatenated 1024-wide families.
void BM_DenseForward(benchmark::State& state) {
  const Matrix x = random_matrix(32, 2048, 1);
  const Matrix w = random_matrix(256, 2048, 2);
  const std::vector<double> bias(256, 0.1);
  Matrix out;
  for (auto _ : state) {
    ofs::kernels::dense_forward(backend_of(state), x, w, bias, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_DenseBackwardParams(benchmark::State& state) {
  const Matrix x = random_matrix(32, 2048, 1);
  const Matrix g = random_matrix(32, 256, 3);
  Matrix gw;
  std::vector<double> gb(256);
  for (auto _ : state) {
    ofs::kernels::dense_backward_params(backend_of(state), x, g, gw, gb);
    benchmark::DoNotOptimize(gw.data());
  }
}

void BM_DenseBackwardInput(benchmark::State& state) {
  const Matrix g = random_matrix(32, 256, 3);
  const Matrix w = random_matrix(256, 2048, 2);
  Matrix gi;
  for (auto _ : state) {
    ofs::kernels::dense_backward_input(backend_of(state), g, w, gi);
    benchmark::DoNotOptimize(gi.data());
  }
}

void BM_AlignConcat(benchmark::State& state) {
  ofs::Rng rng(4);
  std::vector<ofs::features::FeatureSet> sets;
  for (int s = 0; s < 2; ++s) {
    ofs::features::FeatureSet set("m" + std::to_string(s), 768);
    std::vector<float> v(768);
    for (std::uint64_t id = static_cast<std::uint64_t>(s) * 200; id < 4000; ++id) {
      for (float& x : v) x = static_cast<float>(rng.normal());
      set.add(id, std::span<const float>(v));
    }
    sets.push_back(std::move(set));
  }
  for (auto _ : state) benchmark::DoNotOptimize(ofs::features::align_concat(sets, backend_of(state)));
}

void BM_NormalizeBatch(benchmark::State& state) {
  const ofs::text::Normalizer norm(ofs::text::NormalizerConfig::load(std::string(OFS_DATA_DIR) + "/normalizer.json"));
  const std::vector<std::string> samples{
      "<b>WOW</b> @USER @USER @USER @USER you isn't #dinnertime :)",
      "café &amp; croissants for everyone",
      "#MAGA2020 they can't be serious",
      "I'm fine :( thanks",
  };
  std::vector<ofs::text::Tweet> tweets;
  for (std::uint64_t i = 0; i < 4000; ++i) tweets.push_back({i, samples[i % samples.size()]});
  for (auto _ : state) benchmark::DoNotOptimize(norm.normalize_batch(tweets, backend_of(state)));
}

}  // namespace

BENCHMARK(BM_DenseForward)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_DenseBackwardParams)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_DenseBackwardInput)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_AlignConcat)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_NormalizeBatch)->Arg(0)->Arg(1)->ArgName("parallel");

BENCHMARK_MAIN();
