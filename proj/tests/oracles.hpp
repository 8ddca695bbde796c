#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "ofs/mlp.hpp"
#include "ofs/random.hpp"
#include "ofs/types.hpp"

// Independent reference computations used by both the unit and acceptance tests.
namespace ofs::oracle {

/// Sum of weighted losses over a batch, with the dropout masks fixed by `mode`.
inline double batch_loss(const nn::MlpParams& params, const nn::MlpArchitecture& arch, const Matrix& x,
                         const std::vector<ClassId>& y, const std::vector<double>& w, nn::ForwardMode mode) {
  const auto cache = nn::forward(params, arch, x, mode, kernels::Backend::Serial);
  double total = 0.0;
  for (std::size_t b = 0; b < y.size(); ++b) total += nn::weighted_loss(cache.output.row(b), y[b], w[b]);
  return total;
}

/// Largest relative error between backward() and central differences with
/// step h, using max(|analytic|, |numeric|, 1e-3) as the denominator.
inline double gradient_check(const nn::MlpParams& params, const nn::MlpArchitecture& arch, const Matrix& x,
                             const std::vector<ClassId>& y, const std::vector<double>& w, nn::ForwardMode mode,
                             double h = 1e-5) {
  const auto cache = nn::forward(params, arch, x, mode, kernels::Backend::Serial);
  const auto grads = nn::backward(params, arch, cache, y, w, kernels::Backend::Serial);
  nn::MlpParams probe = params;
  double worst = 0.0;
  auto check = [&](double& slot, double analytic) {
    const double saved = slot;
    slot = saved + h;
    const double up = batch_loss(probe, arch, x, y, w, mode);
    slot = saved - h;
    const double down = batch_loss(probe, arch, x, y, w, mode);
    slot = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-3});
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
  };
  for (std::size_t l = 0; l < probe.layers.size(); ++l) {
    auto& layer = probe.layers[l];
    for (std::size_t i = 0; i < layer.weights.size(); ++i) check(layer.weights.values()[i], grads.layers[l].weights.values()[i]);
    for (std::size_t i = 0; i < layer.bias.size(); ++i) check(layer.bias[i], grads.layers[l].bias[i]);
  }
  return worst;
}

/// Macro F1 straight from the definition, counting each class by scanning.
inline double macro_f1(const std::vector<ClassId>& pred, const std::vector<ClassId>& gold, std::size_t classes) {
  double sum = 0.0;
  for (std::size_t c = 0; c < classes; ++c) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const bool p = pred[i] == static_cast<ClassId>(c);
      const bool g = gold[i] == static_cast<ClassId>(c);
      tp += p && g;
      fp += p && !g;
      fn += !p && g;
    }
    const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    sum += precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
  }
  return sum / static_cast<double>(classes);
}

struct TextCorpus {
  std::vector<std::string> texts;
  std::vector<ClassId> labels;
};

/// Two-class toy tweets: shared filler plus words from the document's own
/// class vocabulary; `cross_rate` of the class words come from the other class.
inline TextCorpus toy_tweets(std::size_t n, std::uint64_t seed, double cross_rate = 0.0) {
  static const std::vector<std::string> filler{"the", "a", "you", "is", "this", "so", "just", "really", "user", "url"};
  static const std::vector<std::string> calm{"lovely", "thanks", "great", "friend", "sunny", "happy", "welcome", "kind"};
  static const std::vector<std::string> rude{"idiot", "stupid", "trash", "loser", "pathetic", "moron", "dumb", "disgusting"};
  Rng rng(seed);
  TextCorpus corpus;
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = static_cast<ClassId>(rng.index(2));
    const auto& own = label == 1 ? rude : calm;
    const auto& other = label == 1 ? calm : rude;
    std::string text;
    const std::size_t words = 4 + rng.index(6);
    for (std::size_t w = 0; w < words; ++w) {
      const double u = rng.uniform();
      const std::string& word = u < 0.5 ? filler[rng.index(filler.size())]
                                : u < 1.0 - 0.5 * cross_rate ? own[rng.index(own.size())]
                                          : other[rng.index(other.size())];
      text += (text.empty() ? "" : " ") + word;
    }
    corpus.texts.push_back(std::move(text));
    corpus.labels.push_back(label);
  }
  return corpus;
}

}  // namespace ofs::oracle
