#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ofs/normalizer.hpp"
#include "unicode.hpp"

namespace ofs::text {
namespace {

using detail::CodePoint;
using detail::decode;

enum class CharClass { Letter, Digit, Other };

CharClass classify(char32_t cp) {
  if (cp >= '0' && cp <= '9') return CharClass::Digit;
  if (detail::is_latin_letter(cp)) return CharClass::Letter;
  return CharClass::Other;
}

std::string lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    const CodePoint cp = decode(text, pos);
    if (cp.value == detail::kInvalid)
      out.push_back(text[pos]);
    else
      detail::append_utf8(out, detail::to_lower(cp.value));
    pos += cp.bytes;
  }
  return out;
}

bool is_boundary(const std::string& s, std::size_t pos) {
  return pos == 0 || pos >= s.size() || (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

}  // namespace

HashtagSegmenter::HashtagSegmenter(const Lexicon& lexicon) {
  double total = 0.0;
  for (const auto& [word, count] : lexicon) total += static_cast<double>(count);
  const double log_total = std::log(total);
  log_probs_.reserve(lexicon.size());
  for (const auto& [word, count] : lexicon) {
    log_probs_.emplace(word, std::log(static_cast<double>(count)) - log_total);
    max_word_bytes_ = std::max(max_word_bytes_, word.size());
  }
}

double HashtagSegmenter::log_prob(std::string_view word) const {
  auto it = log_probs_.find(std::string(word));
  return it == log_probs_.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

std::vector<std::string> HashtagSegmenter::split(std::string_view tag) const {
  const std::string lowered = lowercase(tag);
  const std::size_t n = lowered.size();
  if (n == 0) return {std::string{}};

  constexpr double kUnreachable = -std::numeric_limits<double>::infinity();
  std::vector<double> best(n + 1, kUnreachable);
  std::vector<std::size_t> back(n + 1, 0);
  best[0] = 0.0;
  for (std::size_t end = 1; end <= n; ++end) {
    if (!is_boundary(lowered, end)) continue;
    const std::size_t lo = end > max_word_bytes_ ? end - max_word_bytes_ : 0;
    // Ascending start: on equal scores the longer final word is kept.
    for (std::size_t start = lo; start < end; ++start) {
      if (best[start] == kUnreachable || !is_boundary(lowered, start)) continue;
      const double lp = log_prob(std::string_view(lowered).substr(start, end - start));
      if (std::isnan(lp)) continue;
      if (best[start] + lp > best[end]) {
        best[end] = best[start] + lp;
        back[end] = start;
      }
    }
  }
  if (best[n] == kUnreachable) return greedy(lowered);

  std::vector<std::string> words;
  for (std::size_t end = n; end > 0; end = back[end]) words.push_back(lowered.substr(back[end], end - back[end]));
  return {words.rbegin(), words.rend()};
}

std::vector<std::string> HashtagSegmenter::greedy(const std::string& lowered) const {
  std::vector<std::string> tokens;
  std::string residue;
  CharClass residue_class = CharClass::Other;
  auto flush = [&] {
    if (!residue.empty()) tokens.push_back(std::move(residue));
    residue.clear();
  };

  std::size_t pos = 0;
  while (pos < lowered.size()) {
    std::size_t match = 0;
    const std::size_t longest = std::min(max_word_bytes_, lowered.size() - pos);
    for (std::size_t len = longest; len > 0; --len) {
      if (!is_boundary(lowered, pos + len)) continue;
      if (!std::isnan(log_prob(std::string_view(lowered).substr(pos, len)))) {
        match = len;
        break;
      }
    }
    if (match > 0) {
      flush();
      tokens.push_back(lowered.substr(pos, match));
      pos += match;
      continue;
    }
    const CodePoint cp = decode(lowered, pos);
    const CharClass cls = classify(cp.value);
    if (!residue.empty() && cls != residue_class) flush();
    residue_class = cls;
    residue.append(lowered, pos, cp.bytes);
    pos += cp.bytes;
  }
  flush();
  return tokens;
}

std::vector<std::string> split_hashtag(std::string_view tag, const Lexicon& lexicon) {
  return HashtagSegmenter(lexicon).split(tag);
}

}  // namespace ofs::text
