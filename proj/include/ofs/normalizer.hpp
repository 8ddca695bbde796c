#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ofs/kernels.hpp"
#include "ofs/types.hpp"

namespace ofs::text {

struct Tweet {
  ExampleId id = 0;
  std::string text;
};

/// Pipeline output: no HTML tags, no '#', single-space separated, trimmed.
struct NormalizedTweet {
  ExampleId id = 0;
  std::string text;

  bool operator==(const NormalizedTweet&) const = default;
};

/// Lowercase contraction (ASCII apostrophe) -> expansion.
using ContractionTable = std::map<std::string, std::string>;
/// Emoji or emoticon literal -> replacement words.
using EmojiTable = std::map<std::string, std::string>;
/// Lowercase word -> corpus frequency.
using Lexicon = std::unordered_map<std::string, std::uint64_t>;

struct NormalizerConfig {
  ContractionTable contractions;
  EmojiTable emoji;
  Lexicon hashtag_lexicon;
  std::size_t max_user_run = 3;

  /// Throws ConfigError when a table violates its invariants.
  void validate() const;

  /// JSON with keys "contractions", "emoji", "hashtag_lexicon" (paths
  /// relative to the JSON file) and "max_user_run".
  static NormalizerConfig load(const std::filesystem::path& json_path);
};

ContractionTable load_contractions(const std::filesystem::path& path);
EmojiTable load_emoji_table(const std::filesystem::path& path);
Lexicon load_lexicon(const std::filesystem::path& path);

// ---- individual stages -----------------------------------------------------

/// Deletes every "<...>" span and decodes character entities, repeated until
/// nothing changes (so "&lt;b&gt;" cannot leave a tag behind).
std::string strip_html(std::string_view text);

/// Hashtag bodies ("#...") are skipped; the hashtag stage expands its own output.
std::string expand_contractions(std::string_view text, const ContractionTable& table);

/// NFKD, then drop combining marks. Characters whose stripped decomposition
/// is not plain ASCII letters/digits/space are kept as they are.
std::string fold_accents(std::string_view text);

/// Truncates runs of consecutive "@user" tokens (case-insensitive) to max_run.
std::string collapse_user_runs(std::string_view text, std::size_t max_run);

/// Whitespace runs become one space; ends are trimmed.
std::string collapse_whitespace(std::string_view text);

/// Word-break segmentation of a hashtag body under a unigram model.
class HashtagSegmenter {
 public:
  explicit HashtagSegmenter(const Lexicon& lexicon);

  /// Lowercases `tag` and returns the segmentation with the highest total
  /// log-probability. If the lexicon cannot cover the whole body, falls back
  /// to greedy longest-prefix matching; uncovered characters are grouped into
  /// residue tokens (split where letters meet digits or other characters).
  /// The tokens concatenate back to the lowercased body.
  std::vector<std::string> split(std::string_view tag) const;

 private:
  std::vector<std::string> greedy(const std::string& lowered) const;
  double log_prob(std::string_view word) const;

  std::unordered_map<std::string, double> log_probs_;
  std::size_t max_word_bytes_ = 0;
};

std::vector<std::string> split_hashtag(std::string_view tag, const Lexicon& lexicon);

/// Leftmost-longest replacement of emoji and emoticons.
class EmojiReplacer {
 public:
  explicit EmojiReplacer(const EmojiTable& table);
  std::string replace(std::string_view text) const;

 private:
  struct Entry {
    std::string key;
    std::string replacement;
  };
  // First byte -> entries, longest key first.
  std::unordered_map<unsigned char, std::vector<Entry>> by_first_byte_;
};

std::string replace_emojis(std::string_view text, const EmojiTable& table);

// ---- full pipeline ---------------------------------------------------------

class Normalizer {
 public:
  explicit Normalizer(NormalizerConfig config);

  /// strip_html -> collapse_user_runs -> expand_contractions -> hashtags ->
  /// replace_emojis -> fold_accents -> collapse_whitespace
  NormalizedTweet normalize(const Tweet& tweet) const;
  std::string normalize_text(std::string_view text) const;

  /// Replaces each "#body" with its segmentation (contractions inside the
  /// segmentation are expanded too); a bare '#' becomes a space.
  std::string split_hashtags(std::string_view text) const;

  std::vector<NormalizedTweet> normalize_batch(std::span<const Tweet> tweets,
                                               kernels::Backend backend = kernels::Backend::Parallel) const;

  const NormalizerConfig& config() const noexcept { return config_; }

 private:
  NormalizerConfig config_;
  HashtagSegmenter segmenter_;
  EmojiReplacer emoji_;
};

NormalizedTweet normalize(const Tweet& tweet, const NormalizerConfig& config);

}  // namespace ofs::text
