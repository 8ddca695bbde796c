#include "ofs/normalizer.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>

#include <json.hpp>

#include "ofs/error.hpp"
#include "unicode.hpp"

namespace ofs::text {
namespace {

using detail::CodePoint;
using detail::decode;


bool is_user_token(std::string_view token) {
  if (token.size() < 5 || token[0] != '@') return false;
  return detail::ascii_lower(fold_accents(token)) == "@user";
}

// Reads a two-column TSV, skipping blank and '#' comment lines.
template <typename OnRow>
void read_tsv_table(const std::filesystem::path& path, OnRow on_row) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw Error(ErrorCode::Config, path.string() + ":" + std::to_string(line_no) + ": expected two tab-separated columns");
    on_row(line.substr(0, tab), line.substr(tab + 1), line_no);
  }
}

const std::set<std::string, std::less<>>& apostrophe_free_contractions() {
  static const std::set<std::string, std::less<>> forms{
      "aint",  "arent",  "cant",     "couldnt", "didnt",    "doesnt",  "dont",  "gonna",
      "gotta", "hadnt",  "hasnt",    "havent",  "isnt",     "shouldnt", "wanna", "wasnt",
      "werent", "wont",  "wouldnt",  "cannot",  "im",       "ive",     "youre", "theyre"};
  return forms;
}

// Letters, digits, spaces and hyphens only, so a replacement cannot feed
// another stage on a second pass.
bool valid_replacement_text(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (!(detail::is_ascii_alnum(u) || c == ' ' || c == '-')) return false;
  }
  return true;
}

}  // namespace

std::string collapse_user_runs(std::string_view text, std::size_t max_run) {
  std::string out;
  out.reserve(text.size());
  std::size_t run = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t ws_end = pos;
    while (ws_end < text.size()) {
      const CodePoint cp = decode(text, ws_end);
      if (!detail::is_space(cp.value)) break;
      ws_end += cp.bytes;
    }
    std::size_t tok_end = ws_end;
    while (tok_end < text.size()) {
      const CodePoint cp = decode(text, tok_end);
      if (detail::is_space(cp.value)) break;
      tok_end += cp.bytes;
    }
    const std::string_view token = text.substr(ws_end, tok_end - ws_end);
    if (token.empty()) {
      out.append(text.substr(pos, ws_end - pos));
    } else if (is_user_token(token)) {
      if (++run <= max_run) out.append(text.substr(pos, tok_end - pos));
    } else {
      run = 0;
      out.append(text.substr(pos, tok_end - pos));
    }
    pos = tok_end;
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool gap = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const CodePoint cp = decode(text, pos);
    if (detail::is_space(cp.value)) {
      gap = true;
    } else {
      if (gap && !out.empty()) out.push_back(' ');
      gap = false;
      out.append(text.substr(pos, cp.bytes));
    }
    pos += cp.bytes;
  }
  return out;
}

// ---- config -----------------------------------------------------------------

ContractionTable load_contractions(const std::filesystem::path& path) {
  ContractionTable table;
  read_tsv_table(path, [&](std::string key, std::string value, std::size_t) {
    for (std::size_t p; (p = key.find("\xE2\x80\x99")) != std::string::npos;) key.replace(p, 3, "'");
    table[detail::ascii_lower(key)] = std::move(value);
  });
  return table;
}

EmojiTable load_emoji_table(const std::filesystem::path& path) {
  EmojiTable table;
  read_tsv_table(path, [&](std::string key, std::string value, std::size_t) { table[std::move(key)] = std::move(value); });
  return table;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  Lexicon lexicon;
  read_tsv_table(path, [&](std::string word, const std::string& count, std::size_t line_no) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(count.data(), count.data() + count.size(), value);
    if (ec != std::errc{} || end != count.data() + count.size() || value == 0)
      throw Error(ErrorCode::Config,
                  path.string() + ":" + std::to_string(line_no) + ": count must be a positive integer, got '" + count + "'");
    lexicon[detail::ascii_lower(word)] = value;
  });
  return lexicon;
}

void NormalizerConfig::validate() const {
  if (max_user_run < 1) throw Error(ErrorCode::Config, "max_user_run must be >= 1");
  if (contractions.empty()) throw Error(ErrorCode::Config, "contraction table is empty");
  for (const auto& [key, expansion] : contractions) {
    const bool has_apostrophe = key.find('\'') != std::string::npos;
    if (!has_apostrophe && !apostrophe_free_contractions().contains(key))
      throw Error(ErrorCode::Config, "contraction '" + key + "' has no apostrophe and is not a known apostrophe-free form");
    if (expansion.find(' ') == std::string::npos || !valid_replacement_text(expansion))
      throw Error(ErrorCode::Config, "contraction '" + key + "' must expand to several plain words");
  }
  for (const auto& [key, replacement] : emoji) {
    if (key.empty() || collapse_whitespace(key) != key || key.find(' ') != std::string::npos)
      throw Error(ErrorCode::Config, "emoji key '" + key + "' must be non-empty without whitespace");
    if (!valid_replacement_text(replacement))
      throw Error(ErrorCode::Config, "emoji replacement for '" + key + "' must be plain words");
  }
  for (const auto& [word, count] : hashtag_lexicon) {
    if (count == 0) throw Error(ErrorCode::Config, "lexicon count for '" + word + "' must be positive");
    if (word.empty()) throw Error(ErrorCode::Config, "empty lexicon word");
  }
}

NormalizerConfig NormalizerConfig::load(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + json_path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Config, json_path.string() + ": " + e.what());
  }
  const auto base = json_path.parent_path();
  auto path_of = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_string())
      throw Error(ErrorCode::Config, json_path.string() + ": missing string key '" + key + "'");
    std::filesystem::path p = doc[key].get<std::string>();
    return p.is_absolute() ? p : base / p;
  };

  NormalizerConfig config;
  config.contractions = load_contractions(path_of("contractions"));
  config.emoji = load_emoji_table(path_of("emoji"));
  config.hashtag_lexicon = load_lexicon(path_of("hashtag_lexicon"));
  if (doc.contains("max_user_run")) {
    if (!doc["max_user_run"].is_number_integer() || doc["max_user_run"].get<long long>() < 1)
      throw Error(ErrorCode::Config, json_path.string() + ": max_user_run must be an integer >= 1");
    config.max_user_run = doc["max_user_run"].get<std::size_t>();
  }
  config.validate();
  return config;
}

// ---- pipeline ---------------------------------------------------------------

Normalizer::Normalizer(NormalizerConfig config)
    : config_((config.validate(), std::move(config))), segmenter_(config_.hashtag_lexicon), emoji_(config_.emoji) {}

std::string Normalizer::split_hashtags(std::string_view text) const {
  std::string out;
  out.reserve(text.size() + 16);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t hash = text.find('#', pos);
    if (hash == std::string_view::npos) break;
    out.append(text.substr(pos, hash - pos));
    std::size_t end = hash + 1;
    while (end < text.size()) {
      const CodePoint cp = decode(text, end);
      if (!detail::is_hashtag_char(cp.value)) break;
      end += cp.bytes;
    }
    out.push_back(' ');
    if (end > hash + 1) {
      std::string joined;
      for (const std::string& token : segmenter_.split(text.substr(hash + 1, end - hash - 1))) {
        if (token.find_first_not_of('_') == std::string::npos) continue;
        if (!joined.empty()) joined.push_back(' ');
        joined += token;
      }
      out += expand_contractions(joined, config_.contractions);
      out.push_back(' ');
    }
    pos = end;
  }
  out.append(text.substr(pos));
  return out;
}

std::string Normalizer::normalize_text(std::string_view text) const {
  std::string s = strip_html(text);
  s = collapse_user_runs(s, config_.max_user_run);
  s = expand_contractions(s, config_.contractions);
  s = split_hashtags(s);
  s = emoji_.replace(s);
  s = fold_accents(s);
  return collapse_whitespace(s);
}

NormalizedTweet Normalizer::normalize(const Tweet& tweet) const { return {tweet.id, normalize_text(tweet.text)}; }

std::vector<NormalizedTweet> Normalizer::normalize_batch(std::span<const Tweet> tweets, kernels::Backend backend) const {
  std::vector<NormalizedTweet> out(tweets.size());
  const auto n = static_cast<std::int64_t>(tweets.size());
  if (backend == kernels::Backend::Serial) {
    for (std::int64_t i = 0; i < n; ++i) out[i] = normalize(tweets[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) out[i] = normalize(tweets[i]);
  }
  return out;
}

NormalizedTweet normalize(const Tweet& tweet, const NormalizerConfig& config) {
  return Normalizer(config).normalize(tweet);
}

}  // namespace ofs::text
