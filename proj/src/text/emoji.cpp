#include <algorithm>
#include <string>
#include <vector>

#include "ofs/normalizer.hpp"
#include "unicode.hpp"

namespace ofs::text {
namespace {

using detail::decode;

bool ascii_alnum_byte(char c) { return detail::is_ascii_alnum(static_cast<unsigned char>(c)); }

// Presentation selectors and skin-tone modifiers belong to the emoji before them.
bool is_emoji_modifier(char32_t cp) { return cp == 0xFE0F || cp == 0xFE0E || (cp >= 0x1F3FB && cp <= 0x1F3FF); }

bool starts_url(std::string_view text, std::size_t pos) {
  const std::string head = detail::ascii_lower(text.substr(pos, 8));
  return head.starts_with("http://") || head.starts_with("https://") || head.starts_with("www.");
}

}  // namespace

EmojiReplacer::EmojiReplacer(const EmojiTable& table) {
  for (const auto& [key, replacement] : table) {
    if (key.empty()) continue;
    by_first_byte_[static_cast<unsigned char>(key[0])].push_back({key, replacement});
  }
  for (auto& [byte, entries] : by_first_byte_) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.key.size() > b.key.size(); });
  }
}

// Keys are matched against the accent-folded view of the text, so that
// folding afterwards cannot reveal a new emoticon. Unmatched characters are
// copied from the source.
std::string EmojiReplacer::replace(std::string_view text) const {
  const auto units = detail::fold_units(text);
  std::string folded;
  std::vector<std::size_t> starts;
  starts.reserve(units.size() + 1);
  for (const auto& u : units) {
    starts.push_back(folded.size());
    folded += u.text;
  }
  starts.push_back(folded.size());

  auto word_at = [&](std::size_t pos) { return pos < folded.size() && detail::is_word_like(decode(folded, pos).value); };
  // Whether the output so far ends in a word character, judged after folding.
  auto last_is_word = [](std::string_view piece) {
    std::size_t start = piece.size() - 1;
    while (start > 0 && (static_cast<unsigned char>(piece[start]) & 0xC0) == 0x80) --start;
    return detail::is_word_like(decode(piece, start).value);
  };
  bool word_before = false;
  auto source = [&](std::size_t i) { return text.substr(units[i].begin, units[i].end - units[i].begin); };

  std::string out;
  out.reserve(text.size() + 16);
  bool pending_space = false;
  bool ends_with_space = true;
  auto emit = [&](std::string_view piece) {
    const bool space = detail::is_space(decode(piece, 0).value);
    if (pending_space && !space) out.push_back(' ');
    pending_space = false;
    out.append(piece);
    ends_with_space = space;
  };

  bool token_start = true;
  for (std::size_t i = 0; i < units.size();) {
    if (units[i].text.empty()) {  // folding drops it anyway
      ++i;
      continue;
    }
    const std::size_t pos = starts[i];
    if (detail::is_space(decode(source(i), 0).value)) {
      emit(source(i));
      word_before = false;
      ++i;
      token_start = true;
      continue;
    }
    if (token_start && starts_url(folded, pos)) {
      while (i < units.size() && !detail::is_space(decode(source(i), 0).value)) {
        if (!units[i].text.empty()) word_before = last_is_word(units[i].text);
        emit(source(i++));
      }
      continue;
    }
    token_start = false;

    const Entry* hit = nullptr;
    std::size_t next = 0;
    if (auto it = by_first_byte_.find(static_cast<unsigned char>(folded[pos])); it != by_first_byte_.end()) {
      for (const Entry& e : it->second) {
        if (folded.compare(pos, e.key.size(), e.key) != 0) continue;
        const std::size_t after = pos + e.key.size();
        const auto boundary = std::lower_bound(starts.begin() + static_cast<std::ptrdiff_t>(i) + 1, starts.end(), after);
        if (*boundary != after) continue;  // ends inside a folded character
        // Keys that begin or end with a letter/digit only match as whole words.
        if (ascii_alnum_byte(e.key.front()) && word_before) continue;
        if (ascii_alnum_byte(e.key.back()) && word_at(after)) continue;
        hit = &e;
        next = static_cast<std::size_t>(boundary - starts.begin());
        break;
      }
    }
    if (hit == nullptr) {
      emit(source(i));
      word_before = last_is_word(units[i].text);
      ++i;
      continue;
    }

    if (!ends_with_space) out.push_back(' ');
    out += hit->replacement;
    pending_space = true;
    ends_with_space = false;
    word_before = false;
    i = next;
    // Marks after the key would sit on the ASCII replacement and fold away.
    while (i < units.size()) {
      const char32_t cp = decode(source(i), 0).value;
      if (!(units[i].text.empty() || is_emoji_modifier(cp) || detail::is_combining_mark(cp))) break;
      ++i;
    }
  }
  return out;
}

std::string replace_emojis(std::string_view text, const EmojiTable& table) { return EmojiReplacer(table).replace(text); }

}  // namespace ofs::text
