#include <string>

#include "ofs/normalizer.hpp"
#include "unicode.hpp"

namespace ofs::text {
namespace {

using detail::CodePoint;
using detail::decode;

bool is_word_char(char32_t cp) { return detail::is_word_like(cp); }

// Lookup key: accents folded, combining marks dropped, apostrophes unified,
// ASCII-lowercased.
std::string lookup_key(std::string_view token) {
  std::string unified;
  for (std::size_t pos = 0; pos < token.size();) {
    const CodePoint cp = decode(token, pos);
    if (detail::is_apostrophe(cp.value))
      unified.push_back('\'');
    else if (!detail::is_combining_mark(cp.value))
      unified.append(token.substr(pos, cp.bytes));
    pos += cp.bytes;
  }
  return detail::ascii_lower(fold_accents(unified));
}

bool starts_upper(std::string_view token) {
  const std::string folded = fold_accents(token.substr(0, decode(token, 0).bytes));
  return !folded.empty() && folded[0] >= 'A' && folded[0] <= 'Z';
}

std::string with_casing(std::string_view original, const std::string& expansion) {
  std::string out = expansion;
  if (!out.empty() && starts_upper(original) && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 32);
  return out;
}

void expand_quoted(std::string_view token, const ContractionTable& table, std::string& out);

// Combining marks are dropped first so that a mark stranded next to a quote
// cannot hide the contraction.
void expand_token(std::string_view token, const ContractionTable& table, std::string& out) {
  std::string clean;
  for (std::size_t pos = 0; pos < token.size();) {
    const CodePoint cp = decode(token, pos);
    if (!detail::is_combining_mark(cp.value)) clean.append(token.substr(pos, cp.bytes));
    pos += cp.bytes;
  }
  if (clean.size() == token.size()) {
    expand_quoted(token, table, out);
    return;
  }
  std::string expanded;
  expand_quoted(clean, table, expanded);
  if (expanded == clean)
    out.append(token);
  else
    out += expanded;
}

void expand_quoted(std::string_view token, const ContractionTable& table, std::string& out) {
  if (auto it = table.find(lookup_key(token)); it != table.end()) {
    out += with_casing(token, it->second);
    return;
  }
  // Retry without surrounding quote marks: "'isn't'" -> "'is not'".
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end) {
    const CodePoint cp = decode(token, begin);
    if (!detail::is_apostrophe(cp.value)) break;
    begin += cp.bytes;
  }
  while (end > begin) {
    std::size_t last = end - 1;
    while (last > begin && (static_cast<unsigned char>(token[last]) & 0xC0) == 0x80) --last;
    if (!detail::is_apostrophe(decode(token, last).value)) break;
    end = last;
  }
  if (begin > 0 || end < token.size()) {
    const std::string_view core = token.substr(begin, end - begin);
    if (auto it = table.find(lookup_key(core)); !core.empty() && it != table.end()) {
      out.append(token.substr(0, begin));
      out += with_casing(core, it->second);
      out.append(token.substr(end));
      return;
    }
  }
  out.append(token);
}

}  // namespace

std::string expand_contractions(std::string_view text, const ContractionTable& table) {
  std::string out;
  out.reserve(text.size() + 16);
  std::size_t pos = 0;
  while (pos < text.size()) {
    CodePoint cp = decode(text, pos);
    if (cp.value == '#') {
      // Hashtag bodies are left to the hashtag stage, which expands its own output.
      std::size_t end = pos + 1;
      while (end < text.size() && detail::is_hashtag_char((cp = decode(text, end)).value)) end += cp.bytes;
      out.append(text.substr(pos, end - pos));
      pos = end;
      continue;
    }
    if (!is_word_char(cp.value)) {
      out.append(text.substr(pos, cp.bytes));
      pos += cp.bytes;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && is_word_char((cp = decode(text, end)).value)) end += cp.bytes;
    expand_token(text.substr(pos, end - pos), table, out);
    pos = end;
  }
  return out;
}

}  // namespace ofs::text
