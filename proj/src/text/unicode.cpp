#include "unicode.hpp"

#include <algorithm>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "ofs/normalizer.hpp"

namespace ofs::text {
namespace detail {

CodePoint decode(std::string_view text, std::size_t pos) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  auto i = static_cast<std::int32_t>(pos);
  UChar32 c;
  U8_NEXT(s, i, length, c);
  if (c < 0) return {kInvalid, 1};
  return {static_cast<char32_t>(c), static_cast<std::size_t>(i) - pos};
}

void append_utf8(std::string& out, char32_t cp) {
  std::uint8_t buf[U8_MAX_LENGTH];
  std::int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

bool is_space(char32_t cp) {
  if (cp < 0x80) return cp == ' ' || (cp >= '\t' && cp <= '\r');
  if (cp == kInvalid) return false;
  if (u_isUWhiteSpace(static_cast<UChar32>(cp))) return true;
  // Spacing accents such as U+00B4 fold to a bare space.
  const std::string folded = ascii_folding(cp);
  return !folded.empty() && folded.find_first_not_of(' ') == std::string::npos;
}

bool is_ascii_alnum(char32_t cp) {
  return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

bool is_combining_mark(char32_t cp) {
  return cp >= 0x80 && cp != kInvalid && u_charType(static_cast<UChar32>(cp)) == U_NON_SPACING_MARK;
}

bool is_latin_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  return (cp >= 0x300 && cp <= 0x36F) || (cp >= 0x1E00 && cp <= 0x1EFF);
}

bool is_hashtag_char(char32_t cp) { return cp == '_' || is_ascii_alnum(cp) || is_latin_letter(cp); }

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019 || cp == 0x2018 || cp == 0x02BC; }

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  if (cp == kInvalid) return cp;
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

char32_t to_upper(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') ? cp - 32 : cp;
  if (cp == kInvalid) return cp;
  return static_cast<char32_t>(u_toupper(static_cast<UChar32>(cp)));
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  return out;
}

}  // namespace detail

namespace {

const icu::Normalizer2& nfkd() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKDInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFKD normalizer unavailable");
    return n;
  }();
  return *instance;
}

}  // namespace

std::string detail::ascii_folding(char32_t cp) {
  icu::UnicodeString decomposition;
  if (!nfkd().getDecomposition(static_cast<UChar32>(cp), decomposition)) return {};
  std::string folded;
  for (std::int32_t i = 0; i < decomposition.length();) {
    const UChar32 c = decomposition.char32At(i);
    i += U16_LENGTH(c);
    if (u_charType(c) == U_NON_SPACING_MARK) continue;
    const auto u = static_cast<char32_t>(c);
    if (!(detail::is_ascii_alnum(u) || u == ' ')) return {};
    folded.push_back(static_cast<char>(u));
  }
  return folded;
}

bool detail::is_word_like(char32_t cp) {
  if (is_ascii_alnum(cp) || is_latin_letter(cp) || is_apostrophe(cp)) return true;
  if (cp < 0x80 || cp == kInvalid) return false;
  const std::string folded = ascii_folding(cp);
  return !folded.empty() && std::all_of(folded.begin(), folded.end(), [](char c) { return c != ' '; });
}

std::vector<detail::FoldUnit> detail::fold_units(std::string_view text) {
  std::vector<FoldUnit> units;
  units.reserve(text.size());
  // Whether the last emitted character is ASCII, i.e. a base a stray
  // combining mark may be dropped from.
  bool ascii_base = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const CodePoint cp = decode(text, pos);
    FoldUnit unit{pos, pos + cp.bytes, {}};
    if (cp.value < 0x80) {
      unit.text.assign(1, text[pos]);
      ascii_base = true;
    } else if (cp.value == kInvalid) {
      unit.text.assign(1, text[pos]);
      ascii_base = false;
    } else if (is_combining_mark(cp.value)) {
      if (!ascii_base) unit.text.assign(text.substr(pos, cp.bytes));
    } else if (std::string folded = ascii_folding(cp.value); !folded.empty()) {
      unit.text = std::move(folded);
      ascii_base = true;
    } else {
      unit.text.assign(text.substr(pos, cp.bytes));
      ascii_base = false;
    }
    units.push_back(std::move(unit));
    pos += cp.bytes;
  }
  return units;
}

std::string fold_accents(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const auto& unit : detail::fold_units(text)) out += unit.text;
  return out;
}

}  // namespace ofs::text
