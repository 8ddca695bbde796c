#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the normalizer stages.
namespace ofs::text::detail {

struct CodePoint {
  char32_t value;     // U+FFFD-free: invalid bytes decode to kInvalid
  std::size_t bytes;  // >= 1
};

inline constexpr char32_t kInvalid = 0xFFFFFFFF;

/// Decodes the code point starting at text[pos]; an invalid sequence yields
/// kInvalid with a length of one byte.
CodePoint decode(std::string_view text, std::size_t pos);
void append_utf8(std::string& out, char32_t cp);

/// Unicode white space, plus characters that fold to nothing but spaces.
bool is_space(char32_t cp);
bool is_ascii_alnum(char32_t cp);
bool is_combining_mark(char32_t cp);
/// ASCII letters, the Latin-1 and Latin Extended letters, Latin Extended
/// Additional, and combining diacritics.
bool is_latin_letter(char32_t cp);
bool is_apostrophe(char32_t cp);

/// ASCII letters/digits/spaces a code point folds to, or empty when its
/// stripped decomposition is anything else (or it has none).
std::string ascii_folding(char32_t cp);

/// One source code point and what fold_accents turns it into (possibly
/// nothing, for a combining mark after an ASCII base).
struct FoldUnit {
  std::size_t begin;
  std::size_t end;
  std::string text;
};

std::vector<FoldUnit> fold_units(std::string_view text);

/// Letters, digits, apostrophes, and anything that folds to ASCII letters or
/// digits. Contraction spans and emoticon word boundaries both use this.
bool is_word_like(char32_t cp);

/// Characters that continue a hashtag body after '#'.
bool is_hashtag_char(char32_t cp);

char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);

std::string ascii_lower(std::string_view s);

}  // namespace ofs::text::detail
