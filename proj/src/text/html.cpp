#include <array>
#include <charconv>
#include <string>
#include <utility>

#include "ofs/normalizer.hpp"
#include "unicode.hpp"

namespace ofs::text {
namespace {

constexpr std::array<std::pair<std::string_view, char32_t>, 6> kNamedEntities{{
    {"amp", U'&'},
    {"lt", U'<'},
    {"gt", U'>'},
    {"quot", U'"'},
    {"apos", U'\''},
    {"nbsp", 0xA0},
}};

std::string remove_tags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('<', pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = text.find('>', open + 1);
    if (close == std::string_view::npos) break;
    out.append(text.substr(pos, open - pos));
    pos = close + 1;
  }
  out.append(text.substr(pos));
  return out;
}

// Parses the entity body between '&' and ';'.
bool entity_code_point(std::string_view body, char32_t& cp) {
  if (body.size() >= 2 && body[0] == '#') {
    int base = 10;
    std::string_view digits = body.substr(1);
    if (digits[0] == 'x' || digits[0] == 'X') {
      base = 16;
      digits.remove_prefix(1);
    }
    if (digits.empty() || digits.size() > 8) return false;
    std::uint32_t value = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
    if (ec != std::errc{} || end != digits.data() + digits.size()) return false;
    if (value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return false;
    cp = value;
    return true;
  }
  for (const auto& [name, value] : kNamedEntities) {
    if (body == name) {
      cp = value;
      return true;
    }
  }
  return false;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t amp = text.find('&', pos);
    if (amp == std::string_view::npos) break;
    out.append(text.substr(pos, amp - pos));
    const std::size_t semi = text.find(';', amp + 1);
    char32_t cp = 0;
    if (semi != std::string_view::npos && semi - amp <= 12 &&
        entity_code_point(text.substr(amp + 1, semi - amp - 1), cp)) {
      detail::append_utf8(out, cp);
      pos = semi + 1;
    } else {
      out.push_back('&');
      pos = amp + 1;
    }
  }
  out.append(text.substr(pos));
  return out;
}

}  // namespace

std::string strip_html(std::string_view text) {
  // Each round strictly shortens a changed string, so this terminates.
  std::string current(text);
  while (true) {
    std::string next = decode_entities(remove_tags(current));
    if (next == current) return current;
    current = std::move(next);
  }
}

}  // namespace ofs::text
