#include "ofs/tsv.hpp"

#include <charconv>

#include "ofs/error.hpp"

namespace ofs::tsv {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

Reader::Reader(const std::filesystem::path& path) : path_(path), in_(path) {
  if (!in_) throw Error(ErrorCode::Io, "cannot open " + path.string());
}

bool Reader::next(std::string& line) {
  if (!std::getline(in_, line)) return false;
  ++line_no_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::uint64_t parse_id(std::string_view field, const Reader& at) {
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size())
    throw Error(ErrorCode::MalformedRow, at.path().string() + " row " + std::to_string(at.line_number()) +
                                             ": bad example id '" + std::string(field) + "'");
  return value;
}

double parse_real(std::string_view field, const Reader& at) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size())
    throw Error(ErrorCode::MalformedRow, at.path().string() + " row " + std::to_string(at.line_number()) +
                                             ": bad number '" + std::string(field) + "'");
  return value;
}

}  // namespace ofs::tsv
