#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace ofs::tsv {

std::vector<std::string_view> split(std::string_view line, char sep = '\t');

/// Line reader that strips a trailing '\r' and counts lines (1-based).
class Reader {
 public:
  explicit Reader(const std::filesystem::path& path);

  bool next(std::string& line);
  std::size_t line_number() const noexcept { return line_no_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

/// Throws MalformedRow mentioning the file and line.
std::uint64_t parse_id(std::string_view field, const Reader& at);
double parse_real(std::string_view field, const Reader& at);

}  // namespace ofs::tsv
