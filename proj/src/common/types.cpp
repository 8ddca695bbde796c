#include "ofs/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "ofs/error.hpp"

namespace ofs {
namespace {

constexpr std::array<std::string_view, 2> kSubtaskA{"NOT", "OFF"};
constexpr std::array<std::string_view, 3> kSubtaskC{"IND", "GRP", "OTH"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::span<const std::string_view> class_names(Subtask subtask) {
  if (subtask == Subtask::A) return kSubtaskA;
  return kSubtaskC;
}

std::size_t class_count(Subtask subtask) { return class_names(subtask).size(); }

std::size_t output_dim(Subtask subtask) { return subtask == Subtask::A ? 1 : 3; }

ClassId parse_label(Subtask subtask, std::string_view token) {
  auto names = class_names(subtask);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (iequals(names[i], token)) return static_cast<ClassId>(i);
  throw Error(ErrorCode::UnknownLabel,
              "'" + std::string(token) + "' is not a sub-task " + std::string(to_string(subtask)) + " label");
}

std::string_view label_name(Subtask subtask, ClassId id) {
  auto names = class_names(subtask);
  if (id < 0 || static_cast<std::size_t>(id) >= names.size())
    throw Error(ErrorCode::UnknownLabel, "class index " + std::to_string(id) + " out of range");
  return names[static_cast<std::size_t>(id)];
}

Subtask parse_subtask(std::string_view token) {
  if (iequals(token, "A")) return Subtask::A;
  if (iequals(token, "C")) return Subtask::C;
  throw Error(ErrorCode::Config, "unknown sub-task '" + std::string(token) + "' (expected A or C)");
}

std::string_view to_string(Subtask subtask) { return subtask == Subtask::A ? "A" : "C"; }

}  // namespace ofs
