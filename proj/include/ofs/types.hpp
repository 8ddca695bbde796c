#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace ofs {

using ExampleId = std::uint64_t;

/// Sub-task A: NOT/OFF. Sub-task C: IND/GRP/OTH.
enum class Subtask { A, C };

/// Index into the ordered class list of a subtask.
///   A: 0 = NOT, 1 = OFF   (the binary head's probability is P(OFF))
///   C: 0 = IND, 1 = GRP, 2 = OTH
using ClassId = int;

std::span<const std::string_view> class_names(Subtask subtask);
std::size_t class_count(Subtask subtask);

/// Output units of a head trained for `subtask` (1 sigmoid unit for A, 3 softmax units for C).
std::size_t output_dim(Subtask subtask);

/// Case-insensitive label parse; throws UnknownLabel.
ClassId parse_label(Subtask subtask, std::string_view token);
std::string_view label_name(Subtask subtask, ClassId id);

Subtask parse_subtask(std::string_view token);
std::string_view to_string(Subtask subtask);

}  // namespace ofs
