#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "core/error.hpp"

namespace hhelm {

/// Trial outcome. The numeric value is the class index used for one-hot
/// targets and score columns.
enum class Label : std::size_t {
  Negativity = 0,
  Positivity = 1,
};

inline constexpr std::size_t kClassCount = 2;
inline constexpr std::array<std::string_view, kClassCount> kClassNames = {"negativity", "positivity"};

constexpr std::size_t class_index(Label l) { return static_cast<std::size_t>(l); }

constexpr std::string_view label_name(Label l) { return kClassNames[class_index(l)]; }

inline std::optional<Label> parse_label(std::string_view name) {
  if (name == kClassNames[0]) return Label::Negativity;
  if (name == kClassNames[1]) return Label::Positivity;
  return std::nullopt;
}

inline Label label_from_index(std::size_t index) {
  if (index >= kClassCount) fail(ErrorCode::InvalidLabel, "class index " + std::to_string(index));
  return static_cast<Label>(index);
}

}  // namespace hhelm
