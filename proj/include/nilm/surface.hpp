#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

// Surface-format helpers shared by the task families.
namespace nilm::surface {

inline constexpr std::string_view kPairSeparator = " - ";

/// "abc" -> "a b c".
std::string spaced(std::string_view chars);

/// "a b c" -> "abc". Throws ParseError unless the input alternates single
/// non-space characters and single spaces.
std::string unspaced(std::string_view rendered);

/// Splits "left - right" at the single pair separator.
std::optional<std::pair<std::string_view, std::string_view>> split_pair(std::string_view s);

}  // namespace nilm::surface
