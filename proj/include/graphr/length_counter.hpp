#pragma once

#include <cstddef>
#include <string_view>

namespace graphr {

/// Name reported alongside lengths so readers know the unit.
inline constexpr std::string_view kDefaultLengthCounter = "whitespace_tokens";

/// Number of maximal runs of non-whitespace bytes.
std::size_t whitespace_token_count(std::string_view text);

}  // namespace graphr
