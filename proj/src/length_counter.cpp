#include "graphr/length_counter.hpp"

namespace graphr {

std::size_t whitespace_token_count(std::string_view text) {
  std::size_t tokens = 0;
  bool in_token = false;
  for (char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!space && !in_token) ++tokens;
    in_token = !space;
  }
  return tokens;
}

}  // namespace graphr
