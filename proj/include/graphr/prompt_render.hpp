#pragma once

#include <string>

#include "graphr/instance.hpp"

namespace graphr {

/// The task prompt for `instance`, LF line endings, no trailing newline.
/// TSP distance lines and MCP collaborations follow node-list order with i < j.
std::string render(const ProblemInstance& instance);

/// Constant system prompt used during RL; carries the <think>/<answer> format clause.
const std::string& system_prompt();

}  // namespace graphr
