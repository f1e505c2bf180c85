#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphr/task.hpp"

namespace graphr {

/// Closed route of node names; first == last.
struct TspRoute {
  std::vector<std::string> nodes;
  bool operator==(const TspRoute&) const = default;
};

/// Position = atom id in molecule A, value = atom id in molecule B.
struct GedMapping {
  std::vector<int> targets;
  bool operator==(const GedMapping&) const = default;
};

struct McpClique {
  std::vector<std::string> nodes;
  bool operator==(const McpClique&) const = default;
};

/// The variant index matches TaskKind.
using StructuredSolution = std::variant<TspRoute, GedMapping, McpClique>;

inline TaskKind task_of(const StructuredSolution& s) { return static_cast<TaskKind>(s.index()); }

struct ParseFailure {
  std::string reason;
  std::optional<std::string> span;
  bool operator==(const ParseFailure&) const = default;
};

using ExtractionResult = std::variant<StructuredSolution, ParseFailure>;

/// Returns the last bracketed list in `response` whose elements all fit the task's grammar.
ExtractionResult extract(TaskKind task, std::string_view response);

/// Renders a solution the way the prompts ask for it, e.g. "[A, B, C, A]".
std::string format_solution(const StructuredSolution& solution);

nlohmann::json to_json(const StructuredSolution& solution);
StructuredSolution solution_from_json(TaskKind task, const nlohmann::json& j);

}  // namespace graphr
