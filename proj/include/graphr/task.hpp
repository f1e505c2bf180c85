#pragma once

#include <array>
#include <string>
#include <string_view>

namespace graphr {

enum class TaskKind { TSP, GED, MCP };

inline constexpr std::array<TaskKind, 3> kAllTasks{TaskKind::TSP, TaskKind::GED, TaskKind::MCP};

/// Lower-case wire name ("tsp", "ged", "mcp").
std::string_view to_string(TaskKind task);

/// Case-insensitive parse of a wire name. Throws InputError on anything else.
TaskKind parse_task(std::string_view name);

/// TSP and GED minimise their objective, MCP maximises it.
constexpr bool minimizes(TaskKind task) { return task != TaskKind::MCP; }

}  // namespace graphr
