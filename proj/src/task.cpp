#include "graphr/task.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "graphr/errors.hpp"

namespace graphr {

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::TSP: return "tsp";
    case TaskKind::GED: return "ged";
    case TaskKind::MCP: return "mcp";
  }
  return "unknown";
}

TaskKind parse_task(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (TaskKind t : kAllTasks) {
    if (lower == to_string(t)) return t;
  }
  throw InputError("unknown task '" + std::string(name) + "'");
}

}  // namespace graphr
