#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphr/instance.hpp"

namespace graphr {

inline constexpr int kCurriculumLevels = 5;
inline constexpr int kSamplesPerTask = 3000;
inline constexpr Seed kRlSeed = 45;

struct CurriculumStage {
  int level = 1;
  /// Exact node count for TSP and GED.
  int tsp_ged_nodes = 5;
  /// Inclusive node-count range for MCP.
  std::pair<int, int> mcp_nodes{5, 6};
  /// Token budget; the unit is the trainer's tokenizer, recorded here as an opaque integer.
  int max_response_length = 4096;
  double temperature = 1.0;
  int samples_per_task = kSamplesPerTask;
};

/// Throws RangeError unless 1 <= level <= 5.
CurriculumStage stage_config(int level);

/// 3000 instances per task at the stage's sizes; MCP split evenly across its size range.
std::vector<ProblemInstance> build_stage_dataset(int level, Seed master_seed = kRlSeed);

enum class ScheduleOrder { Curriculum, Anti, Mixed };

ScheduleOrder parse_schedule_order(std::string_view name);

/// One training phase: the stage hyper-parameters and the levels whose instances it draws from.
struct SchedulePhase {
  CurriculumStage stage;
  std::vector<int> levels;
};

/// Curriculum: levels 1..5 in order. Anti: 5..1. Mixed: a single phase over all levels, run with
/// the last stage's budget and temperature.
std::vector<SchedulePhase> schedule(ScheduleOrder order);

/// {level, budget, temperature, tsp_ged_nodes, mcp_nodes, counts, length_counter}
nlohmann::json stage_manifest(const CurriculumStage& stage, const std::vector<ProblemInstance>& dataset);

}  // namespace graphr
