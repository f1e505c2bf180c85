#include "graphr/curriculum.hpp"

#include <map>

#include "graphr/errors.hpp"
#include "graphr/instance_gen.hpp"
#include "graphr/length_counter.hpp"

namespace graphr {

namespace {

constexpr std::array<CurriculumStage, kCurriculumLevels> kStages{{
    {1, 5, {5, 6}, 4096, 1.0, kSamplesPerTask},
    {2, 6, {7, 8}, 5120, 1.0, kSamplesPerTask},
    {3, 7, {9, 10}, 6144, 1.0, kSamplesPerTask},
    {4, 8, {11, 12}, 7168, 1.1, kSamplesPerTask},
    {5, 9, {13, 14}, 8192, 1.2, kSamplesPerTask},
}};

}  // namespace

CurriculumStage stage_config(int level) {
  if (level < 1 || level > kCurriculumLevels)
    throw RangeError("curriculum level " + std::to_string(level) + " outside [1, 5]");
  return kStages[level - 1];
}

std::vector<ProblemInstance> build_stage_dataset(int level, Seed master_seed) {
  const CurriculumStage stage = stage_config(level);
  std::vector<ProblemInstance> out;
  out.reserve(3 * static_cast<std::size_t>(stage.samples_per_task));
  for (TaskKind task : kAllTasks) {
    GenerationConfig config;
    config.task = task;
    config.master_seed = master_seed;
    if (task == TaskKind::MCP) {
      const auto [lo, hi] = stage.mcp_nodes;
      const int sizes = hi - lo + 1;
      for (int n = lo; n <= hi; ++n) {
        // Any remainder goes to the smallest sizes.
        config.per_size_counts[n] = stage.samples_per_task / sizes + (n - lo < stage.samples_per_task % sizes);
      }
    } else {
      config.per_size_counts[stage.tsp_ged_nodes] = stage.samples_per_task;
    }
    auto batch = generate_batch(config);
    std::move(batch.begin(), batch.end(), std::back_inserter(out));
  }
  return out;
}

ScheduleOrder parse_schedule_order(std::string_view name) {
  if (name == "curriculum") return ScheduleOrder::Curriculum;
  if (name == "anti") return ScheduleOrder::Anti;
  if (name == "mixed") return ScheduleOrder::Mixed;
  throw InputError("unknown schedule order '" + std::string(name) + "'");
}

std::vector<SchedulePhase> schedule(ScheduleOrder order) {
  std::vector<SchedulePhase> phases;
  switch (order) {
    case ScheduleOrder::Curriculum:
      for (int level = 1; level <= kCurriculumLevels; ++level) phases.push_back({stage_config(level), {level}});
      break;
    case ScheduleOrder::Anti:
      for (int level = kCurriculumLevels; level >= 1; --level) phases.push_back({stage_config(level), {level}});
      break;
    case ScheduleOrder::Mixed: {
      SchedulePhase all{stage_config(kCurriculumLevels), {}};
      for (int level = 1; level <= kCurriculumLevels; ++level) all.levels.push_back(level);
      phases.push_back(std::move(all));
      break;
    }
  }
  return phases;
}

nlohmann::json stage_manifest(const CurriculumStage& stage, const std::vector<ProblemInstance>& dataset) {
  std::map<std::string, std::map<std::string, int>> counts;
  for (const auto& inst : dataset) ++counts[std::string(to_string(task_of(inst)))][std::to_string(size_of(inst))];
  return {{"level", stage.level},
          {"budget", stage.max_response_length},
          {"length_counter", kDefaultLengthCounter},
          {"temperature", stage.temperature},
          {"tsp_ged_nodes", stage.tsp_ged_nodes},
          {"mcp_nodes", {stage.mcp_nodes.first, stage.mcp_nodes.second}},
          {"samples_per_task", stage.samples_per_task},
          {"counts", counts}};
}

}  // namespace graphr
