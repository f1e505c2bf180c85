#include <doctest.h>

#include <map>
#include <set>

#include "graphr/curriculum.hpp"
#include "graphr/dataset_pipeline.hpp"
#include "graphr/errors.hpp"
#include "graphr/instance_gen.hpp"
#include "graphr/length_counter.hpp"
#include "graphr/prompt_render.hpp"

using namespace graphr;

TEST_SUITE("curriculum") {
  TEST_CASE("first and last stages") {
    const auto s1 = stage_config(1);
    CHECK(s1.max_response_length == 4096);
    CHECK(s1.temperature == 1.0);
    CHECK(s1.tsp_ged_nodes == 5);
    CHECK(s1.mcp_nodes == std::pair{5, 6});
    CHECK(s1.samples_per_task == 3000);

    const auto s5 = stage_config(5);
    CHECK(s5.max_response_length == 8192);
    CHECK(s5.temperature == 1.2);
    CHECK(s5.tsp_ged_nodes == 9);
    CHECK(s5.mcp_nodes == std::pair{13, 14});
  }

  TEST_CASE("out-of-range levels") {
    CHECK_THROWS_AS(stage_config(0), RangeError);
    CHECK_THROWS_AS(stage_config(6), RangeError);
    CHECK_THROWS_AS(build_stage_dataset(0), RangeError);
  }

  TEST_CASE("schedule is monotone") {
    for (int level = 2; level <= kCurriculumLevels; ++level) {
      const auto prev = stage_config(level - 1), cur = stage_config(level);
      CHECK(cur.level == level);
      CHECK(cur.max_response_length > prev.max_response_length);
      CHECK(cur.temperature >= prev.temperature);
      CHECK(cur.tsp_ged_nodes > prev.tsp_ged_nodes);
      CHECK(cur.mcp_nodes.first > prev.mcp_nodes.second);
    }
  }

  TEST_CASE("level 3 dataset") {
    const auto data = build_stage_dataset(3, 45);
    CHECK(data.size() == 9000);
    std::map<TaskKind, std::map<int, int>> hist;
    for (const auto& inst : data) ++hist[task_of(inst)][size_of(inst)];
    CHECK(hist[TaskKind::MCP] == std::map<int, int>{{9, 1500}, {10, 1500}});
    CHECK(hist[TaskKind::TSP] == std::map<int, int>{{7, 3000}});
    CHECK(hist[TaskKind::GED] == std::map<int, int>{{7, 3000}});
  }

  TEST_CASE("stage datasets are deterministic") {
    CHECK(manifest_jsonl(build_stage_dataset(1, 45)) == manifest_jsonl(build_stage_dataset(1, 45)));
    CHECK(manifest_jsonl(build_stage_dataset(1, 45)) != manifest_jsonl(build_stage_dataset(1, 46)));
  }

  TEST_CASE("all five levels together are unique") {
    std::set<std::string> keys;
    std::size_t total = 0;
    for (int level = 1; level <= kCurriculumLevels; ++level) {
      const auto data = build_stage_dataset(level, 45);
      total += data.size();
      for (const auto& inst : data) keys.insert(canonical_key(inst));
    }
    CHECK(total == 45000);
    CHECK(keys.size() == 45000);
  }

  TEST_CASE("prompts leave most of the response budget free") {
    for (int level = 1; level <= kCurriculumLevels; ++level) {
      const auto stage = stage_config(level);
      std::size_t longest = 0;
      for (const auto& inst : build_stage_dataset(level, 45)) longest = std::max(longest, whitespace_token_count(render(inst)));
      CHECK_MESSAGE(longest * 4 < static_cast<std::size_t>(stage.max_response_length), "level " << level);
    }
  }

  TEST_CASE("schedule presets") {
    const auto forward = schedule(ScheduleOrder::Curriculum);
    REQUIRE(forward.size() == 5);
    CHECK(forward.front().levels == std::vector<int>{1});
    CHECK(forward.back().stage.max_response_length == 8192);

    const auto anti = schedule(parse_schedule_order("anti"));
    REQUIRE(anti.size() == 5);
    CHECK(anti.front().levels == std::vector<int>{5});
    CHECK(anti.front().stage.temperature == 1.2);

    const auto mixed = schedule(ScheduleOrder::Mixed);
    REQUIRE(mixed.size() == 1);
    CHECK(mixed.front().levels == std::vector<int>{1, 2, 3, 4, 5});
    CHECK_THROWS_AS(parse_schedule_order("random"), InputError);
  }

  TEST_CASE("stage manifest") {
    const auto stage = stage_config(2);
    const auto j = stage_manifest(stage, build_stage_dataset(2, 45));
    CHECK(j.at("level") == 2);
    CHECK(j.at("budget") == 5120);
    CHECK(j.at("temperature") == 1.0);
    CHECK(j.at("counts").at("mcp").at("7") == 1500);
    CHECK(j.at("counts").at("tsp").at("6") == 3000);
  }
}
