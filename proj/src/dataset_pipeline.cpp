#include "graphr/dataset_pipeline.hpp"

#include <set>

#include "graphr/prompt_render.hpp"

namespace graphr {

DatasetRecord make_record(ProblemInstance instance, std::optional<std::string> response, Split split) {
  std::string prompt = render(instance);
  return {std::move(instance), std::move(prompt), std::move(response), std::nullopt, split};
}

nlohmann::json to_json(const DatasetRecord& record) {
  nlohmann::json j{{"instance_id", id_of(record.instance)},
                   {"split", record.split.name()},
                   {"instance", to_json(record.instance)},
                   {"prompt", record.prompt}};
  if (record.response) j["response"] = *record.response;
  if (record.outcome) j["outcome"] = to_json(*record.outcome);
  return j;
}

nlohmann::json to_json(const RejectionLog& log) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : log.entries) {
    nlohmann::json j{{"instance_id", e.instance_id}, {"reason", to_string(e.reason)}};
    if (e.reason == OutcomeKind::Suboptimal) {
      j["achieved"] = e.achieved;
      j["optimal"] = e.optimal;
    } else {
      j["detail"] = e.detail;
    }
    entries.push_back(std::move(j));
  }
  return {{"counts",
           {{"parse_failure", log.parse_failures},
            {"infeasible", log.infeasible},
            {"suboptimal", log.suboptimal},
            {"rejected", log.rejected()},
            {"duplicates_dropped", log.duplicates_dropped}}},
          {"entries", entries}};
}

FilterResult rejection_filter(std::vector<DatasetRecord> records, const OracleLookup& oracle,
                              const FilterOptions& options) {
  FilterResult result;
  std::set<std::string> kept_ids;
  for (auto& record : records) {
    const VerificationOutcome outcome =
        record.response ? verify_response(record.instance, *record.response, oracle(record.instance))
                        : VerificationOutcome::parse_failure("missing response");
    record.outcome = outcome;
    switch (outcome.kind) {
      case OutcomeKind::Optimal:
        if (!options.unique_per_instance || kept_ids.insert(id_of(record.instance)).second)
          result.retained.push_back(std::move(record));
        else
          ++result.log.duplicates_dropped;
        continue;
      case OutcomeKind::ParseFailure: ++result.log.parse_failures; break;
      case OutcomeKind::Infeasible: ++result.log.infeasible; break;
      case OutcomeKind::Suboptimal: ++result.log.suboptimal; break;
    }
    result.log.entries.push_back({id_of(record.instance), outcome.kind, outcome.detail, outcome.achieved, outcome.optimal});
  }
  return result;
}

std::vector<GenerationConfig> sft_generation_configs(Seed master_seed) {
  std::vector<GenerationConfig> configs(3);
  configs[0].task = TaskKind::TSP;
  configs[1].task = TaskKind::GED;
  configs[2].task = TaskKind::MCP;
  for (auto& c : configs) c.master_seed = master_seed;
  for (int n = 4; n <= 9; ++n) {
    configs[0].per_size_counts[n] = 500;
    configs[1].per_size_counts[n] = 500;
  }
  for (int n = 4; n <= 15; ++n) configs[2].per_size_counts[n] = 250;
  return configs;
}

std::vector<ProblemInstance> assemble_sft_corpus(Seed master_seed) {
  std::vector<ProblemInstance> corpus;
  for (const auto& config : sft_generation_configs(master_seed)) {
    auto batch = generate_batch(config);
    std::move(batch.begin(), batch.end(), std::back_inserter(corpus));
  }
  return corpus;
}

std::string manifest_jsonl(const std::vector<ProblemInstance>& corpus) {
  std::string out;
  for (const auto& inst : corpus) {
    out += to_json(inst).dump();
    out += '\n';
  }
  return out;
}

}  // namespace graphr
