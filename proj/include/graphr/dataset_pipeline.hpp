#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphr/instance.hpp"
#include "graphr/instance_gen.hpp"
#include "graphr/verify.hpp"

namespace graphr {

inline constexpr Seed kSftSeed = 43;

/// "sft" or "rl-level-k".
struct Split {
  int rl_level = 0;  // 0 means SFT
  std::string name() const { return rl_level == 0 ? "sft" : "rl-level-" + std::to_string(rl_level); }
  bool operator==(const Split&) const = default;
};

struct DatasetRecord {
  ProblemInstance instance;
  std::string prompt;
  std::optional<std::string> response;
  std::optional<VerificationOutcome> outcome;
  Split split{};
};

/// Record with prompt = render(instance).
DatasetRecord make_record(ProblemInstance instance, std::optional<std::string> response = std::nullopt,
                          Split split = {});

nlohmann::json to_json(const DatasetRecord& record);

struct Rejection {
  std::string instance_id;
  OutcomeKind reason = OutcomeKind::ParseFailure;
  /// Parse failure reason or feasibility violation, empty for suboptimal.
  std::string detail;
  double achieved = 0.0;
  double optimal = 0.0;
};

struct RejectionLog {
  std::size_t parse_failures = 0;
  std::size_t infeasible = 0;
  std::size_t suboptimal = 0;
  /// Extra optimal responses dropped under FilterOptions::unique_per_instance.
  std::size_t duplicates_dropped = 0;
  std::vector<Rejection> entries;

  std::size_t rejected() const { return parse_failures + infeasible + suboptimal; }
};

nlohmann::json to_json(const RejectionLog& log);

struct FilterResult {
  std::vector<DatasetRecord> retained;
  RejectionLog log;
};

struct FilterOptions {
  /// Keep at most one optimal response per instance id.
  bool unique_per_instance = false;
};

/// Looks up the oracle optimum for an instance id.
using OracleLookup = std::function<double(const ProblemInstance&)>;

/// Keeps exactly the records whose response verifies Optimal; input order is preserved.
/// Records without a response count as parse failures.
FilterResult rejection_filter(std::vector<DatasetRecord> records, const OracleLookup& oracle,
                              const FilterOptions& options = {});

/// TSP and GED: 500 per size 4..9. MCP: 250 per size 4..15. 9000 in total.
std::vector<GenerationConfig> sft_generation_configs(Seed master_seed = kSftSeed);
std::vector<ProblemInstance> assemble_sft_corpus(Seed master_seed = kSftSeed);

/// One instance record per line, LF-terminated.
std::string manifest_jsonl(const std::vector<ProblemInstance>& corpus);

}  // namespace graphr
