#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphr/verify.hpp"

namespace graphr {

struct Attempt {
  VerificationOutcome outcome;
  /// Response length under the configured counter, when known.
  std::optional<double> length;
};

struct ProblemAttempts {
  std::string problem_id;
  std::optional<TaskKind> task;
  std::vector<Attempt> attempts;
};

struct EvalMetrics {
  std::size_t problems = 0;
  /// Attempt 1 is Optimal.
  double accuracy = 0.0;
  /// Attempt 1 is Suboptimal or Optimal; parse failures count as infeasible.
  double feasibility = 0.0;
  /// Mean over problems of (#Optimal among the first k) / k.
  double avg_at_k = 0.0;
  /// Fraction of problems with an Optimal among the first k.
  double pass_at_k = 0.0;
  std::optional<double> mean_length;
};

struct EvalReport {
  int k = 1;
  std::string length_counter;
  EvalMetrics overall;
  std::map<TaskKind, EvalMetrics> per_task;
};

/// Throws InputError if any problem has fewer than k attempts or k < 1.
EvalReport score_run(const std::vector<ProblemAttempts>& problems, int k);

nlohmann::json to_json(const EvalReport& report);

}  // namespace graphr
