#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "graphr/answer_extract.hpp"
#include "graphr/instance.hpp"

namespace graphr {

enum class OutcomeKind { ParseFailure, Infeasible, Suboptimal, Optimal };

std::string_view to_string(OutcomeKind kind);
OutcomeKind parse_outcome_kind(std::string_view name);

/// Result of the extract -> feasibility -> correctness pipeline.
/// ParseFailure and Infeasible together are the "hallucinated" class.
struct VerificationOutcome {
  OutcomeKind kind = OutcomeKind::ParseFailure;
  /// Parse failure reason or feasibility violation.
  std::string detail;
  double achieved = 0.0;
  double optimal = 0.0;

  static VerificationOutcome parse_failure(std::string reason);
  static VerificationOutcome infeasible(std::string violation);
  static VerificationOutcome suboptimal(double achieved, double optimal);
  static VerificationOutcome optimal_at(double value);

  bool feasible() const { return kind == OutcomeKind::Suboptimal || kind == OutcomeKind::Optimal; }
  bool hallucinated() const { return !feasible(); }
  bool operator==(const VerificationOutcome&) const = default;
};

/// {kind, achieved?, optimal?, violation? | reason?}
nlohmann::json to_json(const VerificationOutcome& outcome);
VerificationOutcome outcome_from_json(const nlohmann::json& j);

/// std::nullopt when feasible, otherwise a human-readable violation.
/// Throws ContractViolation when the solution's task differs from the instance's.
std::optional<std::string> check_feasibility(const ProblemInstance& instance, const StructuredSolution& solution);

/// Compares objective(solution) against the oracle optimum.
/// Throws OracleBugError if the solution is strictly better than `oracle_value`.
VerificationOutcome check_correctness(const ProblemInstance& instance, const StructuredSolution& solution,
                                      double oracle_value);

VerificationOutcome verify_response(const ProblemInstance& instance, std::string_view response, double oracle_value);

}  // namespace graphr
