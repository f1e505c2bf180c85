#pragma once

#include <chrono>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "graphr/answer_extract.hpp"
#include "graphr/instance.hpp"

namespace graphr {

struct OracleResult {
  TaskKind task = TaskKind::TSP;
  /// Tour length in km, edit cost, or clique size.
  double optimal_value = 0.0;
  StructuredSolution witness;
  std::chrono::nanoseconds elapsed{0};
};

inline constexpr int kTspSolverMaxNodes = 16;
inline constexpr int kGedSolverMaxNodes = 9;
inline constexpr int kMcpSolverMaxNodes = 20;

/// Held-Karp. Witness is the lexicographically smallest optimal tour (by node index) from node 0.
OracleResult solve_tsp(const TspInstance& instance);

/// Depth-first branch and bound over padded node mappings; witness is the lexicographically
/// smallest minimising mapping.
OracleResult solve_ged(const GedInstance& instance);

/// Branch and bound with greedy-colouring bounds over 32-bit vertex sets.
OracleResult solve_mcp(const McpInstance& instance);

OracleResult solve(const ProblemInstance& instance);

/// Unit-cost edit count induced by a full mapping over max(|A|, |B|) padded slots.
/// Slots >= |A| (resp. values >= |B|) stand for dummy nodes.
std::int64_t mapping_cost(const Molecule& a, const Molecule& b, const std::vector<int>& mapping);

/// Objective of a feasible solution. Throws ContractViolation on task mismatch or infeasible input.
double objective(const ProblemInstance& instance, const StructuredSolution& solution);

/// {id, optimal_value, witness}
nlohmann::json to_json(const std::string& id, const OracleResult& result);

}  // namespace graphr
