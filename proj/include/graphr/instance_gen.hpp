#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graphr/instance.hpp"

namespace graphr {

/// Inclusive integer bounds for TSP edge weights, kilometres.
struct WeightRange {
  std::int64_t lo = 500;
  std::int64_t hi = 20000;
};

struct GenerationConfig {
  TaskKind task = TaskKind::TSP;
  /// node count -> number of instances
  std::map<int, int> per_size_counts;
  Seed master_seed = 0;
  /// MCP edge probability, drawn uniformly per instance.
  std::pair<double, double> density_range{0.3, 0.7};
  /// GED unit edits applied to mol_a, drawn uniformly per instance (inclusive).
  std::pair<int, int> edit_budget_range{1, 4};
  WeightRange weights{};
  /// Regeneration attempts per slot before giving up on uniqueness.
  int retry_budget = 64;
};

inline constexpr int kTspMinNodes = 3, kTspMaxNodes = 20;
inline constexpr int kGedMinNodes = 3, kGedMaxNodes = 12;
inline constexpr int kMcpMinNodes = 4, kMcpMaxNodes = 20;

TspInstance generate_tsp(int n, Seed seed, WeightRange weights = {});

/// Edit budget drawn from `edit_budget_range` using the seed.
GedInstance generate_ged(int n, Seed seed, std::pair<int, int> edit_budget_range = {1, 4});
/// Fixed edit budget `k`.
GedInstance generate_ged_with_budget(int n, Seed seed, int k);

McpInstance generate_mcp(int n, Seed seed, double density);

/// Stable per-slot seed: mixes (master_seed, task, n, index, attempt).
Seed derive_seed(Seed master_seed, TaskKind task, int n, int index, int attempt = 0);

/// Exact per-size counts with pairwise distinct canonical keys.
std::vector<ProblemInstance> generate_batch(const GenerationConfig& config);

/// Task tag plus an order-normalised serialisation of the structure.
std::string canonical_key(const ProblemInstance& instance);

/// Bundled pools the generators draw names from.
const std::vector<std::string>& element_pool();
const std::vector<std::string>& first_name_pool();
const std::vector<std::string>& last_name_pool();

}  // namespace graphr
