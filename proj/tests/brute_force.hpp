#pragma once

// Exhaustive reference implementations. They share no code with the library's solvers and
// exist only to cross-check them.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphr::testing {

/// Minimum closed tour over all (n-1)! orders starting at node 0.
std::int64_t tsp_brute_force(const std::vector<std::vector<std::int64_t>>& dist);

/// A labelled graph as the brute-force GED sees it.
struct LabelledGraph {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
};

/// Edit cost of one padded mapping, computed from dense adjacency matrices.
std::int64_t ged_mapping_cost(const LabelledGraph& a, const LabelledGraph& b, const std::vector<int>& mapping);

/// Minimum over every permutation of max(|A|, |B|) slots.
std::int64_t ged_brute_force(const LabelledGraph& a, const LabelledGraph& b);

/// Largest vertex subset that is pairwise adjacent, by checking all 2^n subsets.
int mcp_brute_force(int n, const std::vector<std::pair<int, int>>& edges);

/// True iff some substring of length >= min_length occurs >= min_repeats times.
/// A longer repeated substring implies its length-min_length prefix repeats at least as often,
/// so counting fixed-length windows in a hash map is enough.
bool repetition_brute_force(std::string_view text, int min_length, int min_repeats);

struct BruteRepetition {
  bool detected = false;
  std::int64_t count = 0;
  std::int64_t length = 0;
  std::int64_t start = -1;
};

/// Best (count, length, earliest start) over every substring with length >= min_length and
/// count >= min_repeats. Cubic; only for short strings.
BruteRepetition repetition_best_brute_force(std::string_view text, int min_length, int min_repeats);

}  // namespace graphr::testing
