#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "graphr/instance.hpp"
#include "graphr/verify.hpp"

namespace graphr {

inline constexpr double kOptimalReward = 2.0;
inline constexpr double kHallucinationReward = -1.0;
inline constexpr double kSuboptimalScale = 0.5;
inline constexpr double kRepetitionPenalty = -1.0;
inline constexpr double kFormatReward = 1.0;
inline constexpr int kDefaultMinRepeatLength = 20;
inline constexpr int kDefaultMinRepeats = 5;

struct RepetitionReport {
  bool detected = false;
  std::string substring;
  std::int64_t count = 0;
  std::int64_t length = 0;
  std::int64_t start = -1;
  bool operator==(const RepetitionReport&) const = default;
};

/// Finds a substring of length >= min_length occurring >= min_repeats times (overlaps count).
///
/// Built on a suffix automaton in O(|text|). Every state's strings share one occurrence count,
/// so a state qualifies when its longest string reaches min_length; the reported candidate is
/// that longest string. Among qualifying candidates the highest count wins, then the longer
/// string, then the earlier first occurrence.
RepetitionReport detect_repetition(std::string_view text, int min_length = kDefaultMinRepeatLength,
                                   int min_repeats = kDefaultMinRepeats);

/// 2.0 for Optimal, -1.0 for ParseFailure/Infeasible, a ratio in [0, 0.5] for Suboptimal:
///   TSP (optimal/achieved)^2 * 0.5, GED optimal/achieved * 0.5, MCP achieved/optimal * 0.5.
double quality_reward(const VerificationOutcome& outcome, TaskKind task);

struct FormatOptions {
  /// Require "<think>" at byte 0 instead of after leading whitespace.
  bool strict = false;
};

double format_reward(std::string_view response, FormatOptions options = {});

struct RewardOptions {
  int min_repeat_length = kDefaultMinRepeatLength;
  int min_repeats = kDefaultMinRepeats;
  FormatOptions format{};
};

struct RewardBreakdown {
  double format = 0.0;
  double quality = 0.0;
  double repetition_penalty = 0.0;
  double total = 0.0;
  VerificationOutcome outcome;
  RepetitionReport repetition;
};

RewardBreakdown total_reward(const ProblemInstance& instance, std::string_view response, double oracle_value,
                             const RewardOptions& options = {});

/// {format, quality, repetition_detected, repetition_count?, total}
nlohmann::json reward_json(const RewardBreakdown& breakdown);

}  // namespace graphr
