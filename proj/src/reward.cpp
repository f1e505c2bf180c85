#include "graphr/reward.hpp"

#include <algorithm>
#include <tuple>

#include "graphr/errors.hpp"
#include "graphr/suffix_automaton.hpp"

namespace graphr {

RepetitionReport detect_repetition(std::string_view text, int min_length, int min_repeats) {
  min_length = std::max(min_length, 1);
  RepetitionReport best;
  if (text.empty()) return best;
  const SuffixAutomaton sam(text);

  std::size_t chosen = 0;
  auto key = [&](std::size_t i) {
    // Larger is better on every component.
    return std::make_tuple(sam.occurrences(i), sam.len(i), -(sam.first_end(i) - sam.len(i) + 1));
  };
  for (std::size_t i = 1; i < sam.size(); ++i) {
    if (sam.occurrences(i) < min_repeats || sam.len(i) < min_length) continue;
    const std::int32_t effective = std::max(sam.len(sam.link(i)) + 1, min_length);
    if (effective > sam.len(i)) continue;
    if (chosen == 0 || key(i) > key(chosen)) chosen = i;
  }
  if (chosen == 0) return best;
  best.detected = true;
  best.count = sam.occurrences(chosen);
  best.length = sam.len(chosen);
  best.start = sam.first_end(chosen) - sam.len(chosen) + 1;
  best.substring = std::string(text.substr(static_cast<std::size_t>(best.start), static_cast<std::size_t>(best.length)));
  return best;
}

double quality_reward(const VerificationOutcome& outcome, TaskKind task) {
  switch (outcome.kind) {
    case OutcomeKind::Optimal: return kOptimalReward;
    case OutcomeKind::ParseFailure:
    case OutcomeKind::Infeasible: return kHallucinationReward;
    case OutcomeKind::Suboptimal: break;
  }
  const double achieved = outcome.achieved, optimal = outcome.optimal;
  const bool ordered = minimizes(task) ? achieved > optimal : achieved < optimal;
  if (!ordered || optimal < 0 || achieved < 0) {
    throw ContractViolation("quality_reward: suboptimal " + std::string(to_string(task)) + " outcome with achieved " +
                            std::to_string(achieved) + " and optimal " + std::to_string(optimal));
  }
  switch (task) {
    case TaskKind::TSP: {
      const double ratio = optimal / achieved;
      return ratio * ratio * kSuboptimalScale;
    }
    case TaskKind::GED: return optimal / achieved * kSuboptimalScale;
    case TaskKind::MCP: return achieved / optimal * kSuboptimalScale;
  }
  return 0.0;
}

double format_reward(std::string_view response, FormatOptions options) {
  constexpr std::string_view kThink = "<think>";
  if (!options.strict) {
    const auto first = response.find_first_not_of(" \t\r\n\f\v");
    response.remove_prefix(first == std::string_view::npos ? response.size() : first);
  }
  return response.starts_with(kThink) ? kFormatReward : 0.0;
}

RewardBreakdown total_reward(const ProblemInstance& instance, std::string_view response, double oracle_value,
                             const RewardOptions& options) {
  RewardBreakdown r;
  r.outcome = verify_response(instance, response, oracle_value);
  r.quality = quality_reward(r.outcome, task_of(instance));
  r.format = format_reward(response, options.format);
  r.repetition = detect_repetition(response, options.min_repeat_length, options.min_repeats);
  r.repetition_penalty = r.repetition.detected ? kRepetitionPenalty : 0.0;
  r.total = r.format + r.quality + r.repetition_penalty;
  return r;
}

nlohmann::json reward_json(const RewardBreakdown& breakdown) {
  nlohmann::json j{{"format", breakdown.format},
                   {"quality", breakdown.quality},
                   {"repetition_detected", breakdown.repetition.detected}};
  if (breakdown.repetition.detected) j["repetition_count"] = breakdown.repetition.count;
  j["total"] = breakdown.total;
  return j;
}

}  // namespace graphr
