#include "graphr/verify.hpp"

#include <algorithm>
#include <set>

#include "graphr/errors.hpp"
#include "graphr/oracle.hpp"

namespace graphr {

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::ParseFailure: return "parse_failure";
    case OutcomeKind::Infeasible: return "infeasible";
    case OutcomeKind::Suboptimal: return "suboptimal";
    case OutcomeKind::Optimal: return "optimal";
  }
  return "unknown";
}

OutcomeKind parse_outcome_kind(std::string_view name) {
  for (auto k : {OutcomeKind::ParseFailure, OutcomeKind::Infeasible, OutcomeKind::Suboptimal, OutcomeKind::Optimal})
    if (name == to_string(k)) return k;
  throw InputError("unknown outcome kind '" + std::string(name) + "'");
}

VerificationOutcome VerificationOutcome::parse_failure(std::string reason) {
  return {OutcomeKind::ParseFailure, std::move(reason), 0.0, 0.0};
}

VerificationOutcome VerificationOutcome::infeasible(std::string violation) {
  return {OutcomeKind::Infeasible, std::move(violation), 0.0, 0.0};
}

VerificationOutcome VerificationOutcome::suboptimal(double achieved, double optimal) {
  return {OutcomeKind::Suboptimal, {}, achieved, optimal};
}

VerificationOutcome VerificationOutcome::optimal_at(double value) { return {OutcomeKind::Optimal, {}, value, value}; }

nlohmann::json to_json(const VerificationOutcome& outcome) {
  nlohmann::json j{{"kind", to_string(outcome.kind)}};
  switch (outcome.kind) {
    case OutcomeKind::ParseFailure: j["reason"] = outcome.detail; break;
    case OutcomeKind::Infeasible: j["violation"] = outcome.detail; break;
    case OutcomeKind::Suboptimal:
    case OutcomeKind::Optimal:
      j["achieved"] = outcome.achieved;
      j["optimal"] = outcome.optimal;
      break;
  }
  return j;
}

VerificationOutcome outcome_from_json(const nlohmann::json& j) {
  try {
    VerificationOutcome out;
    out.kind = parse_outcome_kind(j.at("kind").get<std::string>());
    out.detail = j.value("reason", j.value("violation", std::string{}));
    out.achieved = j.value("achieved", 0.0);
    out.optimal = j.value("optimal", 0.0);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed outcome: ") + e.what());
  }
}

namespace {

std::optional<std::string> tsp_violation(const TspInstance& x, const TspRoute& route) {
  const auto& r = route.nodes;
  if (r.size() < 2 || r.front() != r.back()) return "route is not closed";
  std::set<std::string> seen;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    if (std::find(x.node_names.begin(), x.node_names.end(), r[k]) == x.node_names.end())
      return "unknown node " + r[k];
    if (!seen.insert(r[k]).second) return "node " + r[k] + " visited more than once";
  }
  for (const auto& name : x.node_names)
    if (!seen.count(name)) return "node " + name + " unvisited";
  return std::nullopt;
}

std::optional<std::string> ged_violation(const GedInstance& x, const GedMapping& mapping) {
  const auto size = static_cast<std::size_t>(x.size_class());
  if (mapping.targets.size() != size)
    return "mapping has " + std::to_string(mapping.targets.size()) + " entries, expected " + std::to_string(size);
  std::vector<bool> hit(size, false);
  for (int t : mapping.targets) {
    if (t < 0 || static_cast<std::size_t>(t) >= size) return "atom id " + std::to_string(t) + " out of range";
    if (hit[t]) return "atom " + std::to_string(t) + " mapped more than once";
    hit[t] = true;
  }
  return std::nullopt;
}

std::optional<std::string> mcp_violation(const McpInstance& x, const McpClique& clique) {
  std::vector<int> idx;
  for (const auto& name : clique.nodes) {
    auto it = std::find(x.author_names.begin(), x.author_names.end(), name);
    if (it == x.author_names.end()) return "unknown node " + name;
    const int v = static_cast<int>(it - x.author_names.begin());
    if (std::find(idx.begin(), idx.end(), v) != idx.end()) return "node " + name + " listed more than once";
    idx.push_back(v);
  }
  if (idx.empty()) return "empty clique";
  for (std::size_t p = 0; p < idx.size(); ++p) {
    for (std::size_t q = p + 1; q < idx.size(); ++q) {
      const auto e = std::minmax(idx[p], idx[q]);
      if (std::find(x.edges.begin(), x.edges.end(), std::pair<int, int>{e.first, e.second}) == x.edges.end())
        return "nodes " + clique.nodes[p] + " and " + clique.nodes[q] + " are not adjacent";
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> check_feasibility(const ProblemInstance& instance, const StructuredSolution& solution) {
  if (task_of(instance) != task_of(solution)) {
    throw ContractViolation("check_feasibility: " + std::string(to_string(task_of(solution))) +
                            " solution for a " + std::string(to_string(task_of(instance))) + " instance");
  }
  switch (task_of(instance)) {
    case TaskKind::TSP: return tsp_violation(std::get<TspInstance>(instance), std::get<TspRoute>(solution));
    case TaskKind::GED: return ged_violation(std::get<GedInstance>(instance), std::get<GedMapping>(solution));
    case TaskKind::MCP: return mcp_violation(std::get<McpInstance>(instance), std::get<McpClique>(solution));
  }
  return std::nullopt;
}

VerificationOutcome check_correctness(const ProblemInstance& instance, const StructuredSolution& solution,
                                      double oracle_value) {
  const double achieved = objective(instance, solution);
  if (achieved == oracle_value) return VerificationOutcome::optimal_at(achieved);
  const bool better = minimizes(task_of(instance)) ? achieved < oracle_value : achieved > oracle_value;
  if (better) {
    throw OracleBugError("instance " + id_of(instance) + ": solution value " + std::to_string(achieved) +
                         " beats oracle optimum " + std::to_string(oracle_value));
  }
  return VerificationOutcome::suboptimal(achieved, oracle_value);
}

VerificationOutcome verify_response(const ProblemInstance& instance, std::string_view response, double oracle_value) {
  auto extracted = extract(task_of(instance), response);
  if (auto* failure = std::get_if<ParseFailure>(&extracted)) return VerificationOutcome::parse_failure(failure->reason);
  const auto& solution = std::get<StructuredSolution>(extracted);
  if (auto violation = check_feasibility(instance, solution)) return VerificationOutcome::infeasible(*violation);
  return check_correctness(instance, solution, oracle_value);
}

}  // namespace graphr
