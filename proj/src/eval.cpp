#include "graphr/eval.hpp"

#include "graphr/errors.hpp"
#include "graphr/length_counter.hpp"

namespace graphr {

namespace {

struct Accumulator {
  std::size_t problems = 0, accurate = 0, feasible = 0, passed = 0;
  double avg_sum = 0.0, length_sum = 0.0;
  std::size_t lengths = 0;

  void add(const ProblemAttempts& p, int k) {
    ++problems;
    const auto& first = p.attempts.front().outcome;
    accurate += first.kind == OutcomeKind::Optimal;
    feasible += first.feasible();
    int solved = 0;
    for (int i = 0; i < k; ++i) {
      solved += p.attempts[i].outcome.kind == OutcomeKind::Optimal;
      if (p.attempts[i].length) {
        length_sum += *p.attempts[i].length;
        ++lengths;
      }
    }
    passed += solved > 0;
    avg_sum += static_cast<double>(solved) / k;
  }

  EvalMetrics metrics() const {
    EvalMetrics m;
    m.problems = problems;
    if (problems == 0) return m;
    const auto total = static_cast<double>(problems);
    m.accuracy = accurate / total;
    m.feasibility = feasible / total;
    m.pass_at_k = passed / total;
    m.avg_at_k = avg_sum / total;
    if (lengths) m.mean_length = length_sum / static_cast<double>(lengths);
    return m;
  }
};

nlohmann::json metrics_json(const EvalMetrics& m) {
  nlohmann::json j{{"problems", m.problems},
                   {"accuracy", m.accuracy},
                   {"feasibility", m.feasibility},
                   {"avg_at_k", m.avg_at_k},
                   {"pass_at_k", m.pass_at_k}};
  j["mean_length"] = m.mean_length ? nlohmann::json(*m.mean_length) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

EvalReport score_run(const std::vector<ProblemAttempts>& problems, int k) {
  if (k < 1) throw InputError("k must be at least 1");
  Accumulator overall;
  std::map<TaskKind, Accumulator> per_task;
  for (const auto& p : problems) {
    if (static_cast<int>(p.attempts.size()) < k) {
      throw InputError("problem " + p.problem_id + " has " + std::to_string(p.attempts.size()) +
                       " attempts, fewer than k=" + std::to_string(k));
    }
    overall.add(p, k);
    if (p.task) per_task[*p.task].add(p, k);
  }
  EvalReport report;
  report.k = k;
  report.length_counter = std::string(kDefaultLengthCounter);
  report.overall = overall.metrics();
  for (const auto& [task, acc] : per_task) report.per_task[task] = acc.metrics();
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json j = metrics_json(report.overall);
  j["k"] = report.k;
  j["length_counter"] = report.length_counter;
  nlohmann::json tasks = nlohmann::json::object();
  for (const auto& [task, m] : report.per_task) tasks[std::string(to_string(task))] = metrics_json(m);
  j["per_task"] = tasks;
  return j;
}

}  // namespace graphr
