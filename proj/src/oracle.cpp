#include "graphr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "graphr/errors.hpp"
#include "graphr/verify.hpp"

namespace graphr {

namespace {

using Clock = std::chrono::steady_clock;

void check_limit(const char* what, int n, int limit) {
  if (n > limit) {
    throw SizeLimitError(std::string(what) + ": " + std::to_string(n) + " nodes exceeds the exact-solver limit of " +
                         std::to_string(limit));
  }
}

}  // namespace

OracleResult solve_tsp(const TspInstance& instance) {
  const auto start = Clock::now();
  const int n = instance.n();
  check_limit("solve_tsp", n, kTspSolverMaxNodes);
  if (n < 3) throw ContractViolation("solve_tsp: need at least 3 nodes");
  const auto& d = instance.dist;

  // Nodes 1..n-1 map to bits 0..m-1. rest[mask][j]: cheapest way to finish the tour from
  // node j+1 once `mask` has been visited, returning to node 0.
  const int m = n - 1;
  const std::uint32_t full = (1u << m) - 1;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> rest(static_cast<std::size_t>(full + 1) * m, kInf);
  auto at = [&](std::uint32_t mask, int j) -> std::int64_t& { return rest[static_cast<std::size_t>(mask) * m + j]; };

  for (int j = 0; j < m; ++j) at(full, j) = d(j + 1, 0);
  for (std::uint32_t mask = full; mask-- > 1;) {
    for (int j = 0; j < m; ++j) {
      if (!(mask & (1u << j))) continue;
      std::int64_t best = kInf;
      for (int k = 0; k < m; ++k) {
        if (mask & (1u << k)) continue;
        best = std::min(best, d(j + 1, k + 1) + at(mask | (1u << k), k));
      }
      at(mask, j) = best;
    }
  }

  std::int64_t optimum = kInf;
  for (int j = 0; j < m; ++j) optimum = std::min(optimum, d(0, j + 1) + at(1u << j, j));

  TspRoute route{{instance.node_names[0]}};
  std::uint32_t mask = 0;
  int current = 0;  // node index, 0 = start
  std::int64_t remaining = optimum;
  for (int step = 0; step < m; ++step) {
    for (int k = 0; k < m; ++k) {
      if (mask & (1u << k)) continue;
      const std::int64_t via = d(current, k + 1) + at(mask | (1u << k), k);
      if (via == remaining) {
        remaining -= d(current, k + 1);
        mask |= 1u << k;
        current = k + 1;
        route.nodes.push_back(instance.node_names[current]);
        break;
      }
    }
  }
  route.nodes.push_back(instance.node_names[0]);

  return {TaskKind::TSP, static_cast<double>(optimum), std::move(route),
          std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)};
}

std::int64_t mapping_cost(const Molecule& a, const Molecule& b, const std::vector<int>& mapping) {
  const int na = a.size(), nb = b.size();
  const int size = std::max(na, nb);
  if (static_cast<int>(mapping.size()) != size) throw ContractViolation("mapping_cost: mapping has wrong length");
  std::int64_t cost = 0;
  for (int i = 0; i < size; ++i) {
    const int j = mapping[i];
    const bool real_a = i < na, real_b = j < nb;
    if (real_a && real_b)
      cost += a.atom_labels[i] != b.atom_labels[j];
    else
      cost += real_a || real_b;
  }
  // Edges of A whose image is missing in B, then edges of B with no preimage in A.
  std::vector<int> inverse(size);
  for (int i = 0; i < size; ++i) inverse[mapping[i]] = i;
  for (auto [u, v] : a.bonds) {
    const int mu = mapping[u], mv = mapping[v];
    if (mu >= nb || mv >= nb || !b.has_bond(mu, mv)) ++cost;
  }
  for (auto [u, v] : b.bonds) {
    const int iu = inverse[u], iv = inverse[v];
    if (iu >= na || iv >= na || !a.has_bond(iu, iv)) ++cost;
  }
  return cost;
}

namespace {

class GedSearch {
public:
  GedSearch(const Molecule& a, const Molecule& b)
      : a_(a), b_(b), na_(a.size()), nb_(b.size()), size_(std::max(na_, nb_)),
        adj_a_(size_ * size_, false), adj_b_(size_ * size_, false), mapping_(size_, -1), used_(size_, false) {
    for (auto [u, v] : a.bonds) adj_a_[u * size_ + v] = adj_a_[v * size_ + u] = true;
    for (auto [u, v] : b.bonds) adj_b_[u * size_ + v] = adj_b_[v * size_ + u] = true;
  }

  void run() { descend(0, 0); }

  std::int64_t best_cost() const { return best_cost_; }
  const std::vector<int>& best_mapping() const { return best_mapping_; }

private:
  std::int64_t node_cost(int i, int j) const {
    const bool real_a = i < na_, real_b = j < nb_;
    if (real_a && real_b) return a_.atom_labels[i] != b_.atom_labels[j];
    return real_a || real_b;
  }

  void descend(int i, std::int64_t cost) {
    if (cost >= best_cost_) return;
    if (i == size_) {
      best_cost_ = cost;
      best_mapping_ = mapping_;
      return;
    }
    for (int j = 0; j < size_; ++j) {
      if (used_[j]) continue;
      std::int64_t added = node_cost(i, j);
      for (int p = 0; p < i; ++p) added += adj_a_[i * size_ + p] != adj_b_[j * size_ + mapping_[p]];
      used_[j] = true;
      mapping_[i] = j;
      descend(i + 1, cost + added);
      used_[j] = false;
    }
    mapping_[i] = -1;
  }

  const Molecule& a_;
  const Molecule& b_;
  int na_, nb_, size_;
  std::vector<bool> adj_a_, adj_b_;
  std::vector<int> mapping_;
  std::vector<bool> used_;
  std::int64_t best_cost_ = std::numeric_limits<std::int64_t>::max();
  std::vector<int> best_mapping_;
};

}  // namespace

OracleResult solve_ged(const GedInstance& instance) {
  const auto start = Clock::now();
  check_limit("solve_ged", instance.size_class(), kGedSolverMaxNodes);
  GedSearch search(instance.mol_a, instance.mol_b);
  search.run();
  return {TaskKind::GED, static_cast<double>(search.best_cost()), GedMapping{search.best_mapping()},
          std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)};
}

namespace {

class CliqueSearch {
public:
  explicit CliqueSearch(const McpInstance& g) : n_(g.n()), adj_(n_, 0) {
    for (auto [u, v] : g.edges) {
      adj_[u] |= 1u << v;
      adj_[v] |= 1u << u;
    }
  }

  void run() {
    const std::uint32_t all = n_ == 32 ? ~0u : (1u << n_) - 1;
    expand(0, all);
  }

  std::uint32_t best() const { return best_; }

private:
  void expand(std::uint32_t clique, std::uint32_t candidates) {
    const int size = std::popcount(clique);
    if (candidates == 0) {
      if (size > std::popcount(best_)) best_ = clique;
      return;
    }
    // Greedy colouring: colour classes are independent sets, so a clique takes at most
    // one vertex per class.
    std::vector<int> order, colour;
    std::uint32_t uncoloured = candidates;
    for (int c = 1; uncoloured; ++c) {
      std::uint32_t available = uncoloured;
      while (available) {
        const int v = std::countr_zero(available);
        available &= ~(1u << v) & ~adj_[v];
        uncoloured &= ~(1u << v);
        order.push_back(v);
        colour.push_back(c);
      }
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      if (size + colour[k] <= std::popcount(best_)) return;
      const int v = order[k];
      expand(clique | (1u << v), candidates & adj_[v]);
      candidates &= ~(1u << v);
    }
  }

  int n_;
  std::vector<std::uint32_t> adj_;
  std::uint32_t best_ = 0;
};

}  // namespace

OracleResult solve_mcp(const McpInstance& instance) {
  const auto start = Clock::now();
  check_limit("solve_mcp", instance.n(), kMcpSolverMaxNodes);
  if (instance.n() == 0) throw ContractViolation("solve_mcp: empty graph");
  CliqueSearch search(instance);
  search.run();
  McpClique clique;
  for (int v = 0; v < instance.n(); ++v)
    if (search.best() & (1u << v)) clique.nodes.push_back(instance.author_names[v]);
  const auto size = static_cast<double>(clique.nodes.size());
  return {TaskKind::MCP, size, std::move(clique),
          std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)};
}

OracleResult solve(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& x) -> OracleResult {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TspInstance>)
          return solve_tsp(x);
        else if constexpr (std::is_same_v<T, GedInstance>)
          return solve_ged(x);
        else
          return solve_mcp(x);
      },
      instance);
}

double objective(const ProblemInstance& instance, const StructuredSolution& solution) {
  if (auto violation = check_feasibility(instance, solution))
    throw ContractViolation("objective: infeasible solution: " + *violation);

  if (const auto* tsp = std::get_if<TspInstance>(&instance)) {
    const auto& route = std::get<TspRoute>(solution).nodes;
    auto index = [&](const std::string& name) {
      return static_cast<int>(std::find(tsp->node_names.begin(), tsp->node_names.end(), name) -
                              tsp->node_names.begin());
    };
    std::int64_t total = 0;
    for (std::size_t k = 0; k + 1 < route.size(); ++k) total += tsp->dist(index(route[k]), index(route[k + 1]));
    return static_cast<double>(total);
  }
  if (const auto* ged = std::get_if<GedInstance>(&instance))
    return static_cast<double>(mapping_cost(ged->mol_a, ged->mol_b, std::get<GedMapping>(solution).targets));
  return static_cast<double>(std::get<McpClique>(solution).nodes.size());
}

nlohmann::json to_json(const std::string& id, const OracleResult& result) {
  return {{"id", id}, {"optimal_value", result.optimal_value}, {"witness", to_json(result.witness)}};
}

}  // namespace graphr
