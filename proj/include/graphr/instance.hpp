#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphr/task.hpp"

namespace graphr {

using Seed = std::uint64_t;

/// Dense symmetric distance table, row-major, kilometres.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  std::int64_t operator()(int i, int j) const { return data_[index(i, j)]; }

  /// Sets both (i, j) and (j, i).
  void set(int i, int j, std::int64_t d) {
    data_[index(i, j)] = d;
    data_[index(j, i)] = d;
  }

  bool operator==(const DistanceMatrix&) const = default;

private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<std::int64_t> data_;
};

struct TspInstance {
  std::string id;
  Seed seed = 0;
  std::vector<std::string> node_names;
  DistanceMatrix dist;

  int n() const { return static_cast<int>(node_names.size()); }
  bool operator==(const TspInstance&) const = default;
};

using Bond = std::pair<int, int>;

struct Molecule {
  std::vector<std::string> atom_labels;
  /// Stored normalised: first < second, sorted, unique.
  std::vector<Bond> bonds;

  int size() const { return static_cast<int>(atom_labels.size()); }
  bool has_bond(int a, int b) const;
  bool operator==(const Molecule&) const = default;
};

/// Sorts each bond as (min, max), sorts the list and drops duplicates.
void normalize_bonds(std::vector<Bond>& bonds);

/// Throws ContractViolation if a bond is out of range, a self-bond, or the graph is disconnected.
void validate_molecule(const Molecule& mol);

bool is_connected(int n, const std::vector<Bond>& edges);

struct GedInstance {
  std::string id;
  Seed seed = 0;
  Molecule mol_a;
  Molecule mol_b;
  /// Number of unit edits applied to build mol_b; an upper bound on the true distance.
  int edit_budget = 0;

  int size_class() const { return std::max(mol_a.size(), mol_b.size()); }
  bool operator==(const GedInstance&) const = default;
};

struct McpInstance {
  std::string id;
  Seed seed = 0;
  std::vector<std::string> author_names;
  /// Index pairs into author_names, normalised like Molecule::bonds.
  std::vector<std::pair<int, int>> edges;
  double density = 0.0;

  int n() const { return static_cast<int>(author_names.size()); }
  bool operator==(const McpInstance&) const = default;
};

using ProblemInstance = std::variant<TspInstance, GedInstance, McpInstance>;

TaskKind task_of(const ProblemInstance& instance);
const std::string& id_of(const ProblemInstance& instance);
Seed seed_of(const ProblemInstance& instance);
/// Node count (TSP/MCP) or size class (GED).
int size_of(const ProblemInstance& instance);

/// {id, task, seed, n, payload}
nlohmann::json to_json(const ProblemInstance& instance);
/// Inverse of to_json. Throws InputError on schema problems.
ProblemInstance instance_from_json(const nlohmann::json& record);

}  // namespace graphr
