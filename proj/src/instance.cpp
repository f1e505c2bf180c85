#include "graphr/instance.hpp"

#include <algorithm>
#include <numeric>

#include "graphr/errors.hpp"

namespace graphr {

using nlohmann::json;

bool Molecule::has_bond(int a, int b) const {
  Bond key = a < b ? Bond{a, b} : Bond{b, a};
  return std::binary_search(bonds.begin(), bonds.end(), key);
}

void normalize_bonds(std::vector<Bond>& bonds) {
  for (auto& [a, b] : bonds) {
    if (a > b) std::swap(a, b);
  }
  std::sort(bonds.begin(), bonds.end());
  bonds.erase(std::unique(bonds.begin(), bonds.end()), bonds.end());
}

bool is_connected(int n, const std::vector<Bond>& edges) {
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

void validate_molecule(const Molecule& mol) {
  if (mol.atom_labels.empty()) throw ContractViolation("molecule has no atoms");
  for (std::size_t i = 0; i < mol.bonds.size(); ++i) {
    auto [a, b] = mol.bonds[i];
    if (a < 0 || b < 0 || a >= mol.size() || b >= mol.size())
      throw ContractViolation("bond endpoint out of range");
    if (a == b) throw ContractViolation("self-bond on atom " + std::to_string(a));
    if (i > 0 && mol.bonds[i - 1] == mol.bonds[i]) throw ContractViolation("duplicate bond");
  }
  if (!is_connected(mol.size(), mol.bonds)) throw ContractViolation("molecule is disconnected");
}

TaskKind task_of(const ProblemInstance& instance) {
  return static_cast<TaskKind>(instance.index());
}

const std::string& id_of(const ProblemInstance& instance) {
  return std::visit([](const auto& x) -> const std::string& { return x.id; }, instance);
}

Seed seed_of(const ProblemInstance& instance) {
  return std::visit([](const auto& x) { return x.seed; }, instance);
}

namespace {

struct SizeVisitor {
  int operator()(const TspInstance& x) const { return x.n(); }
  int operator()(const GedInstance& x) const { return x.size_class(); }
  int operator()(const McpInstance& x) const { return x.n(); }
};

json molecule_json(const Molecule& mol) {
  json bonds = json::array();
  for (auto [a, b] : mol.bonds) bonds.push_back({a, b});
  return {{"atoms", mol.atom_labels}, {"bonds", bonds}};
}

Molecule molecule_from_json(const json& j) {
  Molecule mol;
  mol.atom_labels = j.at("atoms").get<std::vector<std::string>>();
  for (const auto& b : j.at("bonds")) mol.bonds.emplace_back(b.at(0).get<int>(), b.at(1).get<int>());
  normalize_bonds(mol.bonds);
  validate_molecule(mol);
  return mol;
}

json payload_json(const TspInstance& x) {
  json rows = json::array();
  for (int i = 0; i < x.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < x.n(); ++j) row.push_back(x.dist(i, j));
    rows.push_back(std::move(row));
  }
  return {{"nodes", x.node_names}, {"distances", rows}};
}

json payload_json(const GedInstance& x) {
  return {{"mol_a", molecule_json(x.mol_a)},
          {"mol_b", molecule_json(x.mol_b)},
          {"edit_budget", x.edit_budget}};
}

json payload_json(const McpInstance& x) {
  json edges = json::array();
  for (auto [a, b] : x.edges) edges.push_back({x.author_names[a], x.author_names[b]});
  return {{"nodes", x.author_names}, {"edges", edges}, {"density", x.density}};
}

int name_index(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InputError("edge references unknown node '" + name + "'");
  return static_cast<int>(it - names.begin());
}

void require_unique(const std::vector<std::string>& names) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("duplicate node name");
}

}  // namespace

int size_of(const ProblemInstance& instance) { return std::visit(SizeVisitor{}, instance); }

json to_json(const ProblemInstance& instance) {
  return std::visit(
      [&](const auto& x) {
        return json{{"id", x.id},
                    {"task", to_string(task_of(instance))},
                    {"seed", x.seed},
                    {"n", size_of(instance)},
                    {"payload", payload_json(x)}};
      },
      instance);
}

ProblemInstance instance_from_json(const json& record) {
  try {
    const TaskKind task = parse_task(record.at("task").get<std::string>());
    const json& p = record.at("payload");
    const std::string id = record.at("id").get<std::string>();
    const Seed seed = record.value("seed", Seed{0});
    switch (task) {
      case TaskKind::TSP: {
        TspInstance x{id, seed, p.at("nodes").get<std::vector<std::string>>(), {}};
        require_unique(x.node_names);
        const json& rows = p.at("distances");
        if (x.n() < 3 || rows.size() != x.node_names.size())
          throw InputError("distance matrix shape does not match node list");
        x.dist = DistanceMatrix(x.n());
        for (int i = 0; i < x.n(); ++i) {
          if (rows[i].size() != x.node_names.size()) throw InputError("ragged distance matrix");
          for (int j = 0; j < x.n(); ++j) {
            auto d = rows[i][j].get<std::int64_t>();
            if (i != j && (d <= 0 || d != rows[j][i].get<std::int64_t>()))
              throw InputError("distance matrix must be symmetric and positive");
            if (i < j) x.dist.set(i, j, d);
          }
        }
        return x;
      }
      case TaskKind::GED: {
        GedInstance x{id, seed, molecule_from_json(p.at("mol_a")), molecule_from_json(p.at("mol_b")),
                      p.value("edit_budget", 0)};
        return x;
      }
      case TaskKind::MCP: {
        McpInstance x{id, seed, p.at("nodes").get<std::vector<std::string>>(), {},
                      p.value("density", 0.0)};
        require_unique(x.author_names);
        for (const auto& e : p.at("edges")) {
          int a = name_index(x.author_names, e.at(0).get<std::string>());
          int b = name_index(x.author_names, e.at(1).get<std::string>());
          if (a == b) throw InputError("self-loop in collaboration graph");
          x.edges.emplace_back(a, b);
        }
        normalize_bonds(x.edges);
        return x;
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance record: ") + e.what());
  } catch (const ContractViolation& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
  throw InputError("unreachable task");
}

}  // namespace graphr
