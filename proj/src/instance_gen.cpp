#include "graphr/instance_gen.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "graphr/errors.hpp"
#include "rng.hpp"

namespace graphr {

using detail::Rng;

namespace {

void check_range(const char* what, int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw RangeError(std::string(what) + ": node count " + std::to_string(n) + " outside [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

std::string make_id(TaskKind task, int n, Seed seed) {
  return std::string(to_string(task)) + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
}

std::string random_airport_code(Rng& rng) {
  std::string code(3, 'A');
  for (char& c : code) c = static_cast<char>('A' + rng.uniform_int(0, 25));
  return code;
}

Molecule random_molecule(int n, Rng& rng) {
  const auto& pool = element_pool();
  Molecule mol;
  for (int i = 0; i < n; ++i) mol.atom_labels.push_back(pool[rng.index(pool.size())]);
  // Random spanning tree, then a few ring closures.
  for (int i = 1; i < n; ++i) mol.bonds.emplace_back(static_cast<int>(rng.uniform_int(0, i - 1)), i);
  const int extra = static_cast<int>(rng.uniform_int(0, n / 3));
  for (int e = 0; e < extra; ++e) {
    int a = rng.index(n), b = rng.index(n);
    if (a != b) mol.bonds.emplace_back(a, b);
  }
  normalize_bonds(mol.bonds);
  return mol;
}

bool is_bridge(const Molecule& mol, std::size_t bond_index) {
  std::vector<Bond> rest;
  rest.reserve(mol.bonds.size() - 1);
  for (std::size_t i = 0; i < mol.bonds.size(); ++i) {
    if (i != bond_index) rest.push_back(mol.bonds[i]);
  }
  return !is_connected(mol.size(), rest);
}

enum class Edit { Relabel, AddBond, DeleteBond };

// One unit edit that keeps the molecule connected.
void apply_random_edit(Molecule& mol, Rng& rng) {
  const int n = mol.size();
  std::vector<Bond> missing;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!mol.has_bond(a, b)) missing.emplace_back(a, b);
  std::vector<std::size_t> removable;
  for (std::size_t i = 0; i < mol.bonds.size(); ++i)
    if (!is_bridge(mol, i)) removable.push_back(i);

  std::vector<Edit> options{Edit::Relabel};
  if (!missing.empty()) options.push_back(Edit::AddBond);
  if (!removable.empty()) options.push_back(Edit::DeleteBond);

  switch (options[rng.index(options.size())]) {
    case Edit::Relabel: {
      const auto& pool = element_pool();
      const int atom = rng.index(n);
      std::string label;
      do {
        label = pool[rng.index(pool.size())];
      } while (label == mol.atom_labels[atom]);
      mol.atom_labels[atom] = label;
      break;
    }
    case Edit::AddBond:
      mol.bonds.push_back(missing[rng.index(missing.size())]);
      normalize_bonds(mol.bonds);
      break;
    case Edit::DeleteBond:
      mol.bonds.erase(mol.bonds.begin() + static_cast<std::ptrdiff_t>(removable[rng.index(removable.size())]));
      break;
  }
}

Molecule permuted(const Molecule& mol, const std::vector<int>& perm) {
  Molecule out;
  out.atom_labels.resize(mol.atom_labels.size());
  for (int i = 0; i < mol.size(); ++i) out.atom_labels[perm[i]] = mol.atom_labels[i];
  for (auto [a, b] : mol.bonds) out.bonds.emplace_back(perm[a], perm[b]);
  normalize_bonds(out.bonds);
  return out;
}

// Stream tags keep the per-purpose draws of one seed independent.
constexpr std::uint64_t kStreamTsp = 1, kStreamGed = 2, kStreamMcp = 3, kStreamBatch = 4;

}  // namespace

const std::vector<std::string>& element_pool() {
  static const std::vector<std::string> pool{"C", "N", "O", "S", "P", "F", "Cl", "Br", "I", "Si", "Ge", "B"};
  return pool;
}

const std::vector<std::string>& first_name_pool() {
  static const std::vector<std::string> pool{
      "Gang",     "Michel",  "Pascale", "Bhaskar", "Rana",    "Erwan",   "Gary V.",  "Anna",
      "Wei",      "Maria",   "Javier",  "Yuki",    "Olga",    "Pierre",  "Sofia",    "Rahul",
      "Chen",     "Fatima",  "Lars",    "Ingrid",  "Kwame",   "Amara",   "Diego",    "Elena",
      "Hiroshi",  "Priya",   "Tomasz",  "Nadia",   "Samuel",  "Leila",   "Marco",    "Ahmed",
      "Jin",      "Claire",  "Andrei",  "Beatriz", "Kofi",    "Hannah",  "Ravi",     "Mei",
      "Jean-Luc", "Ursula",  "Thabo",   "Isabel",  "Viktor",  "Aisha",   "Stefan",   "Lucia"};
  return pool;
}

const std::vector<std::string>& last_name_pool() {
  static const std::vector<std::string> pool{
      "Zhou",     "Misson",   "Minet",    "Krishnamachari", "Diab",     "Livolant", "Yee",
      "Decotignie", "Schmidt", "Garcia",  "Tanaka",         "Ivanova",  "Dubois",   "Rossi",
      "Sharma",   "Li",       "Haddad",   "Nielsen",        "Berg",     "Mensah",   "Okafor",
      "Fernandez", "Petrova", "Sato",     "Iyer",           "Kowalski", "Benali",   "Cohen",
      "Karimi",   "Moretti",  "Hassan",   "Park",           "Laurent",  "Popescu",  "Santos",
      "Owusu",    "Weber",    "Patel",    "Wang",           "Novak",    "Ndlovu",   "Alvarez",
      "Sokolov",  "Rahman",   "Hoffmann", "Costa",          "Lindqvist", "Yamamoto"};
  return pool;
}

TspInstance generate_tsp(int n, Seed seed, WeightRange weights) {
  check_range("generate_tsp", n, kTspMinNodes, kTspMaxNodes);
  if (weights.lo <= 0 || weights.hi < weights.lo) throw RangeError("generate_tsp: invalid weight range");
  Rng rng(seed, kStreamTsp);
  TspInstance x;
  x.id = make_id(TaskKind::TSP, n, seed);
  x.seed = seed;
  std::set<std::string> used;
  while (static_cast<int>(x.node_names.size()) < n) {
    std::string code = random_airport_code(rng);
    if (used.insert(code).second) x.node_names.push_back(std::move(code));
  }
  x.dist = DistanceMatrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) x.dist.set(i, j, rng.uniform_int(weights.lo, weights.hi));
  return x;
}

namespace {

GedInstance build_ged(int n, Seed seed, int k, Rng& rng) {
  GedInstance x;
  x.id = make_id(TaskKind::GED, n, seed);
  x.seed = seed;
  x.edit_budget = k;
  x.mol_a = random_molecule(n, rng);
  Molecule b = x.mol_a;
  for (int e = 0; e < k; ++e) apply_random_edit(b, rng);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  x.mol_b = permuted(b, perm);
  return x;
}

}  // namespace

GedInstance generate_ged(int n, Seed seed, std::pair<int, int> edit_budget_range) {
  check_range("generate_ged", n, kGedMinNodes, kGedMaxNodes);
  if (edit_budget_range.first < 0 || edit_budget_range.second < edit_budget_range.first)
    throw RangeError("generate_ged: invalid edit budget range");
  Rng rng(seed, kStreamGed);
  const int k = static_cast<int>(rng.uniform_int(edit_budget_range.first, edit_budget_range.second));
  return build_ged(n, seed, k, rng);
}

GedInstance generate_ged_with_budget(int n, Seed seed, int k) {
  check_range("generate_ged", n, kGedMinNodes, kGedMaxNodes);
  if (k < 0) throw RangeError("generate_ged: negative edit budget");
  Rng rng(seed, kStreamGed);
  rng.uniform_int(0, 0);  // keeps the stream aligned with generate_ged
  return build_ged(n, seed, k, rng);
}

McpInstance generate_mcp(int n, Seed seed, double density) {
  check_range("generate_mcp", n, kMcpMinNodes, kMcpMaxNodes);
  if (!(density > 0.0 && density < 1.0)) throw RangeError("generate_mcp: density must lie in (0, 1)");
  Rng rng(seed, kStreamMcp);
  McpInstance x;
  x.id = make_id(TaskKind::MCP, n, seed);
  x.seed = seed;
  x.density = density;
  const auto& first = first_name_pool();
  const auto& last = last_name_pool();
  std::set<std::string> used;
  while (x.n() < n) {
    std::string name = first[rng.index(first.size())] + " " + last[rng.index(last.size())];
    if (used.insert(name).second) x.author_names.push_back(std::move(name));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(density)) x.edges.emplace_back(i, j);
  return x;
}

Seed derive_seed(Seed master_seed, TaskKind task, int n, int index, int attempt) {
  std::uint64_t h = detail::splitmix64(master_seed);
  h = detail::splitmix64(h ^ (static_cast<std::uint64_t>(task) + 1));
  h = detail::splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = detail::splitmix64(h ^ static_cast<std::uint64_t>(index));
  h = detail::splitmix64(h ^ static_cast<std::uint64_t>(attempt));
  // Keep seeds within 2^53 so JSON consumers in any language read them exactly.
  return h & ((std::uint64_t{1} << 53) - 1);
}

std::vector<ProblemInstance> generate_batch(const GenerationConfig& config) {
  for (auto [n, count] : config.per_size_counts) {
    if (count <= 0) throw RangeError("generate_batch: counts must be positive");
  }
  if (config.task == TaskKind::MCP &&
      !(config.density_range.first > 0.0 && config.density_range.second < 1.0 &&
        config.density_range.first <= config.density_range.second))
    throw RangeError("generate_batch: density range must lie in (0, 1)");

  std::vector<ProblemInstance> out;
  std::unordered_set<std::string> keys;
  for (auto [n, count] : config.per_size_counts) {
    for (int index = 0; index < count; ++index) {
      bool placed = false;
      for (int attempt = 0; attempt < config.retry_budget && !placed; ++attempt) {
        const Seed seed = derive_seed(config.master_seed, config.task, n, index, attempt);
        ProblemInstance inst;
        switch (config.task) {
          case TaskKind::TSP: inst = generate_tsp(n, seed, config.weights); break;
          case TaskKind::GED: inst = generate_ged(n, seed, config.edit_budget_range); break;
          case TaskKind::MCP: {
            Rng rng(seed, kStreamBatch);
            const auto [lo, hi] = config.density_range;
            inst = generate_mcp(n, seed, lo + (hi - lo) * rng.uniform01());
            break;
          }
        }
        if (!keys.insert(canonical_key(inst)).second) continue;
        char id[96];
        std::snprintf(id, sizeof id, "%s-m%llu-n%d-%05d", std::string(to_string(config.task)).c_str(),
                      static_cast<unsigned long long>(config.master_seed), n, index);
        std::visit([&](auto& x) { x.id = id; }, inst);
        out.push_back(std::move(inst));
        placed = true;
      }
      if (!placed) {
        throw GenerationExhausted("generate_batch: no unique " + std::string(to_string(config.task)) +
                                  " instance with n=" + std::to_string(n) + " after " +
                                  std::to_string(config.retry_budget) + " attempts");
      }
    }
  }
  return out;
}

namespace {

// Colour refinement seeded with atom labels. Final order is (colour, original index), so
// the key is invariant to bond order but only approximately to atom re-indexing.
std::string molecule_key(const Molecule& mol) {
  const int n = mol.size();
  std::vector<Bond> bonds = mol.bonds;
  normalize_bonds(bonds);
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : bonds) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<std::string> sig(mol.atom_labels);
  std::vector<int> color(n, 0);
  int classes = 0;
  for (int round = 0; round <= n; ++round) {
    std::vector<std::string> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < n; ++i)
      color[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    const int now = static_cast<int>(sorted.size());
    if (now == classes) break;
    classes = now;
    for (int i = 0; i < n; ++i) {
      std::vector<int> nb;
      for (int j : adj[i]) nb.push_back(color[j]);
      std::sort(nb.begin(), nb.end());
      std::string s = std::to_string(color[i]) + ":";
      for (int c : nb) s += std::to_string(c) + ",";
      sig[i] = std::move(s);
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return color[a] < color[b]; });
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[order[i]] = i;

  std::ostringstream os;
  os << n << ":";
  for (int v : order) os << mol.atom_labels[v] << ",";
  std::vector<Bond> relabeled;
  for (auto [a, b] : bonds) relabeled.emplace_back(rank[a], rank[b]);
  normalize_bonds(relabeled);
  os << ":";
  for (auto [a, b] : relabeled) os << a << "-" << b << ",";
  return os.str();
}

struct KeyVisitor {
  std::string operator()(const TspInstance& x) const {
    std::vector<int> order(x.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return x.node_names[a] < x.node_names[b]; });
    std::ostringstream os;
    os << "tsp|" << x.n() << "|";
    for (int v : order) os << x.node_names[v] << ",";
    os << "|";
    for (int i = 0; i < x.n(); ++i)
      for (int j = i + 1; j < x.n(); ++j) os << x.dist(order[i], order[j]) << ",";
    return os.str();
  }

  std::string operator()(const GedInstance& x) const {
    return "ged|" + molecule_key(x.mol_a) + "|" + molecule_key(x.mol_b);
  }

  std::string operator()(const McpInstance& x) const {
    std::vector<std::string> names = x.author_names;
    std::sort(names.begin(), names.end());
    std::vector<std::pair<std::string, std::string>> edges;
    for (auto [a, b] : x.edges) {
      auto na = x.author_names[a], nb = x.author_names[b];
      if (nb < na) std::swap(na, nb);
      edges.emplace_back(std::move(na), std::move(nb));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::ostringstream os;
    os << "mcp|" << x.n() << "|";
    for (const auto& s : names) os << s << ";";
    os << "|";
    for (const auto& [a, b] : edges) os << a << "~" << b << ";";
    return os.str();
  }
};

}  // namespace

std::string canonical_key(const ProblemInstance& instance) { return std::visit(KeyVisitor{}, instance); }

}  // namespace graphr
