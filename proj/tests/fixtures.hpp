#pragma once

// Small hand-written instances shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "graphr/instance.hpp"
#include "graphr/instance_gen.hpp"
#include "brute_force.hpp"

namespace graphr::testing {

inline TspInstance sample_tsp() {
  TspInstance x;
  x.id = "sample-tsp";
  x.node_names = {"BVC", "URA", "SMR", "KOK", "MTV", "TFF", "FLN", "YZF"};
  x.dist = DistanceMatrix(8);
  const struct {
    const char* a;
    const char* b;
    int d;
  } pairs[] = {
      {"BVC", "KOK", 6401},  {"BVC", "YZF", 9193},  {"BVC", "TFF", 5716},  {"BVC", "FLN", 5667},
      {"BVC", "SMR", 8046},  {"BVC", "URA", 8349},  {"BVC", "MTV", 20125}, {"URA", "KOK", 3138},
      {"URA", "YZF", 11132}, {"URA", "TFF", 13590}, {"URA", "FLN", 13463}, {"URA", "SMR", 13193},
      {"URA", "MTV", 14802}, {"SMR", "KOK", 11079}, {"SMR", "YZF", 7927},  {"SMR", "TFF", 4079},
      {"SMR", "FLN", 5562},  {"SMR", "MTV", 16291}, {"KOK", "YZF", 8634},  {"KOK", "TFF", 11307},
      {"KOK", "FLN", 11987}, {"KOK", "MTV", 16203}, {"MTV", "YZF", 12733}, {"MTV", "TFF", 18200},
      {"MTV", "FLN", 14727}, {"TFF", "YZF", 9491},  {"TFF", "FLN", 3676},  {"FLN", "YZF", 11826},
  };
  auto idx = [&](const std::string& s) {
    for (int i = 0; i < 8; ++i)
      if (x.node_names[i] == s) return i;
    return -1;
  };
  for (const auto& p : pairs) x.dist.set(idx(p.a), idx(p.b), p.d);
  return x;
}

inline GedInstance sample_ged() {
  GedInstance x;
  x.id = "sample-ged";
  x.mol_a = {{"Cl", "C", "Cl", "Cl"}, {{0, 1}, {1, 2}, {1, 3}}};
  x.mol_b = {{"Cl", "Ge", "Cl", "Cl"}, {{0, 1}, {1, 2}, {1, 3}}};
  return x;
}

inline McpInstance sample_mcp() {
  McpInstance x;
  x.id = "sample-mcp";
  x.author_names = {"Gang Zhou",   "Jean-Dominique Decotignie", "Michel Misson", "Pascale Minet",
                    "Gary V. Yee", "Bhaskar Krishnamachari",    "Rana Diab",     "Erwan Livolant"};
  x.edges = {{0, 5}, {0, 2}, {0, 6}, {1, 2}, {2, 3}, {2, 5}, {2, 4}, {2, 7}, {2, 6}, {3, 5}, {3, 7}, {5, 7}};
  normalize_bonds(x.edges);
  return x;
}

inline std::vector<std::vector<std::int64_t>> dense(const TspInstance& x) {
  std::vector<std::vector<std::int64_t>> d(x.n(), std::vector<std::int64_t>(x.n()));
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) d[i][j] = x.dist(i, j);
  return d;
}

inline LabelledGraph labelled(const Molecule& m) { return {m.atom_labels, m.bonds}; }

}  // namespace graphr::testing
