#include "graphr/prompt_render.hpp"

#include <string_view>

#include "prompt_templates.inc"

namespace graphr {

namespace {

std::string load(std::string_view raw) {
  std::string s(raw);
  std::erase(s, '\r');
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

void fill(std::string& text, std::string_view placeholder, const std::string& value) {
  const auto pos = text.find(placeholder);
  if (pos != std::string::npos) text.replace(pos, placeholder.size(), value);
}

template <class Range, class Fn>
std::string join(const Range& items, std::string_view sep, Fn&& fn) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    out += fn(item);
    first = false;
  }
  return out;
}

std::string atoms_text(const Molecule& mol) {
  std::string out;
  for (int i = 0; i < mol.size(); ++i) {
    if (i) out += ", ";
    out += mol.atom_labels[i] + " (atom " + std::to_string(i) + ")";
  }
  return out;
}

std::string bonds_text(const Molecule& mol) {
  if (mol.bonds.empty()) return "none";
  return join(mol.bonds, ", ", [](const Bond& b) { return std::to_string(b.first) + "-" + std::to_string(b.second); });
}

std::string render_tsp(const TspInstance& x) {
  std::string text = load(templates::kTsp);
  fill(text, "{airports}", join(x.node_names, ", ", [](const std::string& s) { return s; }));
  std::string lines;
  for (int i = 0; i < x.n(); ++i) {
    for (int j = i + 1; j < x.n(); ++j) {
      if (!lines.empty()) lines += '\n';
      lines += x.node_names[i] + " to " + x.node_names[j] + ": " + std::to_string(x.dist(i, j));
    }
  }
  fill(text, "{distances}", lines);
  return text;
}

std::string render_ged(const GedInstance& x) {
  std::string text = load(templates::kGed);
  fill(text, "{atoms_a}", atoms_text(x.mol_a));
  fill(text, "{bonds_a}", bonds_text(x.mol_a));
  fill(text, "{atoms_b}", atoms_text(x.mol_b));
  fill(text, "{bonds_b}", bonds_text(x.mol_b));
  return text;
}

std::string render_mcp(const McpInstance& x) {
  std::string text = load(templates::kMcp);
  fill(text, "{authors}", join(x.author_names, ", ", [](const std::string& s) { return s; }));
  std::string edges = x.edges.empty() ? std::string("none")
                                      : join(x.edges, ", ", [&](const std::pair<int, int>& e) {
                                          return x.author_names[e.first] + " and " + x.author_names[e.second];
                                        });
  fill(text, "{collaborations}", edges);
  return text;
}

}  // namespace

std::string render(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TspInstance>)
          return render_tsp(x);
        else if constexpr (std::is_same_v<T, GedInstance>)
          return render_ged(x);
        else
          return render_mcp(x);
      },
      instance);
}

const std::string& system_prompt() {
  static const std::string prompt = load(templates::kSystem);
  return prompt;
}

}  // namespace graphr
