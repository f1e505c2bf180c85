#include "graphr/answer_extract.hpp"

#include <cctype>

#include "graphr/errors.hpp"

namespace graphr {

namespace {

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view body) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      parts.push_back(trim(body.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

// Models sometimes quote list items: ['A', "B"].
std::string_view strip_quotes(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front())
    return trim(s.substr(1, s.size() - 2));
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (s.find("...") != std::string_view::npos || s.find("\xE2\x80\xA6") != std::string_view::npos) return false;
  bool has_word_char = false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x20 || c == 0x7F) return false;
    if (c == '[' || c == ']' || c == '{' || c == '}' || c == '<' || c == '>' || c == '"' || c == '`' || c == '=')
      return false;
    if (std::isalnum(c) || c >= 0x80) has_word_char = true;
  }
  return has_word_char;
}

bool is_index(std::string_view s) {
  if (s.empty() || s.size() > 9) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::optional<StructuredSolution> parse_list(TaskKind task, std::string_view body) {
  const auto parts = split_commas(body);
  switch (task) {
    case TaskKind::GED: {
      GedMapping m;
      for (auto p : parts) {
        if (!is_index(p)) return std::nullopt;
        m.targets.push_back(std::stoi(std::string(p)));
      }
      return m;
    }
    case TaskKind::TSP:
    case TaskKind::MCP: {
      std::vector<std::string> names;
      for (auto p : parts) {
        p = strip_quotes(p);
        if (!is_identifier(p)) return std::nullopt;
        names.emplace_back(p);
      }
      if (task == TaskKind::MCP) return McpClique{std::move(names)};
      if (names.size() < 2 || names.front() != names.back()) return std::nullopt;
      return TspRoute{std::move(names)};
    }
  }
  return std::nullopt;
}

}  // namespace

ExtractionResult extract(TaskKind task, std::string_view response) {
  // Innermost "[...]" groups, scanned right to left so the first hit is the last list.
  bool saw_list = false;
  std::string_view last_rejected;
  std::size_t close = response.size();
  while (close > 0) {
    close = response.rfind(']', close - 1);
    if (close == std::string_view::npos) break;
    const std::size_t open = response.find_last_of("[]", close == 0 ? 0 : close - 1);
    if (open == std::string_view::npos || close == 0) break;
    if (response[open] == ']') continue;
    saw_list = true;
    const std::string_view body = response.substr(open + 1, close - open - 1);
    if (auto sol = parse_list(task, body)) return *sol;
    if (last_rejected.empty()) last_rejected = response.substr(open, close - open + 1);
  }
  if (!saw_list) return ParseFailure{"no bracketed list found", std::nullopt};
  constexpr std::size_t kMaxSpan = 200;
  return ParseFailure{"no bracketed list matches the " + std::string(to_string(task)) + " answer format",
                      std::string(last_rejected.substr(0, kMaxSpan))};
}

std::string format_solution(const StructuredSolution& solution) {
  std::string out = "[";
  auto append = [&](const auto& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      if constexpr (std::is_same_v<std::decay_t<decltype(items[i])>, int>)
        out += std::to_string(items[i]);
      else
        out += items[i];
    }
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GedMapping>)
          append(s.targets);
        else
          append(s.nodes);
      },
      solution);
  return out + "]";
}

nlohmann::json to_json(const StructuredSolution& solution) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GedMapping>)
          return s.targets;
        else
          return s.nodes;
      },
      solution);
}

StructuredSolution solution_from_json(TaskKind task, const nlohmann::json& j) {
  try {
    switch (task) {
      case TaskKind::TSP: return TspRoute{j.get<std::vector<std::string>>()};
      case TaskKind::GED: return GedMapping{j.get<std::vector<int>>()};
      case TaskKind::MCP: return McpClique{j.get<std::vector<std::string>>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed solution: ") + e.what());
  }
  throw InputError("unreachable task");
}

}  // namespace graphr
