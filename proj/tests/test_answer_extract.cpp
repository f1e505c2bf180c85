#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "graphr/answer_extract.hpp"

using namespace graphr;

namespace {

template <class T>
T expect_solution(const ExtractionResult& r) {
  REQUIRE(std::holds_alternative<StructuredSolution>(r));
  const auto& s = std::get<StructuredSolution>(r);
  REQUIRE(std::holds_alternative<T>(s));
  return std::get<T>(s);
}

}  // namespace

TEST_SUITE("answer_extract") {
  TEST_CASE("single well-formed tour") {
    const auto route = expect_solution<TspRoute>(extract(TaskKind::TSP, "...the tour is [A, B, C, A]"));
    CHECK(route.nodes == std::vector<std::string>{"A", "B", "C", "A"});
  }

  TEST_CASE("last conforming list wins over the template example") {
    const std::string text = "...mapping would be represented as [1, 0, 2, ...]. Final: [0, 1, 2, 3]";
    CHECK(expect_solution<GedMapping>(extract(TaskKind::GED, text)).targets == std::vector<int>{0, 1, 2, 3});
    // And when the non-conforming list comes last, the earlier conforming one is used.
    const std::string reversed = "Final: [0, 1, 2, 3] as opposed to [1, 0, 2, ...]";
    CHECK(expect_solution<GedMapping>(extract(TaskKind::GED, reversed)).targets == std::vector<int>{0, 1, 2, 3});
  }

  TEST_CASE("no bracketed list is a parse failure") {
    for (TaskKind t : kAllTasks) {
      const auto r = extract(t, "no answer given");
      REQUIRE(std::holds_alternative<ParseFailure>(r));
      CHECK_FALSE(std::get<ParseFailure>(r).span.has_value());
    }
  }

  TEST_CASE("non-conforming lists report a span") {
    const auto r = extract(TaskKind::GED, "maybe [a, b]?");
    REQUIRE(std::holds_alternative<ParseFailure>(r));
    CHECK(std::get<ParseFailure>(r).span == std::optional<std::string>("[a, b]"));
  }

  TEST_CASE("tsp lists must be closed") {
    CHECK(std::holds_alternative<ParseFailure>(extract(TaskKind::TSP, "[A, B, C]")));
    CHECK(std::holds_alternative<ParseFailure>(extract(TaskKind::TSP, "[A]")));
    const auto r = extract(TaskKind::TSP, "[A, B, C, A] then open [B, C, A]");
    CHECK(expect_solution<TspRoute>(r).nodes.front() == "A");
  }

  TEST_CASE("element grammar") {
    CHECK(expect_solution<McpClique>(extract(TaskKind::MCP, "[Gary V. Yee,  Jean-Dominique Decotignie ]")).nodes ==
          std::vector<std::string>{"Gary V. Yee", "Jean-Dominique Decotignie"});
    CHECK(expect_solution<McpClique>(extract(TaskKind::MCP, "['Ann Li', \"Bo Wu\"]")).nodes ==
          std::vector<std::string>{"Ann Li", "Bo Wu"});
    CHECK(std::holds_alternative<ParseFailure>(extract(TaskKind::MCP, "[AuthorA, AuthorB, ...]")));
    CHECK(std::holds_alternative<ParseFailure>(extract(TaskKind::MCP, "[]")));
    CHECK(std::holds_alternative<ParseFailure>(extract(TaskKind::MCP, "[A, , B]")));
    CHECK(std::holds_alternative<ParseFailure>(extract(TaskKind::GED, "[0, -1, 2]")));
    CHECK(std::holds_alternative<ParseFailure>(extract(TaskKind::GED, "[0, 1.5]")));
  }

  TEST_CASE("nested brackets use the innermost list") {
    CHECK(expect_solution<GedMapping>(extract(TaskKind::GED, "[[2, 0, 1]]")).targets == std::vector<int>{2, 0, 1});
  }

  TEST_CASE("appending a conforming list changes the result") {
    std::string text = "<think>try [A, B, C, A]</think>";
    CHECK(expect_solution<TspRoute>(extract(TaskKind::TSP, text)).nodes[1] == "B");
    text += "<answer>[A, C, B, A]</answer>";
    CHECK(expect_solution<TspRoute>(extract(TaskKind::TSP, text)).nodes[1] == "C");
  }

  TEST_CASE("extract is total on arbitrary bytes") {
    std::mt19937 rng(7);
    const std::string alphabet = "[],0123456789 ABC\n\t.'\"\xE2\x80\xA6\xff";
    for (int i = 0; i < 5000; ++i) {
      std::string s(rng() % 120, ' ');
      for (char& c : s) c = (rng() % 4 == 0) ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
      for (TaskKind t : kAllTasks) CHECK_NOTHROW((void)extract(t, s));
    }
  }

  TEST_CASE("formatted solutions parse back to themselves") {
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
      const int n = 1 + static_cast<int>(rng() % 15);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::string> names;
      for (int v : perm) names.push_back("Node " + std::to_string(v) + (v % 2 ? "-x" : ""));
      const StructuredSolution ged = GedMapping{perm};
      const StructuredSolution mcp = McpClique{names};
      names.push_back(names.front());
      const StructuredSolution tsp = TspRoute{names};
      for (const auto& sol : {tsp, ged, mcp}) {
        const auto r = extract(task_of(sol), "answer: " + format_solution(sol));
        REQUIRE(std::holds_alternative<StructuredSolution>(r));
        CHECK(std::get<StructuredSolution>(r) == sol);
      }
    }
  }
}
