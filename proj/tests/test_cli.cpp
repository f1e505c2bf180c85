#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "graphr/instance.hpp"
#include "graphr/oracle.hpp"
#include "graphr/prompt_render.hpp"

using namespace graphr;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;

  std::vector<json> records() const {
    std::vector<json> result;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) result.push_back(json::parse(line));
    return result;
  }
};

class Workdir {
public:
  Workdir() : root_(fs::temp_directory_path() / ("graphr_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(root_);
  }
  ~Workdir() { fs::remove_all(root_); }

  std::string path(const std::string& name) const { return (root_ / name).string(); }

  void write(const std::string& name, const std::string& content) const { std::ofstream(path(name)) << content; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    return {std::istreambuf_iterator<char>(in), {}};
  }

  Run run(const std::string& args, const std::string& stdin_text = {}) const {
    write("stdin", stdin_text);
    const std::string cmd = std::string("'") + GRAPHR_CLI_PATH + "' " + args + " < '" + path("stdin") + "' > '" +
                            path("stdout") + "' 2> '" + path("stderr") + "'";
    const int raw = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read("stdout");
    r.err = read("stderr");
    return r;
  }

private:
  fs::path root_;
};

std::string lines(const std::vector<json>& docs) {
  std::string s;
  for (const auto& d : docs) s += d.dump() + "\n";
  return s;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generate and solve") {
    const Workdir w;
    const Run gen = w.run("generate --task tsp --n 6 7 --count 3 --seed 9");
    REQUIRE(gen.code == 0);
    const auto records = gen.records();
    REQUIRE(records.size() == 6);
    for (const auto& r : records) CHECK(r.at("task") == "tsp");
    CHECK(w.run("generate --task tsp --n 6 7 --count 3 --seed 9").out == gen.out);

    const Run solved = w.run("solve", gen.out);
    REQUIRE(solved.code == 0);
    const auto answers = solved.records();
    REQUIRE(answers.size() == 6);
    for (std::size_t i = 0; i < answers.size(); ++i) {
      const auto inst = instance_from_json(records[i]);
      CHECK(answers[i].at("id") == id_of(inst));
      CHECK(answers[i].at("optimal_value").get<double>() == solve(inst).optimal_value);
    }
  }

  TEST_CASE("render and extract") {
    const Workdir w;
    const ProblemInstance mcp = testing::sample_mcp();
    const Run rendered = w.run("render", to_json(mcp).dump() + "\n");
    REQUIRE(rendered.code == 0);
    CHECK(rendered.records().at(0).at("prompt") == render(mcp));

    const Run with_sys = w.run("render --with-system-prompt", to_json(mcp).dump() + "\n");
    CHECK(with_sys.records().at(0).at("prompt") == system_prompt() + "\n\n" + render(mcp));

    const Run ex = w.run("extract --task ged",
                         lines({{{"id", "a"}, {"response", "<think>[9]</think> answer: [1, 0, 2]"}},
                                {{"id", "b"}, {"response", "no list here"}}}));
    REQUIRE(ex.code == 0);
    const auto out = ex.records();
    CHECK(out.at(0).at("solution") == json::array({1, 0, 2}));
    CHECK(out.at(1).contains("parse_failure"));
  }

  TEST_CASE("score in both modes") {
    const Workdir w;
    const ProblemInstance ged = testing::sample_ged();
    w.write("instances.jsonl", to_json(ged).dump() + "\n");
    const std::string input = lines({{{"instance_id", "sample-ged"}, {"response", "<think>t</think>[0, 1, 2, 3]"}},
                                     {{"instance_id", "sample-ged"}, {"response", "[0, 0, 1, 2]"}},
                                     {{"instance_id", "nope"}, {"response", "[0]"}}});
    const Run reward = w.run("score --mode reward --instances '" + w.path("instances.jsonl") + "'", input);
    CHECK(reward.code == 1);
    const auto r = reward.records();
    REQUIRE(r.size() == 3);
    CHECK(r[0].at("total") == 3.0);
    CHECK(r[0].at("outcome").at("kind") == "optimal");
    CHECK(r[1].at("total") == -1.0);
    CHECK(r[1].at("outcome").at("kind") == "infeasible");
    CHECK(r[2].contains("error"));

    const Run verify = w.run("score --mode verify --instances '" + w.path("instances.jsonl") + "'",
                             lines({{{"instance_id", "sample-ged"}, {"response", "[1, 0, 2, 3]"}}}));
    CHECK(verify.code == 0);
    CHECK(verify.records().at(0).at("outcome").at("kind") == "suboptimal");

    const Run strict = w.run("score --strict-format --instances '" + w.path("instances.jsonl") + "'",
                             lines({{{"instance_id", "sample-ged"}, {"response", " <think>t</think>[0, 1, 2, 3]"}}}));
    CHECK(strict.records().at(0).at("format") == 0.0);
  }

  TEST_CASE("filter writes retained records and a log") {
    const Workdir w;
    const ProblemInstance tsp = testing::sample_tsp();
    w.write("instances.jsonl", to_json(tsp).dump() + "\n");
    const std::string witness = format_solution(solve(tsp).witness);
    const std::string input = lines({{{"instance_id", "sample-tsp"}, {"response", "<think></think>" + witness}},
                                     {{"instance_id", "sample-tsp"}, {"response", "no answer"}},
                                     {{"instance_id", "sample-tsp"}, {"response", "[CDG, CDG]"}}});
    const Run r = w.run("filter --instances '" + w.path("instances.jsonl") + "' --log '" + w.path("log.json") + "'", input);
    REQUIRE(r.code == 0);
    const auto kept = r.records();
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].at("instance_id") == "sample-tsp");
    const json log = json::parse(w.read("log.json"));
    CHECK(log.at("counts").at("parse_failure") == 1);
    CHECK(log.at("counts").at("infeasible") == 1);
    CHECK(log.at("counts").at("rejected") == 2);
  }

  TEST_CASE("eval aggregates attempts") {
    const Workdir w;
    const std::string input =
        lines({{{"id", "p1"}, {"task", "tsp"}, {"outcome", {{"kind", "optimal"}}}, {"length", 10}},
               {{"id", "p1"}, {"task", "tsp"}, {"outcome", {{"kind", "infeasible"}}}, {"length", 30}},
               {{"id", "p2"}, {"task", "mcp"}, {"outcome", {{"kind", "parse_failure"}}}, {"response", "a b c d"}},
               {{"id", "p2"}, {"task", "mcp"}, {"outcome", {{"kind", "optimal"}}}, {"length", 6}}});
    const Run r = w.run("eval --k 2", input);
    REQUIRE(r.code == 0);
    const json report = r.records().at(0);
    CHECK(report.at("k") == 2);
    CHECK(report.at("accuracy") == 0.5);
    CHECK(report.at("pass_at_k") == 1.0);
    CHECK(report.at("per_task").contains("tsp"));
  }

  TEST_CASE("curriculum stage and schedule") {
    const Workdir w;
    const Run r = w.run("curriculum --level 1 --manifest '" + w.path("m.json") + "'");
    REQUIRE(r.code == 0);
    CHECK(r.records().size() == 9000);
    const json manifest = json::parse(w.read("m.json"));
    CHECK(manifest.at("budget") == 4096);
    CHECK(manifest.at("temperature") == 1.0);

    const Run anti = w.run("curriculum --schedule --order anti");
    const auto phases = anti.records();
    REQUIRE(phases.size() == 5);
    CHECK(phases.front().at("stage").at("level") == 5);
  }

  TEST_CASE("options from a config file") {
    const Workdir w;
    w.write("gen.toml", "[generate]\ntask = \"mcp\"\nn = [6, 7]\ncount = 2\nseed = 5\n");
    const Run from_file = w.run("--config '" + w.path("gen.toml") + "' generate");
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == w.run("generate --task mcp --n 6 7 --count 2 --seed 5").out);
    CHECK(from_file.records().size() == 4);
  }

  TEST_CASE("usage errors exit with 2") {
    const Workdir w;
    CHECK(w.run("generate --no-such-flag").code == 2);
    CHECK(w.run("").code == 2);
    CHECK(w.run("curriculum --level 9").code == 2);
  }

  TEST_CASE("generate, render, answer, score round trip") {
    const Workdir w;
    const Run gen = w.run("generate --task mcp --n 8 --count 4 --seed 3");
    REQUIRE(gen.code == 0);
    w.write("instances.jsonl", gen.out);
    const Run rendered = w.run("render", gen.out);
    REQUIRE(rendered.records().size() == 4);

    std::vector<json> answers;
    for (const auto& rec : gen.records()) {
      const auto inst = instance_from_json(rec);
      answers.push_back({{"instance_id", id_of(inst)},
                         {"response", "<think>clique search</think>" + format_solution(solve(inst).witness)}});
    }
    const Run scored = w.run("score --instances '" + w.path("instances.jsonl") + "' --oracle-cache '" +
                                 w.path("cache.jsonl") + "'",
                             lines(answers));
    REQUIRE(scored.code == 0);
    for (const auto& s : scored.records()) CHECK(s.at("total") == 3.0);
    const Run again = w.run("score --instances '" + w.path("instances.jsonl") + "' --oracle-cache '" +
                                w.path("cache.jsonl") + "'",
                            lines(answers));
    CHECK(again.out == scored.out);
  }
}
