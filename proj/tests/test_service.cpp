#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <unistd.h>
#include <filesystem>
#include <future>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "graphr/oracle.hpp"
#include "graphr/service.hpp"
#include "tcp_client.hpp"

using namespace graphr;
using namespace graphr::testing;
using nlohmann::json;

namespace {

InstanceStore sample_store() {
  return InstanceStore({ProblemInstance{sample_tsp()}, ProblemInstance{sample_ged()},
                        ProblemInstance{sample_mcp()}});
}

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("sample ged request scores 3.0") {
    const auto store = sample_store();
    OracleCache cache;
    const Scorer scorer(store, cache);
    const json reply = scorer.handle_line(
        json{{"req_id", "r1"}, {"instance_id", "sample-ged"}, {"response", "<think>C becomes Ge</think>[0, 1, 2, 3]"}}
            .dump());
    CHECK(reply.at("req_id") == "r1");
    CHECK(reply.at("outcome").at("kind") == "optimal");
    CHECK(reply.at("reward").at("quality") == 2.0);
    CHECK(reply.at("reward").at("format") == 1.0);
    CHECK(reply.at("reward").at("repetition_detected") == false);
    CHECK(reply.at("reward").at("total") == 3.0);
  }

  TEST_CASE("malformed lines get an error and the loop continues") {
    const auto store = sample_store();
    OracleCache cache;
    const Scorer scorer(store, cache);
    std::istringstream in("{not json\n" + json{{"req_id", 7}, {"instance_id", "nope"}, {"response", ""}}.dump() +
                          "\n[1,2]\n" + json{{"req_id", "x"}, {"instance_id", "sample-mcp"}}.dump() + "\n" +
                          json{{"req_id", "ok"}, {"instance_id", "sample-mcp"}, {"response", "[Michel Misson]"}}.dump() +
                          "\n");
    std::ostringstream out;
    CHECK(serve_stream(scorer, in, out) == 0);
    std::istringstream replies(out.str());
    std::vector<json> lines;
    for (std::string line; std::getline(replies, line);) lines.push_back(json::parse(line));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0].contains("error"));
    CHECK_FALSE(lines[0].contains("req_id"));
    CHECK(lines[1].at("req_id") == 7);
    CHECK(lines[1].at("error").get<std::string>().find("unknown instance_id") != std::string::npos);
    CHECK(lines[2].contains("error"));
    CHECK(lines[3].at("req_id") == "x");
    CHECK(lines[3].contains("error"));
    CHECK(lines[4].at("outcome").at("kind") == "suboptimal");
    CHECK(lines[4].at("reward").at("quality") == 0.125);
  }

  TEST_CASE("batch replies keep item order") {
    std::vector<ProblemInstance> instances;
    for (Seed s = 0; s < 50; ++s) instances.push_back(generate_mcp(8, s, 0.5));
    const InstanceStore store(instances);
    OracleCache cache;
    Scorer scorer(store, cache);
    scorer.parallel_threshold = 64;
    scorer.max_threads = 4;

    json items = json::array();
    std::vector<double> expected;
    for (int i = 0; i < 10000; ++i) {
      const auto& inst = instances[i % instances.size()];
      const auto witness = solve(inst).witness;
      const std::string response = i % 3 == 0 ? format_solution(witness) : "[" + std::get<McpInstance>(inst).author_names[i % 8] + "]";
      items.push_back({{"instance_id", id_of(inst)}, {"response", response}, {"req_id", i}});
      expected.push_back(total_reward(inst, response, solve(inst).optimal_value).total);
    }
    items.push_back({{"instance_id", "missing"}, {"response", "x"}});
    const json reply = scorer.handle_line(json{{"req_id", "batch"}, {"items", items}}.dump());
    REQUIRE(reply.at("items").size() == 10001);
    for (int i = 0; i < 10000; ++i) {
      CHECK(reply["items"][i].at("req_id") == i);
      CHECK(reply["items"][i].at("reward").at("total") == expected[i]);
    }
    CHECK(reply["items"][10000].contains("error"));
    CHECK(cache.size() == 50);
  }

  TEST_CASE("ping") {
    const auto store = sample_store();
    OracleCache cache;
    const Scorer scorer(store, cache);
    const json reply = scorer.handle_line(R"({"req_id":"p","ping":true})");
    CHECK(reply.at("pong") == true);
    CHECK(reply.at("req_id") == "p");
  }

  TEST_CASE("oracle cache persists to its sidecar") {
    const auto path = std::filesystem::temp_directory_path() / ("graphr_cache_" + std::to_string(::getpid()) + ".jsonl");
    std::filesystem::remove(path);
    const ProblemInstance inst = sample_tsp();
    {
      OracleCache cache(path.string());
      CHECK(cache.optimal_value(inst) == solve(inst).optimal_value);
      CHECK(cache.optimal_value(inst) == solve(inst).optimal_value);
    }
    OracleCache reloaded(path.string());
    CHECK(reloaded.size() == 1);
    std::ifstream in(path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 1);
    std::filesystem::remove(path);
  }

  TEST_CASE("tcp transport") {
    const auto store = sample_store();
    OracleCache cache;
    const Scorer scorer(store, cache);
    std::atomic<bool> stop{false};
    std::promise<int> port_promise;
    TcpServerOptions options;
    options.stop = &stop;
    options.on_listening = [&](int p) { port_promise.set_value(p); };
    std::thread server([&] { CHECK(serve_tcp(scorer, options) == 0); });
    const int port = port_promise.get_future().get();

    {
      LineClient a(port), b(port);
      const std::string good =
          json{{"req_id", "g"}, {"instance_id", "sample-ged"}, {"response", "<think>x</think>[0, 1, 2, 3]"}}.dump();
      a.send("garbage\n" + good + "\n");
      b.send(json{{"req_id", "b1"}, {"ping", true}}.dump() + "\r\n");
      CHECK(json::parse(b.read_line()).at("req_id") == "b1");
      CHECK(json::parse(a.read_line()).contains("error"));
      const json reply = json::parse(a.read_line());
      CHECK(reply == scorer.handle_line(good));
      CHECK(reply.at("reward").at("total") == 3.0);
    }
    stop = true;
    server.join();
  }
}
