// graphr: generate, solve, render, extract, score, filter, curriculum, eval and serve over
// line-delimited JSON.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graphr/answer_extract.hpp"
#include "graphr/curriculum.hpp"
#include "graphr/dataset_pipeline.hpp"
#include "graphr/errors.hpp"
#include "graphr/eval.hpp"
#include "graphr/instance_gen.hpp"
#include "graphr/length_counter.hpp"
#include "graphr/oracle.hpp"
#include "graphr/prompt_render.hpp"
#include "graphr/reward.hpp"
#include "graphr/service.hpp"

using nlohmann::json;
using namespace graphr;

namespace {

// Per-record problems are reported as {id?, error} lines and turn the exit status to 1.
struct Status {
  bool data_error = false;

  void report(std::ostream& out, const json& id, const std::string& message) {
    data_error = true;
    json err{{"error", message}};
    if (!id.is_null()) err["id"] = id;
    out << err.dump() << '\n';
  }
  int code() const { return data_error ? 1 : 0; }
};

template <class Fn>
void for_each_record(std::istream& in, Status& status, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      status.report(std::cout, nullptr, "line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
      continue;
    }
    json id = record.is_object() ? record.value("id", record.value("instance_id", json())) : json();
    try {
      fn(record);
    } catch (const OracleBugError&) {
      throw;
    } catch (const std::exception& e) {
      status.report(std::cout, id, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::map<std::string, double> load_oracle_file(const std::string& path) {
  std::map<std::string, double> values;
  if (path.empty()) return values;
  std::ifstream in(path);
  if (!in) throw InputError("cannot open oracle file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    values[j.at("id").get<std::string>()] = j.at("optimal_value").get<double>();
  }
  return values;
}

// Oracle value precedence: record field, --oracle file, cache (solving on a miss).
struct OracleSource {
  std::map<std::string, double> by_id;
  OracleCache cache;

  double lookup(const ProblemInstance& inst, const json& record) {
    if (record.is_object() && record.contains("optimal_value")) return record.at("optimal_value").get<double>();
    if (auto it = by_id.find(id_of(inst)); it != by_id.end()) return it->second;
    return cache.optimal_value(inst);
  }
};

ProblemInstance resolve_instance(const json& record, const InstanceStore& store) {
  if (auto it = record.find("instance"); it != record.end() && it->is_object()) return instance_from_json(*it);
  const std::string id = record.value("instance_id", record.value("id", std::string{}));
  if (const ProblemInstance* inst = store.find(id)) return *inst;
  throw InputError("unknown instance '" + id + "'");
}

json repetition_json(const RepetitionReport& r) {
  return {{"detected", r.detected}, {"substring", r.substring}, {"count", r.count}};
}

volatile std::sig_atomic_t g_signal = 0;
std::atomic<bool> g_stop{false};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instance generation, exact solving, verification and reward scoring for TSP/GED/MCP"};
  app.set_config("--config", "", "TOML/INI file whose keys mirror long flag names");
  app.require_subcommand(1);

  // generate
  std::string gen_task = "tsp";
  std::vector<int> gen_sizes;
  int gen_count = 1;
  Seed gen_seed = 0;
  std::string gen_preset;
  std::vector<double> gen_density{0.3, 0.7};
  std::vector<int> gen_budget{1, 4};
  auto* generate = app.add_subcommand("generate", "Emit de-duplicated instance records");
  generate->add_option("--task", gen_task, "tsp | ged | mcp");
  generate->add_option("--n", gen_sizes, "Node count(s)");
  generate->add_option("--count", gen_count, "Instances per node count")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Master seed");
  generate->add_option("--preset", gen_preset, "'sft' emits the full 9000-instance SFT corpus")
      ->check(CLI::IsMember({"sft"}));
  generate->add_option("--density", gen_density, "MCP density range (lo hi)")->expected(2);
  generate->add_option("--edit-budget", gen_budget, "GED edit budget range (lo hi)")->expected(2);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Exact optimum and witness for each instance record");

  // render
  bool with_system = false;
  auto* render_cmd = app.add_subcommand("render", "Natural-language prompt for each instance record");
  render_cmd->add_flag("--with-system-prompt", with_system, "Prepend the RL system prompt");

  // extract
  std::string extract_task;
  auto* extract_cmd = app.add_subcommand("extract", "Parse {id, response} records into solutions");
  extract_cmd->add_option("--task", extract_task, "tsp | ged | mcp")->required();

  // score
  std::string score_mode = "reward";
  std::string instances_path, oracle_path, cache_path;
  bool strict_format = false;
  int min_len = kDefaultMinRepeatLength, min_reps = kDefaultMinRepeats;
  auto* score = app.add_subcommand("score", "Verify or reward {id, instance|instance_id, response} records");
  score->add_option("--mode", score_mode, "verify | reward")->check(CLI::IsMember({"verify", "reward"}));
  score->add_option("--instances", instances_path, "Instance records for instance_id lookups");
  score->add_option("--oracle", oracle_path, "`solve` output with optimal values by id");
  score->add_option("--oracle-cache", cache_path, "Sidecar file caching optimal values by canonical key");
  score->add_flag("--strict-format", strict_format, "Require <think> at byte 0");
  score->add_option("--min-repeat-length", min_len, "Repetition length threshold");
  score->add_option("--min-repeats", min_reps, "Repetition count threshold");

  // filter
  std::string log_path;
  bool unique_per_instance = false;
  auto* filter = app.add_subcommand("filter", "Rejection-sample {instance_id, response} records");
  filter->add_option("--instances", instances_path, "Instance records")->required();
  filter->add_option("--oracle", oracle_path, "`solve` output with optimal values by id");
  filter->add_option("--oracle-cache", cache_path, "Sidecar oracle cache");
  filter->add_option("--log", log_path, "Write the rejection log here");
  filter->add_flag("--unique-per-instance", unique_per_instance, "Keep one optimal response per instance");

  // curriculum
  int level = 0;
  Seed cur_seed = kRlSeed;
  std::string order = "curriculum";
  std::string manifest_path;
  bool schedule_only = false;
  auto* curriculum = app.add_subcommand("curriculum", "Stage datasets and schedule presets");
  curriculum->add_option("--level", level, "Stage 1..5")->check(CLI::Range(1, kCurriculumLevels));
  curriculum->add_option("--seed", cur_seed, "Master seed");
  curriculum->add_option("--order", order, "curriculum | anti | mixed")
      ->check(CLI::IsMember({"curriculum", "anti", "mixed"}));
  curriculum->add_option("--manifest", manifest_path, "Write the stage manifest here (default: stderr)");
  curriculum->add_flag("--schedule", schedule_only, "Print the phase schedule for --order instead of a dataset");

  // eval
  int k = 1;
  auto* eval = app.add_subcommand("eval", "Aggregate {id, outcome, task?, response?|length?} records");
  eval->add_option("--k", k, "Attempts per problem")->check(CLI::PositiveNumber);

  // serve
  int port = -1;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Score requests over stdio (default) or TCP");
  serve->add_option("--instances", instances_path, "Instance records")->required();
  serve->add_option("--oracle", oracle_path, "`solve` output used to warm the oracle cache");
  serve->add_option("--oracle-cache", cache_path, "Sidecar oracle cache");
  serve->add_option("--port", port, "TCP port; omit for stdio");
  serve->add_option("--host", host, "TCP bind address");
  serve->add_flag("--strict-format", strict_format, "Require <think> at byte 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::ios::sync_with_stdio(false);
  Status status;
  RewardOptions reward_options;
  reward_options.min_repeat_length = min_len;
  reward_options.min_repeats = min_reps;
  reward_options.format.strict = strict_format;

  try {
    if (*generate) {
      std::vector<ProblemInstance> out;
      if (gen_preset == "sft") {
        out = assemble_sft_corpus(generate->count("--seed") ? gen_seed : kSftSeed);
      } else {
        if (gen_sizes.empty()) throw InputError("generate: --n is required without --preset");
        GenerationConfig config;
        config.task = parse_task(gen_task);
        config.master_seed = gen_seed;
        config.density_range = {gen_density[0], gen_density[1]};
        config.edit_budget_range = {gen_budget[0], gen_budget[1]};
        for (int n : gen_sizes) config.per_size_counts[n] = gen_count;
        out = generate_batch(config);
      }
      std::cout << manifest_jsonl(out);
    } else if (*solve_cmd) {
      for_each_record(std::cin, status, [](const json& r) {
        const auto inst = instance_from_json(r);
        std::cout << to_json(id_of(inst), solve(inst)).dump() << '\n';
      });
    } else if (*render_cmd) {
      for_each_record(std::cin, status, [&](const json& r) {
        const auto inst = instance_from_json(r);
        std::string prompt = render(inst);
        if (with_system) prompt = system_prompt() + "\n\n" + prompt;
        std::cout << json{{"id", id_of(inst)}, {"prompt", prompt}}.dump() << '\n';
      });
    } else if (*extract_cmd) {
      const TaskKind task = parse_task(extract_task);
      for_each_record(std::cin, status, [&](const json& r) {
        const auto result = extract(task, r.at("response").get<std::string>());
        json out{{"id", r.value("id", json())}};
        if (const auto* sol = std::get_if<StructuredSolution>(&result)) {
          out["solution"] = to_json(*sol);
        } else {
          const auto& failure = std::get<ParseFailure>(result);
          out["parse_failure"] = {{"reason", failure.reason}};
          if (failure.span) out["parse_failure"]["span"] = *failure.span;
        }
        std::cout << out.dump() << '\n';
      });
    } else if (*score) {
      const InstanceStore store = instances_path.empty() ? InstanceStore{} : InstanceStore::load_file(instances_path);
      OracleSource oracle{load_oracle_file(oracle_path), OracleCache(cache_path)};
      for_each_record(std::cin, status, [&](const json& r) {
        const auto inst = resolve_instance(r, store);
        const std::string response = r.at("response").get<std::string>();
        const double optimum = oracle.lookup(inst, r);
        const json id = r.value("id", json(id_of(inst)));
        if (score_mode == "verify") {
          std::cout << json{{"id", id}, {"outcome", to_json(verify_response(inst, response, optimum))}}.dump() << '\n';
        } else {
          const auto b = total_reward(inst, response, optimum, reward_options);
          std::cout << json{{"id", id},
                            {"format", b.format},
                            {"quality", b.quality},
                            {"repetition", repetition_json(b.repetition)},
                            {"total", b.total},
                            {"outcome", to_json(b.outcome)}}
                           .dump()
                    << '\n';
        }
      });
    } else if (*filter) {
      const InstanceStore store = InstanceStore::load_file(instances_path);
      OracleSource oracle{load_oracle_file(oracle_path), OracleCache(cache_path)};
      std::vector<DatasetRecord> records;
      std::vector<json> raw;
      for_each_record(std::cin, status, [&](const json& r) {
        auto inst = resolve_instance(r, store);
        records.push_back(make_record(std::move(inst), r.at("response").get<std::string>()));
        raw.push_back(r);
      });
      std::map<std::string, double> optimum_by_id;
      for (std::size_t i = 0; i < records.size(); ++i)
        optimum_by_id[id_of(records[i].instance)] = oracle.lookup(records[i].instance, raw[i]);
      const auto result = rejection_filter(
          std::move(records), [&](const ProblemInstance& inst) { return optimum_by_id.at(id_of(inst)); },
          FilterOptions{unique_per_instance});
      for (const auto& rec : result.retained) std::cout << to_json(rec).dump() << '\n';
      const json log = to_json(result.log);
      if (!log_path.empty()) {
        std::ofstream(log_path) << log.dump() << '\n';
      } else {
        std::cerr << log["counts"].dump() << '\n';
      }
    } else if (*curriculum) {
      if (schedule_only) {
        for (const auto& phase : schedule(parse_schedule_order(order))) {
          std::cout << json{{"levels", phase.levels}, {"stage", stage_manifest(phase.stage, {})}}.dump() << '\n';
        }
      } else {
        if (level == 0) throw InputError("curriculum: --level is required");
        const auto dataset = build_stage_dataset(level, cur_seed);
        std::cout << manifest_jsonl(dataset);
        const std::string manifest = stage_manifest(stage_config(level), dataset).dump();
        if (manifest_path.empty())
          std::cerr << manifest << '\n';
        else
          std::ofstream(manifest_path) << manifest << '\n';
      }
    } else if (*eval) {
      std::vector<ProblemAttempts> problems;
      std::map<std::string, std::size_t> index;
      for_each_record(std::cin, status, [&](const json& r) {
        const std::string id = r.at("id").get<std::string>();
        auto [it, fresh] = index.emplace(id, problems.size());
        if (fresh) problems.push_back({id, std::nullopt, {}});
        auto& p = problems[it->second];
        if (r.contains("task")) p.task = parse_task(r.at("task").get<std::string>());
        Attempt a{outcome_from_json(r.at("outcome")), std::nullopt};
        if (r.contains("length"))
          a.length = r.at("length").get<double>();
        else if (r.contains("response"))
          a.length = static_cast<double>(whitespace_token_count(r.at("response").get<std::string>()));
        p.attempts.push_back(std::move(a));
      });
      std::cout << to_json(score_run(problems, k)).dump() << '\n';
    } else if (*serve) {
      const InstanceStore store = InstanceStore::load_file(instances_path);
      OracleCache cache(cache_path);
      if (!oracle_path.empty()) {
        for (const auto& [id, value] : load_oracle_file(oracle_path))
          if (const auto* inst = store.find(id)) cache.insert(canonical_key(*inst), value);
      }
      const Scorer scorer(store, cache, reward_options);
      if (port < 0) return serve_stream(scorer, std::cin, std::cout);
      std::signal(SIGINT, [](int s) { g_signal = s; g_stop = true; });
      std::signal(SIGTERM, [](int s) { g_signal = s; g_stop = true; });
      TcpServerOptions options;
      options.host = host;
      options.port = port;
      options.stop = &g_stop;
      options.on_listening = [](int p) { std::cerr << "graphr: listening on port " << p << std::endl; };
      return serve_tcp(scorer, options);
    }
  } catch (const OracleBugError& e) {
    std::cerr << "graphr: FATAL: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << '\n';
    std::cerr << "graphr: " << e.what() << '\n';
    return 1;
  }
  std::cout.flush();
  return status.code();
}
