#pragma once

#include <atomic>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphr/instance.hpp"
#include "graphr/reward.hpp"

namespace graphr {

/// Instances by id, immutable once loaded.
class InstanceStore {
public:
  InstanceStore() = default;
  explicit InstanceStore(std::vector<ProblemInstance> instances);

  /// Reads instance records, one per line. Throws InputError on bad lines or duplicate ids.
  static InstanceStore load_jsonl(std::istream& in);
  static InstanceStore load_file(const std::string& path);

  void add(ProblemInstance instance);
  const ProblemInstance* find(std::string_view id) const;
  std::size_t size() const { return by_id_.size(); }

private:
  std::unordered_map<std::string, ProblemInstance> by_id_;
};

/// Optimal values keyed by canonical_key. Grows monotonically; with a sidecar path every new
/// entry is appended as one {key, optimal_value} line so later runs never re-solve.
class OracleCache {
public:
  OracleCache() = default;
  explicit OracleCache(std::string sidecar_path);

  /// Cached optimum, solving and recording it on a miss.
  double optimal_value(const ProblemInstance& instance);

  /// Seeds the cache, e.g. from `solve` output. Does not touch the sidecar.
  void insert(const std::string& key, double value);

  std::size_t size() const;

private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, double> values_;
  std::string sidecar_path_;
};

/// Turns request lines into reply lines. Thread-safe.
class Scorer {
public:
  Scorer(const InstanceStore& store, OracleCache& cache, RewardOptions options = {});

  /// One reply document for one request line; never throws on bad input.
  nlohmann::json handle_line(std::string_view line) const;

  /// {outcome, reward} for a single item, or {error}.
  nlohmann::json score_item(const std::string& instance_id, std::string_view response) const;

  /// Batches at least this large are scored on several threads; replies keep item order.
  std::size_t parallel_threshold = 256;
  unsigned max_threads = 0;  // 0: hardware concurrency

private:
  nlohmann::json score_items(const nlohmann::json& items) const;

  const InstanceStore& store_;
  OracleCache& cache_;
  RewardOptions options_;
};

/// Library-side rendering of one scored item; the service emits exactly this.
nlohmann::json scored_item_json(const RewardBreakdown& breakdown);

/// Serves LF-delimited requests from `in` until EOF. Returns 0 on EOF, 1 if the output fails.
int serve_stream(const Scorer& scorer, std::istream& in, std::ostream& out);

struct TcpServerOptions {
  std::string host = "127.0.0.1";
  /// 0 picks an ephemeral port, reported through on_listening.
  int port = 0;
  std::function<void(int port)> on_listening;
  /// Polled between accepts; set to true to stop the server.
  const std::atomic<bool>* stop = nullptr;
};

/// Accepts connections and serves each on its own thread. Returns 0 after a requested stop,
/// 1 on socket failure.
int serve_tcp(const Scorer& scorer, const TcpServerOptions& options);

}  // namespace graphr
