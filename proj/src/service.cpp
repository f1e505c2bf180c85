#include "graphr/service.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <thread>
#include <utility>

#include "graphr/errors.hpp"
#include "graphr/instance_gen.hpp"
#include "graphr/oracle.hpp"

namespace graphr {

using nlohmann::json;

InstanceStore::InstanceStore(std::vector<ProblemInstance> instances) {
  for (auto& inst : instances) add(std::move(inst));
}

void InstanceStore::add(ProblemInstance instance) {
  std::string id = id_of(instance);
  if (!by_id_.emplace(id, std::move(instance)).second) throw InputError("duplicate instance id '" + id + "'");
}

const ProblemInstance* InstanceStore::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &it->second;
}

InstanceStore InstanceStore::load_jsonl(std::istream& in) {
  InstanceStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      store.add(instance_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InputError("instances line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("instances line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return store;
}

InstanceStore InstanceStore::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  return load_jsonl(in);
}

OracleCache::OracleCache(std::string sidecar_path) : sidecar_path_(std::move(sidecar_path)) {
  std::ifstream in(sidecar_path_);
  std::string line;
  while (in && std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      values_[j.at("key").get<std::string>()] = j.at("optimal_value").get<double>();
    } catch (const json::exception&) {
      // A torn final line from an interrupted writer; the entry is simply re-solved.
    }
  }
}

double OracleCache::optimal_value(const ProblemInstance& instance) {
  const std::string key = canonical_key(instance);
  {
    std::lock_guard lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const double value = solve(instance).optimal_value;
  std::lock_guard lock(mutex_);
  if (values_.emplace(key, value).second && !sidecar_path_.empty()) {
    std::ofstream out(sidecar_path_, std::ios::app);
    out << json{{"key", key}, {"optimal_value", value}}.dump() << '\n';
  }
  return value;
}

void OracleCache::insert(const std::string& key, double value) {
  std::lock_guard lock(mutex_);
  values_[key] = value;
}

std::size_t OracleCache::size() const {
  std::lock_guard lock(mutex_);
  return values_.size();
}

json scored_item_json(const RewardBreakdown& breakdown) {
  return {{"outcome", to_json(breakdown.outcome)}, {"reward", reward_json(breakdown)}};
}

Scorer::Scorer(const InstanceStore& store, OracleCache& cache, RewardOptions options)
    : store_(store), cache_(cache), options_(options) {}

json Scorer::score_item(const std::string& instance_id, std::string_view response) const {
  const ProblemInstance* inst = store_.find(instance_id);
  if (!inst) return {{"error", "unknown instance_id '" + instance_id + "'"}};
  try {
    return scored_item_json(total_reward(*inst, response, cache_.optimal_value(*inst), options_));
  } catch (const OracleBugError& e) {
    std::cerr << "graphr: " << e.what() << '\n';
    return {{"error", std::string("internal oracle error: ") + e.what()}};
  } catch (const Error& e) {
    return {{"error", e.what()}};
  }
}

namespace {

std::optional<std::string> string_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

json Scorer::score_items(const json& items) const {
  std::vector<json> results(items.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const json& item = items[i];
      json r;
      if (!item.is_object()) {
        r = {{"error", "batch item must be an object"}};
      } else {
        auto id = string_field(item, "instance_id");
        auto response = string_field(item, "response");
        r = (id && response) ? score_item(*id, *response)
                             : json{{"error", "batch item needs string fields instance_id and response"}};
        if (auto it = item.find("req_id"); it != item.end()) r["req_id"] = *it;
      }
      results[i] = std::move(r);
    }
  };

  unsigned threads = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
  if (items.size() < parallel_threshold || threads <= 1) {
    work(0, items.size());
  } else {
    threads = std::min<unsigned>(threads, static_cast<unsigned>(items.size()));
    std::vector<std::jthread> pool;
    const std::size_t chunk = (items.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < items.size(); begin += chunk)
      pool.emplace_back(work, begin, std::min(items.size(), begin + chunk));
  }
  json out = json::array();
  for (auto& r : results) out.push_back(std::move(r));
  return out;
}

json Scorer::handle_line(std::string_view line) const {
  json request;
  try {
    request = json::parse(line);
  } catch (const json::exception& e) {
    return {{"error", std::string("malformed JSON: ") + e.what()}};
  }
  if (!request.is_object()) return {{"error", "request must be a JSON object"}};

  json reply = json::object();
  if (auto it = request.find("req_id"); it != request.end()) reply["req_id"] = *it;

  if (request.contains("ping")) {
    reply["pong"] = true;
    return reply;
  }
  if (auto it = request.find("items"); it != request.end()) {
    if (!it->is_array()) {
      reply["error"] = "items must be an array";
      return reply;
    }
    reply["items"] = score_items(*it);
    return reply;
  }
  auto id = string_field(request, "instance_id");
  auto response = string_field(request, "response");
  if (!id || !response) {
    reply["error"] = "request needs string fields instance_id and response";
    return reply;
  }
  reply.update(score_item(*id, *response));
  return reply;
}

int serve_stream(const Scorer& scorer, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << scorer.handle_line(line).dump() << '\n';
    out.flush();
    if (!out) return 1;
  }
  return 0;
}

namespace {

class Socket {
public:
  explicit Socket(int fd = -1) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept {
    if (this != &other) {
      reset();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { reset(); }

  int fd() const { return fd_; }
  explicit operator bool() const { return fd_ >= 0; }

private:
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }
  int fd_;
};

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t sent = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (sent < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(sent));
  }
  return true;
}

void serve_connection(const Scorer& scorer, Socket conn, const std::atomic<bool>* stop) {
  std::string buffer;
  char chunk[64 * 1024];
  for (;;) {
    if (stop && stop->load()) return;
    pollfd pfd{conn.fd(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 200);
    if (ready < 0 && errno != EINTR) return;
    if (ready <= 0) continue;
    const ssize_t got = ::recv(conn.fd(), chunk, sizeof chunk, 0);
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) return;
    buffer.append(chunk, static_cast<std::size_t>(got));
    std::string replies;
    std::size_t start = 0;
    for (std::size_t nl; (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1) {
      std::string_view line(buffer.data() + start, nl - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty()) continue;
      replies += scorer.handle_line(line).dump();
      replies += '\n';
    }
    buffer.erase(0, start);
    if (!replies.empty() && !send_all(conn.fd(), replies)) return;
  }
}

}  // namespace

int serve_tcp(const Scorer& scorer, const TcpServerOptions& options) {
  Socket listener(::socket(AF_INET, SOCK_STREAM, 0));
  if (!listener) {
    std::cerr << "graphr: socket: " << std::strerror(errno) << '\n';
    return 1;
  }
  const int yes = 1;
  ::setsockopt(listener.fd(), SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(options.port));
  if (::inet_pton(AF_INET, options.host.c_str(), &addr.sin_addr) != 1) {
    std::cerr << "graphr: invalid host '" << options.host << "'\n";
    return 1;
  }
  if (::bind(listener.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
      ::listen(listener.fd(), SOMAXCONN) < 0) {
    std::cerr << "graphr: bind/listen on " << options.host << ":" << options.port << ": " << std::strerror(errno)
              << '\n';
    return 1;
  }
  socklen_t len = sizeof addr;
  ::getsockname(listener.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
  if (options.on_listening) options.on_listening(ntohs(addr.sin_port));

  std::vector<std::jthread> connections;
  while (!(options.stop && options.stop->load())) {
    pollfd pfd{listener.fd(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 200);
    if (ready < 0) {
      if (errno == EINTR) continue;
      std::cerr << "graphr: poll: " << std::strerror(errno) << '\n';
      return 1;
    }
    if (ready == 0) continue;
    Socket conn(::accept(listener.fd(), nullptr, nullptr));
    if (!conn) continue;
    connections.emplace_back(serve_connection, std::cref(scorer), std::move(conn), options.stop);
  }
  return 0;
}

}  // namespace graphr
