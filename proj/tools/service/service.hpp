#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "mtt/engine.hpp"
#include "mtt/error.hpp"

namespace httplib {
class Server;
}

namespace mtt::service {

struct Response {
  int status = 200;
  std::string body;  // JSON
};

// Live tournaments backed by one JSONL event log per tournament in
// `logDir`. Every mutation is appended and flushed before it returns.
class TournamentService {
 public:
  using Clock = std::function<std::int64_t()>;

  // Loads every *.jsonl already in the directory.
  explicit TournamentService(std::filesystem::path logDir, Clock clock = {});

  Response create(const std::string& body);
  Response snapshot(const std::string& id);
  Response pairings(const std::string& id, std::optional<int> round);
  Response result(const std::string& id, const std::string& body);
  Response complete_tier(const std::string& id);
  Response tiebreak(const std::string& id, const std::string& body);
  Response standings(const std::string& id, std::optional<int> tier);
  Response events(const std::string& id, std::size_t since);
  Response forfeit(const std::string& id, const std::string& body);

  std::vector<std::string> ids() const;
  const std::filesystem::path& log_dir() const { return logDir_; }

 private:
  struct Live {
    std::mutex mutex;
    TournamentState state;
    std::vector<Event> events;
    std::filesystem::path log;
  };

  std::shared_ptr<Live> find(const std::string& id) const;
  void commit(Live& live, const Step& step);
  std::int64_t now() const;

  std::filesystem::path logDir_;
  Clock clock_;
  mutable std::shared_mutex tableMutex_;
  std::map<std::string, std::shared_ptr<Live>> table_;
  int nextId_ = 1;
};

// Routes under /tournaments. `staticDir`, when set, is served at /.
void register_routes(httplib::Server& server, TournamentService& service,
                     const std::optional<std::filesystem::path>& staticDir = std::nullopt);

// HTTP status for an engine error code.
int http_status(ErrorCode code);

}  // namespace mtt::service
