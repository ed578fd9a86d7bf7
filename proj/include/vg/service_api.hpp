#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "vg/geometry.hpp"
#include "vg/serialization.hpp"

namespace httplib {
class Server;
}

namespace vg::service {

struct Reply {
  int status = 200;
  json body;
};

struct Options {
  std::chrono::seconds ttl{3600};
  std::optional<std::string> persist_dir;  // one JSON file per session when set
};

// Planar game sessions behind a small JSON router. `handle` is the whole
// API; the HTTP server only forwards to it.
class Service {
 public:
  using Clock = std::chrono::steady_clock;
  using Query = std::multimap<std::string, std::string>;

  explicit Service(Options options = {});

  Reply handle(const std::string& method, const std::string& path, const std::string& body,
               const Query& query = {});

  // Drops sessions idle for longer than the TTL; returns how many went.
  std::size_t evict_expired(Clock::time_point now = Clock::now());
  std::size_t session_count() const;

 private:
  struct Session {
    std::string id;
    std::shared_ptr<const UserSet> users;  // immutable after creation
    int k = 1;
    std::vector<Point> placements;
    json history = json::array();
    std::optional<json> result;
    Clock::time_point last_used;
    std::mutex mu;
  };

  Reply create_session(const json& body);
  Reply state(Session& s) const;
  Reply place(Session& s, const json& body);
  Reply undo(Session& s);
  Reply best_response(Session& s);
  Reply commit(Session& s);
  Reply voronoi(Session& s);
  Reply strategy(const std::string& kind, const Query& query);
  Reply epsilon_table(const Query& query);

  std::shared_ptr<Session> find(const std::string& id);
  std::string fresh_id();
  void persist(const Session& s) const;

  Options options_;
  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mu_;
  std::uint64_t id_state_;
};

// Routes every request of `server` through `service.handle`.
void mount(httplib::Server& server, Service& service);

// Blocks serving on host:port until the process is stopped.
int serve(Service& service, const std::string& host, int port);

}  // namespace vg::service
