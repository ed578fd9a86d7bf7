#include "vg/service_api.hpp"

#include <httplib.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

#include "vg/best_response.hpp"
#include "vg/convex.hpp"
#include "vg/epsilon_table.hpp"
#include "vg/game_engine.hpp"
#include "vg/p1_strategies.hpp"

namespace vg::service {

namespace {

Reply error(int status, const std::string& message) { return {status, {{"error", message}}}; }

std::optional<std::string> query_value(const Service::Query& q, const std::string& key) {
  const auto it = q.find(key);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

// Parses a whole integer query value; nullopt when absent.
std::optional<long> query_int(const Service::Query& q, const std::string& key) {
  const auto v = query_value(q, key);
  if (!v) return std::nullopt;
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(*v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v->size()) throw ParseError(key + " must be an integer");
  return out;
}

json payoff_summary(const BestResponse& r, long n, long k) {
  json j = to_json(r);
  j["lower_bound"] = k > 0 ? (n + 2 * k - 1) / (2 * k) : n;
  return j;
}

}  // namespace

Service::Service(Options options) : options_(std::move(options)) {
  std::random_device rd;
  id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
              static_cast<std::uint64_t>(Clock::now().time_since_epoch().count());
}

std::string Service::fresh_id() {
  std::lock_guard lock(id_mu_);
  // splitmix64 step.
  std::uint64_t z = (id_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(z));
  return buf;
}

std::size_t Service::evict_expired(Clock::time_point now) {
  std::unique_lock lock(sessions_mu_);
  return std::erase_if(sessions_, [&](const auto& kv) {
    std::lock_guard s(kv.second->mu);
    return now - kv.second->last_used > options_.ttl;
  });
}

std::size_t Service::session_count() const {
  std::shared_lock lock(sessions_mu_);
  return sessions_.size();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) {
  std::shared_lock lock(sessions_mu_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void Service::persist(const Session& s) const {
  if (!options_.persist_dir) return;
  std::filesystem::create_directories(*options_.persist_dir);
  std::ofstream out(std::filesystem::path(*options_.persist_dir) / (s.id + ".json"));
  json j{{"session_id", s.id},
         {"k", s.k},
         {"users", to_json(s.users->points())},
         {"placements", to_json(s.placements)},
         {"history", s.history}};
  if (s.result) j["result"] = *s.result;
  out << j.dump(2) << '\n';
}

Reply Service::create_session(const json& body) {
  if (!body.is_object()) return error(422, "body must be a JSON object");
  if (!body.contains("k") || !body["k"].is_number_integer() || body["k"].get<long>() < 1)
    return error(422, "k must be a positive integer");
  const bool allow_degenerate = body.value("allow_degenerate", false);
  std::vector<Point> pts;
  if (body.contains("users")) {
    pts = points_from_json(body["users"]);
  } else if (body.contains("gen_spec") && body["gen_spec"].is_string()) {
    const auto spec = InstanceSpec::parse(body["gen_spec"].get<std::string>());
    if (spec.dimension != 2) return error(422, "sessions are planar");
    pts = generate_users(spec).points();
  } else {
    return error(422, "provide users or gen_spec");
  }
  if (pts.empty()) return error(422, "at least one user is required");
  for (const Point& p : pts)
    if (p.dim != 2) return error(422, "sessions are planar; got " + to_string(p));
  auto users = std::make_shared<const UserSet>(std::move(pts));
  if (!users->general_position() && !allow_degenerate)
    return error(422, "users are not in general position (set allow_degenerate to accept)");

  auto s = std::make_shared<Session>();
  s->id = fresh_id();
  s->users = std::move(users);
  s->k = body["k"].get<int>();
  s->last_used = Clock::now();
  {
    std::unique_lock lock(sessions_mu_);
    sessions_[s->id] = s;
  }
  std::lock_guard lock(s->mu);
  persist(*s);
  Reply r = state(*s);
  r.status = 201;
  r.body["session_id"] = s->id;
  return r;
}

Reply Service::state(Session& s) const {
  return {200,
          {{"session_id", s.id},
           {"n", s.users->size()},
           {"k", s.k},
           {"users", to_json(s.users->points())},
           {"placements", to_json(s.placements)},
           {"remaining", s.k - static_cast<int>(s.placements.size())},
           {"committed", s.result.has_value()},
           {"history", s.history}}};
}

Reply Service::place(Session& s, const json& body) {
  if (s.result) return error(409, "session already committed");
  if (!body.is_object() || !body.contains("point")) return error(422, "body must be {point: [x, y]}");
  const Point p = point_from_json(body["point"]);
  if (p.dim != 2) return error(422, "placements are planar");
  if (static_cast<int>(s.placements.size()) >= s.k) return error(409, "facility budget exhausted");
  if (std::find(s.placements.begin(), s.placements.end(), p) != s.placements.end())
    return error(409, "a facility already sits at " + to_string(p));
  s.placements.push_back(p);
  s.history.push_back({{"move", "place"}, {"point", to_json(p)}});
  persist(s);
  return state(s);
}

Reply Service::undo(Session& s) {
  if (s.result) return error(409, "session already committed");
  if (s.placements.empty()) return error(409, "nothing to undo");
  s.history.push_back({{"move", "undo"}, {"point", to_json(s.placements.back())}});
  s.placements.pop_back();
  persist(s);
  return state(s);
}

Reply Service::best_response(Session& s) {
  if (s.placements.empty()) return error(409, "place at least one facility first");
  const FacilitySet f1(s.placements, Player::p1);
  const auto br = vg::best_response(*s.users, f1);
  return {200, payoff_summary(br, static_cast<long>(s.users->size()),
                              static_cast<long>(s.placements.size()))};
}

Reply Service::commit(Session& s) {
  if (s.result) return {200, *s.result};
  if (s.placements.empty()) return error(409, "place at least one facility first");
  const auto result = play_placements(*s.users, FacilitySet(s.placements, Player::p1), s.id);
  json j = to_json(result);
  // Marks use the session budget, which may exceed what was placed.
  j["bars"] = bound_bars(2, static_cast<long>(s.users->size()), s.k);
  s.result = j;
  s.history.push_back({{"move", "commit"}});
  persist(s);
  return {200, j};
}

Reply Service::voronoi(Session& s) {
  const auto& users = s.users->points();
  double lo_x = users[0][0], hi_x = lo_x, lo_y = users[0][1], hi_y = lo_y;
  auto grow = [&](const Point& p) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  };
  for (const Point& p : users) grow(p);
  for (const Point& p : s.placements) grow(p);
  const double pad = 0.1 * std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  lo_x -= pad, lo_y -= pad, hi_x += pad, hi_y += pad;

  json cells = json::array();
  for (std::size_t i = 0; i < s.placements.size(); ++i) {
    const Point& fi = s.placements[i];
    auto poly = ConvexPolygon::box(lo_x, lo_y, hi_x, hi_y);
    for (std::size_t j = 0; j < s.placements.size() && !poly.empty(); ++j) {
      if (j == i) continue;
      const Point& fj = s.placements[j];
      poly.clip({fj - fi, 0.5 * (dot(fj, fj) - dot(fi, fi))});
    }
    json served = json::array();
    for (std::size_t u = 0; u < users.size(); ++u) {
      const double du = squared_distance(users[u], fi);
      bool mine = true;
      for (std::size_t j = 0; j < s.placements.size() && mine; ++j)
        if (j != i) {
          const double dj = squared_distance(users[u], s.placements[j]);
          mine = du < dj || (du == dj && i < j);
        }
      if (mine) served.push_back(u);
    }
    cells.push_back({{"facility", i},
                     {"site", to_json(fi)},
                     {"polygon", to_json(poly.vertices())},
                     {"users", served}});
  }
  json disks = json::array();
  if (!s.placements.empty())
    for (const Disk& d : nearest_facility_disks(*s.users, FacilitySet(s.placements, Player::p1)))
      disks.push_back(to_json(d));
  return {200,
          {{"bbox", {lo_x, lo_y, hi_x, hi_y}}, {"cells", cells}, {"disks", disks}}};
}

Reply Service::strategy(const std::string& kind_text, const Query& query) {
  StrategyKind kind;
  try {
    kind = parse_strategy_kind(kind_text);
  } catch (const std::invalid_argument& e) {
    return error(404, e.what());
  }
  if (kind == StrategyKind::custom || kind == StrategyKind::ball_net)
    return error(422, "strategy '" + kind_text + "' is not offered on the planar board");
  const auto sid = query_value(query, "session");
  if (!sid) return error(422, "session query parameter is required");
  auto s = find(*sid);
  if (!s) return error(404, "unknown session " + *sid);
  std::shared_ptr<const UserSet> users;
  int k = 0;
  {
    std::lock_guard lock(s->mu);
    s->last_used = Clock::now();
    users = s->users;
    k = s->k;
  }
  if (const auto qk = query_int(query, "k")) k = static_cast<int>(*qk);
  if (k < 1) return error(422, "k must be positive");
  PlayParams params;
  if (const auto e = query_value(query, "epsilon")) {
    try {
      params.epsilon = std::stod(*e);
    } catch (const std::exception&) {
      return error(422, "epsilon must be a number");
    }
  }
  return {200, to_json(build_strategy(*users, k, kind, params))};
}

Reply Service::epsilon_table(const Query& query) {
  const long dim = query_int(query, "dim").value_or(2);
  const long kmax = query_int(query, "kmax").value_or(10);
  if (dim != 2 && dim != 3) return error(422, "dim must be 2 or 3");
  if (kmax < 0 || kmax > 2000) return error(422, "kmax must lie in [0, 2000]");
  const auto rule = parse_index_rule(query_value(query, "rule").value_or("dimensional"));
  return {200, to_json(build_table(static_cast<int>(dim), static_cast<int>(kmax), rule))};
}

Reply Service::handle(const std::string& method, const std::string& path, const std::string& body,
                      const Query& query) {
  static const std::regex session_re(R"(^/sessions/([0-9a-f]+)(/.*)?$)");
  static const std::regex strategy_re(R"(^/strategies/([A-Za-z_]+)$)");
  evict_expired();
  try {
    json payload;
    if (!body.empty()) {
      payload = json::parse(body, nullptr, false);
      if (payload.is_discarded()) return error(422, "body is not valid JSON");
    }
    std::smatch m;
    if (path == "/sessions" && method == "POST") return create_session(payload);
    if (path == "/epsilon-table" && method == "GET") return epsilon_table(query);
    if (std::regex_match(path, m, strategy_re) && method == "GET") return strategy(m[1], query);
    if (std::regex_match(path, m, session_re)) {
      auto s = find(m[1]);
      if (!s) return error(404, "unknown session " + m[1].str());
      const std::string rest = m[2];
      std::lock_guard lock(s->mu);
      s->last_used = Clock::now();
      if (rest.empty() && method == "GET") return state(*s);
      if (rest == "/place" && method == "POST") return place(*s, payload);
      if (rest == "/place/last" && method == "DELETE") return undo(*s);
      if (rest == "/best-response" && method == "GET") return best_response(*s);
      if (rest == "/commit" && method == "POST") return commit(*s);
      if (rest == "/voronoi" && method == "GET") return voronoi(*s);
    }
    return error(404, "no route for " + method + " " + path);
  } catch (const ParseError& e) {
    return error(422, e.what());
  } catch (const std::invalid_argument& e) {
    return error(422, e.what());
  } catch (const DegenerateError& e) {
    return error(422, std::string("degenerate input: ") + e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

void mount(httplib::Server& server, Service& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    Service::Query q(req.params.begin(), req.params.end());
    const Reply r = service.handle(req.method, req.path, req.body, q);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Delete(".*", forward);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

int serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  mount(server, service);
  if (!server.listen(host, port)) return 1;
  return 0;
}

}  // namespace vg::service
