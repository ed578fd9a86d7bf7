#include "vg/game_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace vg {

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform_square: return "uniform_square";
    case Distribution::gaussian_clusters: return "gaussian_clusters";
    case Distribution::annulus: return "annulus";
    case Distribution::grid_jitter: return "grid_jitter";
  }
  return "uniform_square";
}

Distribution parse_distribution(const std::string& text) {
  for (auto d : {Distribution::uniform_square, Distribution::gaussian_clusters,
                 Distribution::annulus, Distribution::grid_jitter})
    if (to_string(d) == text) return d;
  throw std::invalid_argument("unknown distribution '" + text + "'");
}

InstanceSpec InstanceSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() < 2)
    throw std::invalid_argument("instance spec '" + text + "' must look like dist:n[:seed=S][:dim=D]");
  InstanceSpec spec;
  spec.distribution = parse_distribution(parts[0]);
  try {
    std::size_t used = 0;
    spec.n = std::stoi(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("instance spec '" + text + "': bad n '" + parts[1] + "'");
  }
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    const std::string key = parts[i].substr(0, eq);
    const std::string val = eq == std::string::npos ? "" : parts[i].substr(eq + 1);
    try {
      if (key == "seed") spec.seed = std::stoull(val);
      else if (key == "dim") spec.dimension = std::stoi(val);
      else throw std::invalid_argument("unknown key");
    } catch (const std::exception&) {
      throw std::invalid_argument("instance spec '" + text + "': bad field '" + parts[i] + "'");
    }
  }
  if (spec.dimension != 2 && spec.dimension != 3)
    throw std::invalid_argument("instance spec '" + text + "': dim must be 2 or 3");
  return spec;
}

std::string InstanceSpec::id() const {
  return to_string(distribution) + ":" + std::to_string(n) + ":seed=" + std::to_string(seed) +
         ":dim=" + std::to_string(dimension);
}

namespace {

constexpr int kGrid = 1000;

// Portable draws from the raw 64-bit stream.
struct Draw {
  std::mt19937_64 gen;
  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  long below(long m) { return static_cast<long>(gen() % static_cast<std::uint64_t>(m)); }
  double normal() {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

long clamp_grid(double v) {
  return std::clamp(static_cast<long>(std::lround(v)), 0L, static_cast<long>(kGrid - 1));
}

std::vector<std::array<long, 3>> lattice_sample(const InstanceSpec& spec, Draw& rng) {
  const int d = spec.dimension;
  std::set<std::array<long, 3>> seen;
  std::vector<std::array<long, 3>> out;
  std::vector<std::array<double, 3>> centers;
  if (spec.distribution == Distribution::gaussian_clusters) {
    const long m = 3 + rng.below(3);
    for (long c = 0; c < m; ++c)
      centers.push_back({150 + 700 * rng.unit(), 150 + 700 * rng.unit(), 150 + 700 * rng.unit()});
  }
  const long side = static_cast<long>(std::ceil(std::pow(static_cast<double>(spec.n), 1.0 / d)));
  const double spacing = static_cast<double>(kGrid) / static_cast<double>(std::max(side, 1L));
  long slot = 0;
  long guard = 0;
  while (static_cast<int>(out.size()) < spec.n) {
    if (++guard > 1000L * spec.n + 100000) throw std::runtime_error("could not draw distinct points");
    std::array<long, 3> q{0, 0, 0};
    switch (spec.distribution) {
      case Distribution::uniform_square:
        for (int i = 0; i < d; ++i) q[static_cast<std::size_t>(i)] = rng.below(kGrid);
        break;
      case Distribution::gaussian_clusters: {
        const auto& c = centers[static_cast<std::size_t>(rng.below(static_cast<long>(centers.size())))];
        for (int i = 0; i < d; ++i)
          q[static_cast<std::size_t>(i)] = clamp_grid(c[static_cast<std::size_t>(i)] + 60.0 * rng.normal());
        break;
      }
      case Distribution::annulus: {
        const double r = 300.0 + 150.0 * rng.unit();
        if (d == 2) {
          const double a = 2 * std::numbers::pi * rng.unit();
          q = {clamp_grid(500 + r * std::cos(a)), clamp_grid(500 + r * std::sin(a)), 0};
        } else {
          const double z = 2 * rng.unit() - 1, a = 2 * std::numbers::pi * rng.unit();
          const double rho = std::sqrt(1 - z * z);
          q = {clamp_grid(500 + r * rho * std::cos(a)), clamp_grid(500 + r * rho * std::sin(a)),
               clamp_grid(500 + r * z)};
        }
        break;
      }
      case Distribution::grid_jitter: {
        long cell = slot++;
        for (int i = 0; i < d; ++i) {
          const long idx = cell % side;
          cell /= side;
          const double base = (static_cast<double>(idx) + 0.5) * spacing;
          q[static_cast<std::size_t>(i)] = clamp_grid(base + spacing * 0.25 * (2 * rng.unit() - 1));
        }
        break;
      }
    }
    if (seen.insert(q).second) out.push_back(q);
  }
  return out;
}

}  // namespace

UserSet generate_users(const InstanceSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("instance needs n >= 1");
  if (spec.dimension != 2 && spec.dimension != 3)
    throw std::invalid_argument("dimension must be 2 or 3");
  Draw rng{std::mt19937_64(spec.seed)};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto base = lattice_sample(spec, rng);
    std::vector<Point> pts;
    for (const auto& q : base) {
      double c[3];
      for (int i = 0; i < 3; ++i)
        c[i] = static_cast<double>(q[static_cast<std::size_t>(i)]) + 1e-6 * (2 * rng.unit() - 1);
      pts.push_back(spec.dimension == 2 ? Point(c[0], c[1]) : Point(c[0], c[1], c[2]));
    }
    UserSet users(std::move(pts));
    if (users.general_position()) return users;
  }
  throw std::runtime_error("no instance in general position after 1000 attempts for " + spec.id());
}

namespace {

Bounds compute_bounds(const GameResult& r) {
  Bounds b;
  const long n = static_cast<long>(r.users.size());
  const long k = static_cast<long>(r.strategy.placements.size());
  b.lower_fraction = Rational(1) - r.strategy.guarantee;
  b.upper_fraction = Rational(2 * k - 1, 2 * k);
  b.p2_cap = r.strategy.guarantee.floor_mul(n);
  b.p2_floor = Rational(1, 2 * k).ceil_mul(n);
  b.lower_ok = r.p2_payoff <= b.p2_cap;
  b.upper_ok = r.p2_payoff >= b.p2_floor;
  b.halfcell_ok = r.halfcell.payoff >= b.p2_floor && r.halfcell.payoff <= r.p2_payoff;
  if (r.witness) {
    const int per = r.users.dimension() == 2 ? 6 : 20;
    b.witness_ok = count_users_in(*r.witness, r.users) >= (r.p2_payoff + per - 1) / per &&
                   count_facilities_in(*r.witness, r.strategy.placements) == 0;
  } else {
    b.witness_ok = r.p2_payoff == 0;
  }
  return b;
}

void finish(GameResult& r) {
  const FacilitySet& f1 = r.strategy.placements;
  r.k = static_cast<int>(f1.size());
  r.response = best_response(r.users, f1);
  r.halfcell = halfcell_response(r.users, f1);
  if (r.response.payoff >= 1) r.witness = sector_witness(r.users, f1, r.response);
  r.p2_payoff = r.response.payoff;
  r.p1_payoff = static_cast<int>(r.users.size()) - r.p2_payoff;
  r.bounds = compute_bounds(r);
}

}  // namespace

Strategy build_strategy(const UserSet& users, int k, StrategyKind kind, const PlayParams& params) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (users.empty()) throw std::invalid_argument("cannot place facilities for an empty user set");
  const int d = users.dimension();
  Strategy st;
  switch (kind) {
    case StrategyKind::centerpoint:
      if (k != 1) throw std::invalid_argument("the centerpoint strategy places exactly one facility");
      st.kind = StrategyKind::centerpoint;
      st.placements = FacilitySet({centerpoint(users)}, Player::p1);
      st.guarantee = Rational(d, d + 1);
      break;
    case StrategyKind::mustafa_ray:
      st = build_E_k(users, k, build_table(2, k));
      break;
    case StrategyKind::disk_net:
    case StrategyKind::ball_net: {
      const bool disk = kind == StrategyKind::disk_net;
      if (disk != (d == 2))
        throw std::invalid_argument(to_string(kind) + " does not apply in dimension " +
                                    std::to_string(d));
      const double per = disk ? 7.0 : 21.0;
      const double eps = params.epsilon.value_or(std::min(1.0, per / k));
      st = disk ? build_disk_net(users, eps) : build_ball_net(users, eps, params.allow_fallback_cones);
      if (st.k() > k)
        throw std::invalid_argument("net with epsilon=" + std::to_string(eps) + " needs " +
                                    std::to_string(st.k()) + " facilities, budget is " +
                                    std::to_string(k));
      break;
    }
    case StrategyKind::custom:
      throw std::invalid_argument("custom placements go through play_placements");
  }
  if (st.k() < k) {
    auto padded = pad_placements(st.placements.points(), users.points(), static_cast<std::size_t>(k));
    st.placements = FacilitySet(std::move(padded), Player::p1);
  }
  return st;
}

GameResult play(const UserSet& users, int k, StrategyKind kind, const PlayParams& params,
                const std::string& instance_id) {
  GameResult r;
  r.instance_id = instance_id;
  r.users = users;
  try {
    r.strategy = build_strategy(users, k, kind, params);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("building " + to_string(kind) + " for k=" + std::to_string(k) +
                                " on " + instance_id + ": " + e.what());
  }
  finish(r);
  return r;
}

GameResult play_placements(const UserSet& users, const FacilitySet& f1,
                           const std::string& instance_id) {
  if (f1.empty()) throw std::invalid_argument("F1 must be nonempty");
  GameResult r;
  r.instance_id = instance_id;
  r.users = users;
  r.strategy.kind = StrategyKind::custom;
  r.strategy.placements = f1;
  r.strategy.guarantee = Rational(1);
  finish(r);
  return r;
}

BoundReport verify_bounds(const GameResult& r, const EpsilonTable& table) {
  BoundReport rep;
  auto fail = [&](std::string msg) { rep.violations.push_back(r.instance_id + ": " + msg); };
  const long n = static_cast<long>(r.users.size());
  const FacilitySet& f1 = r.strategy.placements;
  if (f1.empty()) {
    fail("no P1 facilities");
    return rep;
  }
  const long k = static_cast<long>(f1.size());
  if (r.p1_payoff + r.p2_payoff != n) fail("payoffs do not sum to n");
  if (r.response.payoff != r.p2_payoff) fail("p2 payoff differs from the best response");

  try {
    const auto rec = payoff(r.users, f1, FacilitySet({r.response.location}, Player::p2));
    if (rec.p2_count != r.response.payoff)
      fail("recounted payoff " + std::to_string(rec.p2_count) + " != reported " +
           std::to_string(r.response.payoff));
  } catch (const std::invalid_argument& e) {
    fail(std::string("response location invalid: ") + e.what());
  }

  Rational guarantee = r.strategy.guarantee;
  if (r.strategy.kind == StrategyKind::mustafa_ray && table.dimension == 2 && k <= table.kmax() &&
      guarantee != table.epsilon(static_cast<int>(k)))
    fail("E_k guarantee disagrees with the epsilon table");
  const long cap = guarantee.floor_mul(n);
  if (r.p2_payoff > cap)
    fail("P2 payoff " + std::to_string(r.p2_payoff) + " exceeds floor(" + guarantee.str() +
         " n) = " + std::to_string(cap));
  const long floor_ = Rational(1, 2 * k).ceil_mul(n);
  if (r.p2_payoff < floor_)
    fail("P2 payoff " + std::to_string(r.p2_payoff) + " below ceil(n/2k) = " + std::to_string(floor_));
  if (r.halfcell.payoff < floor_)
    fail("half-cell payoff " + std::to_string(r.halfcell.payoff) + " below ceil(n/2k) = " +
         std::to_string(floor_));
  if (r.halfcell.payoff > r.p2_payoff) fail("half-cell payoff beats the best response");

  if (r.p2_payoff >= 1) {
    if (!r.witness) {
      fail("missing sector witness");
    } else {
      const int per = r.users.dimension() == 2 ? 6 : 20;
      const int need = (r.p2_payoff + per - 1) / per;
      const int got = count_users_in(*r.witness, r.users);
      if (got < need)
        fail("witness holds " + std::to_string(got) + " users, needs " + std::to_string(need));
      if (count_facilities_in(*r.witness, f1) != 0) fail("witness contains a P1 facility");
    }
  }
  return rep;
}

std::vector<GameResult> run_batch(const std::vector<Episode>& episodes) {
  std::vector<GameResult> out(episodes.size());
  std::vector<std::string> errors(episodes.size());
  const long m = static_cast<long>(episodes.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < m; ++i) {
    const auto& e = episodes[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] =
          play(generate_users(e.spec), e.k, e.kind, e.params, e.spec.id());
    } catch (const std::exception& ex) {
      errors[static_cast<std::size_t>(i)] = e.spec.id() + ": " + ex.what();
    }
  }
  for (const auto& err : errors)
    if (!err.empty()) throw std::runtime_error(err);
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<GameResult>& results) {
  out << "k,strategy,n,p1_payoff,lower,upper\n";
  for (const auto& r : results) {
    const long n = static_cast<long>(r.users.size());
    out << r.k << ',' << to_string(r.strategy.kind) << ',' << n << ',' << r.p1_payoff << ','
        << (r.bounds.lower_fraction * Rational(n)).str() << ','
        << (r.bounds.upper_fraction * Rational(n)).str() << '\n';
  }
}

}  // namespace vg
