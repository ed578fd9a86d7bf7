#include "vg/verify_suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "vg/best_response.hpp"
#include "vg/cone_cover.hpp"
#include "vg/epsilon_table.hpp"
#include "vg/game_engine.hpp"
#include "vg/oracle.hpp"
#include "vg/p1_strategies.hpp"

namespace vg::verify {

namespace {

constexpr Distribution kDistributions[] = {Distribution::uniform_square,
                                           Distribution::gaussian_clusters,
                                           Distribution::annulus, Distribution::grid_jitter};

UserSet instance(int dim, int n, std::uint64_t seed, int variant) {
  InstanceSpec spec;
  spec.dimension = dim;
  spec.n = n;
  spec.seed = seed;
  spec.distribution = kDistributions[variant % 4];
  return generate_users(spec);
}

FacilitySet random_facilities(int dim, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.0, 1000.0);
  std::vector<Point> f;
  while (static_cast<int>(f.size()) < k) {
    const Point p = dim == 2 ? Point(coord(rng), coord(rng)) : Point(coord(rng), coord(rng), coord(rng));
    if (std::find(f.begin(), f.end(), p) == f.end()) f.push_back(p);
  }
  return FacilitySet(std::move(f), Player::p1);
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// Collects the first few failures and a count for the detail string.
struct Tally {
  long runs = 0;
  long failures = 0;
  std::vector<std::string> notes;

  void fail(const std::string& what) {
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
  CheckResult result(std::string name, std::string extra = "") const {
    CheckResult r;
    r.name = std::move(name);
    r.passed = failures == 0 && runs > 0;
    std::ostringstream os;
    os << runs << " runs, " << failures << " violations";
    if (!extra.empty()) os << "; " << extra;
    for (const auto& n : notes) os << " | " << n;
    r.detail = os.str();
    return r;
  }
};

std::string tag(int n, int k, std::uint64_t seed) {
  return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " seed=" + std::to_string(seed);
}

CheckResult factor_table(const std::string& name, int d, IndexRule rule,
                         const std::vector<std::string>& expected) {
  CheckResult r;
  r.name = name;
  r.time_limit = 1.0;
  const auto table = build_table(d, static_cast<int>(expected.size()), rule);
  std::ostringstream os;
  int matched = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const Rational got = approx_factor(d, k, table);
    if (got == Rational::parse(expected[i])) ++matched;
    else os << " k=" << k << " got " << got << " want " << expected[i];
  }
  r.passed = matched == static_cast<int>(expected.size());
  r.detail = std::to_string(matched) + "/" + std::to_string(expected.size()) + " exact" + os.str();
  return r;
}

}  // namespace

CheckResult table_2d() {
  return factor_table("table_2d_factors", 2, IndexRule::dimensional,
                      {"3/2", "7/4", "25/14", "217/120", "123/70", "187/108", "2249/1302",
                       "1115/656", "91/54", "9633/5740"});
}

CheckResult table_3d() {
  auto r = factor_table("table_3d_factors", 3, IndexRule::planar,
                        {"2", "39/16", "100/39", "161/64", "639/260", "473/192", "1573/644",
                         "5505/2272", "6494/2691", "22021/9230"});
  const auto dim = build_table(3, 5, IndexRule::dimensional);
  r.detail += "; dimensional rule k=4: " + approx_factor(3, 4, dim).str();
  return r;
}

CheckResult crossovers() {
  CheckResult r;
  r.name = "crossovers_and_thresholds";
  r.time_limit = 10.0;
  const auto t2 = build_table(2, 1000);
  const auto t3 = build_table(3, 1000, IndexRule::planar);
  const int c2 = crossover_k(2, 42, t2);
  const int c3 = crossover_k(3, 420, t3);
  const int w2 = winning_threshold(2, t2);
  const int w3 = winning_threshold(3, t3);
  r.passed = c2 == 136 && c3 == 805 && w2 == 5 && w3 == 841;
  const auto t3d = build_table(3, 1000, IndexRule::dimensional);
  std::ostringstream os;
  os << "crossover 2D=" << c2 << " 3D=" << c3 << ", winning 2D=" << w2 << " 3D=" << w3
     << "; dimensional rule 3D crossover=" << crossover_k(3, 420, t3d);
  r.detail = os.str();
  return r;
}

CheckResult oracle_equivalence(const Options& o) {
  Tally t;
  std::mt19937_64 rng(o.seed);
  for (int trial = 0; trial < std::max(o.trials, 1); ++trial) {
    const int n = 3 + static_cast<int>(rng() % 23);
    const int k = 1 + static_cast<int>(rng() % 4);
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(trial);
    const UserSet u = instance(2, n, seed, trial);
    const FacilitySet f1 = random_facilities(2, k, rng);
    ++t.runs;
    try {
      const auto sweep = best_response(u, f1);
      const auto brute = oracle::brute_force_best_response(u, f1);
      if (sweep.payoff != brute.payoff)
        t.fail(tag(n, k, seed) + ": sweep " + std::to_string(sweep.payoff) + " vs brute " +
               std::to_string(brute.payoff));
    } catch (const std::exception& e) {
      t.fail(tag(n, k, seed) + ": " + e.what());
    }
  }
  return t.result("best_response_oracle_equivalence");
}

CheckResult halfcell_lower_bound(const Options& o) {
  Tally t;
  std::mt19937_64 rng(o.seed ^ 0x5a5a5a5aULL);
  for (int trial = 0; trial < std::max(o.trials, 1); ++trial) {
    const int n = 4 + static_cast<int>(rng() % 57);
    const int k = 1 + static_cast<int>(rng() % 6);
    const std::uint64_t seed = o.seed + 1000 + static_cast<std::uint64_t>(trial);
    const UserSet u = instance(2, n, seed, trial);
    const FacilitySet f1 = random_facilities(2, k, rng);
    ++t.runs;
    try {
      const auto h = halfcell_response(u, f1);
      const auto rec = payoff(u, f1, FacilitySet({h.location}, Player::p2));
      if (rec.p2_count != h.payoff) t.fail(tag(n, k, seed) + ": recount mismatch");
      if (h.payoff < ceil_div(n, 2L * k))
        t.fail(tag(n, k, seed) + ": half-cell payoff " + std::to_string(h.payoff));
    } catch (const std::exception& e) {
      t.fail(tag(n, k, seed) + ": " + e.what());
    }
  }
  return t.result("halfcell_lower_bound");
}

CheckResult centerpoint_game(const Options& o) {
  Tally t;
  std::mt19937_64 rng(o.seed ^ 0xc0ffeeULL);
  const int runs = std::max(o.trials / 4, 1);
  int worst_margin = 1 << 30;
  for (int trial = 0; trial < runs; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 77);
    const std::uint64_t seed = o.seed + 2000 + static_cast<std::uint64_t>(trial);
    const UserSet u = instance(2, n, seed, trial);
    ++t.runs;
    try {
      const auto res = play(u, 1, StrategyKind::centerpoint, {}, tag(n, 1, seed));
      const int cap = 2 * n / 3;
      worst_margin = std::min(worst_margin, cap - res.p2_payoff);
      if (res.p2_payoff > cap)
        t.fail(tag(n, 1, seed) + ": payoff " + std::to_string(res.p2_payoff) + " > " +
               std::to_string(cap));
      const int depth = tukey_depth(res.strategy.placements[0], u);
      if (depth < ceil_div(n, 3)) t.fail(tag(n, 1, seed) + ": depth " + std::to_string(depth));
    } catch (const std::exception& e) {
      t.fail(tag(n, 1, seed) + ": " + e.what());
    }
  }
  return t.result("centerpoint_game_bound", "tightest slack " + std::to_string(worst_margin));
}

CheckResult ek_game(const Options& o) {
  Tally t;
  const auto table = build_table(2, 5);
  int worst_margin = 1 << 30;
  for (int k : {1, 2, 3, 5})
    for (int n : {50, 100})
      for (int variant = 0; variant < 4; ++variant) {
        const std::uint64_t seed = o.seed + 3000 + static_cast<std::uint64_t>(variant * 17 + k);
        const UserSet u = instance(2, n, seed, variant);
        ++t.runs;
        try {
          const auto res = play(u, k, StrategyKind::mustafa_ray, {}, tag(n, k, seed));
          const long cap = table.epsilon(k).floor_mul(n);
          worst_margin = std::min(worst_margin, static_cast<int>(cap) - res.p2_payoff);
          if (res.p2_payoff > cap)
            t.fail(tag(n, k, seed) + ": payoff " + std::to_string(res.p2_payoff) + " > " +
                   std::to_string(cap));
        } catch (const std::exception& e) {
          t.fail(tag(n, k, seed) + ": " + e.what());
        }
      }
  return t.result("ek_game_bound", "tightest slack " + std::to_string(worst_margin));
}

CheckResult disk_net(const Options& o) {
  Tally t;
  long heavy = 0;
  for (double eps : {0.5, 0.25, 0.1})
    for (int n : {20, 40, 60})
      for (int variant = 0; variant < 2; ++variant) {
        const std::uint64_t seed = o.seed + 4000 + static_cast<std::uint64_t>(n * 3 + variant);
        const UserSet u = instance(2, n, seed, variant);
        const std::string id = tag(n, 0, seed) + " eps=" + std::to_string(eps);
        ++t.runs;
        try {
          const auto st = build_disk_net(u, eps);
          const int cap_size = 7 * static_cast<int>(std::floor(1.0 / eps + 1e-9));
          if (st.k() > cap_size) t.fail(id + ": net size " + std::to_string(st.k()));
          const auto rep = oracle::check_piercing(u.points(), eps, st.placements.points());
          heavy += rep.candidates;
          if (rep.misses > 0) t.fail(id + ": " + std::to_string(rep.misses) + " unpierced disks");
          if (st.k() > 0) {
            const auto br = best_response(u, st.placements);
            const long cap = (Rational(6) * Rational::approximate(eps)).floor_mul(n);
            if (br.payoff > cap)
              t.fail(id + ": payoff " + std::to_string(br.payoff) + " > " + std::to_string(cap));
          }
        } catch (const std::exception& e) {
          t.fail(id + ": " + e.what());
        }
      }
  return t.result("disk_net_suite", std::to_string(heavy) + " heavy candidate disks");
}

CheckResult sector_witness(const Options& o) {
  Tally t;
  std::mt19937_64 rng(o.seed ^ 0x77ULL);
  const int runs = std::max(o.trials, 1);
  for (int trial = 0; trial < runs; ++trial) {
    const int dim = trial % 4 == 3 ? 3 : 2;
    const int n = dim == 2 ? 2 + static_cast<int>(rng() % 59) : 2 + static_cast<int>(rng() % 29);
    const int k = 1 + static_cast<int>(rng() % 4);
    const std::uint64_t seed = o.seed + 5000 + static_cast<std::uint64_t>(trial);
    const UserSet u = instance(dim, n, seed, trial);
    const FacilitySet f1 = random_facilities(dim, k, rng);
    const std::string id = tag(n, k, seed) + " d=" + std::to_string(dim);
    ++t.runs;
    try {
      const auto br = best_response(u, f1);
      if (br.payoff < 1) {
        t.fail(id + ": empty best response");
        continue;
      }
      const Disk w = vg::sector_witness(u, f1, br);
      const int per = dim == 2 ? 6 : 20;
      const int got = count_users_in(w, u);
      if (got < ceil_div(br.payoff, per))
        t.fail(id + ": witness holds " + std::to_string(got) + " of payoff " +
               std::to_string(br.payoff));
      if (count_facilities_in(w, f1) != 0) t.fail(id + ": witness holds a facility");
    } catch (const std::exception& e) {
      t.fail(id + ": " + e.what());
    }
  }
  return t.result("sector_witness");
}

CheckResult piercing_geometry(const Options& o) {
  Tally t;
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> coord(-100.0, 100.0), rad(0.1, 50.0);

  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Disk d{Point(coord(rng), coord(rng)), rad(rng)};
    const auto pts = pierce_disk_cluster(d, coord(rng));
    ++t.runs;
    if (pts.size() != 7) t.fail("disk cluster size " + std::to_string(pts.size()));
    for (std::size_t j = 1; j < pts.size(); ++j)
      worst_rel = std::max(worst_rel,
                           std::abs(distance(pts[j], d.center) - std::sqrt(3.0) * d.radius) /
                               (std::sqrt(3.0) * d.radius));
  }
  if (worst_rel > 1e-12) t.fail("outer point distance rel err " + std::to_string(worst_rel));

  ConeSet canonical;
  canonical.directions = {Point(0, 0, 1)};
  double worst_pq = 0.0;
  for (double r : {1.0, 0.37, 12.5}) {
    const auto q = pierce_ball_cluster(Disk{Point(0, 0, 0), r}, canonical)[1];
    ++t.runs;
    if (std::abs(q[0]) > 0 || std::abs(q[1]) > 0 || std::abs(q[2] - std::sqrt(3.0) * r) > 1e-12 * r)
      t.fail("canonical q off axis");
    for (int s = 0; s < 360; ++s) {
      const double a = 2 * std::numbers::pi * s / 360;
      const Point c1(0.5 * r * std::cos(a), 0.5 * r * std::sin(a), std::sqrt(3.0) / 2 * r);
      const Point c2(r * std::cos(a), r * std::sin(a), std::sqrt(3.0) * r);
      worst_pq = std::max({worst_pq, std::abs(distance(c1, q) - r), std::abs(distance(c2, q) - r)});
    }
  }
  if (worst_pq > 1e-9) t.fail("|pq| - r = " + std::to_string(worst_pq));

  long misses2 = 0, misses3 = 0;
  const Disk dstar{Point(3.0, -2.0), 1.5};
  misses2 = oracle::random_piercing_misses(dstar, pierce_disk_cluster(dstar), 10000, rng);
  const Disk bstar{Point(1.0, 2.0, -1.0), 2.0};
  misses3 = oracle::random_piercing_misses(
      bstar, pierce_ball_cluster(bstar, cone_cover_directions()), 10000, rng);
  t.runs += 2;
  if (misses2) t.fail(std::to_string(misses2) + " unpierced random disks");
  if (misses3) t.fail(std::to_string(misses3) + " unpierced random balls");
  std::ostringstream os;
  os << "max rel err " << worst_rel << ", max | |pq|-r | " << worst_pq
     << ", random probes missed: disks " << misses2 << "/10000, balls " << misses3 << "/10000";
  return t.result("piercing_geometry", os.str());
}

CheckResult cone_certificate() {
  CheckResult r;
  r.name = "cone_covering_certificate";
  try {
    const ConeSet& cones = cone_cover_directions(false);
    double worst_norm = 0.0;
    for (const Point& d : cones.directions) worst_norm = std::max(worst_norm, std::abs(norm(d) - 1.0));
    const double radius = sampled_covering_radius(cones.directions, 1'000'000);
    r.passed = cones.directions.size() == 20 && !cones.fallback && worst_norm <= 1e-12 &&
               radius <= std::numbers::pi / 6 + 1e-6;
    std::ostringstream os;
    os << cones.directions.size() << " directions, covering radius " << radius / std::numbers::pi
       << " pi, max norm error " << worst_norm;
    r.detail = os.str();
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

CheckResult ball_net(const Options& o) {
  Tally t;
  long heavy = 0;
  for (double eps : {0.5, 0.25, 0.1})
    for (int n : {20, 30})
      for (int variant = 0; variant < 2; ++variant) {
        const std::uint64_t seed = o.seed + 6000 + static_cast<std::uint64_t>(n * 3 + variant);
        const UserSet u = instance(3, n, seed, variant);
        const std::string id = tag(n, 0, seed) + " eps=" + std::to_string(eps);
        ++t.runs;
        try {
          const auto st = build_ball_net(u, eps);
          const int cap_size = 21 * static_cast<int>(std::floor(1.0 / eps + 1e-9));
          if (st.k() > cap_size) t.fail(id + ": net size " + std::to_string(st.k()));
          const auto rep = oracle::check_piercing(u.points(), eps, st.placements.points());
          heavy += rep.candidates;
          if (rep.misses > 0) t.fail(id + ": " + std::to_string(rep.misses) + " unpierced balls");
        } catch (const std::exception& e) {
          t.fail(id + ": " + e.what());
        }
      }
  return t.result("ball_net_suite", std::to_string(heavy) + " heavy candidate balls");
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = {
      {"tables", [](const Options&) { return table_2d(); }},
      {"tables", [](const Options&) { return table_3d(); }},
      {"tables", [](const Options&) { return crossovers(); }},
      {"oracle", oracle_equivalence},
      {"bounds", halfcell_lower_bound},
      {"bounds", centerpoint_game},
      {"bounds", ek_game},
      {"piercing", disk_net},
      {"bounds", sector_witness},
      {"piercing", piercing_geometry},
      {"piercing", [](const Options&) { return cone_certificate(); }},
      {"piercing", ball_net},
  };
  return checks;
}

std::vector<CheckResult> run_suite(const std::string& suite, const Options& o) {
  if (suite != "all" && suite != "bounds" && suite != "piercing" && suite != "oracle" &&
      suite != "tables")
    throw std::invalid_argument("unknown suite '" + suite + "'");
  std::vector<CheckResult> out;
  for (const auto& c : all_checks()) {
    if (suite != "all" && c.suite != suite) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r = c.run(o);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0 && r.seconds > r.time_limit) {
      r.passed = false;
      r.detail += " (over the " + std::to_string(r.time_limit) + " s limit)";
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace vg::verify
