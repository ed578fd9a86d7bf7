#include "vg/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "vg/epsilon_table.hpp"
#include "vg/game_engine.hpp"
#include "vg/oracle.hpp"
#include "vg/serialization.hpp"
#include "vg/service_api.hpp"
#include "vg/verify_suites.hpp"

namespace vg::cli {

namespace {

// Input errors that should map to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UserSource {
  std::string file;
  std::string gen;
  bool allow_degenerate = false;

  void attach(CLI::App* app) {
    auto* f = app->add_option("--users", file, "CSV file of users, one x,y[,z] per line");
    auto* g = app->add_option("--gen", gen, "generated instance, dist:n[:seed=S][:dim=D]");
    f->excludes(g);
    app->add_flag("--allow-degenerate", allow_degenerate,
                  "accept user files that fail the general-position check");
  }

  UserSet load(std::string& id) const {
    if (!gen.empty()) {
      const auto spec = InstanceSpec::parse(gen);
      id = spec.id();
      return generate_users(spec);
    }
    if (file.empty()) throw UsageError("one of --users or --gen is required");
    id = file;
    UserSet users(read_points_csv_file(file));
    if (!users.general_position() && !allow_degenerate)
      throw UsageError(file + ": users are not in general position (pass --allow-degenerate)");
    return users;
  }
};

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path);
  if (!file) throw UsageError("cannot write " + path);
  return file;
}

void print_game(std::ostream& out, const GameResult& r) {
  const long n = static_cast<long>(r.users.size());
  out << "instance   " << r.instance_id << "\n"
      << "n=" << n << " d=" << r.users.dimension() << " k=" << r.k
      << " strategy=" << to_string(r.strategy.kind) << " guarantee=" << r.strategy.guarantee << "\n"
      << "P2 best response " << to_string(r.response.location) << " payoff " << r.p2_payoff << "\n"
      << "P2 half-cell response payoff " << r.halfcell.payoff << "\n"
      << "P1 payoff " << r.p1_payoff << " within [" << (r.bounds.lower_fraction * Rational(n))
      << ", " << (r.bounds.upper_fraction * Rational(n)) << "]\n";
}

int cmd_table(int dim, int kmax, const std::string& format, const std::string& rule,
              std::ostream& out) {
  const auto table = build_table(dim, kmax, parse_index_rule(rule));
  if (format == "csv") write_table_csv(out, table);
  else write_table_pretty(out, table);
  return kExitOk;
}

int cmd_play(const UserSource& src, int k, const std::string& strategy,
             std::optional<double> epsilon, bool fallback, const std::string& json_out,
             std::ostream& out, std::ostream& err) {
  std::string id;
  const UserSet users = src.load(id);
  const StrategyKind kind = parse_strategy_kind(strategy);
  if (kind == StrategyKind::custom) throw UsageError("--strategy custom is not playable here");
  PlayParams params;
  params.epsilon = epsilon;
  params.allow_fallback_cones = fallback;
  const auto result = play(users, k, kind, params, id);
  const auto report = verify_bounds(result, build_table(2, std::max(k, 1)));
  if (!json_out.empty()) {
    std::ofstream file;
    open_output(json_out, file, out) << to_json(result).dump() << '\n';
  }
  if (json_out != "-") print_game(out, result);
  for (const auto& v : report.violations) err << "violation: " << v << '\n';
  return report.ok() ? kExitOk : kExitFailure;
}

int cmd_net(const UserSource& src, int dim, double eps, bool fallback, std::ostream& out) {
  std::string id;
  const UserSet users = src.load(id);
  if (users.dimension() != dim)
    throw UsageError("--dim " + std::to_string(dim) + " but users are " +
                     std::to_string(users.dimension()) + "-dimensional");
  const Strategy st = dim == 2 ? build_disk_net(users, eps) : build_ball_net(users, eps, fallback);
  const int per = dim == 2 ? 7 : 21;
  const int size_cap = per * static_cast<int>(std::floor(1.0 / eps + 1e-9));
  bool ok = st.k() <= size_cap;
  out << "# instance " << id << " n=" << users.size() << " epsilon=" << eps << "\n"
      << "# net size " << st.k() << " (cap " << size_cap << "), clusters " << st.clusters.size()
      << ", guarantee " << st.guarantee << "\n";
  const std::size_t oracle_cap = dim == 2 ? 80 : 30;
  if (users.size() <= oracle_cap) {
    const auto rep = oracle::check_piercing(users.points(), eps, st.placements.points());
    out << "# piercing oracle: " << rep.candidates << " heavy candidates, " << rep.misses
        << " unpierced\n";
    ok = ok && rep.misses == 0;
  } else {
    out << "# piercing oracle skipped (n > " << oracle_cap << ")\n";
  }
  if (st.k() > 0) {
    const auto br = best_response(users, st.placements);
    const long cap = st.guarantee.floor_mul(static_cast<long>(users.size()));
    out << "# best response payoff " << br.payoff << " (cap " << cap << ")\n";
    ok = ok && br.payoff <= cap;
  }
  write_points_csv(out, st.placements.points());
  return ok ? kExitOk : kExitFailure;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, std::ostream& out) {
  verify::Options o;
  o.seed = seed;
  o.trials = trials;
  bool ok = true;
  for (const auto& r : verify::run_suite(suite, o)) {
    out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << r.name << ' '
        << std::fixed << std::setprecision(2) << r.seconds << "s  " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_batch(const std::vector<std::string>& gens, const std::vector<int>& ks,
              const std::string& strategy, std::optional<double> epsilon,
              const std::string& jsonl, const std::string& summary, std::ostream& out,
              std::ostream& err) {
  const StrategyKind kind = parse_strategy_kind(strategy);
  std::vector<Episode> episodes;
  for (const auto& g : gens)
    for (int k : ks) {
      Episode e;
      e.spec = InstanceSpec::parse(g);
      e.k = k;
      e.kind = kind;
      e.params.epsilon = epsilon;
      episodes.push_back(e);
    }
  const auto results = run_batch(episodes);
  int kmax = 1;
  for (int k : ks) kmax = std::max(kmax, k);
  const auto table = build_table(2, kmax);
  bool ok = true;
  for (const auto& r : results) {
    const auto rep = verify_bounds(r, table);
    for (const auto& v : rep.violations) err << "violation: " << v << '\n';
    ok = ok && rep.ok();
  }
  if (!jsonl.empty()) {
    std::ofstream file;
    auto& o = open_output(jsonl, file, out);
    for (const auto& r : results) o << to_json(r).dump() << '\n';
  }
  std::ofstream file;
  write_summary_csv(open_output(summary, file, out), results);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Voronoi game workbench"};
  app.require_subcommand(1, 1);

  auto* table = app.add_subcommand("table", "epsilon table with approximation factors");
  int t_dim = 2, t_kmax = 10;
  std::string t_format = "pretty", t_rule = "dimensional";
  table->add_option("--dim", t_dim)->check(CLI::IsMember({2, 3}));
  table->add_option("--kmax", t_kmax)->check(CLI::Range(0, 100000));
  table->add_option("--format", t_format)->check(CLI::IsMember({"csv", "pretty"}));
  table->add_option("--rule", t_rule, "index rule for the recursion")
      ->check(CLI::IsMember({"dimensional", "planar"}));

  auto* playc = app.add_subcommand("play", "one VG(k,1) round against the exact best response");
  UserSource p_src;
  p_src.attach(playc);
  int p_k = 1;
  std::string p_strategy, p_json;
  std::optional<double> p_eps;
  bool p_fallback = false;
  playc->add_option("--k", p_k)->required()->check(CLI::PositiveNumber);
  playc->add_option("--strategy", p_strategy)
      ->required()
      ->check(CLI::IsMember({"centerpoint", "eknet", "disknet", "ballnet", "mustafa_ray",
                             "disk_net", "ball_net"}));
  playc->add_option("--epsilon", p_eps)->check(CLI::Range(0.0, 1.0));
  playc->add_option("--json", p_json, "write the GameResult as JSON ('-' for stdout)");
  playc->add_flag("--allow-fallback-cones", p_fallback);

  auto* netc = app.add_subcommand("net", "weak epsilon-net for disks (2D) or balls (3D)");
  UserSource n_src;
  n_src.attach(netc);
  int n_dim = 2;
  double n_eps = 0.5;
  bool n_fallback = false;
  netc->add_option("--dim", n_dim)->required()->check(CLI::IsMember({2, 3}));
  netc->add_option("--epsilon", n_eps)
      ->required()
      ->check(CLI::Validator(
          [](std::string& v) -> std::string {
            try {
              const double e = std::stod(v);
              return e > 0.0 && e <= 1.0 ? "" : "epsilon must lie in (0, 1]";
            } catch (const std::exception&) {
              return "epsilon must be a number";
            }
          },
          "(0,1]"));
  netc->add_flag("--allow-fallback-cones", n_fallback);

  auto* verifyc = app.add_subcommand("verify", "randomized bound and oracle suites");
  std::string v_suite = "all";
  std::uint64_t v_seed = verify::Options{}.seed;
  int v_trials = 200;
  verifyc->add_option("--suite", v_suite)
      ->check(CLI::IsMember({"all", "bounds", "piercing", "oracle", "tables"}));
  verifyc->add_option("--seed", v_seed, "base seed (VG_SEED overrides)");
  verifyc->add_option("--trials", v_trials)->check(CLI::PositiveNumber);

  auto* batchc = app.add_subcommand("batch", "many generated games, optionally in parallel");
  std::vector<std::string> b_gens;
  std::vector<int> b_ks{1};
  std::string b_strategy = "centerpoint", b_jsonl, b_summary;
  std::optional<double> b_eps;
  batchc->add_option("--gen", b_gens)->required();
  batchc->add_option("--k", b_ks)->check(CLI::PositiveNumber);
  batchc->add_option("--strategy", b_strategy)
      ->check(CLI::IsMember({"centerpoint", "eknet", "disknet", "ballnet", "mustafa_ray",
                             "disk_net", "ball_net"}));
  batchc->add_option("--epsilon", b_eps)->check(CLI::Range(0.0, 1.0));
  batchc->add_option("--jsonl", b_jsonl, "GameResult JSON lines");
  batchc->add_option("--summary", b_summary, "summary CSV (default stdout)");

  auto* servec = app.add_subcommand("serve", "HTTP API for the interactive board");
  std::string s_host = "127.0.0.1";
  int s_port = 8080;
  long s_ttl = 3600;
  std::string s_persist;
  servec->add_option("--host", s_host);
  servec->add_option("--port", s_port)->check(CLI::Range(1, 65535));
  servec->add_option("--ttl", s_ttl, "session idle timeout in seconds")->check(CLI::PositiveNumber);
  servec->add_option("--persist", s_persist, "directory for per-session JSON dumps");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table) return cmd_table(t_dim, t_kmax, t_format, t_rule, out);
    if (*playc) return cmd_play(p_src, p_k, p_strategy, p_eps, p_fallback, p_json, out, err);
    if (*netc) return cmd_net(n_src, n_dim, n_eps, n_fallback, out);
    if (*verifyc) {
      if (const char* env = std::getenv("VG_SEED")) {
        try {
          v_seed = std::stoull(env);
        } catch (const std::exception&) {
          throw UsageError(std::string("VG_SEED is not an integer: ") + env);
        }
      }
      return cmd_verify(v_suite, v_seed, v_trials, out);
    }
    if (*batchc)
      return cmd_batch(b_gens, b_ks, b_strategy, b_eps, b_jsonl, b_summary, out, err);
    if (*servec) {
      service::Options opts;
      opts.ttl = std::chrono::seconds(s_ttl);
      if (!s_persist.empty()) opts.persist_dir = s_persist;
      service::Service svc(opts);
      err << "serving on http://" << s_host << ':' << s_port << '\n';
      return service::serve(svc, s_host, s_port) == 0 ? kExitOk : kExitFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace vg::cli
