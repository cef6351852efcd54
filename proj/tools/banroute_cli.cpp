// banroute: command-line front end for the ban-aware Pareto router.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "banroute/bench.hpp"
#include "banroute/contraction_hierarchy.hpp"
#include "banroute/errors.hpp"
#include "banroute/generators.hpp"
#include "banroute/oracle.hpp"
#include "banroute/search.hpp"
#include "banroute/text_format.hpp"
#include "banroute/travel_time.hpp"

namespace {

using namespace banroute;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kParse = 2,
  kInvalid = 3,
  kCap = 4,
  kOracleGuard = 5,
  kMismatch = 6,
};

struct QuerySource {
  std::string inline_query;
  std::string query_file;
  std::optional<Cost> source_wait_cost;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--query", inline_query, "inline query \"<s> <z> <t_min> <t_max>\"");
    cmd->add_option("--queries", query_file, "file with query lines (default: the instance file)");
    cmd->add_option("--source-wait-cost", source_wait_cost, "waiting cost rate at the source (<= c0)");
  }

  std::vector<Query> load(const std::string& instance_path) const {
    std::vector<Query> qs;
    if (!inline_query.empty()) {
      qs.push_back(parse_query_line(inline_query));
    } else {
      qs = load_queries(query_file.empty() ? instance_path : query_file);
    }
    if (qs.empty()) throw InvalidInput("no query given (use --query or --queries)");
    for (Query& q : qs) q.source_wait_cost = source_wait_cost;
    return qs;
  }
};

struct SearchFlags {
  bool no_astar = false;
  bool no_prune_target = false;
  bool no_prune_bounds = false;
  bool no_prune_parent = false;
  std::size_t iteration_cap = SearchOptions{}.iteration_cap;
  std::size_t piece_cap = SearchOptions{}.piece_cap;
  std::string potentials = "dijkstra";
  std::string ch_file;

  void add_to(CLI::App* cmd) {
    cmd->add_flag("--no-astar", no_astar, "order the queue by time only");
    cmd->add_flag("--no-prune-target", no_prune_target, "disable target pruning");
    cmd->add_flag("--no-prune-bounds", no_prune_bounds, "disable bounds pruning");
    cmd->add_flag("--no-prune-parent", no_prune_parent, "disable parent-loop pruning");
    cmd->add_option("--iteration-cap", iteration_cap, "abort after this many queue pops")->check(CLI::PositiveNumber);
    cmd->add_option("--piece-cap", piece_cap, "abort when a profile exceeds this many pieces")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--potentials", potentials, "zero|dijkstra|ch")->check(CLI::IsMember({"zero", "dijkstra", "ch"}));
    cmd->add_option("--ch", ch_file, "hierarchy file from ch-build (implies --potentials ch)");
  }

  SearchOptions options(const RoadInstance& instance, std::optional<ContractionHierarchy>& storage) const {
    SearchOptions o;
    o.astar = !no_astar;
    o.prune_target = !no_prune_target;
    o.prune_bounds = !no_prune_bounds;
    o.prune_parent = !no_prune_parent;
    o.iteration_cap = iteration_cap;
    o.piece_cap = piece_cap;
    o.potentials = parse_potential_mode(potentials);
    if (!ch_file.empty()) {
      storage = ContractionHierarchy::load(ch_file);
      o.potentials = PotentialMode::ContractionHierarchy;
    }
    if (!storage && o.potentials == PotentialMode::ContractionHierarchy) storage = ContractionHierarchy::build(instance);
    if (storage) o.hierarchy = &*storage;
    return o;
  }
};

json route_json(const Route& r) {
  return {{"R", r.vertices}, {"A", r.arrivals}, {"D", r.departures}, {"edges", r.edges}};
}

json solution_json(const RoadInstance& instance, const Query& q, const ParetoSolution& sol) {
  json routes = json::array();
  for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
    json r = route_json(sol.routes[i]);
    r["arrival"] = sol.pairs[i].first;
    r["cost"] = route_cost(instance, q, sol.routes[i]);
    routes.push_back(std::move(r));
  }
  return {{"query", {{"source", q.source}, {"target", q.target}, {"t_min", q.t_min}, {"t_max", q.t_max}}},
          {"routes", std::move(routes)},
          {"stats",
           {{"pops", sol.stats.pops},
            {"settled", sol.stats.settled_vertices},
            {"relaxations", sol.stats.relaxations},
            {"pruned_target", sol.stats.pruned_target},
            {"pruned_bounds", sol.stats.pruned_bounds},
            {"pruned_parent", sol.stats.pruned_parent}}}};
}

json solution_geojson(const RoadInstance& instance, const ParetoSolution& sol) {
  json features = json::array();
  for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
    json coords = json::array();
    for (Vertex v : sol.routes[i].vertices) {
      const auto& c = instance.coord(v);
      coords.push_back({c->lon, c->lat});
    }
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", std::move(coords)}}},
                        {"properties", {{"arrival", sol.pairs[i].first}, {"cost", sol.pairs[i].second}}}});
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

std::string join(const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

int cmd_validate(const std::string& path) {
  const RoadInstance inst = load_instance(path);
  std::cout << "vertices " << inst.vertex_count() << "\nedges " << inst.edge_count() << "\nbans "
            << inst.ban_count() << "\nmax_rating " << inst.max_rating() << "\ntractable "
            << (inst.params().tractable() ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_query(const std::string& path, const QuerySource& qsrc, const SearchFlags& flags, const std::string& format) {
  const RoadInstance inst = load_instance(path);
  const auto queries = qsrc.load(path);
  if (format == "geojson" && !inst.has_coords()) {
    throw InvalidInput("no coordinates in instance; GeoJSON export needs a coord line for every vertex");
  }
  std::optional<ContractionHierarchy> ch;
  const SearchOptions options = flags.options(inst, ch);
  json all = json::array();
  bool first = true;
  for (const Query& q : queries) {
    spdlog::info("query {} -> {} over [{}, {}]", q.source, q.target, q.t_min, q.t_max);
    const ParetoSolution sol = run_query(inst, q, options);
    spdlog::debug("pops {} relaxations {}", sol.stats.pops, sol.stats.relaxations);
    if (format == "json") {
      all.push_back(solution_json(inst, q, sol));
    } else if (format == "geojson") {
      all.push_back(solution_geojson(inst, sol));
    } else if (format == "csv") {
      if (first) std::cout << "source,target,arrival,cost,vertices,arrivals,departures\n";
      for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
        const Route& r = sol.routes[i];
        std::ostringstream arr, dep;
        for (std::size_t k = 0; k < r.size(); ++k) {
          arr << (k ? " " : "") << r.arrivals[k];
          dep << (k ? " " : "") << r.departures[k];
        }
        std::cout << q.source << ',' << q.target << ',' << sol.pairs[i].first << ',' << sol.pairs[i].second << ','
                  << join(r.vertices) << ',' << arr.str() << ',' << dep.str() << '\n';
      }
    } else {
      std::printf("query %u -> %u  [%lld, %lld]  %zu optimal route(s)\n", q.source, q.target,
                  static_cast<long long>(q.t_min), static_cast<long long>(q.t_max), sol.pairs.size());
      std::printf("%10s %12s  %s\n", "arrival", "cost", "vertices");
      for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
        std::printf("%10lld %12lld  %s\n", static_cast<long long>(sol.pairs[i].first),
                    static_cast<long long>(sol.pairs[i].second), join(sol.routes[i].vertices).c_str());
      }
    }
    first = false;
  }
  if (format == "json" || format == "geojson") std::cout << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  return kOk;
}

int cmd_oracle(const std::string& path, const QuerySource& qsrc, std::size_t max_states) {
  const RoadInstance inst = load_instance(path);
  std::cout << "source,target,arrival,cost\n";
  for (const Query& q : qsrc.load(path)) {
    for (const auto& [t, c] : oracle_solve(inst, q, OracleOptions{max_states})) {
      std::cout << q.source << ',' << q.target << ',' << t << ',' << c << '\n';
    }
  }
  return kOk;
}

int cmd_verify(const std::string& path, const QuerySource& qsrc, const SearchFlags& flags, std::size_t max_states,
               bool inject_fault) {
  const RoadInstance inst = load_instance(path);
  std::optional<ContractionHierarchy> ch;
  const SearchOptions options = flags.options(inst, ch);
  int status = kOk;
  for (const Query& q : qsrc.load(path)) {
    const auto expected = oracle_solve(inst, q, OracleOptions{max_states});
    ParetoSolution sol = run_query(inst, q, options);
    if (inject_fault && !sol.pairs.empty()) sol.pairs.back().second += 1;
    std::optional<std::string> divergence;
    for (std::size_t i = 0; i < std::max(expected.size(), sol.pairs.size()) && !divergence; ++i) {
      const auto show = [](const std::vector<TimeCost>& v, std::size_t k) {
        return k < v.size() ? "(" + std::to_string(v[k].first) + ", " + std::to_string(v[k].second) + ")"
                            : std::string("none");
      };
      if (i >= expected.size() || i >= sol.pairs.size() || expected[i] != sol.pairs[i]) {
        divergence = "pair " + std::to_string(i) + ": search " + show(sol.pairs, i) + ", oracle " + show(expected, i);
      }
    }
    for (std::size_t i = 0; i < sol.routes.size() && !divergence; ++i) {
      if (!route_is_feasible(inst, q, sol.routes[i])) {
        divergence = "route " + std::to_string(i) + " is infeasible";
      } else if (route_cost(inst, q, sol.routes[i]) != sol.pairs[i].second) {
        divergence = "route " + std::to_string(i) + " cost differs from its pair";
      }
    }
    if (divergence) {
      std::cout << "MISMATCH query " << q.source << ' ' << q.target << ' ' << q.t_min << ' ' << q.t_max << ": "
                << *divergence << '\n';
      status = kMismatch;
    } else {
      std::cout << "OK query " << q.source << ' ' << q.target << ' ' << q.t_min << ' ' << q.t_max << ": "
                << expected.size() << " pair(s)\n";
    }
  }
  return status;
}

std::vector<std::int64_t> parse_numbers(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidInput("not a number: '" + item + "'");
    }
  }
  return out;
}

Region parse_region(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw InvalidInput("bad region '" + text + "'");
    }
  }
  if (v.size() != 4) throw InvalidInput("region needs min_lat,min_lon,max_lat,max_lon");
  return Region{v[0], v[1], v[2], v[3]};
}

void emit(const std::string& output, const std::function<void(std::ostream&)>& write) {
  if (output.empty() || output == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(output);
  if (!out) throw InvalidInput("cannot write '" + output + "'");
  write(out);
}

CostParams gadget_costs(Cost d, Cost c0) { return CostParams{d, {c0}}; }

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("banroute");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("BAN_ROUTER_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Pareto-optimal routing on road graphs with temporary driving bans"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string output;
  std::string format = "json";
  std::size_t max_states = OracleOptions{}.max_states;
  QuerySource qsrc;
  SearchFlags flags;

  auto* validate = app.add_subcommand("validate", "parse and check an instance");
  validate->add_option("instance", instance_path)->required();

  auto* query = app.add_subcommand("query", "compute all Pareto-optimal routes");
  query->add_option("instance", instance_path)->required();
  query->add_option("--format", format, "json|csv|geojson|table")
      ->check(CLI::IsMember({"json", "csv", "geojson", "table"}));
  qsrc.add_to(query);
  flags.add_to(query);

  auto* oracle = app.add_subcommand("oracle", "solve with the time-expanded reference solver");
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--max-states", max_states, "state budget");
  qsrc.add_to(oracle);

  bool inject_fault = false;
  auto* verify = app.add_subcommand("verify", "compare the search against the reference solver");
  verify->add_option("instance", instance_path)->required();
  verify->add_option("--max-states", max_states, "state budget");
  verify->add_flag("--inject-fault", inject_fault, "perturb the search result (negative control)")
      ->group("");
  qsrc.add_to(verify);
  flags.add_to(verify);

  auto* gen = app.add_subcommand("gen", "generate instances and queries");
  gen->require_subcommand(1);
  std::uint64_t seed = 1;
  Cost d = 0, c0 = 0;
  bool parallel = false;

  std::string numbers;
  auto* gen_partition = gen->add_subcommand("partition", "hardness gadget for the case d < c0");
  gen_partition->add_option("--numbers", numbers, "comma separated positive numbers")->required();
  gen_partition->add_option("--d", d, "driving cost")->default_val(1);
  gen_partition->add_option("--c0", c0, "unrated waiting cost")->default_val(2);
  gen_partition->add_flag("--parallel", parallel, "use parallel lower edges");
  gen_partition->add_option("-o,--output", output);

  int k = 1;
  auto* gen_exp = gen->add_subcommand("exponential", "gadget with 2^k Pareto routes for the case d > c0");
  gen_exp->add_option("--k", k, "number of stages")->default_val(3);
  gen_exp->add_option("--d", d, "driving cost")->default_val(2);
  gen_exp->add_option("--c0", c0, "unrated waiting cost")->default_val(1);
  gen_exp->add_flag("--parallel", parallel, "use parallel lower edges");
  gen_exp->add_option("-o,--output", output);

  RandomInstanceParams rp;
  std::string topology = "random", pattern = "random", costs_text;
  std::string mix_text;
  auto* gen_random = gen->add_subcommand("random", "seeded synthetic instance");
  gen_random->add_option("--seed", seed);
  gen_random->add_option("--n", rp.vertices, "vertices");
  gen_random->add_option("--m", rp.edges, "edges (random topology)");
  gen_random->add_option("--topology", topology)->check(CLI::IsMember({"random", "grid"}));
  gen_random->add_option("--pattern", pattern)->check(CLI::IsMember({"random", "nightly", "closures"}));
  gen_random->add_option("--density", rp.ban_density, "probability that an edge carries bans");
  gen_random->add_option("--bans-per-edge", rp.max_bans_per_edge);
  gen_random->add_option("--max-bans", rp.max_total_bans, "total ban limit (0 = none)");
  gen_random->add_option("--horizon", rp.horizon, "time range for ban placement");
  gen_random->add_option("--min-delta", rp.min_driving_time);
  gen_random->add_option("--max-delta", rp.max_driving_time);
  gen_random->add_option("--costs", costs_text, "d,c0,c1,...,cr");
  gen_random->add_option("--rating-mix", mix_text, "weights for ratings 0..r");
  gen_random->add_option("-o,--output", output);

  std::string ranks_text = "12", region_from, region_to;
  std::size_t sources = 10;
  Time t_min = 0, t_max = 1440;
  auto* gen_queries = gen->add_subcommand("queries", "Dijkstra-rank or region-pair queries");
  gen_queries->add_option("instance", instance_path)->required();
  gen_queries->add_option("--seed", seed);
  gen_queries->add_option("--ranks", ranks_text, "comma separated ranks");
  gen_queries->add_option("--sources", sources, "number of sources (or queries for regions)");
  gen_queries->add_option("--t-min", t_min);
  gen_queries->add_option("--t-max", t_max);
  gen_queries->add_option("--from-region", region_from, "min_lat,min_lon,max_lat,max_lon");
  gen_queries->add_option("--to-region", region_to, "min_lat,min_lon,max_lat,max_lon");
  gen_queries->add_option("-o,--output", output);

  BenchOptions bench_options;
  std::string bench_format = "table";
  bool deterministic = false;
  auto* bench = app.add_subcommand("bench", "run a query batch and report statistics");
  bench->add_option("instance", instance_path)->required();
  bench->add_option("--queries", qsrc.query_file, "query file (default: rank queries from --seed)");
  bench->add_option("--ranks", ranks_text, "ranks when generating queries");
  bench->add_option("--sources", sources, "sources when generating queries");
  bench->add_option("--t-min", t_min);
  bench->add_option("--t-max", t_max);
  bench->add_option("--seed", seed);
  bench->add_option("--threads", bench_options.threads)->check(CLI::PositiveNumber);
  bench->add_option("--format", bench_format, "table|csv|json")->check(CLI::IsMember({"table", "csv", "json"}));
  bench->add_flag("--deterministic", deterministic, "report zero running times");
  bench->add_option("--source-wait-cost", qsrc.source_wait_cost);
  flags.add_to(bench);

  EdgeId edge_id = 0;
  auto* ttf = app.add_subcommand("ttf", "travel-time function tools");
  ttf->require_subcommand(1);
  auto* ttf_dump = ttf->add_subcommand("dump", "print the travel-time breakpoints of one edge");
  ttf_dump->add_option("instance", instance_path)->required();
  ttf_dump->add_option("edge", edge_id)->required();
  ttf_dump->add_option("--t-min", t_min);
  ttf_dump->add_option("--t-max", t_max);

  Vertex vertex = 0;
  auto* profile = app.add_subcommand("profile", "cost profile tools");
  profile->require_subcommand(1);
  auto* profile_dump = profile->add_subcommand("dump", "print the final cost profile of a vertex as CSV");
  profile_dump->add_option("instance", instance_path)->required();
  profile_dump->add_option("vertex", vertex)->required();
  qsrc.add_to(profile_dump);
  flags.add_to(profile_dump);

  auto* ch_build = app.add_subcommand("ch-build", "build and save a contraction hierarchy");
  ch_build->add_option("instance", instance_path)->required();
  ch_build->add_option("-o,--output", output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*validate) return cmd_validate(instance_path);
    if (*query) return cmd_query(instance_path, qsrc, flags, format);
    if (*oracle) return cmd_oracle(instance_path, qsrc, max_states);
    if (*verify) return cmd_verify(instance_path, qsrc, flags, max_states, inject_fault);
    if (*gen_partition) {
      const PartitionGadget g =
          gen_partition_gadget(parse_numbers(numbers), gadget_costs(d, c0), PartitionOptions{parallel});
      emit(output, [&](std::ostream& out) {
        out << "# partition gadget, sum " << g.total << ", threshold " << g.threshold << '\n';
        write_instance(out, g.instance);
        write_query(out, g.query);
      });
      return kOk;
    }
    if (*gen_exp) {
      const ExponentialGadget g = gen_exponential_gadget(k, gadget_costs(d, c0), ExponentialOptions{parallel});
      emit(output, [&](std::ostream& out) {
        out << "# exponential gadget, k " << g.k << ", x " << g.x << '\n';
        write_instance(out, g.instance);
        write_query(out, g.query);
      });
      return kOk;
    }
    if (*gen_random) {
      rp.seed = seed;
      rp.topology = topology == "grid" ? Topology::Grid : Topology::Random;
      rp.pattern = pattern == "nightly" ? BanPattern::Nightly
                   : pattern == "closures" ? BanPattern::Closures
                                           : BanPattern::Random;
      if (!costs_text.empty()) {
        const auto c = parse_numbers(costs_text);
        if (c.size() < 2) throw InvalidInput("--costs needs d and at least c0");
        rp.costs = CostParams{c[0], std::vector<Cost>(c.begin() + 1, c.end())};
        if (mix_text.empty()) {
          rp.rating_mix.assign(rp.costs.waiting.size(), 0.0);
          rp.rating_mix[0] = 1.0;
        }
      }
      if (!mix_text.empty()) {
        rp.rating_mix.clear();
        std::stringstream ss(mix_text);
        std::string item;
        while (std::getline(ss, item, ',')) rp.rating_mix.push_back(std::stod(item));
      }
      const RoadInstance inst = gen_random_instance(rp);
      emit(output, [&](std::ostream& out) { write_instance(out, inst); });
      return kOk;
    }
    if (*gen_queries) {
      const RoadInstance inst = load_instance(instance_path);
      std::vector<Query> qs;
      if (!region_from.empty() || !region_to.empty()) {
        qs = gen_region_queries(inst, seed, parse_region(region_from), parse_region(region_to), sources, t_min, t_max);
      } else {
        std::vector<int> ranks;
        for (auto r : parse_numbers(ranks_text)) ranks.push_back(static_cast<int>(r));
        const RankQueries rq = gen_rank_queries(inst, seed, ranks, sources, t_min, t_max);
        if (rq.skipped > 0) spdlog::warn("{} (source, rank) combinations skipped: too few reachable vertices", rq.skipped);
        for (const auto& q : rq.queries) qs.push_back(q.query);
      }
      emit(output, [&](std::ostream& out) {
        for (const Query& q : qs) write_query(out, q);
      });
      return kOk;
    }
    if (*bench) {
      const RoadInstance inst = load_instance(instance_path);
      std::optional<ContractionHierarchy> ch;
      bench_options.search = flags.options(inst, ch);
      bench_options.deterministic = deterministic;
      std::vector<BenchQuery> batch;
      if (!qsrc.query_file.empty()) {
        for (const Query& q : load_queries(qsrc.query_file)) batch.push_back({q, -1});
      } else {
        std::vector<int> ranks;
        for (auto r : parse_numbers(ranks_text)) ranks.push_back(static_cast<int>(r));
        const RankQueries rq = gen_rank_queries(inst, seed, ranks, sources, t_min, t_max);
        if (rq.skipped > 0) spdlog::warn("{} (source, rank) combinations skipped", rq.skipped);
        for (const auto& q : rq.queries) batch.push_back({q.query, q.rank});
      }
      for (auto& bq : batch) bq.query.source_wait_cost = qsrc.source_wait_cost;
      const auto reports = run_benchmark(inst, batch, bench_options);
      const BenchAggregate agg = aggregate(reports, inst.max_rating());
      if (bench_format == "csv") {
        write_report_csv(std::cout, reports, inst.max_rating());
      } else if (bench_format == "json") {
        std::cout << reports_to_json(reports, agg) << '\n';
      } else {
        std::cout << describe(bench_options.search) << '\n';
        write_aggregate_table(std::cout, agg, inst.max_rating());
      }
      return kOk;
    }
    if (*ttf_dump) {
      const RoadInstance inst = load_instance(instance_path);
      if (edge_id >= inst.edge_count()) throw InvalidInput("unknown edge " + std::to_string(edge_id));
      if (t_min >= t_max) throw InvalidInput("need t_min < t_max");
      const TravelTimeFunction fn(inst.edge(edge_id), t_min, t_max);
      std::cout << "arrival,latest_departure,travel_time,kind\n";
      for (const TtfSegment& s : fn.segments()) {
        std::cout << s.arrival << ',' << s.departure << ',' << s.arrival - s.departure << ','
                  << (s.driving ? "driving" : "closed") << '\n';
      }
      const BreakpointSets sets = classify_breakpoints(fn);
      const auto list = [](const std::vector<Time>& v) {
        std::string s;
        for (Time t : v) s += (s.empty() ? "" : " ") + std::to_string(t);
        return s;
      };
      std::cout << "# convex " << list(sets.convex) << "\n# concave " << list(sets.concave) << "\n# discontinuous "
                << list(sets.discontinuous) << '\n';
      return kOk;
    }
    if (*profile_dump) {
      const RoadInstance inst = load_instance(instance_path);
      if (!inst.is_vertex(vertex)) throw InvalidInput("unknown vertex " + std::to_string(vertex));
      std::optional<ContractionHierarchy> ch;
      ProfileSearch search(inst, qsrc.load(instance_path).front(), flags.options(inst, ch));
      search.run();
      std::cout << "start,cost,slope,parent\n";
      for (const ProfilePiece& p : search.profile(vertex).pieces()) {
        std::string parent = p.parent.origin == Origin::Source ? "source"
                             : p.parent.origin == Origin::Wait ? "wait"
                                                               : "edge " + std::to_string(p.parent.edge);
        std::cout << p.start << ',' << p.cost << ',' << p.slope << ',' << parent << '\n';
      }
      return kOk;
    }
    if (*ch_build) {
      const RoadInstance inst = load_instance(instance_path);
      const ContractionHierarchy ch = ContractionHierarchy::build(inst);
      ch.save(output);
      std::cout << "vertices " << ch.vertex_count() << "\narcs " << ch.arc_count() << "\nshortcuts "
                << ch.shortcut_count() << '\n';
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const OracleTooLarge& e) {
    std::cerr << "oracle guard: " << e.what() << '\n';
    return kOracleGuard;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
