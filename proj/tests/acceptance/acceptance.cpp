// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "banroute/bench.hpp"
#include "banroute/contraction_hierarchy.hpp"
#include "banroute/errors.hpp"
#include "banroute/generators.hpp"
#include "banroute/oracle.hpp"
#include "banroute/potentials.hpp"
#include "banroute/search.hpp"
#include "test_util.hpp"

using namespace banroute;
using testing::CostRegime;
using testing::small_params;
using testing::small_query;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const char* name, const Outcome& o, double secs) {
  std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string pair_text(const std::vector<TimeCost>& pairs) {
  std::string s;
  for (const auto& [t, c] : pairs) s += "(" + std::to_string(t) + "," + std::to_string(c) + ")";
  return s;
}

// Criteria 1, 4 and 5 share their runs.
void oracle_equivalence() {
  const auto start = Clock::now();
  Outcome eq, iterations, pieces;
  constexpr std::uint64_t kInstances = 600;
  std::size_t pairs = 0;
  std::size_t max_pops_ratio_num = 0, max_pops_ratio_den = 1;
  for (std::uint64_t seed = 1; seed <= kInstances; ++seed) {
    const RandomInstanceParams params = small_params(seed);
    const RoadInstance inst = gen_random_instance(params);
    const Query q = small_query(inst, seed, params.horizon);
    if (inst.vertex_count() > 12 || inst.edge_count() > 30 || inst.ban_count() > 8 || q.t_max > 60 ||
        !inst.params().tractable()) {
      eq.fail("generator produced an out-of-range instance at seed " + std::to_string(seed));
      continue;
    }
    SearchOptions options;
    options.check_piece_bounds = true;
    const ParetoSolution sol = run_query(inst, q, options);
    const auto expected = oracle_solve(inst, q);
    pairs += expected.size();
    if (sol.pairs != expected) {
      eq.fail("seed " + std::to_string(seed) + ": search " + pair_text(sol.pairs) + " oracle " + pair_text(expected));
    }
    for (std::size_t i = 0; i < sol.routes.size() && i < expected.size(); ++i) {
      if (!route_is_feasible(inst, q, sol.routes[i]) || route_cost(inst, q, sol.routes[i]) != expected[i].second ||
          sol.routes[i].arrival() != expected[i].first) {
        eq.fail("seed " + std::to_string(seed) + ": route " + std::to_string(i) + " does not realise its pair");
      }
    }
    const std::size_t n = inst.vertex_count();
    const std::size_t b = inst.ban_count();
    const auto r = static_cast<std::size_t>(inst.max_rating());
    const std::size_t bound = 2 * n * (b * (r + 1) + 1);
    if (sol.stats.pops > bound) {
      iterations.fail("seed " + std::to_string(seed) + ": " + std::to_string(sol.stats.pops) + " pops > " +
                      std::to_string(bound));
    }
    if (sol.stats.pops * max_pops_ratio_den > max_pops_ratio_num * bound) {
      max_pops_ratio_num = sol.stats.pops;
      max_pops_ratio_den = bound;
    }
    if (sol.stats.piece_bound_violation) {
      pieces.fail("seed " + std::to_string(seed) + ": " + *sol.stats.piece_bound_violation);
    }
  }
  const double secs = seconds_since(start);
  if (secs > 120) eq.fail("took longer than 2 minutes");
  if (eq.pass) {
    eq.detail = std::to_string(kInstances) + " instances, " + std::to_string(pairs) + " pairs identical";
  }
  if (iterations.pass) {
    iterations.detail = "max pops/bound " + std::to_string(max_pops_ratio_num) + "/" +
                        std::to_string(max_pops_ratio_den) + " over " + std::to_string(kInstances) + " runs";
  }
  if (pieces.pass) pieces.detail = "no breakpoint limit violated in " + std::to_string(kInstances) + " runs";
  report(1, "oracle equivalence", eq, secs);
  report(4, "iteration bound", iterations, secs);
  report(5, "profile piece bound", pieces, secs);
}

void exponential_gadget() {
  const auto start = Clock::now();
  Outcome o;
  const std::vector<CostParams> params{CostParams{2, {1}}, CostParams{3, {1}}, CostParams{14, {7}},
                                       CostParams{5, {4}}};
  for (const CostParams& p : params) {
    for (int k = 1; k <= 8; ++k) {
      const auto g = gen_exponential_gadget(k, p);
      const ParetoSolution sol = run_query(g.instance, g.query);
      const Time scale = (Time{1} << k) - 1;
      const Cost d = p.driving;
      const Cost c0 = p.unrated_waiting();
      if (sol.pairs.size() != (std::size_t{1} << k)) {
        o.fail("k=" + std::to_string(k) + ": " + std::to_string(sol.pairs.size()) + " routes");
        continue;
      }
      for (Time code = 0; code <= scale; ++code) {
        const TimeCost expected{scale * g.x + 2 * code, scale * d * g.x + code * (2 * d - g.x * (d - c0))};
        if (sol.pairs[code] != expected) o.fail("k=" + std::to_string(k) + " p=" + std::to_string(code));
        if (route_cost(g.instance, g.query, sol.routes[code]) != expected.second) {
          o.fail("k=" + std::to_string(k) + " route cost p=" + std::to_string(code));
        }
      }
    }
  }
  const double secs = seconds_since(start);
  if (secs > 30) o.fail("took longer than 30 s");
  if (o.pass) o.detail = "k=1..8 for " + std::to_string(params.size()) + " cost settings, all closed forms exact";
  report(2, "exponential gadget closed forms", o, secs);
}

bool subset_sum_splits(const std::vector<std::int64_t>& xs) {
  std::int64_t total = 0;
  for (auto x : xs) total += x;
  if (total % 2 != 0) return false;
  for (std::uint32_t mask = 0; mask < (1u << xs.size()); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if ((mask >> i) & 1u) sum += xs[i];
    }
    if (2 * sum == total) return true;
  }
  return false;
}

void partition_gadget() {
  const auto start = Clock::now();
  Outcome o;
  Rng rng(2024);
  std::size_t yes = 0;
  constexpr int kInstances = 50;
  for (int i = 0; i < kInstances; ++i) {
    std::vector<std::int64_t> xs(static_cast<std::size_t>(rng.uniform(1, 12)));
    for (auto& x : xs) x = rng.uniform(1, 12);
    // make roughly half of them even-sum so that both answers occur
    if (i % 2 == 0) {
      std::int64_t total = 0;
      for (auto x : xs) total += x;
      if (total % 2 != 0) ++xs.back();
    }
    const CostParams params{rng.uniform(1, 3), {rng.uniform(4, 8)}};
    const auto g = gen_partition_gadget(xs, params, {.parallel_edges = i % 5 == 4});
    const bool expected = subset_sum_splits(xs);
    yes += expected ? 1 : 0;
    if (oracle_check_decision(g.instance, g.query, g.threshold) != expected) {
      o.fail("instance " + std::to_string(i) + " disagrees with subset sum");
    }
  }
  const double secs = seconds_since(start);
  if (secs > 60) o.fail("took longer than 1 minute");
  if (o.pass) {
    o.detail = std::to_string(kInstances) + " instances (" + std::to_string(yes) + " yes, " +
               std::to_string(kInstances - static_cast<int>(yes)) + " no) agree";
  }
  report(3, "partition gadget decision", o, secs);
}

void pruning_invariance() {
  const auto start = Clock::now();
  Outcome o;
  constexpr std::uint64_t kInstances = 100;
  for (std::uint64_t i = 0; i < kInstances; ++i) {
    const std::uint64_t seed = 5000 + i;
    const auto regime = static_cast<CostRegime>(i % 3);
    const RandomInstanceParams params = small_params(seed, regime);
    const RoadInstance inst = gen_random_instance(params);
    const Query q = small_query(inst, seed, params.horizon);
    std::vector<TimeCost> reference;
    for (int mask = 0; mask < 16; ++mask) {
      SearchOptions options;
      options.astar = mask & 1;
      options.prune_target = mask & 2;
      options.prune_bounds = mask & 4;
      options.prune_parent = mask & 8;
      const auto pairs = run_query(inst, q, options).pairs;
      if (mask == 0) {
        reference = pairs;
      } else if (pairs != reference) {
        o.fail("seed " + std::to_string(seed) + " mask " + std::to_string(mask));
      }
    }
  }
  if (o.pass) o.detail = "16 flag combinations identical on " + std::to_string(kInstances) + " instances";
  report(6, "pruning and A* invariance", o, seconds_since(start));
}

void potentials_exactness() {
  const auto start = Clock::now();
  Outcome o;
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomInstanceParams p;
    p.seed = seed;
    p.vertices = 1000;
    p.edges = 2500;
    p.max_driving_time = 20;
    p.topology = seed % 4 == 0 ? Topology::Grid : Topology::Random;
    if (p.topology == Topology::Grid) p.vertices = 1024;
    const RoadInstance inst = gen_random_instance(p);
    const auto ch = ContractionHierarchy::build(inst);
    Rng rng(seed);
    for (int k = 0; k < 3; ++k) {
      const auto z = static_cast<Vertex>(rng.uniform(0, static_cast<std::int64_t>(inst.vertex_count()) - 1));
      const Potentials dij = Potentials::backward_dijkstra(inst, z);
      const Potentials hier = Potentials::from_hierarchy(ch, z);
      for (Vertex u = 0; u < inst.vertex_count(); ++u) {
        ++compared;
        if (dij(u) != hier(u)) {
          o.fail("seed " + std::to_string(seed) + " target " + std::to_string(z) + " vertex " + std::to_string(u));
        }
      }
      for (const Edge& e : inst.edges()) {
        for (const Potentials* pot : {&dij, &hier}) {
          if ((*pot)(e.head) != kInfTime && (*pot)(e.tail) > e.driving_time + (*pot)(e.head)) {
            o.fail("triangle inequality broken on seed " + std::to_string(seed));
          }
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " vertex potentials identical over 20 graphs x 3 targets";
  report(7, "potentials exactness", o, seconds_since(start));
}

void fifo() {
  const auto start = Clock::now();
  Outcome o;
  Rng rng(8);
  constexpr int kEdges = 10000;
  for (int i = 0; i < kEdges; ++i) {
    Edge e{0, 1, rng.uniform(1, 30), {}};
    const Time horizon = rng.uniform(20, 400);
    for (Time t = rng.uniform(0, 20); t < horizon; t += rng.uniform(1, 40)) {
      const Time len = rng.uniform(1, 60);
      e.bans.push_back({t, t + len});
      t += len;
    }
    const Time t_min = rng.uniform(0, 30);
    const TravelTimeFunction fn(e, t_min, horizon + 60);
    std::optional<Time> prev;
    for (Time t = t_min; t <= horizon + 60; ++t) {
      const auto tt = eval_travel_time(e, t, t_min);
      if (tt != fn.travel_time(t)) o.fail("edge " + std::to_string(i) + ": materialised function differs");
      if (!tt) {
        if (prev) o.fail("edge " + std::to_string(i) + ": becomes untraversable");
        continue;
      }
      const Time dep = t - *tt;
      if (prev && dep < *prev) o.fail("edge " + std::to_string(i) + ": departure decreases at " + std::to_string(t));
      prev = dep;
    }
  }
  if (o.pass) o.detail = std::to_string(kEdges) + " random edges, t - T_e(t) non-decreasing";
  report(8, "FIFO of travel-time functions", o, seconds_since(start));
}

void figure_one() {
  const auto start = Clock::now();
  Outcome o;
  const Edge edge = testing::figure_one_edge();
  const TravelTimeFunction ttf(edge, 0, 16);
  const BreakpointSets sets = classify_breakpoints(ttf);
  if (sets.convex != std::vector<Time>{4, 8, 11}) o.fail("convex breakpoints differ");
  if (sets.concave != std::vector<Time>{6, 9, 12}) o.fail("concave breakpoints differ");
  if (sets.discontinuous != std::vector<Time>{10, 13, 15}) o.fail("discontinuous breakpoints differ");

  const CostParams params{4, {4, 1}};
  const RoadInstance inst(2, params, {edge}, {0, 1});
  Query q{0, 1, 0, 16, Cost{0}};
  const CostProfile source = CostProfile::linear(0, 0, 0, 16, Parent::source());
  const CostProfile linked = link(source, 0, ttf, edge.driving_time, params, 0);
  const CostProfile profile = wait_envelope(linked, 1);
  const OracleTable table = oracle_table(inst, q);
  ProfileSearch search(inst, q);
  search.run();
  for (Time t = 0; t <= 16; ++t) {
    if (profile.at(t) != table.cost(1, t)) o.fail("enveloped profile differs from the oracle at t=" + std::to_string(t));
    if (search.profile(1).at(t) != table.cost(1, t)) o.fail("search profile differs from the oracle at t=" + std::to_string(t));
  }
  if (o.pass) o.detail = "breakpoint sets verbatim, profile equals the oracle at t=0..16";
  report(9, "travel-time figure reconstruction", o, seconds_since(start));
}

void performance() {
  const auto start = Clock::now();
  Outcome o;
  RandomInstanceParams p;
  p.seed = 12;
  p.topology = Topology::Grid;
  p.vertices = 158 * 158;
  p.pattern = BanPattern::Nightly;
  p.ban_density = 0.2;
  p.min_driving_time = 5;
  p.max_driving_time = 30;
  p.horizon = 3 * 1440;
  const RoadInstance inst = gen_random_instance(p);
  const RankQueries rq = gen_rank_queries(inst, 99, {12}, 100, 900, 3 * 1440);
  std::vector<BenchQuery> batch;
  for (const auto& q : rq.queries) batch.push_back({q.query, q.rank});
  BenchOptions pruned;
  pruned.threads = 1;
  const auto reports = run_benchmark(inst, batch, pruned);
  const BenchAggregate agg = aggregate(reports, inst.max_rating());
  BenchOptions baseline = pruned;
  baseline.search.astar = false;
  baseline.search.prune_target = false;
  baseline.search.prune_bounds = false;
  baseline.search.prune_parent = false;
  baseline.threads = std::max(1u, std::thread::hardware_concurrency());
  const BenchAggregate base = aggregate(run_benchmark(inst, batch, baseline), inst.max_rating());
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu edges, %zu queries, median %.1f ms, avg settled %.0f with pruning vs %.0f without, "
                "avg routes %.2f, trivial %.0f%%",
                inst.edge_count(), agg.queries, agg.median_runtime_ms, agg.avg_settled, base.avg_settled,
                agg.avg_pareto_size, agg.trivial_share);
  o.detail = buf;
  if (batch.size() != 100) o.fail("only " + std::to_string(batch.size()) + " rank-12 queries; " + o.detail);
  if (agg.failures != 0 || base.failures != 0) o.fail("some queries failed; " + o.detail);
  if (agg.median_runtime_ms >= 1000.0) o.fail("median too slow; " + o.detail);
  if (!(agg.avg_settled < base.avg_settled)) o.fail("pruning does not reduce settled vertices; " + o.detail);
  report(10, "desk-scale performance", o, seconds_since(start));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{oracle_equivalence, exponential_gadget, partition_gadget,
                                                    pruning_invariance, potentials_exactness, fifo,
                                                    figure_one, performance};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion run aborted: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
