#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "banroute/errors.hpp"
#include "banroute/generators.hpp"
#include "banroute/oracle.hpp"
#include "banroute/potentials.hpp"
#include "banroute/text_format.hpp"
#include "test_util.hpp"

namespace banroute {
namespace {

std::string text(const RoadInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

// Earliest arrival when entering the edge at `dep`.
Time earliest_arrival(const Edge& e, Time dep) {
  Time t = dep;
  Time open = 0;
  while (open < e.driving_time) open += testing::unit_closed(e, t++) ? 0 : 1;
  return t;
}

bool subset_sum_splits(const std::vector<std::int64_t>& xs) {
  std::int64_t total = 0;
  for (auto x : xs) total += x;
  if (total % 2) return false;
  for (std::uint32_t mask = 0; mask < (1u << xs.size()); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask >> i & 1) s += xs[i];
    }
    if (2 * s == total) return true;
  }
  return false;
}

TEST(Rng, RangeAndDeterminism) {
  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = a.uniform(-3, 4);
    EXPECT_EQ(v, b.uniform(-3, 4));
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 4);
    const double u = a.unit();
    EXPECT_EQ(u, b.unit());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_EQ(a.uniform(7, 7), 7);
  EXPECT_THROW(a.uniform(2, 1), InvalidInput);
  EXPECT_THROW(a.weighted({0.0, 0.0}), InvalidInput);
  std::map<std::size_t, int> counts;
  for (int i = 0; i < 20000; ++i) ++counts[a.weighted({1.0, 0.0, 3.0})];
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[2] / 20000.0, 0.75, 0.02);
}

TEST(PartitionGadget, Shape) {
  const CostParams params{1, {3}};
  const auto g = gen_partition_gadget({3, 1, 2}, params);
  EXPECT_EQ(g.total, 6);
  EXPECT_EQ(g.threshold, 1 * (6 + 6 + 1));
  EXPECT_EQ(g.query.target, 4u);
  EXPECT_EQ(g.query.t_max, 2 * 6 + 6 + 1);
  EXPECT_EQ(g.instance.ban_count(), 1u);
  EXPECT_EQ(g.instance.vertex_count(), 5u + 3u);
  for (Vertex v = 0; v < g.instance.vertex_count(); ++v) EXPECT_EQ(g.instance.rating(v), 0);
  const auto par = gen_partition_gadget({3, 1, 2}, params, {.parallel_edges = true});
  EXPECT_EQ(par.instance.vertex_count(), 5u);
  EXPECT_EQ(par.instance.edge_count(), 7u);
}

TEST(PartitionGadget, Rejections) {
  EXPECT_THROW(gen_partition_gadget({}, CostParams{1, {3}}), InvalidInput);
  EXPECT_THROW(gen_partition_gadget({1, 1}, CostParams{3, {3}}), InvalidInput);
  EXPECT_THROW(gen_partition_gadget({1, 0}, CostParams{1, {3}}), InvalidInput);
  EXPECT_THROW(gen_partition_gadget({1, 1}, CostParams{0, {3}}), InvalidInput);
}

TEST(PartitionGadget, DecisionMatchesSubsetSum) {
  Rng rng(77);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<std::int64_t> xs(static_cast<std::size_t>(rng.uniform(1, 6)));
    for (auto& x : xs) x = rng.uniform(1, 6);
    const CostParams params{rng.uniform(1, 3), {rng.uniform(4, 6)}};
    const bool parallel = iter % 2;
    const auto g = gen_partition_gadget(xs, params, {.parallel_edges = parallel});
    EXPECT_EQ(oracle_check_decision(g.instance, g.query, g.threshold), subset_sum_splits(xs)) << iter;
  }
}

TEST(ExponentialGadget, ShapeAndRejections) {
  const CostParams params{3, {1}};
  EXPECT_EQ(exponential_gadget_x(params), 4);
  EXPECT_EQ(exponential_gadget_x(CostParams{14, {7}}), 5);
  EXPECT_THROW(exponential_gadget_x(CostParams{2, {2}}), InvalidInput);
  EXPECT_THROW(gen_exponential_gadget(2, CostParams{1, {2}}), InvalidInput);
  EXPECT_THROW(gen_exponential_gadget(-1, params), InvalidInput);
  EXPECT_THROW(gen_exponential_gadget(31, params), InvalidInput);

  const auto zero = gen_exponential_gadget(0, params);
  EXPECT_EQ(zero.instance.vertex_count(), 1u);
  EXPECT_EQ(oracle_solve(zero.instance, zero.query), (std::vector<TimeCost>{{0, 0}}));

  const auto par = gen_exponential_gadget(4, params, {.parallel_edges = true});
  EXPECT_EQ(par.instance.edge_count(), 8u);
  EXPECT_EQ(par.instance.vertex_count(), 5u);
  const auto split = gen_exponential_gadget(4, params);
  EXPECT_EQ(split.instance.edge_count(), 12u);
  EXPECT_EQ(split.instance.vertex_count(), 9u);
  EXPECT_EQ(split.query.t_max, 15 * (4 + 2));

  const auto one = gen_exponential_gadget(1, params);
  EXPECT_EQ(oracle_solve(one.instance, one.query), (std::vector<TimeCost>{{4, 12}, {6, 10}}));
}

TEST(ExponentialGadget, RouteSimulation) {
  for (const CostParams& params : {CostParams{3, {1}}, CostParams{5, {4}}, CostParams{14, {7, 3}}}) {
    for (int k = 1; k <= 8; ++k) {
      const auto g = gen_exponential_gadget(k, params, {.parallel_edges = true});
      const Time x = g.x;
      const Cost d = params.driving;
      const Cost c0 = params.unrated_waiting();
      std::vector<TimeCost> results;
      for (std::uint32_t code = 0; code < (1u << k); ++code) {
        Time t = 0;
        Cost cost = 0;
        for (int i = 1; i <= k; ++i) {
          const bool upper = code >> (i - 1) & 1;
          const Edge* chosen = nullptr;
          for (EdgeId e : g.instance.out_edges(static_cast<Vertex>(i - 1))) {
            if (g.instance.edge(e).bans.empty() != upper) chosen = &g.instance.edge(e);
          }
          ASSERT_NE(chosen, nullptr);
          const Time arrive = earliest_arrival(*chosen, t);
          if (upper) {
            // the ban is waited out in full
            EXPECT_EQ(arrive - t, chosen->driving_time + chosen->bans.front().length()) << k << " " << code;
          }
          cost += d * chosen->driving_time + c0 * (arrive - t - chosen->driving_time);
          t = arrive;
        }
        EXPECT_EQ(t, ((Time{1} << k) - 1) * x + 2 * code);
        EXPECT_EQ(cost, ((Time{1} << k) - 1) * d * x + code * (2 * d - x * (d - c0)));
        results.emplace_back(t, cost);
      }
      EXPECT_EQ(pareto_filter(results).size(), std::size_t{1} << k);
    }
  }
}

TEST(RandomInstance, DeterministicAndShaped) {
  RandomInstanceParams p;
  p.seed = 9;
  p.vertices = 50;
  p.edges = 140;
  p.ban_density = 0.3;
  const RoadInstance a = gen_random_instance(p);
  EXPECT_EQ(text(a), text(gen_random_instance(p)));
  EXPECT_EQ(a.vertex_count(), 50u);
  EXPECT_EQ(a.edge_count(), 140u);
  EXPECT_GT(a.ban_count(), 0u);
  EXPECT_EQ(a.params().waiting, (std::vector<Cost>{14, 7, 6, 5, 4, 3}));
  EXPECT_EQ(a.params().driving, 14);
  // the cycle makes every vertex reach every other
  EXPECT_EQ(forward_dijkstra(a, 0).settled.size(), 50u);
  p.seed = 10;
  EXPECT_NE(text(a), text(gen_random_instance(p)));
}

TEST(RandomInstance, Options) {
  RandomInstanceParams p;
  p.vertices = 30;
  p.edges = 80;
  p.ban_density = 0.0;
  EXPECT_EQ(gen_random_instance(p).ban_count(), 0u);

  p.ban_density = 1.0;
  p.max_total_bans = 5;
  EXPECT_EQ(gen_random_instance(p).ban_count(), 5u);

  p.rating_mix = {1.0, 0, 0, 0, 0, 0};
  const RoadInstance unrated = gen_random_instance(p);
  for (Vertex v = 0; v < unrated.vertex_count(); ++v) EXPECT_EQ(unrated.rating(v), 0);

  p.rating_mix = {1.0};
  EXPECT_THROW(gen_random_instance(p), InvalidInput);
  p.rating_mix = {1.0, 0, 0, 0, 0, 0};
  p.max_driving_time = 0;
  EXPECT_THROW(gen_random_instance(p), InvalidInput);
}

TEST(RandomInstance, GridNightlyAndClosures) {
  RandomInstanceParams p;
  p.topology = Topology::Grid;
  p.vertices = 50;
  p.pattern = BanPattern::Nightly;
  p.ban_density = 0.5;
  p.horizon = 3 * 1440;
  const RoadInstance grid = gen_random_instance(p);
  EXPECT_EQ(grid.vertex_count(), 49u);
  EXPECT_EQ(grid.edge_count(), 4u * 7u * 6u);
  ASSERT_TRUE(grid.has_coords());
  EXPECT_DOUBLE_EQ(grid.coord(8)->lat, 48.01);
  EXPECT_DOUBLE_EQ(grid.coord(8)->lon, 8.01);
  for (const Edge& e : grid.edges()) {
    if (e.bans.empty()) continue;
    ASSERT_EQ(e.bans.size(), 3u);
    for (std::size_t day = 0; day < 3; ++day) {
      EXPECT_EQ(e.bans[day], (BanInterval{static_cast<Time>(day) * 1440 + 1320, static_cast<Time>(day) * 1440 + 1800}));
    }
  }
  p.pattern = BanPattern::Closures;
  const RoadInstance closures = gen_random_instance(p);
  for (const Edge& e : closures.edges()) {
    ASSERT_LE(e.bans.size(), 1u);
    if (!e.bans.empty()) EXPECT_LE(e.bans[0].length(), p.max_closure_length);
  }
  p.coordinates = false;
  EXPECT_FALSE(gen_random_instance(p).has_coords());
}

TEST(Queries, RankOnAPath) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < 20; ++v) edges.push_back({v, v + 1, 1, {}});
  const RoadInstance path(20, CostParams{}, edges);
  const RankQueries qs = gen_rank_queries(path, 3, {4}, 30, 0, 100);
  EXPECT_EQ(qs.queries.size() + qs.skipped, 30u);
  EXPECT_GT(qs.queries.size(), 0u);
  EXPECT_GT(qs.skipped, 0u);
  for (const RankedQuery& q : qs.queries) {
    EXPECT_EQ(q.query.target, q.query.source + 15);
    EXPECT_EQ(q.rank, 4);
  }
  EXPECT_TRUE(gen_rank_queries(path, 3, {}, 30, 0, 100).queries.empty());
  const RankQueries again = gen_rank_queries(path, 3, {4}, 30, 0, 100);
  ASSERT_EQ(again.queries.size(), qs.queries.size());
  for (std::size_t i = 0; i < qs.queries.size(); ++i) EXPECT_EQ(again.queries[i].query.source, qs.queries[i].query.source);
  EXPECT_THROW(gen_rank_queries(path, 3, {41}, 1, 0, 100), InvalidInput);
  EXPECT_THROW(gen_rank_queries(path, 3, {1}, 1, 5, 5), InvalidInput);
  // rank 0 is the source itself
  for (const RankedQuery& q : gen_rank_queries(path, 4, {0}, 5, 0, 10).queries) {
    EXPECT_EQ(q.query.source, q.query.target);
  }
}

TEST(Queries, Regions) {
  RandomInstanceParams p;
  p.topology = Topology::Grid;
  p.vertices = 100;
  const RoadInstance grid = gen_random_instance(p);
  const Region west{47.9, 7.9, 48.1, 8.025};
  const Region east{47.9, 8.065, 48.1, 8.2};
  const auto qs = gen_region_queries(grid, 1, west, east, 25, 0, 500);
  ASSERT_EQ(qs.size(), 25u);
  for (const Query& q : qs) {
    EXPECT_TRUE(west.contains(*grid.coord(q.source)));
    EXPECT_TRUE(east.contains(*grid.coord(q.target)));
  }
  const Region nowhere{0, 0, 1, 1};
  EXPECT_THROW(gen_region_queries(grid, 1, nowhere, east, 1, 0, 5), InvalidInput);
  p.coordinates = false;
  EXPECT_THROW(gen_region_queries(gen_random_instance(p), 1, west, east, 1, 0, 5), InvalidInput);
}

}  // namespace
}  // namespace banroute
