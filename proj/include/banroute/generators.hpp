#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "banroute/instance.hpp"

namespace banroute {

/// Seeded generator whose output does not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }
  /// Index drawn with probability proportional to weights[i].
  std::size_t weighted(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

struct PartitionGadget {
  RoadInstance instance;
  Query query;
  Cost threshold = 0;  // a route of cost <= threshold exists iff the numbers split evenly
  Time total = 0;      // sum of the numbers
};

struct PartitionOptions {
  /// false: lower edges become two driving-time-1 edges through a midpoint.
  /// true: lower edges are parallel to the upper ones (driving time 2).
  bool parallel_edges = false;
};

/// Requires d < c0 and a non-empty list of positive numbers.
PartitionGadget gen_partition_gadget(const std::vector<std::int64_t>& numbers, const CostParams& params,
                                     const PartitionOptions& options = {});

struct ExponentialGadget {
  RoadInstance instance;
  Query query;
  int k = 0;
  Time x = 0;
};

struct ExponentialOptions {
  /// false: every lower edge is split through a midpoint vertex.
  bool parallel_edges = false;
};

/// Requires d > c0.
ExponentialGadget gen_exponential_gadget(int k, const CostParams& params, const ExponentialOptions& options = {});

/// x = ceil(2d / (d - c0)) + 1.
Time exponential_gadget_x(const CostParams& params);

enum class Topology { Random, Grid };
enum class BanPattern { Random, Nightly, Closures };

struct RandomInstanceParams {
  std::uint64_t seed = 1;
  Topology topology = Topology::Random;
  std::size_t vertices = 10;  // Grid: rounded to a square
  std::size_t edges = 20;     // ignored for Grid
  Time min_driving_time = 1;
  Time max_driving_time = 5;
  /// Time range in which bans are placed, starting at 0.
  Time horizon = 60;
  BanPattern pattern = BanPattern::Random;
  /// Probability that an edge carries bans.
  double ban_density = 0.2;
  std::size_t max_bans_per_edge = 2;
  /// 0 = unlimited.
  std::size_t max_total_bans = 0;
  Time day_length = 1440;
  Time night_start = 1320;
  Time night_length = 480;
  Time max_closure_length = 120;
  /// Relative weight of each rating 0..r.
  std::vector<double> rating_mix{0.9, 0.02, 0.02, 0.02, 0.02, 0.02};
  CostParams costs{14, {14, 7, 6, 5, 4, 3}};
  /// Grid only: attach lat/lon coordinates.
  bool coordinates = true;
};

RoadInstance gen_random_instance(const RandomInstanceParams& params);

struct RankedQuery {
  Query query;
  int rank = 0;
};

struct RankQueries {
  std::vector<RankedQuery> queries;
  std::size_t skipped = 0;  // (source, rank) combinations beyond the settled count
};

/// For `sources` random sources, targets the 2^i-th settled vertex of an
/// unrestricted Dijkstra for each i in `ranks` (the source itself is the first).
RankQueries gen_rank_queries(const RoadInstance& instance, std::uint64_t seed, const std::vector<int>& ranks,
                             std::size_t sources, Time t_min, Time t_max);

struct Region {
  double min_lat, min_lon, max_lat, max_lon;
  bool contains(const Coord& c) const {
    return c.lat >= min_lat && c.lat <= max_lat && c.lon >= min_lon && c.lon <= max_lon;
  }
};

/// Random source in `from` and target in `to`. Needs coordinates.
std::vector<Query> gen_region_queries(const RoadInstance& instance, std::uint64_t seed, const Region& from,
                                      const Region& to, std::size_t count, Time t_min, Time t_max);

}  // namespace banroute
