#include "banroute/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "banroute/errors.hpp"
#include "banroute/potentials.hpp"

namespace banroute {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidInput("empty random range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::size_t Rng::weighted(const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw InvalidInput("weights must have a positive sum");
  double pick = unit() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (pick < weights[i]) return i;
    pick -= weights[i];
  }
  // rounding: last positive weight
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return 0;
}

PartitionGadget gen_partition_gadget(const std::vector<std::int64_t>& numbers, const CostParams& params,
                                     const PartitionOptions& options) {
  if (numbers.empty()) throw InvalidInput("partition gadget needs at least one number");
  if (params.driving < 1 || params.driving >= params.unrated_waiting()) {
    throw InvalidInput("partition gadget needs 0 < d < c0");
  }
  for (std::int64_t x : numbers) {
    if (x <= 0) throw InvalidInput("partition numbers must be positive");
  }
  const auto n = static_cast<Vertex>(numbers.size());
  const Time total = std::accumulate(numbers.begin(), numbers.end(), Time{0});
  const Vertex target = n + 1;
  std::vector<Edge> edges;
  Vertex vertex_count = n + 2;
  for (Vertex i = 0; i < n; ++i) {
    edges.push_back({i, i + 1, 2 * numbers[i] + 2, {}});
    if (options.parallel_edges) {
      edges.push_back({i, i + 1, 2, {}});
    } else {
      const Vertex mid = vertex_count++;
      edges.push_back({i, mid, 1, {}});
      edges.push_back({mid, i + 1, 1, {}});
    }
  }
  const Time shifted = total + 2 * static_cast<Time>(n);
  edges.push_back({n, target, 1, {BanInterval{0, shifted}}});

  PartitionGadget g;
  g.instance = RoadInstance(vertex_count, params, std::move(edges));
  g.query = Query{0, target, 0, 2 * total + 2 * static_cast<Time>(n) + 1, std::nullopt};
  g.threshold = params.driving * (shifted + 1);
  g.total = total;
  return g;
}

Time exponential_gadget_x(const CostParams& params) {
  const Cost d = params.driving;
  const Cost c0 = params.unrated_waiting();
  if (d <= c0) throw InvalidInput("exponential gadget needs d > c0");
  return (2 * d + (d - c0) - 1) / (d - c0) + 1;
}

ExponentialGadget gen_exponential_gadget(int k, const CostParams& params, const ExponentialOptions& options) {
  if (k < 0 || k > 30) throw InvalidInput("exponential gadget size must be in 0..30");
  const Time x = exponential_gadget_x(params);
  ExponentialGadget g;
  g.k = k;
  g.x = x;
  if (k == 0) {
    g.instance = RoadInstance(1, params, {});
    g.query = Query{0, 0, 0, 1, std::nullopt};
    return g;
  }
  const auto kv = static_cast<Vertex>(k);
  Vertex vertex_count = kv + 1;
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= kv; ++i) {
    const Time half = Time{1} << (i - 1);
    const Vertex from = i - 1;
    const Vertex to = i;
    const Time lower = half * x;
    if (options.parallel_edges) {
      edges.push_back({from, to, lower, {}});
    } else {
      const Vertex mid = vertex_count++;
      edges.push_back({from, mid, lower / 2, {}});
      edges.push_back({mid, to, lower - lower / 2, {}});
    }
    const Time ban_start = (2 * half - 1) + (half - 1) * x;
    edges.push_back({from, to, 2 * half, {BanInterval{ban_start, ban_start + half * x}}});
  }
  g.instance = RoadInstance(vertex_count, params, std::move(edges));
  g.query = Query{0, kv, 0, ((Time{1} << k) - 1) * (x + 2), std::nullopt};
  return g;
}

namespace {

void check_random_params(const RandomInstanceParams& p) {
  if (p.vertices == 0) throw InvalidInput("need at least one vertex");
  if (p.min_driving_time < 1 || p.max_driving_time < p.min_driving_time) {
    throw InvalidInput("driving times need 1 <= min <= max");
  }
  if (p.horizon < 1) throw InvalidInput("horizon must be positive");
  if (p.ban_density < 0.0 || p.ban_density > 1.0) throw InvalidInput("ban density must be in [0, 1]");
  if (p.rating_mix.size() != p.costs.waiting.size()) {
    throw InvalidInput("rating mix needs one weight per waiting cost");
  }
  if (p.pattern == BanPattern::Nightly && (p.night_length < 1 || p.night_length >= p.day_length)) {
    throw InvalidInput("night window must be shorter than a day");
  }
  if (p.pattern == BanPattern::Closures && p.max_closure_length < 1) {
    throw InvalidInput("closures need a positive maximum length");
  }
}

std::vector<BanInterval> random_bans(Rng& rng, const RandomInstanceParams& p, std::size_t budget) {
  std::vector<BanInterval> bans;
  switch (p.pattern) {
    case BanPattern::Random: {
      std::size_t count = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::max<std::size_t>(p.max_bans_per_edge, 1))));
      count = std::min({count, budget, static_cast<std::size_t>((p.horizon + 1) / 2)});
      std::vector<Time> points;
      while (points.size() < 2 * count) {
        points.push_back(rng.uniform(0, p.horizon));
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
      }
      for (std::size_t i = 0; i < count; ++i) bans.push_back({points[2 * i], points[2 * i + 1]});
      break;
    }
    case BanPattern::Nightly:
      for (Time day = 0; day * p.day_length + p.night_start < p.horizon && bans.size() < budget; ++day) {
        const Time start = day * p.day_length + p.night_start;
        bans.push_back({start, start + p.night_length});
      }
      break;
    case BanPattern::Closures: {
      if (budget == 0) break;
      const Time start = rng.uniform(0, p.horizon - 1);
      bans.push_back({start, start + rng.uniform(1, p.max_closure_length)});
      break;
    }
  }
  return bans;
}

}  // namespace

RoadInstance gen_random_instance(const RandomInstanceParams& p) {
  check_random_params(p);
  Rng rng(p.seed);
  std::vector<std::pair<Vertex, Vertex>> arcs;
  std::vector<std::optional<Coord>> coords;
  std::size_t n = p.vertices;

  if (p.topology == Topology::Grid) {
    const auto side = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p.vertices)))));
    n = side * side;
    const auto id = [side](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * side + c); };
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t c = 0; c < side; ++c) {
        if (c + 1 < side) {
          arcs.emplace_back(id(r, c), id(r, c + 1));
          arcs.emplace_back(id(r, c + 1), id(r, c));
        }
        if (r + 1 < side) {
          arcs.emplace_back(id(r, c), id(r + 1, c));
          arcs.emplace_back(id(r + 1, c), id(r, c));
        }
      }
    }
    if (p.coordinates) {
      coords.resize(n);
      for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
          coords[id(r, c)] = Coord{48.0 + 0.01 * static_cast<double>(r), 8.0 + 0.01 * static_cast<double>(c)};
        }
      }
    }
  } else if (n > 1) {
    // A random Hamiltonian cycle first keeps the graph strongly connected.
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i)))]);
    }
    if (p.edges >= n) {
      for (std::size_t i = 0; i < n; ++i) arcs.emplace_back(order[i], order[(i + 1) % n]);
    }
    while (arcs.size() < p.edges) {
      const auto a = static_cast<Vertex>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
      const auto b = static_cast<Vertex>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
      if (a != b) arcs.emplace_back(a, b);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  std::size_t bans_left = p.max_total_bans == 0 ? std::numeric_limits<std::size_t>::max() : p.max_total_bans;
  for (const auto& [a, b] : arcs) {
    Edge e{a, b, rng.uniform(p.min_driving_time, p.max_driving_time), {}};
    if (bans_left > 0 && rng.chance(p.ban_density)) {
      e.bans = random_bans(rng, p, bans_left);
      bans_left -= e.bans.size();
    }
    edges.push_back(std::move(e));
  }

  std::vector<int> ratings(n, 0);
  for (std::size_t v = 0; v < n; ++v) ratings[v] = static_cast<int>(rng.weighted(p.rating_mix));
  return RoadInstance(n, p.costs, std::move(edges), std::move(ratings), std::move(coords));
}

RankQueries gen_rank_queries(const RoadInstance& instance, std::uint64_t seed, const std::vector<int>& ranks,
                             std::size_t sources, Time t_min, Time t_max) {
  if (t_min >= t_max) throw InvalidInput("queries need t_min < t_max");
  for (int rank : ranks) {
    if (rank < 0 || rank > 40) throw InvalidInput("rank must be in 0..40");
  }
  RankQueries out;
  if (ranks.empty()) return out;
  Rng rng(seed);
  const auto n = static_cast<std::int64_t>(instance.vertex_count());
  for (std::size_t q = 0; q < sources; ++q) {
    const auto s = static_cast<Vertex>(rng.uniform(0, n - 1));
    const SettleOrder order = forward_dijkstra(instance, s);
    for (int rank : ranks) {
      const std::size_t index = (std::size_t{1} << rank) - 1;
      if (index >= order.settled.size()) {
        ++out.skipped;
        continue;
      }
      out.queries.push_back({Query{s, order.settled[index], t_min, t_max, std::nullopt}, rank});
    }
  }
  return out;
}

std::vector<Query> gen_region_queries(const RoadInstance& instance, std::uint64_t seed, const Region& from,
                                      const Region& to, std::size_t count, Time t_min, Time t_max) {
  if (t_min >= t_max) throw InvalidInput("queries need t_min < t_max");
  if (!instance.has_coords()) throw InvalidInput("region queries need vertex coordinates");
  std::vector<Vertex> sources;
  std::vector<Vertex> targets;
  for (Vertex v = 0; v < instance.vertex_count(); ++v) {
    const auto& c = instance.coord(v);
    if (!c) continue;
    if (from.contains(*c)) sources.push_back(v);
    if (to.contains(*c)) targets.push_back(v);
  }
  if (sources.empty() || targets.empty()) throw InvalidInput("a region contains no vertex");
  Rng rng(seed);
  std::vector<Query> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Vertex s = sources[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(sources.size()) - 1))];
    const Vertex z = targets[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(targets.size()) - 1))];
    out.push_back(Query{s, z, t_min, t_max, std::nullopt});
  }
  return out;
}

}  // namespace banroute
