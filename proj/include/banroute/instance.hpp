#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace banroute {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Time = std::int64_t;
using Cost = std::int64_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr Time kInfTime = std::numeric_limits<Time>::max();
inline constexpr Cost kInfCost = std::numeric_limits<Cost>::max();

/// Half-open span [closed, open) during which an edge must not be driven on.
struct BanInterval {
  Time closed = 0;
  Time open = 0;

  Time length() const { return open - closed; }
  friend bool operator==(const BanInterval&, const BanInterval&) = default;
};

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;
  Time driving_time = 1;
  std::vector<BanInterval> bans;  // sorted, disjoint
};

/// Integer cost rates. `waiting[i]` is the cost per time unit of waiting at a
/// vertex with rating i; waiting on edges is always charged `waiting[0]`.
struct CostParams {
  Cost driving = 1;
  std::vector<Cost> waiting{1};

  int max_rating() const { return static_cast<int>(waiting.size()) - 1; }
  Cost unrated_waiting() const { return waiting.front(); }
  /// Driving and unrated waiting cost the same: the polynomial regime.
  bool tractable() const { return driving == waiting.front(); }
};

struct Coord {
  double lat = 0.0;
  double lon = 0.0;
};

/// Road graph with ban intervals and costs. Immutable after construction.
class RoadInstance {
 public:
  RoadInstance() = default;

  /// Validates every invariant and throws InvalidInput on the first violation.
  /// `ratings` may be empty (all vertices unrated).
  RoadInstance(std::size_t vertex_count, CostParams params, std::vector<Edge> edges,
               std::vector<int> ratings = {}, std::vector<std::optional<Coord>> coords = {});

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t ban_count() const { return ban_count_; }
  int max_rating() const { return params_.max_rating(); }

  const CostParams& params() const { return params_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  int rating(Vertex v) const { return ratings_[v]; }
  std::span<const int> ratings() const { return ratings_; }

  std::span<const EdgeId> out_edges(Vertex v) const {
    return {out_ids_.data() + out_offsets_[v], out_ids_.data() + out_offsets_[v + 1]};
  }
  std::span<const EdgeId> in_edges(Vertex v) const {
    return {in_ids_.data() + in_offsets_[v], in_ids_.data() + in_offsets_[v + 1]};
  }

  bool has_coords() const;
  const std::optional<Coord>& coord(Vertex v) const { return coords_[v]; }

  bool is_vertex(std::int64_t v) const {
    return v >= 0 && static_cast<std::uint64_t>(v) < vertex_count_;
  }

 private:
  std::size_t vertex_count_ = 0;
  CostParams params_;
  std::vector<Edge> edges_;
  std::vector<int> ratings_;
  std::vector<std::optional<Coord>> coords_;
  std::size_t ban_count_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<EdgeId> out_ids_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<EdgeId> in_ids_;
};

/// Source, destination and planning horizon [t_min, t_max].
struct Query {
  Vertex source = 0;
  Vertex target = 0;
  Time t_min = 0;
  Time t_max = 1;
  /// Replaces c[rating(source)] for waiting at the source. Must not exceed c[0].
  std::optional<Cost> source_wait_cost;
};

void validate_query(const RoadInstance& instance, const Query& query);

/// Waiting cost rate at `v` for this query (honours the source override).
Cost wait_rate(const RoadInstance& instance, const Query& query, Vertex v);

/// A route (R, A, D). `edges` names the edge used for each hop; it may be left
/// empty, in which case the cheapest feasible parallel edge is chosen per hop.
struct Route {
  std::vector<Vertex> vertices;
  std::vector<Time> arrivals;
  std::vector<Time> departures;
  std::vector<EdgeId> edges;

  std::size_t size() const { return vertices.size(); }
  Time arrival() const { return arrivals.back(); }
  friend bool operator==(const Route&, const Route&) = default;
};

/// Horizon and ban feasibility. Throws InvalidInput when the route names
/// unknown vertices or a hop that has no edge in the instance.
bool route_is_feasible(const RoadInstance& instance, const Query& query, const Route& route);

/// Travel time cost of a feasible route; throws InvalidInput otherwise.
Cost route_cost(const RoadInstance& instance, const Query& query, const Route& route);

/// Total driving time of the route's edges.
Time route_driving_time(const RoadInstance& instance, const Route& route);

using TimeCost = std::pair<Time, Cost>;

/// Keeps a pair iff no earlier-or-equal time has a cost <= it. Sorted by time.
std::vector<TimeCost> pareto_filter(std::vector<TimeCost> pairs);

}  // namespace banroute
