#include "banroute/instance.hpp"

#include <algorithm>
#include <string>

#include "banroute/errors.hpp"

namespace banroute {
namespace {

std::string edge_label(std::size_t e) { return "edge " + std::to_string(e); }

// Closed time units of `bans` inside [from, to). Plain scan: this is the
// reference semantics the faster machinery is tested against.
Time closed_overlap(std::span<const BanInterval> bans, Time from, Time to) {
  Time closed = 0;
  for (const BanInterval& ban : bans) {
    const Time lo = std::max(from, ban.closed);
    const Time hi = std::min(to, ban.open);
    if (hi > lo) closed += hi - lo;
  }
  return closed;
}

bool hop_is_feasible(const Edge& edge, Time depart, Time arrive) {
  if (arrive - depart < edge.driving_time) return false;
  const Time span = arrive - depart;
  return closed_overlap(edge.bans, depart, arrive) <= span - edge.driving_time;
}

Cost hop_cost(const CostParams& params, const Edge& edge, Time depart, Time arrive) {
  return params.unrated_waiting() * (arrive - depart - edge.driving_time) +
         params.driving * edge.driving_time;
}

// Resolves the edge used for hop i, or kNoEdge when no parallel edge can be
// traversed in the given window. Throws if the hop has no edge at all.
EdgeId resolve_hop(const RoadInstance& instance, const Route& route, std::size_t i) {
  const Vertex u = route.vertices[i];
  const Vertex v = route.vertices[i + 1];
  const Time depart = route.departures[i];
  const Time arrive = route.arrivals[i + 1];
  if (!route.edges.empty()) {
    const EdgeId e = route.edges[i];
    if (e >= instance.edge_count()) throw InvalidInput("route names unknown " + edge_label(e));
    const Edge& edge = instance.edge(e);
    if (edge.tail != u || edge.head != v) {
      throw InvalidInput("route " + edge_label(e) + " does not connect hop " + std::to_string(i));
    }
    return hop_is_feasible(edge, depart, arrive) ? e : kNoEdge;
  }
  bool any = false;
  EdgeId best = kNoEdge;
  Cost best_cost = kInfCost;
  for (EdgeId e : instance.out_edges(u)) {
    const Edge& edge = instance.edge(e);
    if (edge.head != v) continue;
    any = true;
    if (!hop_is_feasible(edge, depart, arrive)) continue;
    const Cost c = hop_cost(instance.params(), edge, depart, arrive);
    if (c < best_cost) {
      best_cost = c;
      best = e;
    }
  }
  if (!any) {
    throw InvalidInput("no edge " + std::to_string(u) + "->" + std::to_string(v) + " for hop " +
                       std::to_string(i));
  }
  return best;
}

void check_route_shape(const RoadInstance& instance, const Route& route) {
  const std::size_t len = route.vertices.size();
  if (len == 0) throw InvalidInput("route is empty");
  if (route.arrivals.size() != len || route.departures.size() != len) {
    throw InvalidInput("route sequences R, A, D differ in length");
  }
  if (!route.edges.empty() && route.edges.size() + 1 != len) {
    throw InvalidInput("route edge list must have one entry per hop");
  }
  for (Vertex v : route.vertices) {
    if (!instance.is_vertex(v)) throw InvalidInput("route names unknown vertex " + std::to_string(v));
  }
}

}  // namespace

RoadInstance::RoadInstance(std::size_t vertex_count, CostParams params, std::vector<Edge> edges,
                           std::vector<int> ratings, std::vector<std::optional<Coord>> coords)
    : vertex_count_(vertex_count),
      params_(std::move(params)),
      edges_(std::move(edges)),
      ratings_(std::move(ratings)),
      coords_(std::move(coords)) {
  if (vertex_count_ == 0) throw InvalidInput("instance needs at least one vertex");
  if (params_.waiting.empty()) throw InvalidInput("cost vector needs c0");
  if (params_.driving < 0) throw InvalidInput("driving cost must be non-negative");
  const int r = params_.max_rating();
  if (static_cast<std::size_t>(r) > vertex_count_) throw InvalidInput("max rating exceeds n");
  for (int i = 0; i <= r; ++i) {
    if (params_.waiting[i] < 0) throw InvalidInput("waiting costs must be non-negative");
    if (i > 0 && params_.waiting[i] >= params_.waiting[i - 1]) {
      throw InvalidInput("waiting costs must strictly decrease with rating (c" +
                         std::to_string(i) + " >= c" + std::to_string(i - 1) + ")");
    }
  }

  if (ratings_.empty()) ratings_.assign(vertex_count_, 0);
  if (ratings_.size() != vertex_count_) throw InvalidInput("rating table size differs from n");
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (ratings_[v] < 0 || ratings_[v] > r) {
      throw InvalidInput("vertex " + std::to_string(v) + " has rating outside 0.." + std::to_string(r));
    }
  }
  if (coords_.empty()) coords_.assign(vertex_count_, std::nullopt);
  if (coords_.size() != vertex_count_) throw InvalidInput("coordinate table size differs from n");

  std::vector<std::size_t> out_degree(vertex_count_, 0);
  std::vector<std::size_t> in_degree(vertex_count_, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.tail >= vertex_count_ || edge.head >= vertex_count_) {
      throw InvalidInput(edge_label(e) + " has an endpoint outside 0..n-1");
    }
    if (edge.driving_time < 1) throw InvalidInput(edge_label(e) + " needs driving time >= 1");
    for (std::size_t i = 0; i < edge.bans.size(); ++i) {
      const BanInterval& ban = edge.bans[i];
      if (ban.open <= ban.closed) throw InvalidInput(edge_label(e) + " has an empty ban interval");
      if (i > 0 && ban.closed < edge.bans[i - 1].open) {
        throw InvalidInput(edge_label(e) + " has overlapping or unsorted ban intervals");
      }
    }
    ban_count_ += edge.bans.size();
    ++out_degree[edge.tail];
    ++in_degree[edge.head];
  }

  out_offsets_.assign(vertex_count_ + 1, 0);
  in_offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    out_offsets_[v + 1] = out_offsets_[v] + out_degree[v];
    in_offsets_[v + 1] = in_offsets_[v] + in_degree[v];
  }
  out_ids_.resize(edges_.size());
  in_ids_.resize(edges_.size());
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_ids_[out_fill[edges_[e].tail]++] = static_cast<EdgeId>(e);
    in_ids_[in_fill[edges_[e].head]++] = static_cast<EdgeId>(e);
  }
}

bool RoadInstance::has_coords() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const auto& c) { return c.has_value(); });
}

void validate_query(const RoadInstance& instance, const Query& query) {
  if (!instance.is_vertex(query.source)) throw InvalidInput("query source is not a vertex");
  if (!instance.is_vertex(query.target)) throw InvalidInput("query destination is not a vertex");
  if (query.t_min >= query.t_max) throw InvalidInput("query needs t_min < t_max");
  if (query.source_wait_cost) {
    if (*query.source_wait_cost < 0) throw InvalidInput("source waiting cost must be non-negative");
    if (*query.source_wait_cost > instance.params().unrated_waiting()) {
      throw InvalidInput("source waiting cost must not exceed c0");
    }
  }
}

Cost wait_rate(const RoadInstance& instance, const Query& query, Vertex v) {
  if (v == query.source && query.source_wait_cost) return *query.source_wait_cost;
  return instance.params().waiting[instance.rating(v)];
}

bool route_is_feasible(const RoadInstance& instance, const Query& query, const Route& route) {
  check_route_shape(instance, route);
  const std::size_t len = route.size();
  if (route.vertices.front() != query.source || route.vertices.back() != query.target) return false;
  if (route.arrivals.front() != query.t_min) return false;
  if (route.departures.back() > query.t_max) return false;
  for (std::size_t i = 0; i < len; ++i) {
    if (route.arrivals[i] > route.departures[i]) return false;
  }
  for (std::size_t i = 0; i + 1 < len; ++i) {
    if (resolve_hop(instance, route, i) == kNoEdge) return false;
  }
  return true;
}

Cost route_cost(const RoadInstance& instance, const Query& query, const Route& route) {
  if (!route_is_feasible(instance, query, route)) throw InvalidInput("route is not feasible");
  const CostParams& params = instance.params();
  Cost total = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    total += wait_rate(instance, query, route.vertices[i]) * (route.departures[i] - route.arrivals[i]);
  }
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    const Edge& edge = instance.edge(resolve_hop(instance, route, i));
    total += hop_cost(params, edge, route.departures[i], route.arrivals[i + 1]);
  }
  return total;
}

Time route_driving_time(const RoadInstance& instance, const Route& route) {
  check_route_shape(instance, route);
  Time total = 0;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    EdgeId e = resolve_hop(instance, route, i);
    if (e == kNoEdge) throw InvalidInput("route hop " + std::to_string(i) + " is not traversable");
    total += instance.edge(e).driving_time;
  }
  return total;
}

std::vector<TimeCost> pareto_filter(std::vector<TimeCost> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<TimeCost> result;
  Cost best = kInfCost;
  for (const TimeCost& p : pairs) {
    if (p.second < best) {
      result.push_back(p);
      best = p.second;
    }
  }
  return result;
}

}  // namespace banroute
