#include "banroute/search.hpp"

#include <algorithm>

#include "banroute/errors.hpp"

namespace banroute {
namespace {

const Query& checked(const RoadInstance& instance, const Query& query) {
  validate_query(instance, query);
  return query;
}

struct ReversedRoute {
  Route route;

  void add(Vertex v, Time arrival, Time departure) {
    route.vertices.push_back(v);
    route.arrivals.push_back(arrival);
    route.departures.push_back(departure);
  }
  Route finish() {
    std::reverse(route.vertices.begin(), route.vertices.end());
    std::reverse(route.arrivals.begin(), route.arrivals.end());
    std::reverse(route.departures.begin(), route.departures.end());
    std::reverse(route.edges.begin(), route.edges.end());
    return std::move(route);
  }
};

}  // namespace

bool target_prunable(const CostProfile& profile_u, Time potential_u, Cost driving_cost,
                     const CostProfile& profile_z, Time from, Time to) {
  if (potential_u == kInfTime) return true;
  return strictly_above_shifted(profile_u, driving_cost * potential_u, potential_u, profile_z, from, to);
}

bool bounds_prunable(const ProfileBounds& tail, const ProfileBounds& head, Time driving_time,
                     Cost driving_cost) {
  if (tail.alpha == kInfTime) return true;
  if (head.alpha == kInfTime) return false;
  const bool may_undercut = tail.beta + driving_cost * driving_time <= head.gamma;
  const bool may_arrive_earlier = tail.alpha + driving_time < head.alpha;
  return !may_undercut && !may_arrive_earlier;
}

bool parent_loop_prunable(const RoadInstance& instance, const CostProfile& profile_u, Vertex u, EdgeId e) {
  const CostParams& params = instance.params();
  if (instance.rating(u) != 0 || params.driving < params.unrated_waiting()) return false;
  const Vertex back_to = instance.edge(e).head;
  bool any = false;
  for (const ProfilePiece& piece : profile_u.pieces()) {
    switch (piece.parent.origin) {
      case Origin::Source:
        return false;
      case Origin::Wait:
        break;
      case Origin::Edge:
        if (instance.edge(piece.parent.edge).tail != back_to) return false;
        any = true;
        break;
    }
  }
  return any;
}

ProfileSearch::ProfileSearch(const RoadInstance& instance, const Query& query, SearchOptions options)
    : instance_(&instance),
      query_(checked(instance, query)),
      options_(std::move(options)),
      ttfs_(instance, query.t_min, query.t_max),
      profiles_(instance.vertex_count(), CostProfile(query.t_max)),
      bounds_(instance.vertex_count()),
      pending_(instance.vertex_count(), kInfTime),
      settled_(instance.vertex_count(), false),
      queue_(instance.vertex_count()) {
  if (options_.iteration_cap == 0 || options_.piece_cap == 0) throw InvalidInput("caps must be positive");
  switch (options_.potentials) {
    case PotentialMode::Zero:
      potentials_ = Potentials::zero(instance.vertex_count());
      break;
    case PotentialMode::BackwardDijkstra:
      potentials_ = Potentials::backward_dijkstra(instance, query.target);
      break;
    case PotentialMode::ContractionHierarchy: {
      const ContractionHierarchy* ch = options_.hierarchy;
      if (ch == nullptr) {
        own_hierarchy_ = ContractionHierarchy::build(instance);
        ch = &*own_hierarchy_;
      }
      if (ch->vertex_count() != instance.vertex_count()) {
        throw InvalidInput("hierarchy was built for a different instance");
      }
      potentials_ = Potentials::from_hierarchy(*ch, query.target);
      break;
    }
  }
}

void ProfileSearch::run() {
  if (done_) return;
  const Vertex s = query_.source;
  const auto key = [&](Vertex v, Time t) { return options_.astar ? t + potentials_(v) : t; };

  profiles_[s] = CostProfile::linear(query_.t_min, 0, wait_rate(*instance_, query_, s), query_.t_max,
                                     Parent::source());
  bounds_[s] = profiles_[s].bounds();
  const Time pi_s = potentials_(s);
  if (pi_s != kInfTime && query_.t_min + pi_s <= query_.t_max) {
    pending_[s] = query_.t_min;
    queue_.push(s, key(s, query_.t_min));
  }

  while (!queue_.empty()) {
    const Time popped_key = queue_.top_key();
    const Vertex u = queue_.pop();
    const Time t_visit = pending_[u];
    pending_[u] = kInfTime;
    if (++stats_.pops > options_.iteration_cap) {
      throw CapExceeded("iteration cap of " + std::to_string(options_.iteration_cap) + " reached");
    }
    if (!settled_[u]) {
      settled_[u] = true;
      ++stats_.settled_vertices;
    }
    if (options_.record_pop_keys) stats_.pop_keys.push_back(popped_key);
    if (options_.on_pop) options_.on_pop(*this, u, t_visit);
    relax(u, t_visit);
  }
  done_ = true;
}

void ProfileSearch::relax(Vertex u, Time t_visit) {
  const CostParams& params = instance_->params();
  const Vertex z = query_.target;
  if (options_.prune_target && u != z &&
      target_prunable(profiles_[u], potentials_(u), params.driving, profiles_[z], t_visit, query_.t_max + 1)) {
    ++stats_.pruned_target;
    return;
  }

  for (EdgeId e : instance_->out_edges(u)) {
    const Edge& edge = instance_->edge(e);
    const Vertex v = edge.head;
    const Time pi_v = potentials_(v);
    if (pi_v == kInfTime) continue;
    if (options_.prune_parent && parent_loop_prunable(*instance_, profiles_[u], u, e)) {
      ++stats_.pruned_parent;
      continue;
    }
    if (options_.prune_bounds && bounds_prunable(bounds_[u], bounds_[v], edge.driving_time, params.driving)) {
      ++stats_.pruned_bounds;
      continue;
    }
    ++stats_.relaxations;

    CostProfile candidate = link(profiles_[u], e, ttfs_.get(e), edge.driving_time, params, t_visit);
    if (candidate.empty()) continue;
    candidate = wait_envelope(candidate, wait_rate(*instance_, query_, v));
    MergeOutcome merged = merge(profiles_[v], candidate);
    if (!merged.first_improvement) continue;

    profiles_[v] = std::move(merged.merged);
    bounds_[v] = merged.bounds;
    stats_.max_profile_pieces = std::max(stats_.max_profile_pieces, profiles_[v].size());
    if (profiles_[v].size() > options_.piece_cap) {
      throw CapExceeded("piece cap of " + std::to_string(options_.piece_cap) + " reached at vertex " +
                        std::to_string(v));
    }
    if (options_.check_piece_bounds) check_piece_bounds(v);

    const Time t_star = *merged.first_improvement;
    if (t_star + pi_v > query_.t_max) {
      ++stats_.horizon_skips;
      continue;
    }
    if (t_star < pending_[v]) {
      pending_[v] = t_star;
      queue_.push_or_decrease(v, options_.astar ? t_star + pi_v : t_star);
    }
  }
}

void ProfileSearch::check_piece_bounds(Vertex v) {
  if (stats_.piece_bound_violation || !instance_->params().tractable()) return;
  const BreakpointCounts counts = count_breakpoints(profiles_[v]);
  const std::size_t limit = stats_.pops * instance_->ban_count();
  const auto r = static_cast<std::size_t>(instance_->max_rating());
  std::string what;
  if (counts.convex > limit) what = "convex points " + std::to_string(counts.convex);
  if (counts.discontinuous > limit) what = "discontinuous points " + std::to_string(counts.discontinuous);
  if (counts.longest_concave_run > r) what = "concave run " + std::to_string(counts.longest_concave_run);
  if (!what.empty()) {
    stats_.piece_bound_violation = what + " at vertex " + std::to_string(v) + " after iteration " +
                                   std::to_string(stats_.pops);
  }
}

std::vector<TimeCost> ProfileSearch::pareto() const { return pareto_pairs(profiles_[query_.target]); }

Route ProfileSearch::trace_parents(Time arrival) const {
  ReversedRoute out;
  Vertex v = query_.target;
  Time t = arrival;
  Time departure = arrival;
  while (true) {
    const CostProfile& profile = profiles_[v];
    const ProfilePiece& piece = profile.piece(profile.piece_index(t));
    if (piece.parent.origin == Origin::Wait) {
      t = piece.start - 1;
      continue;
    }
    if (piece.parent.origin == Origin::Source) {
      if (v != query_.source) throw InternalError("source piece away from the source");
      out.add(v, query_.t_min, departure);
      break;
    }
    const EdgeId e = piece.parent.edge;
    const auto dep = ttfs_.get(e).latest_departure(t);
    if (!dep) throw InternalError("parent edge cannot be traversed");
    out.add(v, t, departure);
    out.route.edges.push_back(e);
    v = instance_->edge(e).tail;
    t = *dep;
    departure = *dep;
  }
  return out.finish();
}

Route ProfileSearch::trace_equations(Time arrival) const {
  const CostParams& params = instance_->params();
  const Vertex s = query_.source;
  ReversedRoute out;
  Vertex v = query_.target;
  Time t = arrival;
  Time departure = arrival;
  Cost cost = profiles_[v].at(t);
  while (true) {
    if (v == s && cost == wait_rate(*instance_, query_, s) * (t - query_.t_min)) {
      out.add(v, query_.t_min, departure);
      break;
    }
    bool moved = false;
    for (EdgeId e : instance_->in_edges(v)) {
      const Edge& edge = instance_->edge(e);
      const auto dep = ttfs_.get(e).latest_departure(t);
      if (!dep) continue;
      const Cost before = profiles_[edge.tail].at(*dep);
      if (before == kInfCost) continue;
      const Time travel = t - *dep;
      if (before + params.driving * edge.driving_time +
              params.unrated_waiting() * (travel - edge.driving_time) == cost) {
        out.add(v, t, departure);
        out.route.edges.push_back(e);
        v = edge.tail;
        t = *dep;
        departure = *dep;
        cost = before;
        moved = true;
        break;
      }
    }
    if (moved) continue;
    const Cost earlier = t > query_.t_min ? profiles_[v].at(t - 1) : kInfCost;
    if (earlier != kInfCost && earlier + wait_rate(*instance_, query_, v) == cost) {
      --t;
      cost = earlier;
      continue;
    }
    throw InternalError("no predecessor satisfies the profile equations at vertex " + std::to_string(v));
  }
  return out.finish();
}

std::vector<Route> ProfileSearch::routes() const {
  std::vector<Route> result;
  for (const auto& [t, c] : pareto()) result.push_back(trace_parents(t));
  return result;
}

std::vector<Route> ProfileSearch::routes_by_equation_search() const {
  std::vector<Route> result;
  for (const auto& [t, c] : pareto()) result.push_back(trace_equations(t));
  return result;
}

ParetoSolution ProfileSearch::solution() const {
  ParetoSolution sol;
  sol.pairs = pareto();
  for (const auto& [t, c] : sol.pairs) sol.routes.push_back(trace_parents(t));
  sol.stats = stats_;
  return sol;
}

ParetoSolution run_query(const RoadInstance& instance, const Query& query, const SearchOptions& options) {
  ProfileSearch search(instance, query, options);
  search.run();
  return search.solution();
}

}  // namespace banroute
