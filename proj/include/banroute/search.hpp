#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "banroute/contraction_hierarchy.hpp"
#include "banroute/indexed_heap.hpp"
#include "banroute/instance.hpp"
#include "banroute/potentials.hpp"
#include "banroute/profile.hpp"
#include "banroute/travel_time.hpp"

namespace banroute {

class ProfileSearch;

struct SearchOptions {
  PotentialMode potentials = PotentialMode::BackwardDijkstra;
  /// Used in ContractionHierarchy mode; built on the fly when null.
  const ContractionHierarchy* hierarchy = nullptr;
  bool astar = true;
  bool prune_target = true;
  bool prune_bounds = true;
  bool prune_parent = true;
  std::size_t iteration_cap = 10'000'000;
  std::size_t piece_cap = 1'000'000;
  /// After every pop, check the per-profile breakpoint limits of the d = c0
  /// regime (i*b convex, i*b discontinuous, at most r concave in a row).
  bool check_piece_bounds = false;
  bool record_pop_keys = false;
  /// Called after each pop, before relaxing; the time is the visit time.
  std::function<void(const ProfileSearch&, Vertex, Time)> on_pop;
};

struct SearchStats {
  std::size_t pops = 0;
  std::size_t settled_vertices = 0;  // distinct vertices popped at least once
  std::size_t relaxations = 0;
  std::size_t pruned_target = 0;
  std::size_t pruned_bounds = 0;
  std::size_t pruned_parent = 0;
  std::size_t horizon_skips = 0;
  std::size_t max_profile_pieces = 0;
  std::vector<Time> pop_keys;
  /// First violated breakpoint limit, when check_piece_bounds is on.
  std::optional<std::string> piece_bound_violation;
};

struct ParetoSolution {
  std::vector<TimeCost> pairs;
  std::vector<Route> routes;  // routes[i] realises pairs[i]
  SearchStats stats;

  bool empty() const { return pairs.empty(); }
};

/// Skip u when C_u(t) + d*pi(u) > C_z(t + pi(u)) for every t in [from, to).
bool target_prunable(const CostProfile& profile_u, Time potential_u, Cost driving_cost,
                     const CostProfile& profile_z, Time from, Time to);

/// Skip an edge u->v when it can neither undercut v's upper bound nor reach v
/// earlier than v's current profile does.
bool bounds_prunable(const ProfileBounds& tail, const ProfileBounds& head, Time driving_time,
                     Cost driving_cost);

/// Skip the edge u->v back to the vertex every arrival at u came from, when u
/// is unrated and driving costs at least as much as unrated waiting.
bool parent_loop_prunable(const RoadInstance& instance, const CostProfile& profile_u, Vertex u, EdgeId e);

/// Label-correcting profile search from the query source over all arrival times.
class ProfileSearch {
 public:
  ProfileSearch(const RoadInstance& instance, const Query& query, SearchOptions options = {});

  /// Runs to completion. Throws CapExceeded when a cap is hit.
  void run();

  const RoadInstance& instance() const { return *instance_; }
  const Query& query() const { return query_; }
  const CostProfile& profile(Vertex v) const { return profiles_[v]; }
  const SearchStats& stats() const { return stats_; }
  Time potential(Vertex v) const { return potentials_(v); }

  std::vector<TimeCost> pareto() const;
  /// One route per Pareto pair, following the parent stored on each piece.
  std::vector<Route> routes() const;
  /// Same, but re-deriving every predecessor from the profile values alone.
  std::vector<Route> routes_by_equation_search() const;
  ParetoSolution solution() const;

 private:
  Route trace_parents(Time arrival) const;
  Route trace_equations(Time arrival) const;
  void relax(Vertex u, Time t_visit);
  void check_piece_bounds(Vertex v);

  const RoadInstance* instance_;
  Query query_;
  SearchOptions options_;
  std::optional<ContractionHierarchy> own_hierarchy_;
  Potentials potentials_;
  TravelTimeCache ttfs_;
  std::vector<CostProfile> profiles_;
  std::vector<ProfileBounds> bounds_;
  std::vector<Time> pending_;
  std::vector<bool> settled_;
  IndexedHeap<Time> queue_;  // key: pending time, plus potential under A*
  SearchStats stats_;
  bool done_ = false;
};

ParetoSolution run_query(const RoadInstance& instance, const Query& query, const SearchOptions& options = {});

}  // namespace banroute
