#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "banroute/contraction_hierarchy.hpp"
#include "banroute/instance.hpp"

namespace banroute {

/// Static shortest driving times to `target` from every vertex (bans ignored).
std::vector<Time> backward_distances(const RoadInstance& instance, Vertex target);

struct SettleOrder {
  std::vector<Time> distance;
  std::vector<Vertex> settled;  // in settle order, source first
};

/// Forward Dijkstra over static driving times; ties settle the smaller id first.
SettleOrder forward_dijkstra(const RoadInstance& instance, Vertex source);

enum class PotentialMode { Zero, BackwardDijkstra, ContractionHierarchy };

PotentialMode parse_potential_mode(std::string_view name);
std::string_view to_string(PotentialMode mode);

/// Lower bounds on the remaining driving time to one target. Exact except in
/// Zero mode. Not thread-safe: CH mode fills its labels on demand.
class Potentials {
 public:
  static Potentials zero(std::size_t vertex_count);
  static Potentials backward_dijkstra(const RoadInstance& instance, Vertex target);
  /// `ch` must outlive the returned object.
  static Potentials from_hierarchy(const ContractionHierarchy& ch, Vertex target);

  PotentialMode mode() const { return mode_; }
  /// kInfTime when the target cannot be reached from u.
  Time operator()(Vertex u) const;

 private:
  Time hierarchy_label(Vertex u) const;

  PotentialMode mode_ = PotentialMode::Zero;
  mutable std::vector<Time> labels_;
  // CH mode: distance to the target along downward arcs, and memo state.
  const ContractionHierarchy* ch_ = nullptr;
  std::vector<Time> down_dist_;
  mutable std::vector<bool> done_;
};

}  // namespace banroute
