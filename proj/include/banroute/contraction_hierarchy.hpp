#pragma once

#include <span>
#include <string>
#include <vector>

#include "banroute/instance.hpp"

namespace banroute {

/// Arc of the hierarchy; `via` is the contracted middle vertex of a shortcut
/// or kNoVertex for an original edge.
struct ChArc {
  Vertex other = 0;
  Time weight = 0;
  Vertex via = kNoVertex;
  friend bool operator==(const ChArc&, const ChArc&) = default;
};

struct ChBuildOptions {
  /// Settled-vertex limit of a single witness search.
  std::size_t witness_settle_limit = 500;
};

/// Contraction hierarchy over the static driving times (bans ignored).
class ContractionHierarchy {
 public:
  ContractionHierarchy() = default;

  static ContractionHierarchy build(const RoadInstance& instance, const ChBuildOptions& options = {});

  std::size_t vertex_count() const { return rank_.size(); }
  std::uint32_t rank(Vertex v) const { return rank_[v]; }
  std::size_t arc_count() const { return up_arcs_.size() + down_arcs_.size(); }
  std::size_t shortcut_count() const;

  /// Arcs v -> other with rank(other) > rank(v).
  std::span<const ChArc> upward(Vertex v) const {
    return {up_arcs_.data() + up_offsets_[v], up_arcs_.data() + up_offsets_[v + 1]};
  }
  /// Arcs other -> v with rank(other) > rank(v).
  std::span<const ChArc> downward_into(Vertex v) const {
    return {down_arcs_.data() + down_offsets_[v], down_arcs_.data() + down_offsets_[v + 1]};
  }

  /// Static shortest driving time, kInfTime if t is unreachable from s.
  Time distance(Vertex s, Vertex t) const;
  /// Vertex sequence of a shortest s-t path with shortcuts unpacked; empty if unreachable.
  std::vector<Vertex> path(Vertex s, Vertex t) const;

  void save(const std::string& path) const;
  static ContractionHierarchy load(const std::string& path);

  friend bool operator==(const ContractionHierarchy&, const ContractionHierarchy&) = default;

 private:
  void unpack(Vertex from, Vertex to, Time weight, Vertex via, std::vector<Vertex>& out) const;

  std::vector<std::uint32_t> rank_;
  std::vector<std::size_t> up_offsets_{0};
  std::vector<ChArc> up_arcs_;
  std::vector<std::size_t> down_offsets_{0};
  std::vector<ChArc> down_arcs_;
};

}  // namespace banroute
