#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "banroute/instance.hpp"

namespace banroute {

/// Open-time accounting for one edge's ban list. `open_count(t)` is a running
/// clock that only ticks while the edge is open.
class BanClock {
 public:
  explicit BanClock(std::span<const BanInterval> bans);

  /// Closed time units in (-inf, t).
  Time closed_before(Time t) const;
  Time open_count(Time t) const { return t - closed_before(t); }
  /// Smallest t with open_count(t) >= target.
  Time first_time_with_open(Time target) const;

 private:
  std::span<const BanInterval> bans_;
  std::vector<Time> prefix_;  // prefix_[k] = total length of bans_[0..k)
};

/// Minimal period p such that [t - p, t) holds driving_time open units and
/// t - p >= t_min, or nullopt when no such period exists.
std::optional<Time> eval_travel_time(const Edge& edge, Time t, Time t_min);

/// Latest departure from the tail that reaches the head by time t.
std::optional<Time> latest_departure(const Edge& edge, Time t, Time t_min);

/// A run of arrival times over which the latest departure is linear: either it
/// advances one-for-one with arrival (`driving`) or it stays put because the
/// edge is closed at the arrival end.
struct TtfSegment {
  Time arrival = 0;    // first arrival time of the run
  Time departure = 0;  // latest departure for that arrival
  bool driving = true;
};

struct BreakpointSets {
  std::vector<Time> convex;
  std::vector<Time> concave;
  std::vector<Time> discontinuous;
};

/// T_e materialised over a horizon as a list of TtfSegments.
class TravelTimeFunction {
 public:
  TravelTimeFunction() = default;
  TravelTimeFunction(const Edge& edge, Time t_min, Time t_max);

  Time t_min() const { return t_min_; }
  Time t_max() const { return t_max_; }
  /// Earliest arrival at the head, or nullopt if the edge cannot be traversed.
  std::optional<Time> first_arrival() const;
  std::span<const TtfSegment> segments() const { return segments_; }
  /// Exclusive end of segment i.
  Time segment_end(std::size_t i) const {
    return i + 1 < segments_.size() ? segments_[i + 1].arrival : t_max_ + 1;
  }

  std::optional<Time> latest_departure(Time t) const;
  std::optional<Time> travel_time(Time t) const;

 private:
  Time t_min_ = 0;
  Time t_max_ = 0;
  std::vector<TtfSegment> segments_;
};

BreakpointSets classify_breakpoints(const TravelTimeFunction& fn);

/// Lazily materialised travel-time functions for every edge of an instance
/// under one horizon. Safe for concurrent use.
class TravelTimeCache {
 public:
  TravelTimeCache(const RoadInstance& instance, Time t_min, Time t_max);

  const TravelTimeFunction& get(EdgeId e) const;
  Time t_min() const { return t_min_; }
  Time t_max() const { return t_max_; }

 private:
  const RoadInstance* instance_;
  Time t_min_;
  Time t_max_;
  mutable std::unique_ptr<std::once_flag[]> once_;
  mutable std::vector<TravelTimeFunction> functions_;
};

}  // namespace banroute
