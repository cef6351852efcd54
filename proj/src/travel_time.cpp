#include "banroute/travel_time.hpp"

#include <algorithm>

#include "banroute/errors.hpp"

namespace banroute {

BanClock::BanClock(std::span<const BanInterval> bans) : bans_(bans), prefix_(bans.size() + 1, 0) {
  for (std::size_t i = 0; i < bans.size(); ++i) prefix_[i + 1] = prefix_[i] + bans[i].length();
}

Time BanClock::closed_before(Time t) const {
  const auto it = std::partition_point(bans_.begin(), bans_.end(),
                                       [t](const BanInterval& b) { return b.closed < t; });
  const std::size_t k = static_cast<std::size_t>(it - bans_.begin());
  if (k == 0) return 0;
  const BanInterval& last = bans_[k - 1];
  return prefix_[k - 1] + std::min(t, last.open) - last.closed;
}

Time BanClock::first_time_with_open(Time target) const {
  // open_count(t) <= t, and open_count(target + total closed) >= target.
  Time lo = target;
  Time hi = target + prefix_.back();
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (open_count(mid) >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::optional<Time> latest_departure(const Edge& edge, Time t, Time t_min) {
  const BanClock clock(edge.bans);
  const Time departure = clock.first_time_with_open(clock.open_count(t) - edge.driving_time + 1) - 1;
  if (departure < t_min) return std::nullopt;
  return departure;
}

std::optional<Time> eval_travel_time(const Edge& edge, Time t, Time t_min) {
  if (auto dep = latest_departure(edge, t, t_min)) return t - *dep;
  return std::nullopt;
}

TravelTimeFunction::TravelTimeFunction(const Edge& edge, Time t_min, Time t_max)
    : t_min_(t_min), t_max_(t_max) {
  const BanClock clock(edge.bans);
  const Time delta = edge.driving_time;
  const Time first = clock.first_time_with_open(clock.open_count(t_min) + delta);
  if (first > t_max) return;

  // The latest departure is linear between consecutive candidates: ban
  // boundaries on the arrival side, and the earliest arrival after each ban
  // end on the departure side (where it jumps forward).
  std::vector<Time> candidates{first};
  const auto begin = std::partition_point(edge.bans.begin(), edge.bans.end(),
                                          [t_min](const BanInterval& b) { return b.open < t_min; });
  for (auto it = begin; it != edge.bans.end() && it->closed <= t_max; ++it) {
    for (Time c : {it->closed, it->open,
                   clock.first_time_with_open(clock.open_count(it->open) + delta)}) {
      if (c > first && c <= t_max) candidates.push_back(c);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (Time t : candidates) {
    const Time departure = clock.first_time_with_open(clock.open_count(t) - delta + 1) - 1;
    const bool driving = clock.closed_before(t + 1) == clock.closed_before(t);
    if (!segments_.empty()) {
      const TtfSegment& prev = segments_.back();
      const Time continued = prev.departure + (prev.driving ? t - prev.arrival : 0);
      if (prev.driving == driving && continued == departure) continue;
    }
    segments_.push_back({t, departure, driving});
  }
}

std::optional<Time> TravelTimeFunction::first_arrival() const {
  if (segments_.empty()) return std::nullopt;
  return segments_.front().arrival;
}

std::optional<Time> TravelTimeFunction::latest_departure(Time t) const {
  if (segments_.empty() || t < segments_.front().arrival || t > t_max_) return std::nullopt;
  const auto it = std::partition_point(segments_.begin(), segments_.end(),
                                       [t](const TtfSegment& s) { return s.arrival <= t; });
  const TtfSegment& seg = *(it - 1);
  return seg.departure + (seg.driving ? t - seg.arrival : 0);
}

std::optional<Time> TravelTimeFunction::travel_time(Time t) const {
  if (auto dep = latest_departure(t)) return t - *dep;
  return std::nullopt;
}

BreakpointSets classify_breakpoints(const TravelTimeFunction& fn) {
  BreakpointSets sets;
  const auto segs = fn.segments();
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const TtfSegment& prev = segs[i - 1];
    const TtfSegment& cur = segs[i];
    const Time continued = prev.departure + (prev.driving ? cur.arrival - prev.arrival : 0);
    if (cur.departure != continued) {
      sets.discontinuous.push_back(cur.arrival);
    } else if (prev.driving && !cur.driving) {
      sets.convex.push_back(cur.arrival);
    } else if (!prev.driving && cur.driving) {
      sets.concave.push_back(cur.arrival);
    }
  }
  return sets;
}

TravelTimeCache::TravelTimeCache(const RoadInstance& instance, Time t_min, Time t_max)
    : instance_(&instance),
      t_min_(t_min),
      t_max_(t_max),
      once_(std::make_unique<std::once_flag[]>(instance.edge_count())),
      functions_(instance.edge_count()) {}

const TravelTimeFunction& TravelTimeCache::get(EdgeId e) const {
  if (e >= functions_.size()) throw InvalidInput("unknown edge " + std::to_string(e));
  std::call_once(once_[e], [&] { functions_[e] = TravelTimeFunction(instance_->edge(e), t_min_, t_max_); });
  return functions_[e];
}

}  // namespace banroute
