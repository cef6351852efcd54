#include "banroute/profile.hpp"

#include <algorithm>
#include <limits>

#include "banroute/errors.hpp"

namespace banroute {
namespace {

// For a > 0 (resp. a >= 0) and b > 0.
Time ceil_div(Time a, Time b) { return (a + b - 1) / b; }

// Collects pieces for a merge result and tracks alpha/beta/gamma as they go by.
class BoundedSink {
 public:
  explicit BoundedSink(Time t_max) : out_(t_max) {}

  void emit(const ProfilePiece& p, Time from, Time to) {
    if (from >= to) return;
    const Cost first = p.at(from);
    const Cost last = p.at(to - 1);
    out_.append({from, first, p.slope, p.parent});
    if (bounds_.alpha == kInfTime) bounds_.alpha = from;
    bounds_.beta = std::min({bounds_.beta, first, last});
    gamma_ = std::max({gamma_, first, last});
  }

  CostProfile& profile() { return out_; }
  ProfileBounds bounds() const {
    ProfileBounds b = bounds_;
    b.gamma = bounds_.alpha == kInfTime ? kInfCost : gamma_;
    return b;
  }

 private:
  CostProfile out_;
  ProfileBounds bounds_;
  Cost gamma_ = std::numeric_limits<Cost>::min();
};

}  // namespace

CostProfile CostProfile::linear(Time start, Cost cost, Cost slope, Time t_max, Parent parent) {
  CostProfile p(t_max);
  if (start <= t_max) p.pieces_.push_back({start, cost, slope, parent});
  return p;
}

std::size_t CostProfile::piece_index(Time t) const {
  const auto it = std::partition_point(pieces_.begin(), pieces_.end(),
                                       [t](const ProfilePiece& p) { return p.start <= t; });
  if (it == pieces_.begin()) throw InternalError("piece_index before first piece");
  return static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

Cost CostProfile::at(Time t) const {
  if (pieces_.empty() || t < pieces_.front().start || t > t_max_) return kInfCost;
  return pieces_[piece_index(t)].at(t);
}

ProfileBounds CostProfile::bounds() const {
  ProfileBounds b;
  if (pieces_.empty()) return b;
  b.alpha = pieces_.front().start;
  Cost gamma = std::numeric_limits<Cost>::min();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Cost first = pieces_[i].cost;
    const Cost last = pieces_[i].at(piece_end(i) - 1);
    b.beta = std::min({b.beta, first, last});
    gamma = std::max({gamma, first, last});
  }
  b.gamma = gamma;
  return b;
}

void CostProfile::append(const ProfilePiece& piece) {
  if (!pieces_.empty()) {
    ProfilePiece& last = pieces_.back();
    if (piece.start <= last.start) throw InternalError("profile pieces must have increasing starts");
    if (last.parent == piece.parent && last.slope == piece.slope && last.at(piece.start) == piece.cost) {
      return;
    }
  }
  pieces_.push_back(piece);
}

CostProfile link(const CostProfile& tail_profile, EdgeId edge, const TravelTimeFunction& ttf,
                 Time driving_time, const CostParams& params, Time t_visit) {
  CostProfile out(ttf.t_max());
  if (tail_profile.empty()) return out;
  const Time lo = std::max(t_visit, tail_profile.alpha());
  const Cost d = params.driving;
  const Cost c0 = params.unrated_waiting();
  const Parent parent = Parent::via(edge);
  const auto segs = ttf.segments();

  // Latest departures never decrease along the segments; skip those ending before lo.
  std::size_t k = 0;
  {
    std::size_t lo_idx = 0, hi_idx = segs.size();
    while (lo_idx < hi_idx) {
      const std::size_t mid = (lo_idx + hi_idx) / 2;
      const TtfSegment& s = segs[mid];
      const Time last_dep = s.driving ? s.departure + (ttf.segment_end(mid) - 1 - s.arrival) : s.departure;
      if (last_dep < lo) {
        lo_idx = mid + 1;
      } else {
        hi_idx = mid;
      }
    }
    k = lo_idx;
  }

  for (; k < segs.size(); ++k) {
    const TtfSegment& s = segs[k];
    const Time arrival_end = ttf.segment_end(k);
    if (s.driving) {
      const Time first = std::max(s.arrival, s.arrival + (lo - s.departure));
      if (first >= arrival_end) continue;
      const Time travel = s.arrival - s.departure;
      const Cost extra = d * driving_time + c0 * (travel - driving_time);
      Time dep = first - travel;
      const Time dep_end = arrival_end - travel;
      std::size_t pi = tail_profile.piece_index(dep);
      while (dep < dep_end) {
        const ProfilePiece& p = tail_profile.piece(pi);
        out.append({dep + travel, p.at(dep) + extra, p.slope, parent});
        dep = std::min(tail_profile.piece_end(pi), dep_end);
        ++pi;
      }
    } else {
      if (s.departure < lo) continue;
      const Cost base = tail_profile.at(s.departure) + d * driving_time +
                        c0 * (s.arrival - s.departure - driving_time);
      out.append({s.arrival, base, c0, parent});
    }
  }
  return out;
}

CostProfile wait_envelope(const CostProfile& profile, Cost rate) {
  CostProfile out(profile.t_max());
  bool have_line = false;
  Time anchor_t = 0;
  Cost anchor_cost = 0;
  const auto line = [&](Time t) { return anchor_cost + rate * (t - anchor_t); };
  const auto emit_line = [&](Time from, Time to) {
    if (from < to) out.append({from, line(from), rate, Parent::wait()});
  };
  const auto emit_own = [&](const ProfilePiece& p, Time from, Time to) {
    // a single point steeper than waiting is drawn towards the waiting line that follows it
    const Cost slope = to - from == 1 ? std::min(p.slope, rate) : p.slope;
    out.append({from, p.at(from), slope, p.parent});
    anchor_t = to - 1;
    anchor_cost = p.at(to - 1);
    have_line = true;
  };

  for (std::size_t i = 0; i < profile.size(); ++i) {
    const ProfilePiece& p = profile.piece(i);
    const Time a = p.start;
    const Time e = profile.piece_end(i);
    if (!have_line) {
      if (p.slope <= rate) {
        emit_own(p, a, e);
      } else {
        emit_own(p, a, a + 1);
        emit_line(a + 1, e);
      }
      continue;
    }
    const Cost gap = p.at(a) - line(a);  // own minus waiting
    const Cost dslope = p.slope - rate;
    if (dslope <= 0) {
      Time cross = e;
      if (gap <= 0) {
        cross = a;
      } else if (dslope < 0) {
        cross = std::min(e, a + ceil_div(gap, -dslope));
      }
      emit_line(a, cross);
      if (cross < e) emit_own(p, cross, e);
    } else {
      Time from = a;
      if (gap <= 0) {
        emit_own(p, a, a + 1);
        from = a + 1;
      }
      emit_line(from, e);
    }
  }
  return out;
}

MergeOutcome merge(const CostProfile& existing, const CostProfile& candidate) {
  MergeOutcome result;
  if (candidate.empty()) {
    result.merged = existing;
    result.bounds = existing.bounds();
    return result;
  }
  if (existing.t_max() != candidate.t_max()) throw InternalError("merging profiles of different horizons");

  BoundedSink sink(existing.t_max());
  std::optional<Time> improvement;
  const auto note = [&](Time t) {
    if (!improvement) improvement = t;
  };
  const Time end = existing.t_max() + 1;
  const Time ex_alpha = existing.alpha();
  const Time ca_alpha = candidate.alpha();
  std::size_t i = 0;
  std::size_t j = 0;
  Time x = std::min(ex_alpha, ca_alpha);
  while (x < end) {
    const bool ex_on = x >= ex_alpha;
    const bool ca_on = x >= ca_alpha;
    while (ex_on && existing.piece_end(i) <= x) ++i;
    while (ca_on && candidate.piece_end(j) <= x) ++j;
    Time y = end;
    y = std::min(y, ex_on ? existing.piece_end(i) : ex_alpha);
    y = std::min(y, ca_on ? candidate.piece_end(j) : ca_alpha);

    if (!ex_on) {
      sink.emit(candidate.piece(j), x, y);
      note(x);
    } else if (!ca_on) {
      sink.emit(existing.piece(i), x, y);
    } else {
      const ProfilePiece& p = existing.piece(i);
      const ProfilePiece& q = candidate.piece(j);
      const Cost h0 = q.at(x) - p.at(x);
      const Cost dh = q.slope - p.slope;
      if (dh == 0) {
        if (h0 < 0) {
          sink.emit(q, x, y);
          note(x);
        } else {
          sink.emit(p, x, y);
        }
      } else if (dh < 0) {
        // candidate strictly cheaper from c on
        const Time c = std::min(y, h0 < 0 ? x : x + h0 / (-dh) + 1);
        sink.emit(p, x, c);
        if (c < y) {
          sink.emit(q, c, y);
          note(c);
        }
      } else {
        // candidate strictly cheaper before c
        const Time c = std::min(y, h0 >= 0 ? x : x + ceil_div(-h0, dh));
        if (x < c) {
          sink.emit(q, x, c);
          note(x);
        }
        sink.emit(p, c, y);
      }
    }
    x = y;
  }

  if (!improvement) {
    result.merged = existing;
    result.bounds = sink.bounds();
    return result;
  }
  result.merged = std::move(sink.profile());
  result.first_improvement = improvement;
  result.bounds = sink.bounds();
  return result;
}

std::vector<TimeCost> pareto_pairs(const CostProfile& profile) {
  std::vector<TimeCost> pairs;
  Cost best = kInfCost;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const ProfilePiece& p = profile.piece(i);
    const Time a = p.start;
    const Time e = profile.piece_end(i);
    if (p.slope >= 0) {
      if (p.cost < best) {
        pairs.emplace_back(a, p.cost);
        best = p.cost;
      }
      continue;
    }
    // Strictly decreasing: every point from the first one below `best` qualifies.
    Time t = a;
    if (p.cost >= best) t = a + (p.cost - best) / (-p.slope) + 1;
    for (; t < e; ++t) pairs.emplace_back(t, p.at(t));
    best = std::min(best, p.at(e - 1));
  }
  return pairs;
}

BreakpointCounts count_breakpoints(const CostProfile& profile) {
  BreakpointCounts counts;
  std::size_t run = 0;
  const auto pieces = profile.pieces();
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const ProfilePiece& p = pieces[i - 1];
    const ProfilePiece& q = pieces[i];
    const Time t = q.start;
    const Cost before = p.at(t);
    bool concave = false;
    bool breaks_run = false;
    if (q.cost == before) {
      if (q.slope > p.slope) {
        ++counts.convex;
        breaks_run = true;
      } else if (q.slope < p.slope) {
        concave = true;
      }
    } else if (q.cost < before) {
      // lines meet in [t - 1, t) when the gap closes within one step back
      if (q.slope < p.slope && before - q.cost <= p.slope - q.slope) {
        concave = true;
      } else {
        ++counts.discontinuous;
        breaks_run = true;
      }
    } else {
      ++counts.upward_jumps;
      breaks_run = true;
    }
    if (concave) {
      ++counts.concave;
      ++run;
      counts.longest_concave_run = std::max(counts.longest_concave_run, run);
    }
    if (breaks_run) run = 0;
  }
  return counts;
}

bool strictly_above_shifted(const CostProfile& profile, Cost offset, Time shift,
                            const CostProfile& other, Time from, Time to) {
  from = std::max(from, profile.alpha());
  to = std::min(to, profile.t_max() + 1);
  to = std::min(to, other.t_max() - shift + 1);
  if (from >= to) return true;
  if (other.empty() || from + shift < other.alpha()) return false;

  std::size_t i = profile.piece_index(from);
  std::size_t j = other.piece_index(from + shift);
  Time x = from;
  while (x < to) {
    const Time y = std::min({to, profile.piece_end(i), other.piece_end(j) - shift});
    const ProfilePiece& p = profile.piece(i);
    const ProfilePiece& q = other.piece(j);
    if (p.at(x) + offset <= q.at(x + shift)) return false;
    if (p.at(y - 1) + offset <= q.at(y - 1 + shift)) return false;
    x = y;
    if (x >= profile.piece_end(i)) ++i;
    if (x + shift >= other.piece_end(j)) ++j;
  }
  return true;
}

}  // namespace banroute
