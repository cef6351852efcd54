#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "banroute/instance.hpp"
#include "banroute/travel_time.hpp"

namespace banroute {

/// Where the cost of a piece comes from, for route reconstruction.
enum class Origin : std::uint8_t {
  Source,  // waiting at the source since t_min
  Edge,    // arrived over `edge` at this very time
  Wait,    // waited at this vertex since the time just before the piece
};

struct Parent {
  Origin origin = Origin::Source;
  EdgeId edge = kNoEdge;

  static Parent source() { return {Origin::Source, kNoEdge}; }
  static Parent via(EdgeId e) { return {Origin::Edge, e}; }
  static Parent wait() { return {Origin::Wait, kNoEdge}; }
  friend bool operator==(const Parent&, const Parent&) = default;
};

/// Linear piece valid from `start` up to the next piece's start.
struct ProfilePiece {
  Time start = 0;
  Cost cost = 0;   // value at `start`
  Cost slope = 0;  // cost per time unit
  Parent parent;

  Cost at(Time t) const { return cost + slope * (t - start); }
  friend bool operator==(const ProfilePiece&, const ProfilePiece&) = default;
};

/// alpha: earliest finite time; beta: minimum cost; gamma: maximum cost over
/// t >= alpha. All infinite for the empty profile.
struct ProfileBounds {
  Time alpha = kInfTime;
  Cost beta = kInfCost;
  Cost gamma = kInfCost;
  friend bool operator==(const ProfileBounds&, const ProfileBounds&) = default;
};

/// Piecewise-linear cost over integer times up to t_max. Infinite before the
/// first piece, finite from there to t_max.
class CostProfile {
 public:
  CostProfile() = default;
  explicit CostProfile(Time t_max) : t_max_(t_max) {}

  static CostProfile linear(Time start, Cost cost, Cost slope, Time t_max, Parent parent);

  Time t_max() const { return t_max_; }
  bool empty() const { return pieces_.empty(); }
  std::size_t size() const { return pieces_.size(); }
  std::span<const ProfilePiece> pieces() const { return pieces_; }
  const ProfilePiece& piece(std::size_t i) const { return pieces_[i]; }
  Time piece_end(std::size_t i) const {
    return i + 1 < pieces_.size() ? pieces_[i + 1].start : t_max_ + 1;
  }
  Time alpha() const { return pieces_.empty() ? kInfTime : pieces_.front().start; }

  /// Index of the piece covering t; requires alpha() <= t <= t_max().
  std::size_t piece_index(Time t) const;
  /// kInfCost before alpha and beyond t_max.
  Cost at(Time t) const;
  ProfileBounds bounds() const;

  /// Appends a piece starting after the current last piece, folding it into
  /// that piece when it continues the same line with the same parent.
  void append(const ProfilePiece& piece);

  friend bool operator==(const CostProfile&, const CostProfile&) = default;

 private:
  std::vector<ProfilePiece> pieces_;
  Time t_max_ = 0;
};

/// Cost at the head of `edge` for every arrival whose latest departure is at or
/// after t_visit: C_u(dep) + d*delta + c0*(T_e(t) - delta).
CostProfile link(const CostProfile& tail_profile, EdgeId edge, const TravelTimeFunction& ttf,
                 Time driving_time, const CostParams& params, Time t_visit);

/// Running lower envelope under waiting at `rate` per time unit. Ties keep
/// the original piece; waiting stretches carry Parent::wait().
CostProfile wait_envelope(const CostProfile& profile, Cost rate);

struct MergeOutcome {
  CostProfile merged;
  /// Earliest time at which the candidate is strictly cheaper.
  std::optional<Time> first_improvement;
  ProfileBounds bounds;
};

/// Pointwise minimum; equal costs keep the existing piece. When the candidate
/// never improves, `merged` is the existing profile unchanged.
MergeOutcome merge(const CostProfile& existing, const CostProfile& candidate);

/// All (t, C(t)) with no earlier t' having C(t') <= C(t), ordered by time.
std::vector<TimeCost> pareto_pairs(const CostProfile& profile);

/// Non-differentiable points of a profile read as a function of continuous
/// time: a breakpoint whose lines cross inside (t - 1, t] is a concave kink
/// rather than a jump.
struct BreakpointCounts {
  std::size_t convex = 0;
  std::size_t concave = 0;
  std::size_t discontinuous = 0;  // downward jumps
  std::size_t upward_jumps = 0;
  std::size_t longest_concave_run = 0;  // between two convex/discontinuous points
};
BreakpointCounts count_breakpoints(const CostProfile& profile);

/// True iff profile(t) + offset > other(t + shift) for every t in [from, to)
/// at which `profile` is finite. Times with t + shift beyond other's t_max
/// count as satisfied; times where `other` is still infinite do not.
bool strictly_above_shifted(const CostProfile& profile, Cost offset, Time shift,
                            const CostProfile& other, Time from, Time to);

}  // namespace banroute
