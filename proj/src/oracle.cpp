#include "banroute/oracle.hpp"

#include <algorithm>

#include "banroute/errors.hpp"

namespace banroute {
namespace {

// Latest feasible departure for every arrival time, by a plain sweep over the
// edge's open time units. none = t_min - 1.
std::vector<Time> latest_departures(const Edge& edge, Time t_min, Time t_max) {
  const auto width = static_cast<std::size_t>(t_max - t_min + 1);
  // open_prefix[i] = open units in [t_min, t_min + i)
  std::vector<Time> open_prefix(width + 1, 0);
  for (std::size_t i = 0; i < width; ++i) {
    const Time t = t_min + static_cast<Time>(i);
    bool closed = false;
    for (const BanInterval& ban : edge.bans) closed = closed || (ban.closed <= t && t < ban.open);
    open_prefix[i + 1] = open_prefix[i] + (closed ? 0 : 1);
  }
  std::vector<Time> latest(width, t_min - 1);
  std::size_t dep = 0;  // candidate departure offset, only ever moves forward
  for (std::size_t a = 0; a < width; ++a) {
    if (open_prefix[a] - open_prefix[0] < edge.driving_time) continue;
    while (dep + 1 <= a && open_prefix[a] - open_prefix[dep + 1] >= edge.driving_time) ++dep;
    latest[a] = t_min + static_cast<Time>(dep);
  }
  return latest;
}

}  // namespace

OracleTable oracle_table(const RoadInstance& instance, const Query& query, const OracleOptions& options) {
  validate_query(instance, query);
  const std::size_t n = instance.vertex_count();
  const auto width = static_cast<std::size_t>(query.t_max - query.t_min + 1);
  if (width > options.max_states / std::max<std::size_t>(n, 1) || n * width > options.max_states) {
    throw OracleTooLarge("instance too large for oracle: " + std::to_string(n) + " vertices x " +
                         std::to_string(width) + " time steps exceeds " + std::to_string(options.max_states) +
                         " states");
  }
  const CostParams& params = instance.params();
  const Cost c0 = params.unrated_waiting();
  OracleTable table(n, query.t_min, query.t_max);

  struct EdgeState {
    std::vector<Time> latest;
    Time consumed;      // departures <= consumed are folded into best
    Cost best;          // min over those departures of cost(tail, dep) - c0 * dep
  };
  std::vector<EdgeState> states;
  states.reserve(instance.edge_count());
  for (const Edge& edge : instance.edges()) {
    states.push_back({latest_departures(edge, query.t_min, query.t_max), query.t_min - 1, kInfCost});
  }

  table.cost(query.source, query.t_min) = 0;
  for (Time t = query.t_min; t <= query.t_max; ++t) {
    const auto offset = static_cast<std::size_t>(t - query.t_min);
    for (Vertex v = 0; v < n; ++v) {
      Cost best = table.cost(v, t);
      if (t > query.t_min) {
        const Cost before = table.cost(v, t - 1);
        if (before != kInfCost) best = std::min(best, before + wait_rate(instance, query, v));
      }
      for (EdgeId e : instance.in_edges(v)) {
        const Edge& edge = instance.edge(e);
        EdgeState& st = states[e];
        const Time latest = st.latest[offset];
        while (st.consumed < latest) {
          ++st.consumed;
          const Cost at_tail = table.cost(edge.tail, st.consumed);
          if (at_tail != kInfCost) st.best = std::min(st.best, at_tail - c0 * st.consumed);
        }
        if (st.best == kInfCost) continue;
        best = std::min(best, st.best + c0 * (t - edge.driving_time) + params.driving * edge.driving_time);
      }
      table.cost(v, t) = best;
    }
  }
  return table;
}

std::vector<TimeCost> oracle_solve(const RoadInstance& instance, const Query& query, const OracleOptions& options) {
  const OracleTable table = oracle_table(instance, query, options);
  std::vector<TimeCost> pairs;
  for (Time t = query.t_min; t <= query.t_max; ++t) {
    const Cost c = table.cost(query.target, t);
    if (c != kInfCost) pairs.emplace_back(t, c);
  }
  return pareto_filter(std::move(pairs));
}

bool oracle_check_decision(const RoadInstance& instance, const Query& query, Cost threshold,
                           const OracleOptions& options) {
  const auto pairs = oracle_solve(instance, query, options);
  return std::any_of(pairs.begin(), pairs.end(), [threshold](const TimeCost& p) { return p.second <= threshold; });
}

}  // namespace banroute
