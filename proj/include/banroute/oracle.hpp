#pragma once

#include <vector>

#include "banroute/instance.hpp"

namespace banroute {

struct OracleOptions {
  /// Largest n * (t_max - t_min + 1) the oracle accepts.
  std::size_t max_states = 1'000'000;
};

/// Minimal cost of being at vertex v at time t, over every feasible route
/// from the source, computed by dynamic programming over the time-expanded graph.
class OracleTable {
 public:
  OracleTable(std::size_t vertex_count, Time t_min, Time t_max)
      : n_(vertex_count), t_min_(t_min), t_max_(t_max),
        cost_(vertex_count * static_cast<std::size_t>(t_max - t_min + 1), kInfCost) {}

  Time t_min() const { return t_min_; }
  Time t_max() const { return t_max_; }
  std::size_t vertex_count() const { return n_; }
  Cost cost(Vertex v, Time t) const { return cost_[index(v, t)]; }
  Cost& cost(Vertex v, Time t) { return cost_[index(v, t)]; }

 private:
  std::size_t index(Vertex v, Time t) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(t_max_ - t_min_ + 1) +
           static_cast<std::size_t>(t - t_min_);
  }

  std::size_t n_;
  Time t_min_;
  Time t_max_;
  std::vector<Cost> cost_;
};

/// Throws OracleTooLarge above the state budget.
OracleTable oracle_table(const RoadInstance& instance, const Query& query, const OracleOptions& options = {});

/// Pareto pairs at the query target.
std::vector<TimeCost> oracle_solve(const RoadInstance& instance, const Query& query,
                                   const OracleOptions& options = {});

/// True iff some feasible route reaches the target with cost <= threshold.
bool oracle_check_decision(const RoadInstance& instance, const Query& query, Cost threshold,
                           const OracleOptions& options = {});

}  // namespace banroute
