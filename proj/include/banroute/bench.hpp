#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "banroute/instance.hpp"
#include "banroute/search.hpp"

namespace banroute {

struct BenchQuery {
  Query query;
  int rank = -1;  // -1 when not generated by rank
};

struct BenchOptions {
  SearchOptions search;
  std::size_t threads = 1;
  /// Report zero running times so that output is byte-for-byte reproducible.
  bool deterministic = false;
};

struct QueryReport {
  std::size_t id = 0;
  Query query;
  int rank = -1;
  bool ok = true;
  std::string error;
  std::size_t pareto_size = 0;
  Time arrival_deviation = 0;  // latest minus earliest optimal arrival
  std::int64_t runtime_us = 0;
  bool trivial = false;
  bool precarious = false;
  std::size_t extra_stops = 0;  // most waiting stops away from the source on one route
  Time source_waiting = 0;
  std::vector<Time> waiting_by_rating;  // vertex waiting away from the source, summed over routes
  std::size_t pops = 0;
  std::size_t settled = 0;
  std::size_t relaxations = 0;
  std::string config;
};

struct BenchAggregate {
  std::size_t queries = 0;
  std::size_t failures = 0;
  double avg_runtime_ms = 0;
  double median_runtime_ms = 0;
  double avg_pareto_size = 0;
  double avg_arrival_deviation = 0;
  double trivial_share = 0;  // percent of successful queries
  std::size_t precarious_queries = 0;
  double avg_settled = 0;
  double avg_pops = 0;
  Time source_waiting = 0;
  std::vector<Time> waiting_by_rating;
  /// Percent of all vertex waiting: source first, then ratings r..0.
  std::vector<double> waiting_shares;

  friend bool operator==(const BenchAggregate&, const BenchAggregate&) = default;
};

/// Trivial: exactly one optimal route, and its path is a static shortest path.
bool classify_trivial(const RoadInstance& instance, const Query& query, const ParetoSolution& solution);

std::string describe(const SearchOptions& options);

std::vector<QueryReport> run_benchmark(const RoadInstance& instance, const std::vector<BenchQuery>& queries,
                                       const BenchOptions& options);

BenchAggregate aggregate(const std::vector<QueryReport>& reports, int max_rating);

void write_report_csv(std::ostream& out, const std::vector<QueryReport>& reports, int max_rating);
std::vector<QueryReport> parse_report_csv(std::istream& in);
void write_aggregate_table(std::ostream& out, const BenchAggregate& agg, int max_rating);
std::string reports_to_json(const std::vector<QueryReport>& reports, const BenchAggregate& agg);

}  // namespace banroute
