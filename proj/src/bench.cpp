#include "banroute/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "banroute/errors.hpp"
#include "banroute/potentials.hpp"

namespace banroute {
namespace {

void collect_waiting(const RoadInstance& instance, const std::vector<Route>& routes, QueryReport& report) {
  report.waiting_by_rating.assign(static_cast<std::size_t>(instance.max_rating()) + 1, 0);
  for (const Route& route : routes) {
    std::size_t stops = 0;
    for (std::size_t i = 0; i < route.size(); ++i) {
      const Time wait = route.departures[i] - route.arrivals[i];
      if (wait <= 0) continue;
      if (i == 0) {
        report.source_waiting += wait;
        continue;
      }
      const int rating = instance.rating(route.vertices[i]);
      report.waiting_by_rating[static_cast<std::size_t>(rating)] += wait;
      ++stops;
      if (rating == 0) report.precarious = true;
    }
    report.extra_stops = std::max(report.extra_stops, stops);
  }
}

QueryReport run_one(const RoadInstance& instance, const BenchQuery& bq, std::size_t id, const BenchOptions& options) {
  QueryReport report;
  report.id = id;
  report.query = bq.query;
  report.rank = bq.rank;
  report.config = describe(options.search);
  report.waiting_by_rating.assign(static_cast<std::size_t>(instance.max_rating()) + 1, 0);
  try {
    ProfileSearch search(instance, bq.query, options.search);
    const auto start = std::chrono::steady_clock::now();
    search.run();
    ParetoSolution solution = search.solution();
    const auto stop = std::chrono::steady_clock::now();
    report.runtime_us =
        options.deterministic ? 0 : std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
    report.pareto_size = solution.pairs.size();
    if (!solution.pairs.empty()) {
      report.arrival_deviation = solution.pairs.back().first - solution.pairs.front().first;
    }
    report.trivial = classify_trivial(instance, bq.query, solution);
    collect_waiting(instance, solution.routes, report);
    report.pops = solution.stats.pops;
    report.settled = solution.stats.settled_vertices;
    report.relaxations = solution.stats.relaxations;
  } catch (const Error& e) {
    report.ok = false;
    report.error = e.what();
  }
  return report;
}

double mean(double sum, std::size_t count) { return count == 0 ? 0.0 : sum / static_cast<double>(count); }

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

bool classify_trivial(const RoadInstance& instance, const Query& query, const ParetoSolution& solution) {
  if (solution.pairs.size() != 1 || solution.routes.size() != 1) return false;
  const std::vector<Time> dist = backward_distances(instance, query.target);
  return route_driving_time(instance, solution.routes.front()) == dist[query.source];
}

std::string describe(const SearchOptions& options) {
  std::string s = "potentials=" + std::string(to_string(options.potentials));
  s += options.astar ? " astar=on" : " astar=off";
  s += options.prune_target ? " target=on" : " target=off";
  s += options.prune_bounds ? " bounds=on" : " bounds=off";
  s += options.prune_parent ? " parent=on" : " parent=off";
  return s;
}

std::vector<QueryReport> run_benchmark(const RoadInstance& instance, const std::vector<BenchQuery>& queries,
                                       const BenchOptions& options) {
  std::vector<QueryReport> reports(queries.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) reports[i] = run_one(instance, queries[i], i, options);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, queries.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return reports;
}

BenchAggregate aggregate(const std::vector<QueryReport>& reports, int max_rating) {
  BenchAggregate agg;
  agg.queries = reports.size();
  agg.waiting_by_rating.assign(static_cast<std::size_t>(max_rating) + 1, 0);
  std::vector<std::int64_t> runtimes;
  double pareto = 0, deviation = 0, settled = 0, pops = 0;
  std::size_t trivial = 0;
  for (const QueryReport& r : reports) {
    if (!r.ok) {
      ++agg.failures;
      continue;
    }
    runtimes.push_back(r.runtime_us);
    pareto += static_cast<double>(r.pareto_size);
    deviation += static_cast<double>(r.arrival_deviation);
    settled += static_cast<double>(r.settled);
    pops += static_cast<double>(r.pops);
    if (r.trivial) ++trivial;
    if (r.precarious) ++agg.precarious_queries;
    agg.source_waiting += r.source_waiting;
    for (std::size_t i = 0; i < r.waiting_by_rating.size() && i < agg.waiting_by_rating.size(); ++i) {
      agg.waiting_by_rating[i] += r.waiting_by_rating[i];
    }
  }
  const std::size_t ok = runtimes.size();
  double runtime_sum = 0;
  for (std::int64_t us : runtimes) runtime_sum += static_cast<double>(us);
  agg.avg_runtime_ms = mean(runtime_sum, ok) / 1000.0;
  if (ok > 0) {
    std::sort(runtimes.begin(), runtimes.end());
    const double mid = ok % 2 == 1 ? static_cast<double>(runtimes[ok / 2])
                                   : (static_cast<double>(runtimes[ok / 2 - 1]) + static_cast<double>(runtimes[ok / 2])) / 2.0;
    agg.median_runtime_ms = mid / 1000.0;
  }
  agg.avg_pareto_size = mean(pareto, ok);
  agg.avg_arrival_deviation = mean(deviation, ok);
  agg.trivial_share = 100.0 * mean(static_cast<double>(trivial), ok);
  agg.avg_settled = mean(settled, ok);
  agg.avg_pops = mean(pops, ok);

  Time total = agg.source_waiting;
  for (Time w : agg.waiting_by_rating) total += w;
  agg.waiting_shares.push_back(total == 0 ? 0.0 : 100.0 * static_cast<double>(agg.source_waiting) / static_cast<double>(total));
  for (std::size_t i = agg.waiting_by_rating.size(); i-- > 0;) {
    agg.waiting_shares.push_back(total == 0 ? 0.0 : 100.0 * static_cast<double>(agg.waiting_by_rating[i]) / static_cast<double>(total));
  }
  return agg;
}

void write_report_csv(std::ostream& out, const std::vector<QueryReport>& reports, int max_rating) {
  out << "id,source,target,t_min,t_max,rank,status,pareto_size,arrival_deviation,runtime_us,trivial,precarious,"
         "extra_stops,wait_source";
  for (int i = 0; i <= max_rating; ++i) out << ",wait_r" << i;
  out << ",pops,settled,relaxations,config,error\n";
  for (const QueryReport& r : reports) {
    out << r.id << ',' << r.query.source << ',' << r.query.target << ',' << r.query.t_min << ',' << r.query.t_max
        << ',' << r.rank << ',' << (r.ok ? "ok" : "failed") << ',' << r.pareto_size << ',' << r.arrival_deviation
        << ',' << r.runtime_us << ',' << (r.trivial ? 1 : 0) << ',' << (r.precarious ? 1 : 0) << ','
        << r.extra_stops << ',' << r.source_waiting;
    for (int i = 0; i <= max_rating; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      out << ',' << (idx < r.waiting_by_rating.size() ? r.waiting_by_rating[idx] : 0);
    }
    out << ',' << r.pops << ',' << r.settled << ',' << r.relaxations << ',' << csv_safe(r.config) << ','
        << csv_safe(r.error) << '\n';
  }
}

std::vector<QueryReport> parse_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty report");
  const auto header = split(line, ',');
  const auto ratings = static_cast<std::size_t>(std::count_if(header.begin(), header.end(), [](const std::string& h) {
    return h.rfind("wait_r", 0) == 0;
  }));
  const std::size_t expected = 14 + ratings + 5;
  if (header.size() != expected) throw ParseError(1, "unexpected report header");
  std::vector<QueryReport> reports;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != expected) throw ParseError(line_no, "wrong number of fields");
    try {
      QueryReport r;
      std::size_t i = 0;
      r.id = std::stoull(f[i++]);
      r.query.source = static_cast<Vertex>(std::stoul(f[i++]));
      r.query.target = static_cast<Vertex>(std::stoul(f[i++]));
      r.query.t_min = std::stoll(f[i++]);
      r.query.t_max = std::stoll(f[i++]);
      r.rank = std::stoi(f[i++]);
      r.ok = f[i++] == "ok";
      r.pareto_size = std::stoull(f[i++]);
      r.arrival_deviation = std::stoll(f[i++]);
      r.runtime_us = std::stoll(f[i++]);
      r.trivial = f[i++] == "1";
      r.precarious = f[i++] == "1";
      r.extra_stops = std::stoull(f[i++]);
      r.source_waiting = std::stoll(f[i++]);
      for (std::size_t k = 0; k < ratings; ++k) r.waiting_by_rating.push_back(std::stoll(f[i++]));
      r.pops = std::stoull(f[i++]);
      r.settled = std::stoull(f[i++]);
      r.relaxations = std::stoull(f[i++]);
      r.config = f[i++];
      r.error = f[i++];
      reports.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "malformed number");
    }
  }
  return reports;
}

void write_aggregate_table(std::ostream& out, const BenchAggregate& agg, int max_rating) {
  char buf[128];
  const auto row = [&](const char* label, const std::string& value) {
    std::snprintf(buf, sizeof buf, "%-28s %14s\n", label, value.c_str());
    out << buf;
  };
  const auto fixed = [](double v, int digits) {
    char b[64];
    std::snprintf(b, sizeof b, "%.*f", digits, v);
    return std::string(b);
  };
  row("queries", std::to_string(agg.queries));
  row("failures", std::to_string(agg.failures));
  row("avg runtime [ms]", fixed(agg.avg_runtime_ms, 3));
  row("median runtime [ms]", fixed(agg.median_runtime_ms, 3));
  row("avg optimal routes", fixed(agg.avg_pareto_size, 3));
  row("avg arrival deviation", fixed(agg.avg_arrival_deviation, 3));
  row("trivial share [%]", fixed(agg.trivial_share, 2));
  row("precarious queries", std::to_string(agg.precarious_queries));
  row("avg settled vertices", fixed(agg.avg_settled, 2));
  row("avg queue pops", fixed(agg.avg_pops, 2));
  out << "waiting time by rating [%]\n";
  std::string labels = "      s";
  std::string values;
  std::snprintf(buf, sizeof buf, "%7.1f", agg.waiting_shares.empty() ? 0.0 : agg.waiting_shares[0]);
  values += buf;
  for (int i = max_rating; i >= 0; --i) {
    std::snprintf(buf, sizeof buf, "%7d", i);
    labels += buf;
    const auto idx = static_cast<std::size_t>(max_rating - i) + 1;
    std::snprintf(buf, sizeof buf, "%7.1f", idx < agg.waiting_shares.size() ? agg.waiting_shares[idx] : 0.0);
    values += buf;
  }
  out << labels << '\n' << values << '\n';
}

std::string reports_to_json(const std::vector<QueryReport>& reports, const BenchAggregate& agg) {
  nlohmann::json j;
  auto& list = j["queries"] = nlohmann::json::array();
  for (const QueryReport& r : reports) {
    list.push_back({{"id", r.id},
                    {"source", r.query.source},
                    {"target", r.query.target},
                    {"t_min", r.query.t_min},
                    {"t_max", r.query.t_max},
                    {"rank", r.rank},
                    {"ok", r.ok},
                    {"error", r.error},
                    {"pareto_size", r.pareto_size},
                    {"arrival_deviation", r.arrival_deviation},
                    {"runtime_us", r.runtime_us},
                    {"trivial", r.trivial},
                    {"precarious", r.precarious},
                    {"extra_stops", r.extra_stops},
                    {"source_waiting", r.source_waiting},
                    {"waiting_by_rating", r.waiting_by_rating},
                    {"pops", r.pops},
                    {"settled", r.settled},
                    {"relaxations", r.relaxations},
                    {"config", r.config}});
  }
  j["aggregate"] = {{"queries", agg.queries},
                    {"failures", agg.failures},
                    {"avg_runtime_ms", agg.avg_runtime_ms},
                    {"median_runtime_ms", agg.median_runtime_ms},
                    {"avg_pareto_size", agg.avg_pareto_size},
                    {"avg_arrival_deviation", agg.avg_arrival_deviation},
                    {"trivial_share", agg.trivial_share},
                    {"precarious_queries", agg.precarious_queries},
                    {"avg_settled", agg.avg_settled},
                    {"avg_pops", agg.avg_pops},
                    {"waiting_shares", agg.waiting_shares}};
  return j.dump(2);
}

}  // namespace banroute
