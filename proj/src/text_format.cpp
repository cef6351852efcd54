#include "banroute/text_format.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "banroute/errors.hpp"

namespace banroute {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::int64_t to_int(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

double to_double(std::string_view token, std::size_t line_no) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

Vertex to_vertex(std::string_view token, std::size_t n, std::size_t line_no) {
  const std::int64_t v = to_int(token, line_no);
  if (v < 0 || static_cast<std::uint64_t>(v) >= n) {
    throw ParseError(line_no, "vertex " + std::string(token) + " outside 0.." + std::to_string(n - 1));
  }
  return static_cast<Vertex>(v);
}

bool is_instance_keyword(std::string_view kw) {
  return kw == "instance" || kw == "costs" || kw == "rating" || kw == "coord" || kw == "edge";
}

Query query_from_tokens(std::span<const std::string_view> t, std::size_t line_no) {
  if (t.size() != 4) throw ParseError(line_no, "query needs <s> <z> <t_min> <t_max>");
  const std::int64_t s = to_int(t[0], line_no);
  const std::int64_t z = to_int(t[1], line_no);
  if (s < 0 || z < 0) throw ParseError(line_no, "query vertices must be non-negative");
  Query q;
  q.source = static_cast<Vertex>(s);
  q.target = static_cast<Vertex>(z);
  q.t_min = to_int(t[2], line_no);
  q.t_max = to_int(t[3], line_no);
  if (q.t_min >= q.t_max) throw ParseError(line_no, "query needs t_min < t_max");
  return q;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

}  // namespace

RoadInstance parse_instance(std::istream& in) {
  std::size_t n = 0;
  int r = -1;
  bool have_header = false;
  bool have_costs = false;
  CostParams params;
  std::vector<int> ratings;
  std::vector<std::optional<Coord>> coords;
  std::vector<Edge> edges;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = tokenize(line);
    if (t.empty()) continue;
    const std::string_view kw = t[0];
    if (kw == "query") continue;
    if (!is_instance_keyword(kw)) throw ParseError(line_no, "unknown keyword '" + std::string(kw) + "'");
    if (kw == "instance") {
      if (have_header) throw ParseError(line_no, "duplicate instance line");
      if (t.size() != 3) throw ParseError(line_no, "expected 'instance <n> <r>'");
      const std::int64_t nv = to_int(t[1], line_no);
      const std::int64_t rv = to_int(t[2], line_no);
      if (nv < 1) throw ParseError(line_no, "n must be positive");
      if (rv < 0 || rv > nv) throw ParseError(line_no, "r must satisfy 0 <= r <= n");
      n = static_cast<std::size_t>(nv);
      r = static_cast<int>(rv);
      ratings.assign(n, 0);
      coords.assign(n, std::nullopt);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "'instance' line must come first");
    if (kw == "costs") {
      if (have_costs) throw ParseError(line_no, "duplicate costs line");
      if (t.size() != static_cast<std::size_t>(r) + 3) {
        throw ParseError(line_no, "expected 'costs <d> <c0> ... <c" + std::to_string(r) + ">'");
      }
      params.driving = to_int(t[1], line_no);
      params.waiting.clear();
      for (std::size_t i = 2; i < t.size(); ++i) params.waiting.push_back(to_int(t[i], line_no));
      have_costs = true;
    } else if (kw == "rating") {
      if (t.size() != 3) throw ParseError(line_no, "expected 'rating <vertex> <rating>'");
      const Vertex v = to_vertex(t[1], n, line_no);
      const std::int64_t rating = to_int(t[2], line_no);
      if (rating < 0 || rating > r) throw ParseError(line_no, "rating outside 0.." + std::to_string(r));
      ratings[v] = static_cast<int>(rating);
    } else if (kw == "coord") {
      if (t.size() != 4) throw ParseError(line_no, "expected 'coord <vertex> <lat> <lon>'");
      const Vertex v = to_vertex(t[1], n, line_no);
      coords[v] = Coord{to_double(t[2], line_no), to_double(t[3], line_no)};
    } else {  // edge
      if (t.size() < 4 || (t.size() - 4) % 2 != 0) {
        throw ParseError(line_no, "expected 'edge <tail> <head> <delta> [<t_closed> <t_open>]*'");
      }
      Edge edge;
      edge.tail = to_vertex(t[1], n, line_no);
      edge.head = to_vertex(t[2], n, line_no);
      edge.driving_time = to_int(t[3], line_no);
      if (edge.driving_time < 1) throw ParseError(line_no, "driving time must be >= 1");
      for (std::size_t i = 4; i < t.size(); i += 2) {
        BanInterval ban{to_int(t[i], line_no), to_int(t[i + 1], line_no)};
        if (ban.open <= ban.closed) throw ParseError(line_no, "ban interval needs t_closed < t_open");
        if (!edge.bans.empty() && ban.closed < edge.bans.back().open) {
          throw ParseError(line_no, "ban intervals must be sorted and disjoint");
        }
        edge.bans.push_back(ban);
      }
      edges.push_back(std::move(edge));
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'instance' line");
  if (!have_costs) throw ParseError(line_no, "missing 'costs' line");
  try {
    return RoadInstance(n, std::move(params), std::move(edges), std::move(ratings), std::move(coords));
  } catch (const InvalidInput& e) {
    throw ParseError(line_no, e.what());
  }
}

RoadInstance load_instance(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const RoadInstance& instance) {
  const CostParams& params = instance.params();
  out << "instance " << instance.vertex_count() << ' ' << instance.max_rating() << '\n';
  out << "costs " << params.driving;
  for (Cost c : params.waiting) out << ' ' << c;
  out << '\n';
  for (std::size_t v = 0; v < instance.vertex_count(); ++v) {
    if (instance.rating(static_cast<Vertex>(v)) != 0) {
      out << "rating " << v << ' ' << instance.rating(static_cast<Vertex>(v)) << '\n';
    }
  }
  char buf[96];
  for (std::size_t v = 0; v < instance.vertex_count(); ++v) {
    if (const auto& c = instance.coord(static_cast<Vertex>(v))) {
      std::snprintf(buf, sizeof buf, "coord %zu %.7f %.7f\n", v, c->lat, c->lon);
      out << buf;
    }
  }
  for (const Edge& edge : instance.edges()) {
    out << "edge " << edge.tail << ' ' << edge.head << ' ' << edge.driving_time;
    for (const BanInterval& ban : edge.bans) out << ' ' << ban.closed << ' ' << ban.open;
    out << '\n';
  }
}

std::vector<Query> parse_queries(std::istream& in) {
  std::vector<Query> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = tokenize(line);
    if (t.empty() || is_instance_keyword(t[0])) continue;
    if (t[0] != "query") throw ParseError(line_no, "unknown keyword '" + std::string(t[0]) + "'");
    queries.push_back(query_from_tokens(std::span(t).subspan(1), line_no));
  }
  return queries;
}

std::vector<Query> load_queries(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_queries(in);
}

Query parse_query_line(std::string_view line) {
  auto t = tokenize(line);
  std::span<const std::string_view> rest(t);
  if (!rest.empty() && rest[0] == "query") rest = rest.subspan(1);
  return query_from_tokens(rest, 1);
}

void write_query(std::ostream& out, const Query& query) {
  out << "query " << query.source << ' ' << query.target << ' ' << query.t_min << ' ' << query.t_max
      << '\n';
}

}  // namespace banroute
