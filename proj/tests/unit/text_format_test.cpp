#include <gtest/gtest.h>

#include <sstream>

#include "banroute/errors.hpp"
#include "banroute/generators.hpp"
#include "banroute/text_format.hpp"

namespace banroute {
namespace {

RoadInstance parse(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

void expect_same(const RoadInstance& a, const RoadInstance& b) {
  ASSERT_EQ(a.vertex_count(), b.vertex_count());
  EXPECT_EQ(a.params().driving, b.params().driving);
  EXPECT_EQ(a.params().waiting, b.params().waiting);
  ASSERT_EQ(a.edge_count(), b.edge_count());
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    EXPECT_EQ(a.edge(e).tail, b.edge(e).tail);
    EXPECT_EQ(a.edge(e).head, b.edge(e).head);
    EXPECT_EQ(a.edge(e).driving_time, b.edge(e).driving_time);
    EXPECT_EQ(a.edge(e).bans, b.edge(e).bans);
  }
  for (Vertex v = 0; v < a.vertex_count(); ++v) {
    EXPECT_EQ(a.rating(v), b.rating(v));
    ASSERT_EQ(a.coord(v).has_value(), b.coord(v).has_value());
    if (a.coord(v)) {
      EXPECT_NEAR(a.coord(v)->lat, b.coord(v)->lat, 1e-6);
      EXPECT_NEAR(a.coord(v)->lon, b.coord(v)->lon, 1e-6);
    }
  }
}

TEST(TextFormat, ParsesCommentsAndDefaults) {
  const RoadInstance inst = parse(
      "# tiny\n"
      "instance 3 1\n"
      "costs 4 4 1   # d c0 c1\n"
      "\n"
      "rating 2 1\n"
      "edge 0 1 3 4 6 8 9\n"
      "edge 1 2 1\n"
      "query 0 2 0 10\n");
  EXPECT_EQ(inst.vertex_count(), 3u);
  EXPECT_EQ(inst.params().waiting, (std::vector<Cost>{4, 1}));
  EXPECT_EQ(inst.rating(0), 0);
  EXPECT_EQ(inst.rating(2), 1);
  EXPECT_EQ(inst.edge(0).bans, (std::vector<BanInterval>{{4, 6}, {8, 9}}));
  EXPECT_TRUE(inst.edge(1).bans.empty());
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("costs 1 1\n"), 1u);
  EXPECT_EQ(error_line("instance 2 0\ncosts 1 1\nedge 0 5 1\n"), 3u);
  EXPECT_EQ(error_line("instance 2 0\ncosts 1 1\n\nedge 0 1 0\n"), 4u);
  EXPECT_EQ(error_line("instance 2 0\ncosts 1 1\nedge 0 1 1 5 3\n"), 3u);
  EXPECT_EQ(error_line("instance 2 0\ncosts 1 1\nedge 0 1 1 3 6 5 7\n"), 3u);
  EXPECT_EQ(error_line("instance 2 0\ncosts 1 1\nedge 0 1 1 3\n"), 3u);
  EXPECT_EQ(error_line("instance 2 0\ncosts 1 1 1\n"), 2u);
  EXPECT_EQ(error_line("instance 2 1\ncosts 1 1 2\n"), 2u);
  EXPECT_EQ(error_line("instance 2 1\ncosts 1 2 1\nrating 1 2\n"), 3u);
  EXPECT_EQ(error_line("instance 2 0\nbogus 1\n"), 2u);
  EXPECT_EQ(error_line("instance x 0\n"), 1u);
  EXPECT_EQ(error_line("instance 2 0\ninstance 2 0\n"), 2u);
  EXPECT_EQ(error_line("instance 2 0\n"), 1u);
  EXPECT_EQ(error_line("instance 2 0\ncosts 1 1\ncoord 0 48.1\n"), 3u);
}

TEST(TextFormat, RoundTripsGeneratedInstances) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomInstanceParams p;
    p.seed = seed;
    p.topology = seed % 2 ? Topology::Random : Topology::Grid;
    p.vertices = 25;
    p.edges = 60;
    p.ban_density = 0.5;
    const RoadInstance inst = gen_random_instance(p);
    std::ostringstream out;
    write_instance(out, inst);
    const RoadInstance back = parse(out.str());
    expect_same(inst, back);
    std::ostringstream again;
    write_instance(again, back);
    EXPECT_EQ(out.str(), again.str());
  }
}

TEST(TextFormat, Queries) {
  std::istringstream in("instance 3 0\ncosts 1 1\nedge 0 1 1\nquery 0 2 0 10\n# x\nquery 2 1 5 9\n");
  const auto qs = parse_queries(in);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[1].source, 2u);
  EXPECT_EQ(qs[1].target, 1u);
  EXPECT_EQ(qs[1].t_min, 5);
  EXPECT_EQ(qs[1].t_max, 9);

  const Query q = parse_query_line("3 4 0 100");
  EXPECT_EQ(q.source, 3u);
  EXPECT_EQ(q.t_max, 100);
  EXPECT_EQ(parse_query_line("query 1 2 3 4").t_min, 3);
  EXPECT_THROW(parse_query_line("1 2 3"), ParseError);
  EXPECT_THROW(parse_query_line("1 2 5 5"), ParseError);
  EXPECT_THROW(parse_query_line("-1 2 0 5"), ParseError);

  std::istringstream bad("query 0 1 0 5\nnonsense\n");
  try {
    parse_queries(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }

  std::ostringstream out;
  write_query(out, Query{1, 2, 3, 40});
  EXPECT_EQ(out.str(), "query 1 2 3 40\n");
}

TEST(TextFormat, MissingFile) {
  EXPECT_THROW(load_instance("/nonexistent/instance.txt"), InvalidInput);
  EXPECT_THROW(load_queries("/nonexistent/queries.txt"), InvalidInput);
}

}  // namespace
}  // namespace banroute
