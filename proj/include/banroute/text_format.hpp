#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "banroute/instance.hpp"

namespace banroute {

// Line-oriented text formats. '#' starts a comment.
//
//   instance <n> <r>
//   costs <d> <c0> <c1> ... <cr>
//   rating <vertex> <rating>                 (default 0)
//   coord <vertex> <lat> <lon>               (optional, all-or-nothing for GeoJSON)
//   edge <tail> <head> <delta> [<t_closed> <t_open>]*
//   query <s> <z> <t_min> <t_max>
//
// An instance file may also carry query lines; the instance parser skips them
// and the query parser skips instance lines, so one file can serve as both.

RoadInstance parse_instance(std::istream& in);
RoadInstance load_instance(const std::string& path);
void write_instance(std::ostream& out, const RoadInstance& instance);

std::vector<Query> parse_queries(std::istream& in);
std::vector<Query> load_queries(const std::string& path);
/// Accepts "query s z t_min t_max" or just "s z t_min t_max".
Query parse_query_line(std::string_view line);
void write_query(std::ostream& out, const Query& query);

}  // namespace banroute
