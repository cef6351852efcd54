#include "banroute/contraction_hierarchy.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <queue>

#include "banroute/errors.hpp"
#include "banroute/indexed_heap.hpp"

namespace banroute {
namespace {

constexpr char kMagic[4] = {'B', 'R', 'C', 'H'};
constexpr std::uint32_t kVersion = 1;

struct DynArc {
  Vertex other;
  Time weight;
  Vertex via;
};

// Mutable graph during contraction; only arcs between uncontracted vertices.
class ContractionGraph {
 public:
  explicit ContractionGraph(const RoadInstance& instance)
      : out_(instance.vertex_count()), in_(instance.vertex_count()) {
    for (const Edge& e : instance.edges()) {
      if (e.tail != e.head) add_or_lower(e.tail, e.head, e.driving_time, kNoVertex);
    }
  }

  std::vector<DynArc>& out(Vertex v) { return out_[v]; }
  std::vector<DynArc>& in(Vertex v) { return in_[v]; }

  void add_or_lower(Vertex a, Vertex b, Time w, Vertex via) {
    auto& outs = out_[a];
    auto it = std::find_if(outs.begin(), outs.end(), [b](const DynArc& x) { return x.other == b; });
    if (it != outs.end()) {
      if (w >= it->weight) return;
      it->weight = w;
      it->via = via;
      auto& ins = in_[b];
      auto jt = std::find_if(ins.begin(), ins.end(), [a](const DynArc& x) { return x.other == a; });
      jt->weight = w;
      jt->via = via;
      return;
    }
    outs.push_back({b, w, via});
    in_[b].push_back({a, w, via});
  }

  void detach(Vertex v) {
    for (const DynArc& a : out_[v]) erase_from(in_[a.other], v);
    for (const DynArc& a : in_[v]) erase_from(out_[a.other], v);
  }

 private:
  static void erase_from(std::vector<DynArc>& arcs, Vertex v) {
    std::erase_if(arcs, [v](const DynArc& a) { return a.other == v; });
  }

  std::vector<std::vector<DynArc>> out_;
  std::vector<std::vector<DynArc>> in_;
};

class WitnessSearch {
 public:
  WitnessSearch(std::size_t n, std::size_t settle_limit)
      : dist_(n, kInfTime), heap_(n), settle_limit_(settle_limit) {}

  // Distances from `source` avoiding `skip`, exact up to `bound` unless the settle limit hits.
  void run(ContractionGraph& g, Vertex source, Vertex skip, Time bound) {
    for (Vertex v : touched_) dist_[v] = kInfTime;
    touched_.clear();
    heap_.clear();
    dist_[source] = 0;
    touched_.push_back(source);
    heap_.push(source, 0);
    std::size_t settled = 0;
    while (!heap_.empty()) {
      const Time d = heap_.top_key();
      if (d > bound || ++settled > settle_limit_) break;
      const Vertex u = heap_.pop();
      for (const DynArc& a : g.out(u)) {
        if (a.other == skip) continue;
        const Time nd = d + a.weight;
        if (nd < dist_[a.other]) {
          if (dist_[a.other] == kInfTime) touched_.push_back(a.other);
          dist_[a.other] = nd;
          heap_.push_or_decrease(a.other, nd);
        }
      }
    }
  }

  Time dist(Vertex v) const { return dist_[v]; }

 private:
  std::vector<Time> dist_;
  std::vector<Vertex> touched_;
  IndexedHeap<Time> heap_;
  std::size_t settle_limit_;
};

struct Shortcut {
  Vertex from;
  Vertex to;
  Time weight;
};

std::vector<Shortcut> needed_shortcuts(ContractionGraph& g, WitnessSearch& ws, Vertex v) {
  std::vector<Shortcut> result;
  Time max_out = 0;
  for (const DynArc& a : g.out(v)) max_out = std::max(max_out, a.weight);
  for (const DynArc& in : g.in(v)) {
    const Vertex u = in.other;
    ws.run(g, u, v, in.weight + max_out);
    for (const DynArc& out : g.out(v)) {
      const Vertex w = out.other;
      if (w == u) continue;
      const Time through = in.weight + out.weight;
      if (ws.dist(w) > through) result.push_back({u, w, through});
    }
  }
  return result;
}

template <class T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <class T>
void write_vec(std::ofstream& out, const std::vector<T>& values) {
  write_pod(out, static_cast<std::uint64_t>(values.size()));
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(T)));
}

template <class T>
T read_pod(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw InvalidInput("truncated hierarchy file");
  return value;
}

template <class T>
std::vector<T> read_vec(std::ifstream& in, std::uint64_t max_size) {
  const auto size = read_pod<std::uint64_t>(in);
  if (size > max_size) throw InvalidInput("corrupt hierarchy file");
  std::vector<T> values(size);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(size * sizeof(T)));
  if (!in) throw InvalidInput("truncated hierarchy file");
  return values;
}

}  // namespace

ContractionHierarchy ContractionHierarchy::build(const RoadInstance& instance, const ChBuildOptions& options) {
  const std::size_t n = instance.vertex_count();
  ContractionGraph g(instance);
  WitnessSearch ws(n, options.witness_settle_limit);
  std::vector<int> deleted_neighbors(n, 0);
  std::vector<bool> contracted(n, false);

  const auto priority = [&](Vertex v) {
    const auto shortcuts = needed_shortcuts(g, ws, v);
    const auto removed = static_cast<std::int64_t>(g.in(v).size() + g.out(v).size());
    return 2 * (static_cast<std::int64_t>(shortcuts.size()) - removed) + deleted_neighbors[v];
  };

  IndexedHeap<std::int64_t> order(n);
  for (Vertex v = 0; v < n; ++v) order.push(v, priority(v));

  std::vector<std::vector<ChArc>> up(n);
  std::vector<std::vector<ChArc>> down(n);
  ContractionHierarchy ch;
  ch.rank_.assign(n, 0);
  std::uint32_t next_rank = 0;
  while (!order.empty()) {
    const Vertex v = order.top();
    const std::int64_t fresh = priority(v);
    if (fresh > order.top_key()) {
      // lazy update: re-queue unless it would still come first
      order.pop();
      order.push(v, fresh);
      if (order.top() != v) continue;
    }
    order.pop();
    ch.rank_[v] = next_rank++;
    contracted[v] = true;

    const auto shortcuts = needed_shortcuts(g, ws, v);
    for (const DynArc& a : g.out(v)) up[v].push_back({a.other, a.weight, a.via});
    for (const DynArc& a : g.in(v)) down[v].push_back({a.other, a.weight, a.via});
    for (const DynArc& a : g.out(v)) ++deleted_neighbors[a.other];
    for (const DynArc& a : g.in(v)) ++deleted_neighbors[a.other];
    g.detach(v);
    for (const Shortcut& s : shortcuts) g.add_or_lower(s.from, s.to, s.weight, v);
  }

  for (Vertex v = 0; v < n; ++v) {
    ch.up_arcs_.insert(ch.up_arcs_.end(), up[v].begin(), up[v].end());
    ch.up_offsets_.push_back(ch.up_arcs_.size());
    ch.down_arcs_.insert(ch.down_arcs_.end(), down[v].begin(), down[v].end());
    ch.down_offsets_.push_back(ch.down_arcs_.size());
  }
  return ch;
}

std::size_t ContractionHierarchy::shortcut_count() const {
  const auto is_shortcut = [](const ChArc& a) { return a.via != kNoVertex; };
  return static_cast<std::size_t>(std::count_if(up_arcs_.begin(), up_arcs_.end(), is_shortcut) +
                                  std::count_if(down_arcs_.begin(), down_arcs_.end(), is_shortcut));
}

namespace {

struct UpSearch {
  std::vector<Time> dist;
  std::vector<Vertex> pred;
  std::vector<ChArc> pred_arc;
};

template <class Arcs>
UpSearch upward_search(std::size_t n, Vertex root, Arcs arcs) {
  UpSearch s{std::vector<Time>(n, kInfTime), std::vector<Vertex>(n, kNoVertex), std::vector<ChArc>(n)};
  IndexedHeap<Time> heap(n);
  s.dist[root] = 0;
  heap.push(root, 0);
  while (!heap.empty()) {
    const Time d = heap.top_key();
    const Vertex u = heap.pop();
    for (const ChArc& a : arcs(u)) {
      if (d + a.weight < s.dist[a.other]) {
        s.dist[a.other] = d + a.weight;
        s.pred[a.other] = u;
        s.pred_arc[a.other] = a;
        heap.push_or_decrease(a.other, d + a.weight);
      }
    }
  }
  return s;
}

}  // namespace

Time ContractionHierarchy::distance(Vertex s, Vertex t) const {
  const std::size_t n = vertex_count();
  if (s >= n || t >= n) throw InvalidInput("vertex outside hierarchy");
  const auto fwd = upward_search(n, s, [this](Vertex v) { return upward(v); });
  const auto bwd = upward_search(n, t, [this](Vertex v) { return downward_into(v); });
  Time best = kInfTime;
  for (Vertex v = 0; v < n; ++v) {
    if (fwd.dist[v] != kInfTime && bwd.dist[v] != kInfTime) best = std::min(best, fwd.dist[v] + bwd.dist[v]);
  }
  return best;
}

void ContractionHierarchy::unpack(Vertex from, Vertex to, Time weight, Vertex via,
                                  std::vector<Vertex>& out) const {
  if (via == kNoVertex) {
    out.push_back(to);
    return;
  }
  // Both halves hang off the contracted middle vertex, which ranks below both ends.
  const ChArc* first = nullptr;
  for (const ChArc& a : downward_into(via)) {
    if (a.other == from && (first == nullptr || a.weight < first->weight)) first = &a;
  }
  const ChArc* second = nullptr;
  for (const ChArc& a : upward(via)) {
    if (a.other == to && (second == nullptr || a.weight < second->weight)) second = &a;
  }
  if (first == nullptr || second == nullptr || first->weight + second->weight != weight) {
    throw InternalError("cannot unpack shortcut");
  }
  unpack(from, via, first->weight, first->via, out);
  unpack(via, to, second->weight, second->via, out);
}

std::vector<Vertex> ContractionHierarchy::path(Vertex s, Vertex t) const {
  const std::size_t n = vertex_count();
  if (s >= n || t >= n) throw InvalidInput("vertex outside hierarchy");
  const auto fwd = upward_search(n, s, [this](Vertex v) { return upward(v); });
  const auto bwd = upward_search(n, t, [this](Vertex v) { return downward_into(v); });
  Time best = kInfTime;
  Vertex meet = kNoVertex;
  for (Vertex v = 0; v < n; ++v) {
    if (fwd.dist[v] != kInfTime && bwd.dist[v] != kInfTime && fwd.dist[v] + bwd.dist[v] < best) {
      best = fwd.dist[v] + bwd.dist[v];
      meet = v;
    }
  }
  if (meet == kNoVertex) return {};

  std::vector<Vertex> up_chain;
  for (Vertex v = meet; v != s; v = fwd.pred[v]) up_chain.push_back(v);
  std::reverse(up_chain.begin(), up_chain.end());
  std::vector<Vertex> result{s};
  Vertex prev = s;
  for (Vertex v : up_chain) {
    const ChArc& a = fwd.pred_arc[v];
    unpack(prev, v, a.weight, a.via, result);
    prev = v;
  }
  for (Vertex v = meet; v != t; v = bwd.pred[v]) {
    const ChArc& a = bwd.pred_arc[v];  // arc v -> pred[v] in the original direction
    unpack(v, bwd.pred[v], a.weight, a.via, result);
  }
  return result;
}

void ContractionHierarchy::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out.write(kMagic, sizeof kMagic);
  write_pod(out, kVersion);
  write_vec(out, rank_);
  write_vec(out, up_offsets_);
  write_vec(out, up_arcs_);
  write_vec(out, down_offsets_);
  write_vec(out, down_arcs_);
  if (!out) throw InvalidInput("failed writing '" + path + "'");
}

ContractionHierarchy ContractionHierarchy::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  char magic[4];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw InvalidInput("not a hierarchy file");
  if (read_pod<std::uint32_t>(in) != kVersion) throw InvalidInput("unsupported hierarchy file version");
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;
  ContractionHierarchy ch;
  ch.rank_ = read_vec<std::uint32_t>(in, kLimit);
  ch.up_offsets_ = read_vec<std::size_t>(in, kLimit);
  ch.up_arcs_ = read_vec<ChArc>(in, kLimit);
  ch.down_offsets_ = read_vec<std::size_t>(in, kLimit);
  ch.down_arcs_ = read_vec<ChArc>(in, kLimit);
  const std::size_t n = ch.rank_.size();
  const auto offsets_ok = [n](const std::vector<std::size_t>& offs, std::size_t arcs) {
    return offs.size() == n + 1 && offs.front() == 0 && offs.back() == arcs &&
           std::is_sorted(offs.begin(), offs.end());
  };
  if (!offsets_ok(ch.up_offsets_, ch.up_arcs_.size()) || !offsets_ok(ch.down_offsets_, ch.down_arcs_.size())) {
    throw InvalidInput("corrupt hierarchy file");
  }
  for (const auto* arcs : {&ch.up_arcs_, &ch.down_arcs_}) {
    for (const ChArc& a : *arcs) {
      if (a.other >= n || (a.via != kNoVertex && a.via >= n)) throw InvalidInput("corrupt hierarchy file");
    }
  }
  return ch;
}

}  // namespace banroute
