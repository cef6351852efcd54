#include "banroute/potentials.hpp"

#include <algorithm>

#include "banroute/errors.hpp"
#include "banroute/indexed_heap.hpp"

namespace banroute {

std::vector<Time> backward_distances(const RoadInstance& instance, Vertex target) {
  if (!instance.is_vertex(target)) throw InvalidInput("unknown target vertex");
  std::vector<Time> dist(instance.vertex_count(), kInfTime);
  IndexedHeap<Time> heap(instance.vertex_count());
  dist[target] = 0;
  heap.push(target, 0);
  while (!heap.empty()) {
    const Time d = heap.top_key();
    const Vertex v = heap.pop();
    for (EdgeId e : instance.in_edges(v)) {
      const Edge& edge = instance.edge(e);
      const Time nd = d + edge.driving_time;
      if (nd < dist[edge.tail]) {
        dist[edge.tail] = nd;
        heap.push_or_decrease(edge.tail, nd);
      }
    }
  }
  return dist;
}

SettleOrder forward_dijkstra(const RoadInstance& instance, Vertex source) {
  if (!instance.is_vertex(source)) throw InvalidInput("unknown source vertex");
  SettleOrder result{std::vector<Time>(instance.vertex_count(), kInfTime), {}};
  auto& dist = result.distance;
  IndexedHeap<Time> heap(instance.vertex_count());
  dist[source] = 0;
  heap.push(source, 0);
  while (!heap.empty()) {
    const Time d = heap.top_key();
    const Vertex u = heap.pop();
    result.settled.push_back(u);
    for (EdgeId e : instance.out_edges(u)) {
      const Edge& edge = instance.edge(e);
      const Time nd = d + edge.driving_time;
      if (nd < dist[edge.head]) {
        dist[edge.head] = nd;
        heap.push_or_decrease(edge.head, nd);
      }
    }
  }
  return result;
}

PotentialMode parse_potential_mode(std::string_view name) {
  if (name == "zero") return PotentialMode::Zero;
  if (name == "dijkstra") return PotentialMode::BackwardDijkstra;
  if (name == "ch") return PotentialMode::ContractionHierarchy;
  throw InvalidInput("unknown potential mode '" + std::string(name) + "' (zero|dijkstra|ch)");
}

std::string_view to_string(PotentialMode mode) {
  switch (mode) {
    case PotentialMode::Zero:
      return "zero";
    case PotentialMode::BackwardDijkstra:
      return "dijkstra";
    case PotentialMode::ContractionHierarchy:
      return "ch";
  }
  return "?";
}

Potentials Potentials::zero(std::size_t vertex_count) {
  Potentials p;
  p.mode_ = PotentialMode::Zero;
  p.labels_.assign(vertex_count, 0);
  return p;
}

Potentials Potentials::backward_dijkstra(const RoadInstance& instance, Vertex target) {
  Potentials p;
  p.mode_ = PotentialMode::BackwardDijkstra;
  p.labels_ = backward_distances(instance, target);
  return p;
}

Potentials Potentials::from_hierarchy(const ContractionHierarchy& ch, Vertex target) {
  const std::size_t n = ch.vertex_count();
  if (target >= n) throw InvalidInput("unknown target vertex");
  Potentials p;
  p.mode_ = PotentialMode::ContractionHierarchy;
  p.ch_ = &ch;
  p.labels_.assign(n, kInfTime);
  p.done_.assign(n, false);
  p.down_dist_.assign(n, kInfTime);
  IndexedHeap<Time> heap(n);
  p.down_dist_[target] = 0;
  heap.push(target, 0);
  while (!heap.empty()) {
    const Time d = heap.top_key();
    const Vertex v = heap.pop();
    for (const ChArc& a : ch.downward_into(v)) {
      if (d + a.weight < p.down_dist_[a.other]) {
        p.down_dist_[a.other] = d + a.weight;
        heap.push_or_decrease(a.other, d + a.weight);
      }
    }
  }
  return p;
}

Time Potentials::operator()(Vertex u) const {
  if (mode_ == PotentialMode::ContractionHierarchy) return hierarchy_label(u);
  return labels_[u];
}

Time Potentials::hierarchy_label(Vertex u) const {
  if (done_[u]) return labels_[u];
  // pi(u) = min(down_dist(u), min over upward arcs of w + pi(head)); upward arcs
  // strictly raise the rank, so the recursion is well founded.
  std::vector<Vertex> stack{u};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    if (done_[v]) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (const ChArc& a : ch_->upward(v)) {
      if (!done_[a.other]) {
        stack.push_back(a.other);
        ready = false;
      }
    }
    if (!ready) continue;
    Time best = down_dist_[v];
    for (const ChArc& a : ch_->upward(v)) {
      if (labels_[a.other] != kInfTime) best = std::min(best, a.weight + labels_[a.other]);
    }
    labels_[v] = best;
    done_[v] = true;
    stack.pop_back();
  }
  return labels_[u];
}

}  // namespace banroute
