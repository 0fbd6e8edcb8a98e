#include "gcdc/graph.hpp"

#include <stdexcept>

namespace gcdc {

Graph::Graph(std::size_t n) : rows_(n, DynamicBitset(n)) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("Graph::from_edges: node id out of range");
    g.add_edge(u, v);
  }
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

bool Graph::add_edge(NodeId u, NodeId v) {
  if (u == v || rows_[u].test(v)) return false;
  rows_[u].set(v);
  rows_[v].set(u);
  ++edges_;
  return true;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> d(rows_.size());
  for (std::size_t u = 0; u < rows_.size(); ++u) d[u] = rows_[u].count();
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (NodeId u = 0; u < rows_.size(); ++u)
    rows_[u].for_each_set([&](std::size_t v) {
      if (v > u) out.emplace_back(u, static_cast<NodeId>(v));
    });
  return out;
}

Graph Graph::permuted(std::span<const NodeId> order) const {
  const std::size_t n = rows_.size();
  if (order.size() != n) throw std::invalid_argument("Graph::permuted: order size mismatch");
  std::vector<NodeId> position(n, static_cast<NodeId>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != n) throw std::invalid_argument("Graph::permuted: not a permutation");
    position[order[i]] = static_cast<NodeId>(i);
  }
  Graph h(n);
  for (std::size_t i = 0; i < n; ++i)
    rows_[order[i]].for_each_set([&](std::size_t v) { h.rows_[i].set(position[v]); });
  h.edges_ = edges_;
  return h;
}

DegreeHistogram degree_histogram(const Graph& g) {
  DegreeHistogram h(g.node_count(), 0);
  for (std::size_t d : g.degrees()) ++h[d];
  return h;
}

double edge_probability(const Graph& g) {
  if (g.node_count() < 2) throw std::domain_error("edge_probability: fewer than two nodes");
  return static_cast<double>(g.edge_count()) / static_cast<double>(pair_count(g.node_count()));
}

}  // namespace gcdc
