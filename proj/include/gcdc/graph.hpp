#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gcdc/bitset.hpp"

namespace gcdc {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected graph on nodes 0..n-1 stored as packed adjacency rows.
/// Symmetric with an all-zero diagonal after every operation.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  /// Duplicate and reversed edges collapse; self-loops are ignored.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  static Graph complete(std::size_t n);

  std::size_t node_count() const noexcept { return rows_.size(); }
  std::uint64_t edge_count() const noexcept { return edges_; }

  /// Returns false if the edge already existed or is a self-loop.
  bool add_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const noexcept { return rows_[u].test(v); }
  std::size_t degree(NodeId u) const noexcept { return rows_[u].count(); }
  const DynamicBitset& neighbors(NodeId u) const noexcept { return rows_[u]; }

  std::vector<std::size_t> degrees() const;
  std::vector<Edge> edges() const;

  /// Graph whose node i is node order[i] of this graph.
  Graph permuted(std::span<const NodeId> order) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<DynamicBitset> rows_;
  std::uint64_t edges_ = 0;
};

/// counts[d] = number of nodes of degree d, for d in 0..n-1.
using DegreeHistogram = std::vector<std::uint64_t>;

DegreeHistogram degree_histogram(const Graph& g);

/// |E| / (n(n-1)/2). Throws std::domain_error for n < 2.
double edge_probability(const Graph& g);

/// n(n-1)/2
constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace gcdc
