#pragma once

#include <cstddef>
#include <vector>

#include "gcdc/graph.hpp"

namespace gcdc {

/// A relabeling rank[v] in 0..n-1 that depends only on the isomorphism class
/// of the graph (when exact): isomorphic inputs relabeled by their ranks yield
/// the same labeled graph.
struct CanonicalLabeling {
  std::vector<NodeId> rank;
  /// False when the search hit its leaf budget and returned the best leaf seen.
  bool exact = true;
};

/// Color refinement with individualization search; twin nodes are explored
/// once. leaf_budget == 0 picks a budget from the graph size.
CanonicalLabeling canonical_labeling(const Graph& g, std::size_t leaf_budget = 0);

/// g relabeled so that node rank[v] of the result is node v of g.
Graph canonical_relabel(const Graph& g, const CanonicalLabeling& labeling);

/// Order in which the partition engine visits the nodes of g (ids of g).
/// The engine runs on the canonical relabeling, so the sorted matrix below is
/// an isomorphism invariant whenever the labeling is exact.
std::vector<NodeId> canonical_order(const Graph& g);

/// g permuted into the engine's visitation order.
Graph sorted_matrix(const Graph& g);

}  // namespace gcdc
