#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcdc/bitset.hpp"
#include "gcdc/graph.hpp"

namespace gcdc {

/// Ordered partition of the not-yet-coded nodes into groups whose members have
/// identical adjacency to every coded node. Groups are ordered by that shared
/// pattern read lexicographically with 1 before 0, and each group keeps its
/// members in increasing id order.
///
/// Storage is a single array: the consumed prefix is the visitation order and
/// groups are consecutive ranges of the remainder.
class GroupPartition {
 public:
  GroupPartition() = default;
  /// One group holding 0..n-1.
  explicit GroupPartition(std::size_t n);
  /// Explicit groups (members sorted on construction, empty groups dropped).
  explicit GroupPartition(std::vector<std::vector<NodeId>> groups);

  bool empty() const noexcept { return head_ == nodes_.size(); }
  std::size_t remaining() const noexcept { return nodes_.size() - head_; }
  std::size_t group_count() const noexcept { return starts_.size(); }
  std::span<const NodeId> group(std::size_t i) const noexcept;

  /// Removes and returns the lowest id of the first group.
  /// Throws std::logic_error on an empty partition.
  NodeId select_next();

  /// Splits every group into members adjacent to the new node (first) and the
  /// rest, dropping empty parts.
  void refine(const DynamicBitset& adjacency);

  /// Nodes removed so far, in removal order.
  std::span<const NodeId> visited() const noexcept { return {nodes_.data(), head_}; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> starts_;  // group i = [starts_[i], starts_[i+1] or end)
  std::size_t head_ = 0;
  std::vector<NodeId> scratch_;
};

/// Runs select_next/refine over g with no coding; the visit order in g's ids.
std::vector<NodeId> visitation_order(const Graph& g);

}  // namespace gcdc
