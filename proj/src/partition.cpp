#include "gcdc/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gcdc {

GroupPartition::GroupPartition(std::size_t n) : nodes_(n) {
  std::iota(nodes_.begin(), nodes_.end(), NodeId{0});
  if (n) starts_.push_back(0);
}

GroupPartition::GroupPartition(std::vector<std::vector<NodeId>> groups) {
  for (auto& g : groups) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end());
    starts_.push_back(nodes_.size());
    nodes_.insert(nodes_.end(), g.begin(), g.end());
  }
}

std::span<const NodeId> GroupPartition::group(std::size_t i) const noexcept {
  const std::size_t begin = starts_[i];
  const std::size_t end = i + 1 < starts_.size() ? starts_[i + 1] : nodes_.size();
  return {nodes_.data() + begin, end - begin};
}

NodeId GroupPartition::select_next() {
  if (empty()) throw std::logic_error("select_next on empty partition");
  // head_ is always the start of the first group.
  const NodeId v = nodes_[head_++];
  if (starts_.size() > 1 && starts_[1] == head_)
    starts_.erase(starts_.begin());
  else if (starts_.size() == 1 && head_ == nodes_.size())
    starts_.clear();
  else
    starts_[0] = head_;
  return v;
}

void GroupPartition::refine(const DynamicBitset& adjacency) {
  std::vector<std::size_t> next;
  next.reserve(starts_.size() * 2);
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    const std::size_t begin = starts_[i];
    const std::size_t end = i + 1 < starts_.size() ? starts_[i + 1] : nodes_.size();
    scratch_.clear();
    std::size_t out = begin;
    for (std::size_t j = begin; j < end; ++j) {
      const NodeId v = nodes_[j];
      if (adjacency.test(v))
        nodes_[out++] = v;
      else
        scratch_.push_back(v);
    }
    std::copy(scratch_.begin(), scratch_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(out));
    if (out > begin) next.push_back(begin);
    if (out < end) next.push_back(out);
  }
  starts_ = std::move(next);
}

std::vector<NodeId> visitation_order(const Graph& g) {
  GroupPartition part(g.node_count());
  while (!part.empty()) {
    const NodeId v = part.select_next();
    part.refine(g.neighbors(v));
  }
  auto visited = part.visited();
  return {visited.begin(), visited.end()};
}

}  // namespace gcdc
