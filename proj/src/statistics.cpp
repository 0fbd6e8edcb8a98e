#include "gcdc/statistics.hpp"

namespace gcdc {

DegreeModel::DegreeModel(std::vector<std::uint64_t> counts, double alpha)
    : counts_(std::move(counts)), prefix_(counts_.size() + 1, 0), alpha_(alpha) {
  for (std::size_t k = 0; k < counts_.size(); ++k) prefix_[k + 1] = prefix_[k] + counts_[k];
}

double DegreeModel::weight(std::uint64_t k) const noexcept {
  return k < counts_.size() ? static_cast<double>(counts_[k]) + alpha_ : alpha_;
}

double DegreeModel::range_weight(std::uint64_t lo, std::uint64_t hi) const noexcept {
  if (hi < lo) return 0.0;
  const std::uint64_t s = counts_.size();
  const std::uint64_t a = std::min(lo, s), b = std::min(hi + 1, s);
  const double counted = static_cast<double>(prefix_[b] - prefix_[a]);
  return counted + alpha_ * static_cast<double>(hi - lo + 1);
}

double DegreeModel::probability(std::uint64_t k) const noexcept {
  const double total = total_weight();
  return total > 0 ? weight(k) / total : 0.0;
}

double half_count_estimate(std::uint64_t ones, std::uint64_t trials) noexcept {
  return (static_cast<double>(ones) + 0.5) / (static_cast<double>(trials) + 1.0);
}

TriangleParams TriangleParams::from_stats(const TriangleStats& s) noexcept {
  return {half_count_estimate(s.context_ones, s.context_slots), half_count_estimate(s.plain_ones, s.plain_slots)};
}

}  // namespace gcdc
