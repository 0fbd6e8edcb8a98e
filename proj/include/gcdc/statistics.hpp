#pragma once

#include <cstdint>
#include <vector>

namespace gcdc {

/// Degree distribution stored as integer counts plus an additive smoothing
/// constant: weight(k) = counts[k] + alpha for k < support(), alpha beyond.
/// Probabilities over the support are weight / total_weight(); degrees past
/// the support keep the smoothed tail weight alpha so they stay codable when
/// alpha > 0.
class DegreeModel {
 public:
  DegreeModel() = default;
  DegreeModel(std::vector<std::uint64_t> counts, double alpha);

  std::size_t support() const noexcept { return counts_.size(); }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  double alpha() const noexcept { return alpha_; }

  double weight(std::uint64_t k) const noexcept;
  /// Sum of weight(k) for k in [lo, hi].
  double range_weight(std::uint64_t lo, std::uint64_t hi) const noexcept;
  double total_weight() const noexcept { return support() ? range_weight(0, support() - 1) : 0.0; }
  double probability(std::uint64_t k) const noexcept;

  friend bool operator==(const DegreeModel&, const DegreeModel&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> prefix_;  // prefix_[k] = sum of counts_[0..k)
  double alpha_ = 0.0;
};

/// One-counts and slot counts for groups coded with and without a triangle
/// context, accumulated by running the triangle coder's traversal.
struct TriangleStats {
  std::uint64_t context_ones = 0;
  std::uint64_t context_slots = 0;
  std::uint64_t plain_ones = 0;
  std::uint64_t plain_slots = 0;

  TriangleStats& operator+=(const TriangleStats& o) noexcept {
    context_ones += o.context_ones;
    context_slots += o.context_slots;
    plain_ones += o.plain_ones;
    plain_slots += o.plain_slots;
    return *this;
  }
  friend bool operator==(const TriangleStats&, const TriangleStats&) = default;
};

/// Edge probabilities for groups with (p_tri) and without (p_check) a common
/// coded neighbor.
struct TriangleParams {
  double p_tri = 0.5;
  double p_check = 0.5;

  /// Half-count smoothing: (ones + 1/2) / (slots + 1) for each context.
  static TriangleParams from_stats(const TriangleStats& s) noexcept;
};

/// (ones + 1/2) / (trials + 1)
double half_count_estimate(std::uint64_t ones, std::uint64_t trials) noexcept;

}  // namespace gcdc
