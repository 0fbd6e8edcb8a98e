#pragma once

#include <cstdint>
#include <optional>

namespace gcdc {

/// Krichevsky-Trofimov add-half estimator for a binary memoryless source.
struct KtCounter {
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;

  /// Probability that the next symbol is a one: (ones + 1/2) / (ones + zeros + 1).
  double predict() const noexcept;
  void update(std::uint64_t new_ones, std::uint64_t new_zeros) noexcept {
    ones += new_ones;
    zeros += new_zeros;
  }
};

double kt_predict(const KtCounter& counter) noexcept;

/// log2 C(n, k). Throws std::domain_error when k > n.
double log2_binomial(std::uint64_t n, std::uint64_t k);

/// log2 n!
double log2_factorial(std::uint64_t n);

/// -log2 [ C(s, m) p^m (1-p)^(s-m) ], the cost of announcing m ones among s
/// iid Bernoulli(p) slots.
///
/// p outside [0, 1] or m > s is a domain error. p in {0, 1} is allowed when the
/// outcome is certain; a contradicting outcome throws InfiniteCodelength.
double binomial_codelength(std::uint64_t s, std::uint64_t m, double p);

/// log2(range); cost of a uniformly coded integer in [0, range).
double uniform_integer_codelength(std::uint64_t range);

/// Two views of the same coded object: the model's real-valued codelength and,
/// when a bitstream was actually produced, its exact length.
struct CodeLength {
  double ideal_bits = 0.0;
  std::optional<std::uint64_t> actual_bits;
};

}  // namespace gcdc
