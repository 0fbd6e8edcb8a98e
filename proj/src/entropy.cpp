#include "gcdc/entropy.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gcdc/errors.hpp"

namespace gcdc {
namespace {

constexpr std::uint64_t kTableSize = std::uint64_t{1} << 16;
constexpr std::uint64_t kDirectProductLimit = 32;

// log2 n! for n < kTableSize, each entry from lgammal so errors do not accumulate.
const std::vector<long double>& log2_factorial_table() {
  static std::vector<long double> table;
  static std::once_flag once;
  std::call_once(once, [] {
    table.resize(kTableSize);
    for (std::uint64_t i = 0; i < kTableSize; ++i)
      table[i] = std::lgammal(static_cast<long double>(i) + 1.0L) / std::numbers::ln2_v<long double>;
    table[0] = table[1] = 0.0L;
  });
  return table;
}

long double log2_factorial_ld(std::uint64_t n) {
  if (n < kTableSize) return log2_factorial_table()[n];
  return std::lgammal(static_cast<long double>(n) + 1.0L) / std::numbers::ln2_v<long double>;
}

}  // namespace

double KtCounter::predict() const noexcept {
  return (static_cast<double>(ones) + 0.5) / (static_cast<double>(ones) + static_cast<double>(zeros) + 1.0);
}

double kt_predict(const KtCounter& counter) noexcept { return counter.predict(); }

double log2_factorial(std::uint64_t n) { return static_cast<double>(log2_factorial_ld(n)); }

double log2_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::domain_error("log2_binomial: k > n");
  const std::uint64_t j = std::min(k, n - k);
  if (j == 0) return 0.0;
  if (j <= kDirectProductLimit) {
    // Small k: the factorial difference would cancel catastrophically for large n.
    long double acc = 0.0L;
    for (std::uint64_t i = 0; i < j; ++i)
      acc += std::log2l(static_cast<long double>(n - i)) - std::log2l(static_cast<long double>(i + 1));
    return static_cast<double>(acc);
  }
  return static_cast<double>(log2_factorial_ld(n) - log2_factorial_ld(j) - log2_factorial_ld(n - j));
}

double binomial_codelength(std::uint64_t s, std::uint64_t m, double p) {
  if (m > s) throw std::domain_error("binomial_codelength: m > s");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial_codelength: p outside [0,1]");
  if (p == 0.0 || p == 1.0) {
    const bool certain = (p == 0.0) ? (m == 0) : (m == s);
    if (!certain) throw InfiniteCodelength("binomial_codelength: outcome has probability zero");
    return 0.0;
  }
  const double ones = static_cast<double>(m);
  const double zeros = static_cast<double>(s - m);
  return -log2_binomial(s, m) - ones * std::log2(p) - zeros * std::log1p(-p) / std::numbers::ln2;
}

double uniform_integer_codelength(std::uint64_t range) {
  if (range == 0) throw std::domain_error("uniform_integer_codelength: empty range");
  return std::log2(static_cast<double>(range));
}

}  // namespace gcdc
