#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gcdc/graph.hpp"

namespace gcdc {

enum class Family { ER, BA, NWS, MIX };

std::string_view family_name(Family f) noexcept;
Family parse_family(std::string_view name);

/// A seeded random-graph recipe. Unused parameters are ignored for a family.
struct GenSpec {
  Family family = Family::ER;
  std::size_t n = 0;
  double p = 0.0;       // ER edge probability, NWS shortcut probability, MIX extra-edge probability
  std::size_t m = 1;    // BA / MIX attachments per node
  std::size_t k = 2;    // NWS lattice degree
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument if the parameters are out of range.
  void validate() const;

  /// "family=BA n=100 m=10 seed=7"; parse accepts the keys in any order.
  std::string to_string() const;
  static GenSpec parse(std::string_view text);

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

Graph generate(const GenSpec& spec);

/// Each pair is an edge independently with probability p.
Graph gen_er(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment from m isolated seed nodes; node m joins all seeds,
/// each later node joins m distinct nodes drawn proportionally to degree.
/// Exactly m(n-m) edges.
Graph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed);

/// Newman-Watts small world: ring lattice of degree k plus, for every lattice
/// edge, a shortcut from its first endpoint to a uniform random node with
/// probability p. Odd k: even-numbered nodes take the extra clockwise
/// neighbor, so degrees are k and the lattice has ceil(nk/2) edges.
Graph gen_nws(std::size_t n, std::size_t k, double p, std::uint64_t seed);

/// Edge union of gen_ba(n, m, seed) and an ER(n, p_extra) layer drawn from a
/// derived seed; p_extra = 0 reproduces gen_ba(n, m, seed) exactly.
Graph gen_mixture(std::size_t n, std::size_t m, double p_extra, std::uint64_t seed);

/// Counter-based seed split: independent streams from (master, stream, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

/// Stable 64-bit hash of a label, for naming seed streams.
std::uint64_t stream_id(std::string_view label) noexcept;

}  // namespace gcdc
