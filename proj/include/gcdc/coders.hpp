#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gcdc/arithmetic_coder.hpp"
#include "gcdc/entropy.hpp"
#include "gcdc/graph.hpp"
#include "gcdc/statistics.hpp"

namespace gcdc {

enum class CoderId : std::uint8_t { LabeledIid = 0, StructIid = 1, StructDegree = 2, StructTriangle = 3 };
inline constexpr std::array<CoderId, 4> kAllCoders = {CoderId::LabeledIid, CoderId::StructIid,
                                                      CoderId::StructDegree, CoderId::StructTriangle};
inline constexpr std::array<CoderId, 3> kStructureCoders = {CoderId::StructIid, CoderId::StructDegree,
                                                            CoderId::StructTriangle};

/// labeled-iid | struct-iid | degree | triangle
std::string_view coder_name(CoderId id) noexcept;
CoderId parse_coder(std::string_view name);

/// Learned: parameters are shared out of band (the model file).
/// Universal: parameters are transmitted in the stream or estimated sequentially.
enum class CodingMode : std::uint8_t { Learned = 0, Universal = 1 };
std::string_view mode_name(CodingMode mode) noexcept;
CodingMode parse_mode(std::string_view name);

struct LearnedParams {
  double edge_probability = 0.5;
  DegreeModel degree;
  TriangleParams triangle;
};

/// Per visited node, the number of edges to already coded nodes (k-bar).
struct CodingTrace {
  std::vector<std::uint32_t> prefix_ones;
};

/// A graph relabeled canonically; structure coders run on it directly, so
/// batch callers canonicalize once and code many times.
class CanonicalGraph {
 public:
  explicit CanonicalGraph(const Graph& g);
  const Graph& graph() const noexcept { return graph_; }

 private:
  Graph graph_;
};

// ---------------------------------------------------------------------------
// Building blocks

/// Degree distribution restricted to feasible degrees: P(k | k >= kbar) over
/// k in [kbar, kbar + slots], renormalized. Uniform if the model puts no
/// weight on that range. Element i is the probability of degree kbar + i.
std::vector<double> degree_conditional(const DegreeModel& model, std::uint64_t kbar, std::uint64_t slots);

/// Bits to say which of the C(sum s, sum k) placements of the new ones was
/// seen, given the per-group counts are announced: log C(s, k) - sum log C(s_i, k_i).
/// Throws std::invalid_argument on size mismatch or k_i > s_i.
double configuration_codelength(std::span<const std::uint64_t> group_sizes,
                                std::span<const std::uint64_t> counts);

/// True iff some coded node is adjacent to both `current` and `member`.
/// All members of a group give the same answer.
bool triangle_context(const Graph& g, const DynamicBitset& coded, NodeId current, NodeId member);

/// p-hat = E/T clamped to [1/(2T), 1 - 1/(2T)], T = n(n-1)/2.
double universal_edge_probability(std::uint64_t n, std::uint64_t edges);

// ---------------------------------------------------------------------------
// Ideal codelengths of the body (no parameter header)

double labeled_iid_bits(const Graph& g, double p);
double structure_iid_bits(const CanonicalGraph& g, double p);
double structure_degree_bits(const CanonicalGraph& g, const DegreeModel& model);
double structure_triangle_bits(const CanonicalGraph& g, const TriangleParams& params);
double structure_triangle_adaptive_bits(const CanonicalGraph& g);

/// Ideal body bits of `coder` in `mode`. Learned mode requires params.
double ideal_codelength(const Graph& g, CoderId coder, CodingMode mode, const LearnedParams* params = nullptr);
double ideal_codelength(const CanonicalGraph& g, CoderId coder, CodingMode mode,
                        const LearnedParams* params = nullptr);

/// Triangle-coder traversal statistics of one graph.
TriangleStats triangle_statistics(const CanonicalGraph& g);

// ---------------------------------------------------------------------------
// Bitstreams

struct EncodedGraph {
  CoderId coder = CoderId::LabeledIid;
  CodingMode mode = CodingMode::Universal;
  std::uint64_t node_count = 0;
  double ideal_bits = 0.0;   // body
  double header_bits = 0.0;  // ideal size of transmitted parameters (universal mode)
  Bitstream stream;

  CodeLength length() const { return {ideal_bits + header_bits, stream.size()}; }
};

EncodedGraph encode(const Graph& g, CoderId coder, CodingMode mode, const LearnedParams* params = nullptr,
                    CodingTrace* trace = nullptr);

/// Structure coders return the graph in visitation order (isomorphic to the
/// input, equal to sorted_matrix of it); labeled iid returns it exactly.
/// Throws DecodeError on a corrupt or truncated stream.
Graph decode(const Bitstream& stream, std::uint64_t n, CoderId coder, CodingMode mode,
             const LearnedParams* params = nullptr, CodingTrace* trace = nullptr);

}  // namespace gcdc
