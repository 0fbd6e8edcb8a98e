#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>

#include "gcdc/coders.hpp"
#include "gcdc/graph.hpp"
#include "gcdc/statistics.hpp"

namespace gcdc {

inline constexpr double kDefaultAlpha = 0.5;

/// Integer sufficient statistics of a training set. Every learned probability
/// is recomputed from these, so a model file reloads bit-exactly.
struct TrainingStats {
  std::uint64_t graphs = 0;
  std::uint64_t edges = 0;
  std::uint64_t pairs = 0;
  std::uint64_t nodes = 0;
  DegreeHistogram degree_counts;  // pooled; size = largest training n
  TriangleStats triangle;
  double alpha = kDefaultAlpha;

  friend bool operator==(const TrainingStats&, const TrainingStats&) = default;
};

TrainingStats collect_training_stats(std::span<const Graph> graphs, double alpha = kDefaultAlpha);
TrainingStats collect_training_stats(std::span<const CanonicalGraph> graphs, double alpha = kDefaultAlpha);
LearnedParams learned_params(const TrainingStats& stats);

/// Total edges over total pairs with half-count smoothing. Throws
/// std::invalid_argument on an empty set or a graph with n < 2.
double learn_edge_probability(std::span<const Graph> graphs);

/// Pooled histogram over degrees 0..n_max-1 with additive smoothing alpha.
DegreeModel learn_degree_distribution(std::span<const Graph> graphs, double alpha = kDefaultAlpha);

/// Context / no-context one rates from the triangle coder's own traversal.
TriangleParams learn_triangle_params(std::span<const Graph> graphs);

/// log2 C(2n-1, n): n unlabeled nodes into n degree buckets.
double histogram_header_bits(std::uint64_t n);

/// Parameter overhead a universal coder pays on an n-node graph.
double universal_overhead(CoderId coder, std::uint64_t n);

struct TypicalModel {
  CoderId coder = CoderId::StructIid;
  TrainingStats stats;
  LearnedParams params;                      // derived from stats
  std::array<double, 4> training_bits{};     // total learned-mode bits per coder

  friend bool operator==(const TypicalModel& a, const TypicalModel& b) {
    return a.coder == b.coder && a.stats == b.stats;
  }
};

/// Text model file, versioned:
///   gcdc-model 1
///   coder <name>
///   graphs <G> nodes <N> edges <E> pairs <T>
///   alpha <a>
///   degree_counts <size> c0 c1 ...
///   triangle <context_ones> <context_slots> <plain_ones> <plain_slots>
///   training_bits <b0> <b1> <b2> <b3>
void write_model(std::ostream& out, const TypicalModel& model);
TypicalModel read_model(std::istream& in);

}  // namespace gcdc
