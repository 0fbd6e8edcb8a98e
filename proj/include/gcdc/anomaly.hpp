#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcdc/coders.hpp"
#include "gcdc/graph.hpp"
#include "gcdc/model.hpp"

namespace gcdc {

/// Cost of naming one of the four coders.
inline constexpr double kCoderIdBits = 2.0;

struct AtypicalityScore {
  double typical_bits = 0.0;   // L_T
  double atypical_bits = 0.0;  // L_A
  CoderId winner = CoderId::LabeledIid;
  double score = 0.0;  // L_A - L_T
};

/// Learns every coder's parameters, then keeps the coder with the smallest
/// total learned-mode codelength over the training set (ties: enum order).
TypicalModel train_typical(std::span<const Graph> graphs, double alpha = kDefaultAlpha);

/// Learned-mode codelength of the typical coder; parameters are free.
double typical_codelength(const TypicalModel& model, const Graph& g);
double typical_codelength(const TypicalModel& model, const CanonicalGraph& g);

struct AtypicalCodelength {
  double bits = 0.0;
  CoderId winner = CoderId::LabeledIid;
};

/// min over coders of (universal ideal bits + parameter overhead), plus the
/// coder-id bits. Requires n >= 2.
AtypicalCodelength atypical_codelength(const Graph& g);
AtypicalCodelength atypical_codelength(const CanonicalGraph& g);

AtypicalityScore score_graph(const TypicalModel& model, const Graph& g);

/// Scores each graph; uses up to `threads` workers (0: hardware concurrency).
/// Output order matches input order regardless of scheduling.
std::vector<AtypicalityScore> score_batch(const TypicalModel& model, std::span<const Graph> graphs,
                                          unsigned threads = 0);

/// Atypical iff score < tau.
inline bool detect(double score, double tau) noexcept { return score < tau; }
inline bool detect(const AtypicalityScore& s, double tau) noexcept { return detect(s.score, tau); }

struct SweepPoint {
  double tau = 0.0;
  double false_alarm = 0.0;  // typical graphs flagged
  double miss = 0.0;         // test graphs not flagged
};

struct DetectionResult {
  std::vector<SweepPoint> sweep;  // increasing tau
  double equal_error_rate = 0.0;
  double eer_tau = 0.0;
  double false_alarm_rate = 0.0;  // at eer_tau
  double miss_rate = 0.0;         // at eer_tau
};

/// Empirical false-alarm / miss curves over thresholds. With no explicit
/// thresholds every distinct score (and +inf) is a candidate. The EER is the
/// mean of the two rates where their difference is smallest.
DetectionResult evaluate(std::span<const double> typical_scores, std::span<const double> test_scores,
                         std::span<const double> taus = {});

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t typical = 0;
  std::size_t test = 0;
};

/// Equal-width bins over the joint range, for density plots.
std::vector<HistogramBin> score_histogram(std::span<const double> typical_scores, std::span<const double> test_scores,
                                          std::size_t bins);

}  // namespace gcdc
