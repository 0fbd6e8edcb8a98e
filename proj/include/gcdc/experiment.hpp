#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcdc/anomaly.hpp"
#include "gcdc/generators.hpp"
#include "gcdc/model.hpp"

namespace gcdc {

/// A labeled batch of random graphs. The seed in `spec` is ignored: graph i
/// gets derive_seed(master, stream_id(label), i).
struct BatchSpec {
  std::string label;
  GenSpec spec;
  std::size_t count = 0;
};

std::vector<Graph> generate_batch(const BatchSpec& batch, std::uint64_t master_seed, unsigned threads = 0);

/// Plain-text config, one `key = value` per line, '#' comments:
///
///   gcdc-experiment 1
///   seed = 1
///   alpha = 0.5
///   train = family=BA n=100 m=10 count=100
///   test.BA10 = family=BA n=100 m=10 count=500
///   test.ER = family=ER n=100 p=0.182 count=500
///   reference = BA10
///   tau = -50 0 50          (optional; default: every observed score)
///   histogram_bins = 40
///   out = results
///
/// `reference` names the test batch drawn from the typical family; every
/// other batch is evaluated against it.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  double alpha = kDefaultAlpha;
  BatchSpec train;
  std::vector<BatchSpec> tests;
  std::string reference;
  std::vector<double> taus;
  std::size_t histogram_bins = 40;
  std::filesystem::path out_dir = "results";
  unsigned threads = 0;

  /// Throws ParseError (with line) on syntax errors and std::invalid_argument
  /// on inconsistent settings.
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig load(const std::filesystem::path& path);
  void validate() const;
};

struct BatchScores {
  BatchSpec batch;
  std::vector<AtypicalityScore> scores;
  std::vector<double> values() const;
};

struct Comparison {
  std::string label;  // the non-reference batch
  DetectionResult detection;
  std::vector<HistogramBin> histogram;
};

struct ExperimentResult {
  TypicalModel model;
  std::vector<BatchScores> batches;     // config order
  std::vector<Comparison> comparisons;  // one per non-reference batch
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// scores.csv, sweep_<label>.csv, histogram_<label>.csv, summary.txt and
/// model.txt under config.out_dir. Byte-identical for a fixed config.
void write_experiment(const ExperimentConfig& config, const ExperimentResult& result);

void write_scores_csv(std::ostream& out, const std::vector<BatchScores>& batches);
void write_sweep_csv(std::ostream& out, const DetectionResult& detection);
void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins);

}  // namespace gcdc
