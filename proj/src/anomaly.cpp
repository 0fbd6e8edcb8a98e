#include "gcdc/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gcdc/parallel.hpp"

namespace gcdc {

TypicalModel train_typical(std::span<const Graph> graphs, double alpha) {
  if (graphs.empty()) throw std::invalid_argument("training set is empty");
  std::vector<CanonicalGraph> canonical;
  canonical.reserve(graphs.size());
  for (const auto& g : graphs) canonical.emplace_back(g);

  TypicalModel model;
  model.stats = collect_training_stats(std::span<const CanonicalGraph>(canonical), alpha);
  model.params = learned_params(model.stats);
  model.training_bits.fill(0.0);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    model.training_bits[0] += labeled_iid_bits(graphs[i], model.params.edge_probability);
    for (CoderId c : kStructureCoders)
      model.training_bits[static_cast<std::size_t>(c)] +=
          ideal_codelength(canonical[i], c, CodingMode::Learned, &model.params);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < model.training_bits.size(); ++c)
    if (model.training_bits[c] < model.training_bits[best]) best = c;
  model.coder = kAllCoders[best];
  return model;
}

double typical_codelength(const TypicalModel& model, const CanonicalGraph& g) {
  if (model.coder == CoderId::LabeledIid) return labeled_iid_bits(g.graph(), model.params.edge_probability);
  return ideal_codelength(g, model.coder, CodingMode::Learned, &model.params);
}

double typical_codelength(const TypicalModel& model, const Graph& g) {
  if (model.coder == CoderId::LabeledIid) return labeled_iid_bits(g, model.params.edge_probability);
  return typical_codelength(model, CanonicalGraph(g));
}

namespace {

AtypicalCodelength atypical_impl(const Graph& g, const CanonicalGraph& cg) {
  const std::uint64_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("atypical codelength needs at least two nodes");
  AtypicalCodelength best{std::numeric_limits<double>::infinity(), CoderId::LabeledIid};
  for (CoderId c : kAllCoders) {
    double body = c == CoderId::LabeledIid ? ideal_codelength(g, c, CodingMode::Universal)
                                           : ideal_codelength(cg, c, CodingMode::Universal);
    double bits = body + universal_overhead(c, n);
    if (bits < best.bits) best = {bits, c};
  }
  best.bits += kCoderIdBits;
  return best;
}

}  // namespace

AtypicalCodelength atypical_codelength(const Graph& g) { return atypical_impl(g, CanonicalGraph(g)); }

// labeled iid cost depends only on n and E, so the relabeled graph serves
AtypicalCodelength atypical_codelength(const CanonicalGraph& g) {
  return atypical_impl(g.graph(), g);
}

AtypicalityScore score_graph(const TypicalModel& model, const Graph& g) {
  CanonicalGraph cg(g);
  AtypicalityScore s;
  s.typical_bits = typical_codelength(model, cg);
  auto a = atypical_codelength(cg);
  s.atypical_bits = a.bits;
  s.winner = a.winner;
  s.score = s.atypical_bits - s.typical_bits;
  return s;
}

std::vector<AtypicalityScore> score_batch(const TypicalModel& model, std::span<const Graph> graphs,
                                          unsigned threads) {
  std::vector<AtypicalityScore> out(graphs.size());
  parallel_for(graphs.size(), threads, [&](std::size_t i) { out[i] = score_graph(model, graphs[i]); });
  return out;
}

DetectionResult evaluate(std::span<const double> typical_scores, std::span<const double> test_scores,
                         std::span<const double> taus) {
  if (typical_scores.empty() || test_scores.empty()) throw std::invalid_argument("score sets must be nonempty");
  std::vector<double> typ(typical_scores.begin(), typical_scores.end());
  std::vector<double> tst(test_scores.begin(), test_scores.end());
  std::sort(typ.begin(), typ.end());
  std::sort(tst.begin(), tst.end());

  std::vector<double> grid;
  if (taus.empty()) {
    grid.reserve(typ.size() + tst.size() + 2);
    grid.push_back(-std::numeric_limits<double>::infinity());
    grid.insert(grid.end(), typ.begin(), typ.end());
    grid.insert(grid.end(), tst.begin(), tst.end());
    grid.push_back(std::numeric_limits<double>::infinity());
  } else {
    grid.assign(taus.begin(), taus.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  DetectionResult r;
  r.sweep.reserve(grid.size());
  double best_gap = std::numeric_limits<double>::infinity();
  for (double tau : grid) {
    // flagged = score < tau
    auto flagged_typ = std::lower_bound(typ.begin(), typ.end(), tau) - typ.begin();
    auto flagged_tst = std::lower_bound(tst.begin(), tst.end(), tau) - tst.begin();
    SweepPoint pt{tau, static_cast<double>(flagged_typ) / static_cast<double>(typ.size()),
                  1.0 - static_cast<double>(flagged_tst) / static_cast<double>(tst.size())};
    r.sweep.push_back(pt);
    double gap = std::abs(pt.false_alarm - pt.miss);
    if (gap < best_gap) {
      best_gap = gap;
      r.eer_tau = tau;
      r.false_alarm_rate = pt.false_alarm;
      r.miss_rate = pt.miss;
      r.equal_error_rate = 0.5 * (pt.false_alarm + pt.miss);
    }
  }
  return r;
}

std::vector<HistogramBin> score_histogram(std::span<const double> typical_scores, std::span<const double> test_scores,
                                          std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double s : typical_scores) lo = std::min(lo, s), hi = std::max(hi, s);
  for (double s : test_scores) lo = std::min(lo, s), hi = std::max(hi, s);
  if (!(lo <= hi)) return {};
  if (lo == hi) hi = lo + 1.0;
  double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lo = lo + width * static_cast<double>(b);
    out[b].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  auto bin_of = [&](double s) {
    auto b = static_cast<std::size_t>((s - lo) / width);
    return std::min(b, bins - 1);
  };
  for (double s : typical_scores) ++out[bin_of(s)].typical;
  for (double s : test_scores) ++out[bin_of(s)].test;
  return out;
}

}  // namespace gcdc
