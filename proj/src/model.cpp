#include "gcdc/model.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gcdc/errors.hpp"

namespace gcdc {

TrainingStats collect_training_stats(std::span<const CanonicalGraph> graphs, double alpha) {
  if (graphs.empty()) throw std::invalid_argument("training set is empty");
  if (!(alpha >= 0.0)) throw std::invalid_argument("smoothing alpha must be nonnegative");
  TrainingStats s;
  s.alpha = alpha;
  std::size_t n_max = 0;
  for (const auto& cg : graphs) n_max = std::max(n_max, cg.graph().node_count());
  s.degree_counts.assign(n_max, 0);
  for (const auto& cg : graphs) {
    const Graph& g = cg.graph();
    if (g.node_count() < 2) throw std::invalid_argument("training graphs need at least two nodes");
    ++s.graphs;
    s.nodes += g.node_count();
    s.edges += g.edge_count();
    s.pairs += pair_count(g.node_count());
    for (std::size_t d : g.degrees()) ++s.degree_counts[d];
    s.triangle += triangle_statistics(cg);
  }
  return s;
}

TrainingStats collect_training_stats(std::span<const Graph> graphs, double alpha) {
  std::vector<CanonicalGraph> canonical;
  canonical.reserve(graphs.size());
  for (const auto& g : graphs) canonical.emplace_back(g);
  return collect_training_stats(std::span<const CanonicalGraph>(canonical), alpha);
}

LearnedParams learned_params(const TrainingStats& stats) {
  LearnedParams p;
  p.edge_probability = half_count_estimate(stats.edges, stats.pairs);
  p.degree = DegreeModel(stats.degree_counts, stats.alpha);
  p.triangle = TriangleParams::from_stats(stats.triangle);
  return p;
}

double learn_edge_probability(std::span<const Graph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("training set is empty");
  std::uint64_t edges = 0, pairs = 0;
  for (const auto& g : graphs) {
    if (g.node_count() < 2) throw std::invalid_argument("training graphs need at least two nodes");
    edges += g.edge_count();
    pairs += pair_count(g.node_count());
  }
  return half_count_estimate(edges, pairs);
}

DegreeModel learn_degree_distribution(std::span<const Graph> graphs, double alpha) {
  if (graphs.empty()) throw std::invalid_argument("training set is empty");
  std::size_t n_max = 0;
  for (const auto& g : graphs) n_max = std::max(n_max, g.node_count());
  DegreeHistogram counts(n_max, 0);
  for (const auto& g : graphs)
    for (std::size_t d : g.degrees()) ++counts[d];
  return DegreeModel(std::move(counts), alpha);
}

TriangleParams learn_triangle_params(std::span<const Graph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("training set is empty");
  TriangleStats total;
  for (const auto& g : graphs) total += triangle_statistics(CanonicalGraph(g));
  return TriangleParams::from_stats(total);
}

double histogram_header_bits(std::uint64_t n) {
  if (n == 0) throw std::domain_error("histogram_header_bits: n must be positive");
  return log2_binomial(2 * n - 1, n);
}

double universal_overhead(CoderId coder, std::uint64_t n) {
  switch (coder) {
    case CoderId::LabeledIid:
    case CoderId::StructIid: return uniform_integer_codelength(pair_count(n) + 1);
    case CoderId::StructDegree: return n ? histogram_header_bits(n) : 0.0;
    case CoderId::StructTriangle: return 0.0;
  }
  throw std::invalid_argument("unknown coder id");
}

// ---------------------------------------------------------------------------
// Model file

void write_model(std::ostream& out, const TypicalModel& model) {
  const auto& s = model.stats;
  out.precision(17);
  out << "gcdc-model 1\n";
  out << "coder " << coder_name(model.coder) << '\n';
  out << "graphs " << s.graphs << " nodes " << s.nodes << " edges " << s.edges << " pairs " << s.pairs << '\n';
  out << "alpha " << s.alpha << '\n';
  out << "degree_counts " << s.degree_counts.size();
  for (auto c : s.degree_counts) out << ' ' << c;
  out << '\n';
  out << "triangle " << s.triangle.context_ones << ' ' << s.triangle.context_slots << ' ' << s.triangle.plain_ones
      << ' ' << s.triangle.plain_slots << '\n';
  out << "training_bits";
  for (double b : model.training_bits) out << ' ' << b;
  out << '\n';
}

TypicalModel read_model(std::istream& in) {
  TypicalModel m;
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](std::string_view key) -> std::istringstream {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::string k;
      fields >> k;
      if (k != key) throw ParseError("expected '" + std::string(key) + "', found '" + k + "'", lineno);
      return fields;
    }
    throw ParseError("model file ended before '" + std::string(key) + "'", lineno);
  };
  auto expect = [&](std::istringstream& f, bool ok) {
    if (!ok || f.fail()) throw ParseError("malformed model record", lineno);
    std::string rest;
    if (f >> rest) throw ParseError("trailing data '" + rest + "'", lineno);
  };

  {
    auto f = next("gcdc-model");
    int version = 0;
    f >> version;
    if (version != 1) throw ParseError("unsupported model version " + std::to_string(version), lineno);
    expect(f, true);
  }
  {
    auto f = next("coder");
    std::string name;
    f >> name;
    try {
      m.coder = parse_coder(name);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
    expect(f, true);
  }
  auto& s = m.stats;
  {
    auto f = next("graphs");
    std::string k1, k2, k3;
    f >> s.graphs >> k1 >> s.nodes >> k2 >> s.edges >> k3 >> s.pairs;
    expect(f, k1 == "nodes" && k2 == "edges" && k3 == "pairs");
  }
  {
    auto f = next("alpha");
    f >> s.alpha;
    expect(f, s.alpha >= 0.0);
  }
  {
    auto f = next("degree_counts");
    std::size_t size = 0;
    f >> size;
    if (f.fail() || size > (std::size_t{1} << 31)) throw ParseError("bad degree_counts size", lineno);
    s.degree_counts.resize(size);
    for (auto& c : s.degree_counts) f >> c;
    expect(f, true);
  }
  {
    auto f = next("triangle");
    f >> s.triangle.context_ones >> s.triangle.context_slots >> s.triangle.plain_ones >> s.triangle.plain_slots;
    expect(f, s.triangle.context_ones <= s.triangle.context_slots && s.triangle.plain_ones <= s.triangle.plain_slots);
  }
  {
    auto f = next("training_bits");
    for (auto& b : m.training_bits) f >> b;
    expect(f, true);
  }
  if (s.graphs == 0 || s.edges > s.pairs) throw ParseError("inconsistent training statistics", lineno);
  m.params = learned_params(s);
  return m;
}

}  // namespace gcdc
