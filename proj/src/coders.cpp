#include "gcdc/coders.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gcdc/canonical.hpp"
#include "gcdc/errors.hpp"
#include "gcdc/partition.hpp"

namespace gcdc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Channels. Every coding decision goes through code(index, support, ideal,
// table): `ideal(i)` is the model codelength of outcome i and `table()` its
// quantized distribution. Decisions with a single possible outcome cost
// nothing and emit nothing.

struct LengthChannel {
  static constexpr bool kDecoding = false;
  double bits = 0.0;

  template <class Ideal, class Table>
  std::uint64_t code(std::uint64_t index, std::uint64_t support, Ideal&& ideal, Table&&) {
    if (support > 1) bits += ideal(index);
    return index;
  }
};

struct EncodeChannel {
  static constexpr bool kDecoding = false;
  double bits = 0.0;
  ArithmeticEncoder encoder;

  template <class Ideal, class Table>
  std::uint64_t code(std::uint64_t index, std::uint64_t support, Ideal&& ideal, Table&& table) {
    if (index >= support) throw std::logic_error("encoder: outcome outside support");
    if (support > 1) {
      bits += ideal(index);
      const auto& t = table();
      encoder.encode(t, static_cast<std::size_t>(index));
    }
    return index;
  }
};

struct DecodeChannel {
  static constexpr bool kDecoding = true;
  double bits = 0.0;
  ArithmeticDecoder decoder;

  explicit DecodeChannel(const Bitstream& s) : decoder(s) {}

  template <class Ideal, class Table>
  std::uint64_t code(std::uint64_t, std::uint64_t support, Ideal&& ideal, Table&& table) {
    if (support <= 1) return 0;
    const auto& t = table();
    const std::uint64_t index = decoder.decode(t);
    if (index >= support) throw DecodeError("decoded outcome outside support");
    bits += ideal(index);
    return index;
  }
};

// ---------------------------------------------------------------------------
// Distributions

std::vector<double> binomial_log2_weights(std::uint64_t s, double p) {
  std::vector<double> w(s + 1, kNegInf);
  if (p <= 0.0) {
    w[0] = 0.0;
  } else if (p >= 1.0) {
    w[s] = 0.0;
  } else {
    const double lp = std::log2(p);
    const double lq = std::log1p(-p) / std::numbers::ln2;
    for (std::uint64_t m = 0; m <= s; ++m)
      w[m] = log2_binomial(s, m) + static_cast<double>(m) * lp + static_cast<double>(s - m) * lq;
  }
  return w;
}

FrequencyTable binomial_table(std::uint64_t s, double p) {
  const auto w = binomial_log2_weights(s, p);
  return FrequencyTable::from_log2_weights(w);
}

class BinomialTableCache {
 public:
  const FrequencyTable& get(std::uint64_t s, double p) {
    auto it = tables_.find(s);
    if (it == tables_.end()) it = tables_.emplace(s, binomial_table(s, p)).first;
    return it->second;
  }

 private:
  std::unordered_map<std::uint64_t, FrequencyTable> tables_;
};

template <class Channel>
std::uint64_t code_binomial(Channel& ch, std::uint64_t s, std::uint64_t m, double p, BinomialTableCache* cache) {
  auto ideal = [&](std::uint64_t x) { return binomial_codelength(s, x, p); };
  if (cache) return ch.code(m, s + 1, ideal, [&]() -> const FrequencyTable& { return cache->get(s, p); });
  return ch.code(m, s + 1, ideal, [&] { return binomial_table(s, p); });
}

// ---------------------------------------------------------------------------
// Structure traversal shared by the three structure coders.

struct NodeStep {
  NodeId node;
  std::uint64_t kbar;   // edges to coded nodes
  std::uint64_t slots;  // uncoded nodes other than `node`
  const GroupPartition& partition;
  const Graph& working;
  const DynamicBitset& coded;
};

// On encode `working` is the canonical graph; on decode it starts empty and
// receives each node's edges to the uncoded nodes when that node is visited.
// Returns the visitation order.
template <class Channel, class NodeCoder>
std::vector<NodeId> traverse(Graph& working, Channel& ch, NodeCoder& coder, CodingTrace* trace) {
  const std::size_t n = working.node_count();
  GroupPartition part(n);
  DynamicBitset coded(n);
  std::vector<std::uint64_t> counts;
  while (!part.empty()) {
    const NodeId v = part.select_next();
    const std::uint64_t kbar = DynamicBitset::intersection_count(working.neighbors(v), coded);
    if (trace) trace->prefix_ones.push_back(static_cast<std::uint32_t>(kbar));
    const std::size_t groups = part.group_count();
    counts.assign(groups, 0);
    if constexpr (!Channel::kDecoding) {
      const auto& row = working.neighbors(v);
      for (std::size_t j = 0; j < groups; ++j)
        for (NodeId u : part.group(j)) counts[j] += row.test(u) ? 1 : 0;
    }
    coder.code_node(ch, NodeStep{v, kbar, part.remaining(), part, working, coded}, counts);
    if constexpr (Channel::kDecoding) {
      // Members of a group are interchangeable so far: the first counts[j] become neighbors.
      for (std::size_t j = 0; j < groups; ++j) {
        const auto grp = part.group(j);
        for (std::uint64_t i = 0; i < counts[j]; ++i) working.add_edge(v, grp[i]);
      }
    }
    part.refine(working.neighbors(v));
    coded.set(v);
  }
  const auto visited = part.visited();
  return {visited.begin(), visited.end()};
}

struct IidNodeCoder {
  double p;
  BinomialTableCache cache;

  template <class Channel>
  void code_node(Channel& ch, const NodeStep& step, std::vector<std::uint64_t>& counts) {
    for (std::size_t j = 0; j < counts.size(); ++j)
      counts[j] = code_binomial(ch, step.partition.group(j).size(), counts[j], p, &cache);
  }
};

struct DegreeNodeCoder {
  const DegreeModel& model;

  template <class Channel>
  void code_node(Channel& ch, const NodeStep& step, std::vector<std::uint64_t>& counts) {
    const std::uint64_t kbar = step.kbar;
    const std::uint64_t slots = step.slots;
    const std::uint64_t observed = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});

    // Degree, given at least kbar and at most kbar + slots.
    const double range = model.range_weight(kbar, kbar + slots);
    const std::uint64_t extra = ch.code(
        observed, slots + 1,
        [&](std::uint64_t i) {
          if (!(range > 0.0)) return uniform_integer_codelength(slots + 1);
          const double w = model.weight(kbar + i);
          if (!(w > 0.0)) throw InfiniteCodelength("degree " + std::to_string(kbar + i) + " has zero probability");
          return -std::log2(w / range);
        },
        [&]() -> FrequencyTable {
          if (!(range > 0.0)) return FrequencyTable::uniform(slots + 1);
          std::vector<double> lw(slots + 1);
          for (std::uint64_t i = 0; i <= slots; ++i) {
            const double w = model.weight(kbar + i);
            lw[i] = w > 0.0 ? std::log2(w) : kNegInf;
          }
          return FrequencyTable::from_log2_weights(lw);
        });

    // Configuration: each group's share of the remaining ones, hypergeometric
    // given what is left. The product over groups is prod C(s_j,k_j) / C(S,R).
    std::uint64_t ones_left = extra;
    std::uint64_t slots_left = slots;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      const std::uint64_t s = step.partition.group(j).size();
      const std::uint64_t rest = slots_left - s;
      const std::uint64_t lo = ones_left > rest ? ones_left - rest : 0;
      const std::uint64_t hi = std::min(s, ones_left);
      const double whole = log2_binomial(slots_left, ones_left);
      const std::uint64_t R = ones_left;
      const std::uint64_t x =
          lo + ch.code(
                   counts[j] - lo, hi - lo + 1,
                   [&](std::uint64_t i) { return whole - log2_binomial(s, lo + i) - log2_binomial(rest, R - lo - i); },
                   [&]() -> FrequencyTable {
                     std::vector<double> lw(hi - lo + 1);
                     for (std::uint64_t i = 0; i < lw.size(); ++i)
                       lw[i] = log2_binomial(s, lo + i) + log2_binomial(rest, R - lo - i);
                     return FrequencyTable::from_log2_weights(lw);
                   });
      counts[j] = x;
      ones_left -= x;
      slots_left = rest;
    }
  }
};

struct TriangleNodeCoder {
  bool adaptive;
  TriangleParams fixed;
  TriangleStats* stats = nullptr;
  KtCounter counters[2]{};  // [0] no context, [1] triangle context
  BinomialTableCache cache[2]{};
  DynamicBitset context{};

  template <class Channel>
  void code_node(Channel& ch, const NodeStep& step, std::vector<std::uint64_t>& counts) {
    // Nodes sharing a coded neighbor with the current node.
    const std::size_t n = step.working.node_count();
    if (context.size() != n) context = DynamicBitset(n);
    context.clear();
    DynamicBitset coded_neighbors = step.working.neighbors(step.node);
    coded_neighbors &= step.coded;
    coded_neighbors.for_each_set([&](std::size_t j) { context |= step.working.neighbors(static_cast<NodeId>(j)); });

    for (std::size_t j = 0; j < counts.size(); ++j) {
      const auto grp = step.partition.group(j);
      const std::uint64_t s = grp.size();
      const int ctx = context.test(grp.front()) ? 1 : 0;
      const double p = adaptive ? counters[ctx].predict() : (ctx ? fixed.p_tri : fixed.p_check);
      const std::uint64_t m = code_binomial(ch, s, counts[j], p, adaptive ? nullptr : &cache[ctx]);
      counts[j] = m;
      counters[ctx].update(m, s - m);
      if (stats) {
        if (ctx) {
          stats->context_ones += m;
          stats->context_slots += s;
        } else {
          stats->plain_ones += m;
          stats->plain_slots += s;
        }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Labeled iid: the n(n-1)/2 upper-triangle bits, column by column.

template <class Channel>
void code_labeled_pairs(Graph& working, Channel& ch, double p) {
  const std::uint64_t n = working.node_count();
  const double lw[2] = {p < 1.0 ? std::log1p(-p) / std::numbers::ln2 : kNegInf, p > 0.0 ? std::log2(p) : kNegInf};
  const FrequencyTable table = FrequencyTable::from_log2_weights(lw);
  auto ideal = [&](std::uint64_t bit) {
    if (lw[bit] == kNegInf) throw InfiniteCodelength("labeled iid: edge state has probability zero");
    return -lw[bit];
  };
  auto get_table = [&]() -> const FrequencyTable& { return table; };
  for (NodeId v = 1; v < n; ++v) {
    for (NodeId u = 0; u < v; ++u) {
      std::uint64_t bit = 0;
      if constexpr (!Channel::kDecoding) bit = working.has_edge(u, v) ? 1 : 0;
      bit = ch.code(bit, 2, ideal, get_table);
      if constexpr (Channel::kDecoding)
        if (bit) working.add_edge(u, v);
    }
  }
}

// ---------------------------------------------------------------------------
// Universal headers

template <class Channel>
std::uint64_t code_edge_count(Channel& ch, std::uint64_t n, std::uint64_t edges) {
  const std::uint64_t range = pair_count(n) + 1;
  if (range > FrequencyTable::kMaxTotal) throw std::invalid_argument("graph too large for the edge-count header");
  return ch.code(
      edges, range, [&](std::uint64_t) { return uniform_integer_codelength(range); },
      [&] { return FrequencyTable::uniform(range); });
}

// Degree histogram as a composition of n nodes into n buckets, bucket by
// bucket; the total cost is log2 C(2n-1, n).
template <class Channel>
DegreeHistogram code_histogram(Channel& ch, std::uint64_t n, DegreeHistogram hist) {
  hist.resize(n, 0);
  std::uint64_t left = n;
  for (std::uint64_t d = 0; d + 1 < n; ++d) {
    const std::uint64_t buckets = n - d;
    const double whole = log2_binomial(left + buckets - 1, buckets - 1);
    const std::uint64_t r = left;
    const std::uint64_t c = ch.code(
        hist[d], r + 1, [&](std::uint64_t i) { return whole - log2_binomial(r - i + buckets - 2, buckets - 2); },
        [&]() -> FrequencyTable {
          std::vector<double> lw(r + 1);
          for (std::uint64_t i = 0; i <= r; ++i) lw[i] = log2_binomial(r - i + buckets - 2, buckets - 2);
          return FrequencyTable::from_log2_weights(lw);
        });
    hist[d] = c;
    left -= c;
  }
  if (n) hist[n - 1] = left;
  return hist;
}

const LearnedParams& require(const LearnedParams* params) {
  if (!params) throw std::invalid_argument("learned mode requires model parameters");
  return *params;
}

Graph relabel_by_visit(const Graph& working, const std::vector<NodeId>& order) { return working.permuted(order); }

// Body + header for one coder over `working`. `working` is the canonical
// graph (structure coders) or the input (labeled iid) when encoding, an empty
// graph when decoding. Returns the header's ideal bits.
template <class Channel>
double run_coder(Graph& working, std::uint64_t edges, Channel& ch, CoderId coder, CodingMode mode,
                 const LearnedParams* params, CodingTrace* trace, std::vector<NodeId>* order) {
  const std::uint64_t n = working.node_count();
  double header = 0.0;
  switch (coder) {
    case CoderId::LabeledIid:
    case CoderId::StructIid: {
      double p;
      if (mode == CodingMode::Learned) {
        p = require(params).edge_probability;
      } else {
        edges = code_edge_count(ch, n, edges);
        header = ch.bits;
        ch.bits = 0.0;
        p = universal_edge_probability(n, edges);
      }
      if (coder == CoderId::LabeledIid) {
        code_labeled_pairs(working, ch, p);
      } else {
        IidNodeCoder nc{p, {}};
        auto visited = traverse(working, ch, nc, trace);
        if (order) *order = std::move(visited);
      }
      break;
    }
    case CoderId::StructDegree: {
      DegreeModel universal;
      const DegreeModel* model;
      if (mode == CodingMode::Learned) {
        model = &require(params).degree;
      } else {
        DegreeHistogram hist;
        if constexpr (!Channel::kDecoding) hist = degree_histogram(working);
        hist = code_histogram(ch, n, std::move(hist));
        header = ch.bits;
        ch.bits = 0.0;
        universal = DegreeModel(std::move(hist), 0.0);
        model = &universal;
      }
      DegreeNodeCoder nc{*model};
      auto visited = traverse(working, ch, nc, trace);
      if (order) *order = std::move(visited);
      break;
    }
    case CoderId::StructTriangle: {
      TriangleNodeCoder nc{mode == CodingMode::Universal,
                           mode == CodingMode::Learned ? require(params).triangle : TriangleParams{}};
      auto visited = traverse(working, ch, nc, trace);
      if (order) *order = std::move(visited);
      break;
    }
    default:
      throw std::invalid_argument("unknown coder id");
  }
  return header;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view coder_name(CoderId id) noexcept {
  switch (id) {
    case CoderId::LabeledIid: return "labeled-iid";
    case CoderId::StructIid: return "struct-iid";
    case CoderId::StructDegree: return "degree";
    case CoderId::StructTriangle: return "triangle";
  }
  return "unknown";
}

CoderId parse_coder(std::string_view name) {
  if (name == "labeled-iid" || name == "LABELED_IID") return CoderId::LabeledIid;
  if (name == "struct-iid" || name == "STRUCT_IID") return CoderId::StructIid;
  if (name == "degree" || name == "STRUCT_DEGREE") return CoderId::StructDegree;
  if (name == "triangle" || name == "STRUCT_TRIANGLE") return CoderId::StructTriangle;
  throw std::invalid_argument("unknown coder '" + std::string(name) + "'");
}

std::string_view mode_name(CodingMode mode) noexcept {
  return mode == CodingMode::Learned ? "learned" : "universal";
}

CodingMode parse_mode(std::string_view name) {
  if (name == "learned") return CodingMode::Learned;
  if (name == "universal") return CodingMode::Universal;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

CanonicalGraph::CanonicalGraph(const Graph& g) : graph_(canonical_relabel(g, canonical_labeling(g))) {}

std::vector<double> degree_conditional(const DegreeModel& model, std::uint64_t kbar, std::uint64_t slots) {
  std::vector<double> p(slots + 1);
  const double range = model.range_weight(kbar, kbar + slots);
  if (!(range > 0.0)) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(slots + 1));
    return p;
  }
  for (std::uint64_t i = 0; i <= slots; ++i) p[i] = model.weight(kbar + i) / range;
  return p;
}

double configuration_codelength(std::span<const std::uint64_t> group_sizes, std::span<const std::uint64_t> counts) {
  if (group_sizes.size() != counts.size()) throw std::invalid_argument("configuration_codelength: size mismatch");
  std::uint64_t s = 0, k = 0;
  double parts = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > group_sizes[i]) throw std::invalid_argument("configuration_codelength: count exceeds group size");
    s += group_sizes[i];
    k += counts[i];
    parts += log2_binomial(group_sizes[i], counts[i]);
  }
  return std::max(0.0, log2_binomial(s, k) - parts);
}

bool triangle_context(const Graph& g, const DynamicBitset& coded, NodeId current, NodeId member) {
  DynamicBitset common = g.neighbors(current);
  common &= coded;
  common &= g.neighbors(member);
  return common.any();
}

double universal_edge_probability(std::uint64_t n, std::uint64_t edges) {
  const std::uint64_t t = pair_count(n);
  if (t == 0) return 0.5;
  const double total = static_cast<double>(t);
  const double floor = 1.0 / (2.0 * total);
  return std::clamp(static_cast<double>(edges) / total, floor, 1.0 - floor);
}

double labeled_iid_bits(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("labeled_iid_bits: p outside [0,1]");
  const std::uint64_t e = g.edge_count();
  const std::uint64_t t = pair_count(g.node_count());
  if ((p == 0.0 && e > 0) || (p == 1.0 && e < t))
    throw InfiniteCodelength("labeled iid: edge state has probability zero");
  double bits = 0.0;
  if (e) bits -= static_cast<double>(e) * std::log2(p);
  if (t - e) bits -= static_cast<double>(t - e) * std::log1p(-p) / std::numbers::ln2;
  return bits;
}

double structure_iid_bits(const CanonicalGraph& g, double p) {
  Graph working = g.graph();
  LengthChannel ch;
  IidNodeCoder nc{p, {}};
  traverse(working, ch, nc, nullptr);
  return ch.bits;
}

double structure_degree_bits(const CanonicalGraph& g, const DegreeModel& model) {
  Graph working = g.graph();
  LengthChannel ch;
  DegreeNodeCoder nc{model};
  traverse(working, ch, nc, nullptr);
  return ch.bits;
}

double structure_triangle_bits(const CanonicalGraph& g, const TriangleParams& params) {
  Graph working = g.graph();
  LengthChannel ch;
  TriangleNodeCoder nc{false, params};
  traverse(working, ch, nc, nullptr);
  return ch.bits;
}

double structure_triangle_adaptive_bits(const CanonicalGraph& g) {
  Graph working = g.graph();
  LengthChannel ch;
  TriangleNodeCoder nc{true, {}};
  traverse(working, ch, nc, nullptr);
  return ch.bits;
}

TriangleStats triangle_statistics(const CanonicalGraph& g) {
  Graph working = g.graph();
  LengthChannel ch;
  TriangleStats stats;
  TriangleNodeCoder nc{true, {}, &stats};
  traverse(working, ch, nc, nullptr);
  return stats;
}

double ideal_codelength(const CanonicalGraph& g, CoderId coder, CodingMode mode, const LearnedParams* params) {
  const Graph& h = g.graph();
  const bool learned = mode == CodingMode::Learned;
  switch (coder) {
    case CoderId::LabeledIid:
      return labeled_iid_bits(h, learned ? require(params).edge_probability
                                         : universal_edge_probability(h.node_count(), h.edge_count()));
    case CoderId::StructIid:
      return structure_iid_bits(g, learned ? require(params).edge_probability
                                           : universal_edge_probability(h.node_count(), h.edge_count()));
    case CoderId::StructDegree:
      if (learned) return structure_degree_bits(g, require(params).degree);
      return structure_degree_bits(g, DegreeModel(degree_histogram(h), 0.0));
    case CoderId::StructTriangle:
      return learned ? structure_triangle_bits(g, require(params).triangle) : structure_triangle_adaptive_bits(g);
  }
  throw std::invalid_argument("unknown coder id");
}

double ideal_codelength(const Graph& g, CoderId coder, CodingMode mode, const LearnedParams* params) {
  if (coder == CoderId::LabeledIid) {
    const bool learned = mode == CodingMode::Learned;
    return labeled_iid_bits(g, learned ? require(params).edge_probability
                                       : universal_edge_probability(g.node_count(), g.edge_count()));
  }
  return ideal_codelength(CanonicalGraph(g), coder, mode, params);
}

EncodedGraph encode(const Graph& g, CoderId coder, CodingMode mode, const LearnedParams* params, CodingTrace* trace) {
  EncodedGraph out;
  out.coder = coder;
  out.mode = mode;
  out.node_count = g.node_count();
  Graph working = coder == CoderId::LabeledIid ? g : CanonicalGraph(g).graph();
  EncodeChannel ch;
  out.header_bits = run_coder(working, g.edge_count(), ch, coder, mode, params, trace, nullptr);
  out.ideal_bits = ch.bits;
  out.stream = ch.encoder.finish();
  return out;
}

Graph decode(const Bitstream& stream, std::uint64_t n, CoderId coder, CodingMode mode, const LearnedParams* params,
             CodingTrace* trace) {
  constexpr std::uint64_t kMaxNodes = std::uint64_t{1} << 31;
  if (n > kMaxNodes) throw DecodeError("node count too large");
  Graph working(static_cast<std::size_t>(n));
  DecodeChannel ch(stream);
  std::vector<NodeId> order;
  run_coder(working, 0, ch, coder, mode, params, trace, &order);
  if (ch.decoder.overrun() > 64) throw DecodeError("stream too short for its content");
  if (coder == CoderId::LabeledIid) return working;
  return relabel_by_visit(working, order);
}

}  // namespace gcdc
