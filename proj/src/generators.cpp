#include "gcdc/generators.hpp"

#include <charconv>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcdc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Portable draws (the std distributions differ between standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

std::uint64_t stream_id(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : label) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::ER: return "ER";
    case Family::BA: return "BA";
    case Family::NWS: return "NWS";
    case Family::MIX: return "MIX";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "ER" || name == "er") return Family::ER;
  if (name == "BA" || name == "ba") return Family::BA;
  if (name == "NWS" || name == "nws") return Family::NWS;
  if (name == "MIX" || name == "mix") return Family::MIX;
  throw std::invalid_argument("unknown graph family '" + std::string(name) + "'");
}

void GenSpec::validate() const {
  auto prob_ok = [](double x) { return x >= 0.0 && x <= 1.0; };
  switch (family) {
    case Family::ER:
      if (!prob_ok(p)) throw std::invalid_argument("ER: p must be in [0,1]");
      break;
    case Family::BA:
      if (m < 1 || m >= n) throw std::invalid_argument("BA: need 1 <= m < n");
      break;
    case Family::NWS:
      if (k >= n && n > 0) throw std::invalid_argument("NWS: need k < n");
      if (!prob_ok(p)) throw std::invalid_argument("NWS: p must be in [0,1]");
      break;
    case Family::MIX:
      if (m < 1 || m >= n) throw std::invalid_argument("MIX: need 1 <= m < n");
      if (!prob_ok(p)) throw std::invalid_argument("MIX: p must be in [0,1]");
      break;
  }
}

std::string GenSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << "family=" << family_name(family) << " n=" << n;
  switch (family) {
    case Family::ER: out << " p=" << p; break;
    case Family::BA: out << " m=" << m; break;
    case Family::NWS: out << " k=" << k << " p=" << p; break;
    case Family::MIX: out << " m=" << m << " p=" << p; break;
  }
  out << " seed=" << seed;
  return out.str();
}

GenSpec GenSpec::parse(std::string_view text) {
  GenSpec spec;
  bool have_family = false, have_n = false;
  std::istringstream in{std::string(text)};
  std::string tok;
  auto to_u64 = [](const std::string& key, std::string_view v) {
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
      throw std::invalid_argument("GenSpec: bad integer for " + key + ": '" + std::string(v) + "'");
    return x;
  };
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("GenSpec: expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "family") {
      spec.family = parse_family(value);
      have_family = true;
    } else if (key == "n") {
      spec.n = to_u64(key, value);
      have_n = true;
    } else if (key == "m") {
      spec.m = to_u64(key, value);
    } else if (key == "k") {
      spec.k = to_u64(key, value);
    } else if (key == "seed") {
      spec.seed = to_u64(key, value);
    } else if (key == "p" || key == "p_extra") {
      std::size_t used = 0;
      try {
        spec.p = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || value.empty()) throw std::invalid_argument("GenSpec: bad number for p: '" + value + "'");
    } else {
      throw std::invalid_argument("GenSpec: unknown key '" + key + "'");
    }
  }
  if (!have_family || !have_n) throw std::invalid_argument("GenSpec: family and n are required");
  spec.validate();
  return spec;
}

Graph generate(const GenSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::ER: return gen_er(spec.n, spec.p, spec.seed);
    case Family::BA: return gen_ba(spec.n, spec.m, spec.seed);
    case Family::NWS: return gen_nws(spec.n, spec.k, spec.p, spec.seed);
    case Family::MIX: return gen_mixture(spec.n, spec.m, spec.p, spec.seed);
  }
  throw std::invalid_argument("unknown family");
}

Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_er: p must be in [0,1]");
  Graph g(n);
  Rng rng(seed);
  for (NodeId v = 1; v < n; ++v)
    for (NodeId u = 0; u < v; ++u)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

Graph gen_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw std::invalid_argument("gen_ba: need 1 <= m < n");
  Graph g(n);
  Rng rng(seed);
  // Each endpoint appears once per incident edge, so uniform draws from
  // `ends` are degree-proportional.
  std::vector<NodeId> ends;
  ends.reserve(2 * m * (n - m));
  for (NodeId s = 0; s < m; ++s) {
    g.add_edge(static_cast<NodeId>(m), s);
    ends.push_back(s);
    ends.push_back(static_cast<NodeId>(m));
  }
  std::vector<NodeId> targets;
  DynamicBitset chosen(n);
  for (NodeId v = static_cast<NodeId>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId t = ends[rng.below(ends.size())];
      if (chosen.test(t)) continue;
      chosen.set(t);
      targets.push_back(t);
    }
    for (NodeId t : targets) {
      chosen.reset(t);
      g.add_edge(v, t);
      ends.push_back(t);
      ends.push_back(v);
    }
  }
  return g;
}

Graph gen_nws(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (n > 0 && k >= n) throw std::invalid_argument("gen_nws: need k < n");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_nws: p must be in [0,1]");
  Graph g(n);
  if (n == 0) return g;
  std::vector<Edge> lattice;
  auto link = [&](std::size_t u, std::size_t offset) {
    const NodeId a = static_cast<NodeId>(u), b = static_cast<NodeId>((u + offset) % n);
    if (g.add_edge(a, b)) lattice.emplace_back(a, b);
  };
  for (std::size_t offset = 1; offset <= k / 2; ++offset)
    for (std::size_t u = 0; u < n; ++u) link(u, offset);
  if (k % 2 == 1)
    for (std::size_t u = 0; u < n; u += 2) link(u, k / 2 + 1);

  Rng rng(seed);
  for (auto [u, v] : lattice) {
    if (!rng.bernoulli(p)) continue;
    if (g.degree(u) >= n - 1) continue;
    NodeId w;
    do {
      w = static_cast<NodeId>(rng.below(n));
    } while (w == u || g.has_edge(u, w));
    g.add_edge(u, w);
  }
  return g;
}

Graph gen_mixture(std::size_t n, std::size_t m, double p_extra, std::uint64_t seed) {
  Graph g = gen_ba(n, m, seed);
  if (p_extra > 0.0) {
    const Graph extra = gen_er(n, p_extra, derive_seed(seed, stream_id("mixture-er"), 0));
    for (auto [u, v] : extra.edges()) g.add_edge(u, v);
  } else if (p_extra < 0.0 || p_extra > 1.0) {
    throw std::invalid_argument("gen_mixture: p_extra must be in [0,1]");
  }
  return g;
}

}  // namespace gcdc
