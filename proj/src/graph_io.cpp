#include "gcdc/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gcdc/errors.hpp"

namespace gcdc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_index(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected a nonnegative integer, got '" + std::string(tok) + "'", line);
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

Graph build(std::size_t n, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& raw, LoadStats* stats) {
  constexpr std::uint64_t kMaxNodes = std::uint64_t{1} << 31;
  if (n > kMaxNodes) throw DataError("graph too large: " + std::to_string(n) + " nodes");
  Graph g(n);
  LoadStats local;
  for (auto [u, v] : raw) {
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    if (!g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v))) ++local.duplicates_merged;
  }
  if (stats) *stats = local;
  return g;
}

Graph read_edge_list(std::istream& in, LoadStats* stats) {
  std::optional<std::uint64_t> declared;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#' || s.front() == '%') {
      std::string_view body = trim(s.substr(1));
      if (body.starts_with("n=") || body.starts_with("n =")) {
        body.remove_prefix(1);
        body = trim(body);
        body.remove_prefix(1);
        if (declared) throw ParseError("duplicate node-count header", lineno);
        declared = parse_index(trim(body), lineno);
      }
      continue;
    }
    auto toks = split_ws(s);
    if (toks.size() != 2) throw ParseError("expected 'u v'", lineno);
    const std::uint64_t u = parse_index(toks[0], lineno);
    const std::uint64_t v = parse_index(toks[1], lineno);
    if (declared && (u >= *declared || v >= *declared))
      throw DataError("line " + std::to_string(lineno) + ": node id exceeds declared n=" + std::to_string(*declared));
    max_id = std::max({max_id, u, v});
    any = true;
    raw.emplace_back(u, v);
  }
  if (in.bad()) throw ParseError("read error");
  const std::uint64_t n = declared ? *declared : (any ? max_id + 1 : 0);
  return build(static_cast<std::size_t>(n), raw, stats);
}

Graph read_matrix_market(std::istream& in, LoadStats* stats) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market file", 1);
  ++lineno;
  auto banner = split_ws(line);
  if (banner.size() < 4 || lower(banner[0]) != "%%matrixmarket" || lower(banner[1]) != "matrix")
    throw ParseError("missing %%MatrixMarket matrix banner", lineno);
  if (lower(banner[2]) != "coordinate") throw ParseError("only coordinate format is supported", lineno);
  const std::string field = banner.size() > 3 ? lower(banner[3]) : "pattern";
  const std::size_t values = field == "pattern" ? 0 : field == "complex" ? 2 : 1;

  std::optional<std::uint64_t> rows, cols, nnz;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '%') continue;
    auto toks = split_ws(s);
    if (!rows) {
      if (toks.size() != 3) throw ParseError("expected 'rows cols entries'", lineno);
      rows = parse_index(toks[0], lineno);
      cols = parse_index(toks[1], lineno);
      nnz = parse_index(toks[2], lineno);
      if (*rows != *cols) throw DataError("adjacency matrix must be square");
      raw.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(*nnz, 1u << 24)));
      continue;
    }
    if (toks.size() != 2 + values) throw ParseError("expected 'i j" + std::string(values ? " value" : "") + "'", lineno);
    const std::uint64_t i = parse_index(toks[0], lineno);
    const std::uint64_t j = parse_index(toks[1], lineno);
    if (i == 0 || j == 0 || i > *rows || j > *rows)
      throw DataError("line " + std::to_string(lineno) + ": index out of range 1.." + std::to_string(*rows));
    raw.emplace_back(i - 1, j - 1);
  }
  if (in.bad()) throw ParseError("read error");
  if (!rows) throw ParseError("missing size line", lineno);
  if (raw.size() != *nnz)
    throw ParseError("expected " + std::to_string(*nnz) + " entries, found " + std::to_string(raw.size()), lineno);
  return build(static_cast<std::size_t>(*rows), raw, stats);
}

}  // namespace

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edgelist" || name == "edges" || name == "txt") return GraphFormat::EdgeList;
  if (name == "mtx" || name == "matrix-market") return GraphFormat::MatrixMarket;
  throw std::invalid_argument("unknown graph format '" + std::string(name) + "'");
}

GraphFormat guess_graph_format(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".mtx" ? GraphFormat::MatrixMarket : GraphFormat::EdgeList;
}

Graph read_graph(std::istream& in, GraphFormat format, LoadStats* stats) {
  return format == GraphFormat::EdgeList ? read_edge_list(in, stats) : read_matrix_market(in, stats);
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_graph(in, format, stats);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_graph(std::ostream& out, const Graph& g, GraphFormat format) {
  const auto edges = g.edges();
  if (format == GraphFormat::EdgeList) {
    out << "# n=" << g.node_count() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
  } else {
    out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
    out << g.node_count() << ' ' << g.node_count() << ' ' << edges.size() << '\n';
    // Lower triangle, as the symmetric storage convention expects.
    for (auto [u, v] : edges) out << v + 1 << ' ' << u + 1 << '\n';
  }
}

void save_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_graph(out, g, format);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace gcdc
