#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "gcdc/graph.hpp"

namespace gcdc {

enum class GraphFormat { EdgeList, MatrixMarket };

GraphFormat parse_graph_format(std::string_view name);  // "edgelist" | "mtx"
/// Picks MatrixMarket for *.mtx, EdgeList otherwise.
GraphFormat guess_graph_format(const std::filesystem::path& path);

struct LoadStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

/// Edge list: one "u v" pair per line, 0-based. An optional "# n=<N>" line
/// declares the node count (isolated trailing nodes); other lines starting
/// with '#' or '%' are comments. Without a header n = max id + 1.
///
/// Matrix Market: coordinate format, 1-based, any field (values ignored),
/// symmetric or general; edges are symmetrized.
///
/// Duplicates are merged and self-loops dropped (counted in stats). Malformed
/// lines throw ParseError carrying the line number; out-of-range indices throw
/// DataError.
Graph read_graph(std::istream& in, GraphFormat format, LoadStats* stats = nullptr);
Graph load_graph(const std::filesystem::path& path, GraphFormat format, LoadStats* stats = nullptr);

void write_graph(std::ostream& out, const Graph& g, GraphFormat format);
void save_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format);

}  // namespace gcdc
