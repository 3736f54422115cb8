#pragma once

#include <string>

#include "smx/graph.hpp"
#include "smx/matrix.hpp"

namespace smx {

/// Edge-list text format. Header line: "<n> <edge-count> [directed|
/// undirected]" (directed when omitted); one "<u> <v> <w>" line per edge
/// with 0-based endpoints; '#' starts a comment anywhere on a line.
/// Endpoints outside [0, n) raise IndexError; everything else malformed
/// raises ParseError with the offending line number.
Graph parse_edge_list(const std::string& path);
void write_edge_list(const std::string& path, const Graph& g);

/// Dense matrix text: one row per line, space-separated floats, with
/// "inf" / "-inf" for the infinities. Values are printed with shortest
/// round-trip precision, so write followed by parse is bit-identical.
MatrixBuffer parse_dense_matrix(const std::string& path);
void write_dense_matrix(const std::string& path, const MatrixBuffer& m);

/// Shortest-round-trip decimal rendering used by both writers.
std::string format_float(float x);

}  // namespace smx
