#pragma once

#include <vector>

namespace smx {

struct Edge {
  int u = 0;
  int v = 0;
  float w = 0.0f;
};

/// Edge-list graph with 0-based vertex ids. For undirected graphs each
/// edge is stored once and mirrored when the graph is encoded as a matrix.
struct Graph {
  int n = 0;
  bool directed = true;
  std::vector<Edge> edges;
};

/// Throws IndexError if any endpoint lies outside [0, n).
void validate_indices(const Graph& g);

/// Kahn's algorithm. An undirected graph with at least one edge is cyclic.
bool is_dag(const Graph& g);

}  // namespace smx
