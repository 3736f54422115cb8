#pragma once

#include <vector>

#include "smx/graph.hpp"
#include "smx/matrix.hpp"

namespace smx::oracles {

// Reference solvers used to validate the tiled engine. They are scalar,
// run in 64-bit arithmetic, and share no code with the tile path: the
// combine/accumulate definitions are restated locally on doubles. Results
// are rounded to 32-bit floats at the end for comparison.

/// In-place relaxation over every intermediate vertex (k outermost) for the
/// six closure opcodes: MinPlus, MaxPlus, MinMul, MaxMul, MinMax, MaxMin.
/// The caller guarantees a convergent instance (no improving cycles).
MatrixBuffer generalized_floyd_warshall(Opcode op, const MatrixBuffer& w);

struct KruskalResult {
  double msf_weight = 0.0;
  std::vector<Edge> msf_edges;
  MatrixBuffer bottleneck;  // max edge on the forest path; +inf across
                            // components, -inf on the diagonal (empty path)
};

/// Kruskal's algorithm with union-find, then the pairwise bottleneck
/// matrix by walking the forest from every source.
KruskalResult kruskal_bottleneck(const Graph& g);

/// 0/1 reachability matrix by depth-first search from every vertex.
/// The diagonal is 1 (empty path). Undirected edges reach both ways.
MatrixBuffer dfs_reachability(const Graph& g);

struct BruteKnnResult {
  MatrixBuffer dist2;        // q x r squared distances
  std::vector<int> indices;  // q x k row-major, ties to the lower index
};

/// Exhaustive k-nearest-neighbors on squared L2 distance.
BruteKnnResult brute_force_knn(const MatrixBuffer& points,
                               const MatrixBuffer& refs, int k);

}  // namespace smx::oracles
