#pragma once

#include <optional>
#include <vector>

#include "smx/counters.hpp"
#include "smx/graph.hpp"
#include "smx/matrix.hpp"
#include "smx/mmo.hpp"

namespace smx {

enum class ClosureAlgo {
  BellmanFord,  // c = c (+) (c (x) w), up to n iterations
  Leyzorek,     // c = c (+) (c (x) c), up to ceil(log2 n) + 1 iterations
};

struct SolveOptions {
  ClosureAlgo algo = ClosureAlgo::Leyzorek;
  PrecisionMode precision = PrecisionMode::Exact32;
  long max_iter = 0;  // 0 picks the algorithm's default bound; mixed16
                      // doubles it so re-quantized values can settle
  int threads = 0;
  bool check_domain = true;
};

struct ClosureResult {
  MatrixBuffer matrix;
  long iterations = 0;
  bool converged = false;
  OpCounters counters;
};

/// Encode a graph as the op's matrix form: absent pairs hold the accumulate
/// identity, the diagonal holds the combine-neutral element, and parallel
/// edges (and both directions of an undirected edge) are merged with the
/// accumulate op. Edge weights must lie in the op's edge domain: (0, 1] for
/// MinMul, [0, 1] for MaxMul, {0, 1} for OrAnd, finite reals otherwise.
MatrixBuffer encode(const Graph& g, const SemiringOp& op,
                    PrecisionMode mode = PrecisionMode::Exact32);

/// True when curr differs from prev: bit-exact comparison in Exact32,
/// comparison after half rounding of both sides in Mixed16 (the fixpoint
/// the 16-bit data path can actually hold).
bool check_convergence(const MatrixBuffer& curr, const MatrixBuffer& prev,
                       PrecisionMode mode);

/// Iterate c = c (+) (c (x) w) from c = w until an iteration changes
/// nothing; that confirming pass is included in the count. Throws
/// NonConvergence when max_iter passes still left values changing.
ClosureResult closure_bellman_ford(const SemiringOp& op, const MatrixBuffer& w,
                                   const SolveOptions& opts = {});

/// Iterate c = c (+) (c (x) c); path horizon doubles per pass, so any
/// convergent instance settles within ceil(log2 n) + 1 iterations.
ClosureResult closure_leyzorek(const SemiringOp& op, const MatrixBuffer& w,
                               const SolveOptions& opts = {});

/// All-pairs shortest paths (MinPlus). Diverges on negative cycles.
ClosureResult apsp(const Graph& g, const SolveOptions& opts = {});

/// All-pairs longest paths (MaxPlus); the graph must be acyclic or
/// DagRequired is thrown.
ClosureResult aplp(const Graph& g, const SolveOptions& opts = {});

/// Widest-path capacities (MaxMin).
ClosureResult max_capacity(const Graph& g, const SolveOptions& opts = {});

/// Most reliable path products (MaxMul), weights in [0, 1].
ClosureResult max_reliability(const Graph& g, const SolveOptions& opts = {});

/// Least reliable path products (MinMul), weights in (0, 1]. Any cycle
/// with product < 1 keeps improving, so cyclic instances fail to converge.
ClosureResult min_reliability(const Graph& g, const SolveOptions& opts = {});

/// Transitive closure (OrAnd). Edges count by presence; weights ignored.
ClosureResult transitive_closure(const Graph& g,
                                 const SolveOptions& opts = {});

struct MstResult {
  ClosureResult closure;  // pairwise minimax bottleneck matrix
  double msf_weight = 0.0;
  std::vector<Edge> msf_edges;
};

/// Minimum spanning forest via the MinMax closure: with pairwise distinct
/// weights an edge belongs to the forest exactly when its weight equals
/// the bottleneck between its endpoints. Requires an undirected graph.
/// With extract_edges and duplicate weights, DistinctWeightsRequired is
/// thrown; pass extract_edges = false to get the bottleneck matrix alone.
MstResult mst_bottleneck(const Graph& g, const SolveOptions& opts = {},
                         bool extract_edges = true);

struct KnnResult {
  MatrixBuffer dist2;        // q x r squared distances
  std::vector<int> indices;  // q x k row-major, ties to the lower index
  OpCounters counters;
};

/// K nearest neighbors: one AddNorm pass of points (q x d) against the
/// transposed refs (r x d) with a zero seed gives all squared distances;
/// selection then picks the k smallest per query. No iteration involved.
KnnResult knn(const MatrixBuffer& points, const MatrixBuffer& refs, int k,
              const SolveOptions& opts = {});

}  // namespace smx
