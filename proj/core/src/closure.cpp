#include "smx/closure.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "smx/errors.hpp"

namespace smx {

namespace {

constexpr float kInf = std::numeric_limits<float>::infinity();

float diagonal_value(Opcode op) {
  // The combine-neutral element: the weight of the empty path.
  switch (op) {
    case Opcode::MinPlus:
    case Opcode::MaxPlus: return 0.0f;
    case Opcode::MinMul:
    case Opcode::MaxMul:
    case Opcode::OrAnd:  return 1.0f;
    case Opcode::MinMax: return -kInf;
    case Opcode::MaxMin: return kInf;
    default:
      throw DomainError("encode: no graph closure form for this op");
  }
}

void check_edge_weight(const SemiringOp& op, float w) {
  if (!std::isfinite(w))
    throw DomainError(std::string(op.name()) + ": edge weight " +
                      std::to_string(w) + " must be finite");
  switch (op.opcode()) {
    case Opcode::MinMul:
      if (w <= 0.0f || w > 1.0f)
        throw DomainError("min-mul: reliability weight " + std::to_string(w) +
                          " outside (0, 1]");
      break;
    case Opcode::MaxMul:
      if (w < 0.0f || w > 1.0f)
        throw DomainError("max-mul: reliability weight " + std::to_string(w) +
                          " outside [0, 1]");
      break;
    case Opcode::OrAnd:
      if (w != 0.0f && w != 1.0f)
        throw DomainError("or-and: edge weight " + std::to_string(w) +
                          " must be 0 or 1");
      break;
    default:
      break;
  }
}

long default_max_iter(ClosureAlgo algo, long n, PrecisionMode mode) {
  long bound;
  if (algo == ClosureAlgo::BellmanFord) {
    bound = n;
  } else {
    // ceil(log2 n) + 1; bit_width(n - 1) is ceil(log2 n) for n > 1.
    const long lg =
        n > 1 ? std::bit_width(static_cast<std::uint64_t>(n) - 1) : 0;
    bound = lg + 1;
  }
  // The half data path re-rounds intermediate values at every pass
  // boundary, so entries can keep inching across half-ulp boundaries for a
  // few passes after the path horizon is covered. Budget a second settle
  // phase of the same length.
  return mode == PrecisionMode::Mixed16 ? 2 * bound : bound;
}

ClosureResult run_closure(const SemiringOp& op, const MatrixBuffer& w,
                          ClosureAlgo algo, const SolveOptions& opts) {
  if (w.rows() != w.cols())
    throw ShapeError("closure: matrix must be square");
  const long n = w.rows();
  const long max_iter =
      opts.max_iter > 0 ? opts.max_iter : default_max_iter(algo, n, w.mode());
  const MmoOptions mopts{opts.check_domain, opts.threads};

  const auto start = std::chrono::steady_clock::now();
  ClosureResult result;
  result.matrix = w;
  if (n == 0) {
    result.converged = true;
    return result;
  }

  MatrixBuffer next(n, n, 0.0f, w.mode());
  while (result.iterations < max_iter) {
    if (algo == ClosureAlgo::Leyzorek)
      mmo_into(op, result.matrix, result.matrix, result.matrix, next,
               result.counters, mopts);
    else
      mmo_into(op, result.matrix, w, result.matrix, next, result.counters,
               mopts);
    ++result.iterations;
    result.counters.iterations = result.iterations;
    const bool changed = check_convergence(next, result.matrix, w.mode());
    std::swap(result.matrix, next);
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  result.counters.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!result.converged)
    throw NonConvergence(std::string(op.name()) + " closure still changing " +
                             "after " + std::to_string(result.iterations) +
                             " iterations",
                         result.iterations);
  return result;
}

ClosureResult solve_encoded(const Graph& g, Opcode opcode,
                            const SolveOptions& opts) {
  const SemiringOp op(opcode);
  const MatrixBuffer w = encode(g, op, opts.precision);
  return run_closure(op, w, opts.algo, opts);
}

}  // namespace

MatrixBuffer encode(const Graph& g, const SemiringOp& op, PrecisionMode mode) {
  if (!op.closure_capable())
    throw DomainError(std::string(op.name()) +
                      " has no graph closure form to encode");
  validate_indices(g);

  const float absent = op.oplus_identity();
  const float diag = diagonal_value(op.opcode());
  MatrixBuffer w(g.n, g.n, absent, mode);
  for (int i = 0; i < g.n; ++i) w.at(i, i) = diag;

  for (const Edge& e : g.edges) {
    check_edge_weight(op, e.w);
    w.at(e.u, e.v) = op.oplus(w.at(e.u, e.v), e.w);
    if (!g.directed) w.at(e.v, e.u) = op.oplus(w.at(e.v, e.u), e.w);
  }
  return w;
}

bool check_convergence(const MatrixBuffer& curr, const MatrixBuffer& prev,
                       PrecisionMode mode) {
  if (!curr.same_shape(prev))
    throw ShapeError("check_convergence: shapes differ");
  const auto& cv = curr.values();
  const auto& pv = prev.values();
  if (mode == PrecisionMode::Mixed16) {
    for (std::size_t i = 0; i < cv.size(); ++i)
      if (float_to_half_bits(cv[i]) != float_to_half_bits(pv[i])) return true;
    return false;
  }
  for (std::size_t i = 0; i < cv.size(); ++i)
    if (std::bit_cast<std::uint32_t>(cv[i]) !=
        std::bit_cast<std::uint32_t>(pv[i]))
      return true;
  return false;
}

ClosureResult closure_bellman_ford(const SemiringOp& op, const MatrixBuffer& w,
                                   const SolveOptions& opts) {
  return run_closure(op, w, ClosureAlgo::BellmanFord, opts);
}

ClosureResult closure_leyzorek(const SemiringOp& op, const MatrixBuffer& w,
                               const SolveOptions& opts) {
  return run_closure(op, w, ClosureAlgo::Leyzorek, opts);
}

ClosureResult apsp(const Graph& g, const SolveOptions& opts) {
  return solve_encoded(g, Opcode::MinPlus, opts);
}

ClosureResult aplp(const Graph& g, const SolveOptions& opts) {
  if (!is_dag(g))
    throw DagRequired("aplp: longest paths need an acyclic digraph");
  return solve_encoded(g, Opcode::MaxPlus, opts);
}

ClosureResult max_capacity(const Graph& g, const SolveOptions& opts) {
  return solve_encoded(g, Opcode::MaxMin, opts);
}

ClosureResult max_reliability(const Graph& g, const SolveOptions& opts) {
  return solve_encoded(g, Opcode::MaxMul, opts);
}

ClosureResult min_reliability(const Graph& g, const SolveOptions& opts) {
  return solve_encoded(g, Opcode::MinMul, opts);
}

ClosureResult transitive_closure(const Graph& g, const SolveOptions& opts) {
  Graph presence = g;
  for (Edge& e : presence.edges) e.w = 1.0f;
  return solve_encoded(presence, Opcode::OrAnd, opts);
}

MstResult mst_bottleneck(const Graph& g, const SolveOptions& opts,
                         bool extract_edges) {
  if (g.directed)
    throw DomainError("mst_bottleneck: graph must be undirected");

  MstResult result;
  result.closure = solve_encoded(g, Opcode::MinMax, opts);
  if (!extract_edges) return result;

  std::unordered_set<std::uint32_t> seen;
  for (const Edge& e : g.edges) {
    if (e.u == e.v) continue;  // never a tree edge
    if (!seen.insert(std::bit_cast<std::uint32_t>(e.w)).second)
      throw DistinctWeightsRequired(
          "mst_bottleneck: edge recovery needs pairwise distinct weights "
          "(duplicate " +
          std::to_string(e.w) + ")");
  }

  for (const Edge& e : g.edges) {
    if (e.u == e.v) continue;
    // With distinct weights, e is a forest edge exactly when it is the
    // bottleneck between its own endpoints.
    if (result.closure.matrix.at(e.u, e.v) == e.w)
      result.msf_edges.push_back(e);
  }
  std::sort(result.msf_edges.begin(), result.msf_edges.end(),
            [](const Edge& a, const Edge& b) { return a.w < b.w; });
  for (const Edge& e : result.msf_edges)
    result.msf_weight += static_cast<double>(e.w);
  return result;
}

KnnResult knn(const MatrixBuffer& points, const MatrixBuffer& refs, int k,
              const SolveOptions& opts) {
  if (points.cols() != refs.cols())
    throw ShapeError("knn: point dimensions differ (" +
                     std::to_string(points.cols()) + " vs " +
                     std::to_string(refs.cols()) + ")");
  if (k < 1 || k > refs.rows())
    throw ConfigError("knn: k = " + std::to_string(k) +
                      " must be in [1, " + std::to_string(refs.rows()) + "]");

  const auto start = std::chrono::steady_clock::now();
  const long q = points.rows(), r = refs.rows();
  const SemiringOp op(Opcode::AddNorm);
  const MmoOptions mopts{opts.check_domain, opts.threads};

  MatrixBuffer a = points;
  a.set_mode(opts.precision);
  MatrixBuffer bt = transpose(refs);
  bt.set_mode(opts.precision);
  const MatrixBuffer seed(q, r, 0.0f, opts.precision);

  KnnResult result;
  result.dist2 = mmo(op, a, bt, seed, result.counters, mopts);
  result.counters.iterations = 1;  // a single pass, no closure iteration

  result.indices.resize(static_cast<std::size_t>(q) * k);
  std::vector<int> order(r);
  for (long i = 0; i < q; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int x, int y) {
                        const float dx = result.dist2.at(i, x);
                        const float dy = result.dist2.at(i, y);
                        return dx < dy || (dx == dy && x < y);
                      });
    for (int t = 0; t < k; ++t) result.indices[i * k + t] = order[t];
  }
  result.counters.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace smx
