#include "smx/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "smx/errors.hpp"

namespace smx::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Local double-precision restatement of the closure opcodes. Deliberately
// not shared with the engine's float path.
double ref_oplus(Opcode op, double acc, double x) {
  switch (op) {
    case Opcode::MinPlus:
    case Opcode::MinMul:
    case Opcode::MinMax: return x < acc ? x : acc;
    case Opcode::MaxPlus:
    case Opcode::MaxMul:
    case Opcode::MaxMin: return x > acc ? x : acc;
    default:
      throw DomainError("floyd-warshall oracle: unsupported opcode");
  }
}

double ref_otimes(Opcode op, double a, double b) {
  switch (op) {
    case Opcode::MinPlus:
    case Opcode::MaxPlus: return a + b;
    case Opcode::MinMul:
    case Opcode::MaxMul: return a * b;
    case Opcode::MinMax: return a > b ? a : b;
    case Opcode::MaxMin: return a < b ? a : b;
    default:
      throw DomainError("floyd-warshall oracle: unsupported opcode");
  }
}

}  // namespace

MatrixBuffer generalized_floyd_warshall(Opcode op, const MatrixBuffer& w) {
  if (w.rows() != w.cols())
    throw ShapeError("floyd-warshall oracle: matrix must be square");
  const long n = w.rows();

  std::vector<double> d(w.values().begin(), w.values().end());
  auto cell = [&](long i, long j) -> double& { return d[i * n + j]; };

  for (long k = 0; k < n; ++k)
    for (long i = 0; i < n; ++i) {
      const double dik = cell(i, k);
      for (long j = 0; j < n; ++j)
        cell(i, j) = ref_oplus(op, cell(i, j), ref_otimes(op, dik, cell(k, j)));
    }

  MatrixBuffer out(n, n, 0.0f, w.mode());
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      out.at(i, j) = static_cast<float>(cell(i, j));
  return out;
}

KruskalResult kruskal_bottleneck(const Graph& g) {
  validate_indices(g);
  const int n = g.n;

  std::vector<int> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.edges[a].w < g.edges[b].w;
  });

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  KruskalResult result;
  std::vector<std::vector<std::pair<int, float>>> tree(n);
  for (int idx : order) {
    const Edge& e = g.edges[idx];
    if (e.u == e.v) continue;  // a self-loop never joins components
    const int ru = find(e.u), rv = find(e.v);
    if (ru == rv) continue;
    parent[ru] = rv;
    result.msf_edges.push_back(e);
    result.msf_weight += static_cast<double>(e.w);
    tree[e.u].push_back({e.v, e.w});
    tree[e.v].push_back({e.u, e.w});
  }

  constexpr float inf = std::numeric_limits<float>::infinity();
  result.bottleneck = MatrixBuffer(n, n, inf);
  std::vector<int> stack;
  for (int src = 0; src < n; ++src) {
    result.bottleneck.at(src, src) = -inf;
    stack.push_back(src);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      const float carried = result.bottleneck.at(src, u);
      for (auto [v, w] : tree[u]) {
        if (result.bottleneck.at(src, v) != inf || v == src) continue;
        result.bottleneck.at(src, v) = std::max(carried, w);
        stack.push_back(v);
      }
    }
  }
  return result;
}

MatrixBuffer dfs_reachability(const Graph& g) {
  validate_indices(g);
  const int n = g.n;

  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    if (!g.directed) adj[e.v].push_back(e.u);
  }

  MatrixBuffer reach(n, n, 0.0f);
  std::vector<int> stack;
  for (int src = 0; src < n; ++src) {
    reach.at(src, src) = 1.0f;
    stack.push_back(src);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (reach.at(src, v) != 0.0f) continue;
        reach.at(src, v) = 1.0f;
        stack.push_back(v);
      }
    }
  }
  return reach;
}

BruteKnnResult brute_force_knn(const MatrixBuffer& points,
                               const MatrixBuffer& refs, int k) {
  if (points.cols() != refs.cols())
    throw ShapeError("knn oracle: point dimensions differ");
  const long q = points.rows(), r = refs.rows(), d = points.cols();
  if (k < 1 || k > r)
    throw ConfigError("knn oracle: k must be in [1, refs rows]");

  BruteKnnResult result;
  result.dist2 = MatrixBuffer(q, r);
  result.indices.resize(static_cast<std::size_t>(q) * k);

  std::vector<int> order(r);
  for (long i = 0; i < q; ++i) {
    for (long j = 0; j < r; ++j) {
      double acc = 0.0;
      for (long t = 0; t < d; ++t) {
        const double diff =
            static_cast<double>(points.at(i, t)) - refs.at(j, t);
        acc += diff * diff;
      }
      result.dist2.at(i, j) = static_cast<float>(acc);
    }
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) {
                        const float da = result.dist2.at(i, a);
                        const float db = result.dist2.at(i, b);
                        return da < db || (da == db && a < b);
                      });
    for (int t = 0; t < k; ++t) result.indices[i * k + t] = order[t];
  }
  return result;
}

}  // namespace smx::oracles
