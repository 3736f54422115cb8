#include "smx/graph.hpp"

#include <string>

#include "smx/errors.hpp"

namespace smx {

void validate_indices(const Graph& g) {
  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
      throw IndexError("edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") outside vertex range [0, " +
                       std::to_string(g.n) + ")");
  }
}

bool is_dag(const Graph& g) {
  validate_indices(g);
  if (!g.directed) return g.edges.empty();

  std::vector<std::vector<int>> adj(g.n);
  std::vector<int> indegree(g.n, 0);
  for (const Edge& e : g.edges) {
    if (e.u == e.v) return false;  // self-loop is a cycle
    adj[e.u].push_back(e.v);
    ++indegree[e.v];
  }

  std::vector<int> ready;
  for (int v = 0; v < g.n; ++v)
    if (indegree[v] == 0) ready.push_back(v);

  int seen = 0;
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    ++seen;
    for (int v : adj[u])
      if (--indegree[v] == 0) ready.push_back(v);
  }
  return seen == g.n;
}

}  // namespace smx
