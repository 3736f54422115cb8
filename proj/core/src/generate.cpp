#include "smx/generate.hpp"

#include <cmath>
#include <random>
#include <string>
#include <unordered_set>

#include "smx/errors.hpp"

namespace smx {

namespace {

constexpr double kWeightStep = 1.0 / 256.0;

class WeightDrawer {
 public:
  WeightDrawer(const GenOptions& opts, std::mt19937_64& rng)
      : rng_(rng), distinct_(opts.distinct_weights),
        precision_(opts.precision) {
    if (!std::isfinite(opts.wmin) || !std::isfinite(opts.wmax) ||
        opts.wmin > opts.wmax)
      throw ConfigError("weight range is empty or not finite");
    base_ = opts.wmin;
    lattice_points_ =
        static_cast<long>(std::floor((opts.wmax - opts.wmin) / kWeightStep)) +
        1;
  }

  float draw() {
    std::uniform_int_distribution<long> dist(0, lattice_points_ - 1);
    long idx = dist(rng_);
    if (distinct_) {
      if (static_cast<long>(used_.size()) >= lattice_points_)
        throw ConfigError(
            "weight range too narrow for this many distinct weights");
      while (!used_.insert(idx).second) idx = dist(rng_);
    }
    float w = static_cast<float>(base_ + idx * kWeightStep);
    if (precision_ == PrecisionMode::Mixed16) w = round_to_half(w);
    return w;
  }

 private:
  std::mt19937_64& rng_;
  bool distinct_;
  PrecisionMode precision_;
  double base_ = 0.0;
  long lattice_points_ = 1;
  std::unordered_set<long> used_;
};

}  // namespace

GraphKind graph_kind_from_name(std::string_view name) {
  if (name == "erdos_renyi") return GraphKind::ErdosRenyi;
  if (name == "path") return GraphKind::Path;
  if (name == "cycle") return GraphKind::Cycle;
  if (name == "grid") return GraphKind::Grid;
  if (name == "dag_layered") return GraphKind::DagLayered;
  throw ConfigError("unknown graph kind: " + std::string(name));
}

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::ErdosRenyi: return "erdos_renyi";
    case GraphKind::Path: return "path";
    case GraphKind::Cycle: return "cycle";
    case GraphKind::Grid: return "grid";
    case GraphKind::DagLayered: return "dag_layered";
  }
  return "unknown";
}

Graph generate_graph(const GenOptions& opts) {
  if (opts.n < 0) throw ConfigError("vertex count must be non-negative");
  if (opts.density < 0.0 || opts.density > 1.0)
    throw ConfigError("density must lie in [0, 1]");

  std::mt19937_64 rng(opts.seed);
  WeightDrawer weights(opts, rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  Graph g;
  g.n = opts.n;
  g.directed = opts.directed.value_or(opts.kind != GraphKind::Grid);
  if (opts.kind == GraphKind::DagLayered && !g.directed)
    throw ConfigError("dag_layered graphs are directed");

  switch (opts.kind) {
    case GraphKind::Path:
      for (int i = 0; i + 1 < g.n; ++i)
        g.edges.push_back({i, i + 1, weights.draw()});
      break;

    case GraphKind::Cycle:
      for (int i = 0; i + 1 < g.n; ++i)
        g.edges.push_back({i, i + 1, weights.draw()});
      if (g.n >= 2) g.edges.push_back({g.n - 1, 0, weights.draw()});
      break;

    case GraphKind::Grid: {
      const int side =
          g.n > 0 ? static_cast<int>(std::ceil(std::sqrt(double(g.n)))) : 0;
      for (int id = 0; id < g.n; ++id) {
        const int col = side > 0 ? id % side : 0;
        if (col + 1 < side && id + 1 < g.n)
          g.edges.push_back({id, id + 1, weights.draw()});
        if (id + side < g.n)
          g.edges.push_back({id, id + side, weights.draw()});
      }
      break;
    }

    case GraphKind::DagLayered: {
      // Contiguous ids grouped into ~sqrt(n) layers; edges only jump to
      // strictly later layers, so the result is acyclic by construction.
      const int layers =
          std::max(2, static_cast<int>(std::lround(std::sqrt(double(g.n)))));
      auto layer_of = [&](int v) {
        return static_cast<long>(v) * layers / std::max(1, g.n);
      };
      for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
          if (layer_of(u) < layer_of(v) && coin(rng) < opts.density)
            g.edges.push_back({u, v, weights.draw()});
      break;
    }

    case GraphKind::ErdosRenyi:
      for (int u = 0; u < g.n; ++u) {
        const int first = g.directed ? 0 : u + 1;
        for (int v = first; v < g.n; ++v) {
          if (u == v) continue;
          if (coin(rng) < opts.density)
            g.edges.push_back({u, v, weights.draw()});
        }
      }
      break;
  }
  return g;
}

}  // namespace smx
