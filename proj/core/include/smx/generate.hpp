#pragma once

#include <cstdint>
#include <optional>

#include "smx/graph.hpp"
#include "smx/semiring.hpp"

namespace smx {

enum class GraphKind { ErdosRenyi, Path, Cycle, Grid, DagLayered };

GraphKind graph_kind_from_name(std::string_view name);
std::string_view graph_kind_name(GraphKind kind);

struct GenOptions {
  GraphKind kind = GraphKind::ErdosRenyi;
  int n = 0;
  double density = 0.3;  // edge probability for the random kinds
  float wmin = 1.0f;     // weights are drawn on a 1/256 lattice in
  float wmax = 10.0f;    // [wmin, wmax] so reference arithmetic in wider
                         // precision reproduces the 32-bit results exactly
  std::uint64_t seed = 0;
  /// Kind default when unset: grid is undirected, the rest directed.
  std::optional<bool> directed;
  /// Assign pairwise distinct weights (needed for spanning-forest edge
  /// recovery). ConfigError if the lattice has too few values.
  bool distinct_weights = false;
  /// Mixed16 rounds every weight to half precision after drawing.
  PrecisionMode precision = PrecisionMode::Exact32;
};

/// Deterministic: the same options produce the same graph on any host.
Graph generate_graph(const GenOptions& opts);

}  // namespace smx
