#pragma once

#include <cstdint>

namespace smx {

/// Work accounting for the tiled engine. tile_ops counts 16x16x16 (or the
/// configured dimension) fused combine/accumulate tile operations; loads
/// and stores count whole tiles moved. Workers keep private copies that are
/// merged after a parallel region, so no counter is touched concurrently.
struct OpCounters {
  std::uint64_t tile_ops = 0;
  std::uint64_t loads = 0;
  std::uint64_t stores = 0;
  std::uint64_t iterations = 0;
  double wall_time = 0.0;  // seconds

  void merge(const OpCounters& other) {
    tile_ops += other.tile_ops;
    loads += other.loads;
    stores += other.stores;
    iterations += other.iterations;
    wall_time += other.wall_time;
  }
};

}  // namespace smx
