#pragma once

#include <cstdint>

#include "smx/counters.hpp"
#include "smx/matrix.hpp"
#include "smx/tile.hpp"

namespace smx {

struct MmoOptions {
  /// Scan all operand values against the op's domain before computing.
  /// Benchmark paths switch this off; everything else should keep it on.
  bool check_domain = true;
  /// Worker threads for disjoint output tiles; 0 picks the hardware count.
  /// The SEMIRING_MXU_THREADS environment variable caps the result.
  int threads = 0;
};

/// Tiles an m x k by k x n operand pair over ceil(m/N) * ceil(n/N) output
/// tiles, folding ceil(k/N) input tile pairs into each in ascending order.
std::uint64_t tile_op_count(long m, long n, long k);

/// d = c accumulated with (a combined-with b) under op: the tiled engine.
/// d may alias c (the seed tile is loaded before the store); aliasing d
/// with a or b is rejected because their tiles are re-read per output tile.
/// All four buffers must carry the same precision mode. Parallel workers
/// split the output tiles; the k fold stays sequential per tile, so the
/// result is bit-identical for any thread count.
void mmo_into(const SemiringOp& op, const MatrixBuffer& a,
              const MatrixBuffer& b, const MatrixBuffer& c, MatrixBuffer& d,
              OpCounters& counters, const MmoOptions& opts = {});

/// Convenience wrapper returning a fresh result buffer.
MatrixBuffer mmo(const SemiringOp& op, const MatrixBuffer& a,
                 const MatrixBuffer& b, const MatrixBuffer& c,
                 OpCounters& counters, const MmoOptions& opts = {});

/// Untiled scalar reference with the same seeded ascending-k fold. The
/// tiled engine must reproduce it bit for bit; tests lean on that.
MatrixBuffer mmo_reference(const SemiringOp& op, const MatrixBuffer& a,
                           const MatrixBuffer& b, const MatrixBuffer& c);

namespace detail {

void check_mmo_operands(const SemiringOp& op, const MatrixBuffer& a,
                        const MatrixBuffer& b, const MatrixBuffer& c,
                        const MatrixBuffer& d, bool check_domain);
int resolve_thread_count(int requested, long work_items);
void parallel_over(long items, int threads, OpCounters& counters,
                   void (*body)(long begin, long end, OpCounters&, void*),
                   void* ctx);

/// The tiled driver at an explicit tile dimension. Tests instantiate small
/// dimensions to exercise the blocking logic; production code goes through
/// mmo_into, which uses kTileDim.
template <int N>
void mmo_into_tiled(const SemiringOp& op, const MatrixBuffer& a,
                    const MatrixBuffer& b, const MatrixBuffer& c,
                    MatrixBuffer& d, OpCounters& counters,
                    const MmoOptions& opts = {}) {
  check_mmo_operands(op, a, b, c, d, opts.check_domain);
  const long m = a.rows(), n = b.cols(), k = a.cols();
  const PrecisionMode mode = c.mode();
  if (&d != &c) d = MatrixBuffer(m, n, 0.0f, mode);

  const long mt = (m + N - 1) / N;
  const long nt = (n + N - 1) / N;
  const long kt = (k + N - 1) / N;

  struct Ctx {
    const SemiringOp& op;
    const MatrixBuffer &a, &b, &c;
    MatrixBuffer& d;
    PrecisionMode mode;
    long nt, kt;
  } ctx{op, a, b, c, d, mode, nt, kt};

  auto body = [](long begin, long end, OpCounters& local, void* raw) {
    Ctx& x = *static_cast<Ctx*>(raw);
    for (long t = begin; t < end; ++t) {
      const long ti = (t / x.nt) * N;
      const long tj = (t % x.nt) * N;
      BasicTile<N> acc = tile_load<N>(x.c, ti, tj, x.op, x.mode,
                                      TileRole::Accumulator, local);
      for (long tk = 0; tk < x.kt; ++tk) {
        const BasicTile<N> ta = tile_load<N>(x.a, ti, tk * N, x.op, x.mode,
                                             TileRole::InputA, local);
        const BasicTile<N> tb = tile_load<N>(x.b, tk * N, tj, x.op, x.mode,
                                             TileRole::InputB, local);
        acc = tile_mmo<N>(x.op, ta, tb, acc, x.mode, local);
      }
      tile_store<N>(x.d, acc, ti, tj, local);
    }
  };

  const int workers = resolve_thread_count(opts.threads, mt * nt);
  parallel_over(mt * nt, workers, counters, body, &ctx);
}

}  // namespace detail

}  // namespace smx
