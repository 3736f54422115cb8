#pragma once

#include <array>
#include <cassert>

#include "smx/counters.hpp"
#include "smx/matrix.hpp"
#include "smx/semiring.hpp"

#ifndef SMX_TILE_DIM
#define SMX_TILE_DIM 16
#endif

namespace smx {

/// Edge length of the square micro-kernel tile. Fixed at configure time;
/// every tiled code path derives its blocking from this one constant.
inline constexpr int kTileDim = SMX_TILE_DIM;

/// What a tile is for. Input tiles are the two combine operands and go
/// through half rounding in Mixed16; the accumulator stays 32-bit.
enum class TileRole { InputA, InputB, Accumulator };

/// Fixed-shape square tile of 32-bit lanes in row-major order.
template <int N>
struct BasicTile {
  static_assert(N > 0);
  static constexpr int dim = N;

  std::array<float, static_cast<std::size_t>(N) * N> v{};
  TileRole role = TileRole::Accumulator;

  float at(int i, int j) const {
    assert(i >= 0 && i < N && j >= 0 && j < N);
    return v[static_cast<std::size_t>(i) * N + j];
  }
  float& at(int i, int j) {
    assert(i >= 0 && i < N && j >= 0 && j < N);
    return v[static_cast<std::size_t>(i) * N + j];
  }
};

using Tile = BasicTile<kTileDim>;

/// Copy the window [row0, row0+N) x [col0, col0+N) of src into a tile.
/// Out-of-range lanes get the op's padding (inputs) or accumulate identity
/// (accumulator), so partial edge tiles behave as if the matrix were padded.
/// In Mixed16 the values of input-role tiles are rounded to half precision.
/// Counts one load.
template <int N>
BasicTile<N> tile_load(const MatrixBuffer& src, long row0, long col0,
                       const SemiringOp& op, PrecisionMode mode, TileRole role,
                       OpCounters& counters) {
  assert(row0 >= 0 && col0 >= 0);
  const IdentityAndPadding pads = op.identity_and_padding();
  const float fill = role == TileRole::InputA      ? pads.pad_a
                     : role == TileRole::InputB    ? pads.pad_b
                                                   : pads.identity;
  const bool round_inputs =
      mode == PrecisionMode::Mixed16 && role != TileRole::Accumulator;

  BasicTile<N> t;
  t.role = role;
  for (int i = 0; i < N; ++i) {
    const long r = row0 + i;
    for (int j = 0; j < N; ++j) {
      const long c = col0 + j;
      float x = (r < src.rows() && c < src.cols()) ? src.at(r, c) : fill;
      if (round_inputs) x = round_to_half(x);
      t.at(i, j) = x;
    }
  }
  ++counters.loads;
  return t;
}

namespace detail {

template <int N, Opcode Op>
BasicTile<N> tile_mmo_impl(const BasicTile<N>& a, const BasicTile<N>& b,
                           const BasicTile<N>& c) {
  using T = OpTraits<Op>;
  BasicTile<N> d;
  d.role = TileRole::Accumulator;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      float acc = c.at(i, j);
      for (int k = 0; k < N; ++k)
        acc = T::oplus(acc, T::otimes(a.at(i, k), b.at(k, j)));
      d.at(i, j) = acc;
    }
  return d;
}

}  // namespace detail

/// One fused tile operation: d(i,j) = fold over ascending k, seeded with
/// c(i,j), of accumulating otimes(a(i,k), b(k,j)). The fold order is fixed,
/// so results are reproducible bit for bit. In Mixed16 the input tiles are
/// already half-rounded by tile_load; accumulation stays 32-bit. Counts one
/// tile_op.
template <int N>
BasicTile<N> tile_mmo(const SemiringOp& op, const BasicTile<N>& a,
                      const BasicTile<N>& b, const BasicTile<N>& c,
                      PrecisionMode mode, OpCounters& counters) {
  if (a.role != TileRole::InputA || b.role != TileRole::InputB ||
      c.role != TileRole::Accumulator)
    throw DomainError("tile_mmo: operand roles must be (InputA, InputB, "
                      "Accumulator)");
  (void)mode;  // inputs carry half-rounded values already in Mixed16
  ++counters.tile_ops;
  return detail::dispatch_opcode(op.opcode(), [&]<Opcode Op>() {
    return detail::tile_mmo_impl<N, Op>(a, b, c);
  });
}

/// Write the tile back to dst at (row0, col0), clipping lanes that fall
/// outside the matrix. Counts one store.
template <int N>
void tile_store(MatrixBuffer& dst, const BasicTile<N>& t, long row0, long col0,
                OpCounters& counters) {
  assert(row0 >= 0 && col0 >= 0);
  for (int i = 0; i < N; ++i) {
    const long r = row0 + i;
    if (r >= dst.rows()) break;
    for (int j = 0; j < N; ++j) {
      const long c = col0 + j;
      if (c >= dst.cols()) break;
      dst.at(r, c) = t.at(i, j);
    }
  }
  ++counters.stores;
}

}  // namespace smx
