#pragma once

#include <cstdint>

namespace smx {

/// Convert a 32-bit float to IEEE binary16, round-to-nearest-even.
/// Values whose rounded magnitude exceeds the largest finite half (65504)
/// saturate to the half infinity of the same sign; NaN stays NaN.
std::uint16_t float_to_half_bits(float x) noexcept;

/// Widen IEEE binary16 bits back to a 32-bit float. Exact for every input.
float half_to_float(std::uint16_t h) noexcept;

/// Round a 32-bit float to the nearest half-precision value and widen it
/// back. Idempotent: round_to_half(round_to_half(x)) == round_to_half(x).
inline float round_to_half(float x) noexcept {
  return half_to_float(float_to_half_bits(x));
}

/// True when x survives a round trip through half precision unchanged.
bool half_representable(float x) noexcept;

/// Distance between consecutive half-precision values at magnitude |x|,
/// i.e. the quantization step the 16-bit path introduces around x.
float half_ulp(float x) noexcept;

}  // namespace smx
