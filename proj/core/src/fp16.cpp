#include "smx/fp16.hpp"

#include <bit>
#include <cmath>

namespace smx {

// Software binary16 conversion so results do not depend on host FPU modes
// or on the availability of F16C. Rounding is round-to-nearest-even,
// including the overflow boundary: magnitudes in (65504, 65520) round down
// to 65504, anything at or above 65520 becomes infinity.
std::uint16_t float_to_half_bits(float x) noexcept {
  const std::uint32_t f = std::bit_cast<std::uint32_t>(x);
  const std::uint16_t sign = static_cast<std::uint16_t>((f >> 16) & 0x8000u);
  const std::uint32_t abs = f & 0x7FFFFFFFu;

  if (abs >= 0x7F800000u) {  // infinity or NaN
    if (abs == 0x7F800000u) return sign | 0x7C00u;
    // NaN: keep the top payload bits, force the quiet bit.
    return static_cast<std::uint16_t>(sign | 0x7C00u | 0x0200u |
                                      ((abs >> 13) & 0x3FFu));
  }

  const std::int32_t e = static_cast<std::int32_t>(abs >> 23) - 127 + 15;
  std::uint32_t man = abs & 0x7FFFFFu;

  if (e >= 31) return sign | 0x7C00u;  // at least 2^16: infinity

  if (e <= 0) {
    // Subnormal half (or zero). The quantum is 2^-24; express the value as
    // a 24-bit integer count of quanta and round the shifted-out bits.
    if (e < -10) return sign;  // below half the smallest subnormal
    man |= 0x800000u;          // make the implicit leading bit explicit
    const int shift = 14 - e;  // 14..24
    std::uint32_t q = man >> shift;
    const std::uint32_t rem = man & ((1u << shift) - 1u);
    const std::uint32_t half = 1u << (shift - 1);
    if (rem > half || (rem == half && (q & 1u))) ++q;
    return static_cast<std::uint16_t>(sign | q);  // carry rolls into exponent
  }

  // Normal half: drop 13 mantissa bits with round-to-nearest-even. A carry
  // out of the mantissa bumps the exponent, and 0x7BFF + 1 == 0x7C00 turns
  // the overflow case into infinity exactly at the 65520 boundary.
  std::uint32_t h = (static_cast<std::uint32_t>(e) << 10) | (man >> 13);
  const std::uint32_t rem = man & 0x1FFFu;
  if (rem > 0x1000u || (rem == 0x1000u && (h & 1u))) ++h;
  return static_cast<std::uint16_t>(sign | h);
}

float half_to_float(std::uint16_t h) noexcept {
  const std::uint32_t sign = static_cast<std::uint32_t>(h & 0x8000u) << 16;
  const std::uint32_t exp = (h >> 10) & 0x1Fu;
  std::uint32_t man = h & 0x3FFu;

  std::uint32_t f;
  if (exp == 0) {
    if (man == 0) {
      f = sign;  // signed zero
    } else {
      // Normalize the subnormal: value is man * 2^-24, and after s left
      // shifts the leading bit sits at position 10 with exponent -14 - s.
      int e = -14;
      do {
        man <<= 1;
        --e;
      } while (!(man & 0x400u));
      f = sign | (static_cast<std::uint32_t>(e + 127) << 23) |
          ((man & 0x3FFu) << 13);
    }
  } else if (exp == 31) {
    f = sign | 0x7F800000u | (man << 13);
  } else {
    f = sign | ((exp - 15 + 127) << 23) | (man << 13);
  }
  return std::bit_cast<float>(f);
}

bool half_representable(float x) noexcept {
  const float r = round_to_half(x);
  return std::bit_cast<std::uint32_t>(r) == std::bit_cast<std::uint32_t>(x);
}

float half_ulp(float x) noexcept {
  if (std::isnan(x)) return std::numeric_limits<float>::quiet_NaN();
  if (std::isinf(x)) return std::numeric_limits<float>::infinity();
  const float a = std::fabs(x);
  if (a < 0x1p-14f) return 0x1p-24f;  // subnormal half range
  int e = std::ilogb(a);
  if (e > 15) e = 15;  // beyond the half range the last step is 2^5
  return std::ldexp(1.0f, e - 10);
}

}  // namespace smx
