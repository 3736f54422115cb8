#include <cmath>
#include <cstdint>
#include <limits>

#include "doctest.h"
#include "smx/fp16.hpp"

using namespace smx;

namespace {
constexpr float kInf = std::numeric_limits<float>::infinity();
}

TEST_CASE("round_to_half known values") {
  // Ties round to even mantissa: 2049 sits exactly between 2048 and 2050.
  CHECK(round_to_half(2049.0f) == 2048.0f);
  CHECK(round_to_half(2051.0f) == 2052.0f);
  CHECK(round_to_half(2050.0f) == 2050.0f);

  CHECK(round_to_half(1.0f) == 1.0f);
  CHECK(round_to_half(0.5f) == 0.5f);
  CHECK(round_to_half(-3.25f) == -3.25f);
  // 1 + 2^-11 is halfway between 1 and the next half value 1 + 2^-10.
  CHECK(round_to_half(1.0f + 0x1p-11f) == 1.0f);
  CHECK(round_to_half(1.0f + 0x1.8p-11f) == 1.0f + 0x1p-10f);
}

TEST_CASE("round_to_half overflow saturates to infinity") {
  CHECK(round_to_half(65504.0f) == 65504.0f);
  CHECK(round_to_half(65505.0f) == 65504.0f);
  CHECK(round_to_half(65519.9f) == 65504.0f);
  CHECK(round_to_half(65520.0f) == kInf);  // rounds up, overflowing
  CHECK(round_to_half(70000.0f) == kInf);
  CHECK(round_to_half(-70000.0f) == -kInf);
  CHECK(round_to_half(3.0e38f) == kInf);
  CHECK(round_to_half(kInf) == kInf);
  CHECK(round_to_half(-kInf) == -kInf);
}

TEST_CASE("round_to_half subnormal range") {
  CHECK(round_to_half(0x1p-24f) == 0x1p-24f);   // smallest half subnormal
  CHECK(round_to_half(0x1p-25f) == 0.0f);       // halfway to zero, ties even
  CHECK(round_to_half(0x1.8p-25f) == 0x1p-24f); // 3 * 2^-26 rounds up
  CHECK(round_to_half(0x1p-14f) == 0x1p-14f);   // smallest half normal
  CHECK(round_to_half(0x1.ff8p-15f) == 0x1.ff8p-15f);
  CHECK(round_to_half(-0x1p-24f) == -0x1p-24f);
}

TEST_CASE("round_to_half keeps NaN as NaN") {
  CHECK(std::isnan(round_to_half(std::numeric_limits<float>::quiet_NaN())));
}

TEST_CASE("half domain predicate") {
  CHECK(half_representable(1.0f));
  CHECK(half_representable(65504.0f));
  CHECK(half_representable(kInf));
  CHECK(half_representable(0x1p-24f));
  CHECK_FALSE(half_representable(2049.0f));
  CHECK_FALSE(half_representable(0x1p-25f));
  CHECK_FALSE(half_representable(65505.0f));
}

TEST_CASE("half round trip is the identity on every half pattern") {
  for (std::uint32_t h = 0; h < 0x10000; ++h) {
    const auto bits = static_cast<std::uint16_t>(h);
    const float f = half_to_float(bits);
    if (std::isnan(f)) {
      CHECK(std::isnan(round_to_half(f)));
      continue;
    }
    CHECK(round_to_half(f) == f);
    if (f != 0.0f)  // +0 and -0 collapse by value, not by bits
      CHECK(float_to_half_bits(f) == bits);
  }
}

TEST_CASE("half rounding is idempotent on random floats") {
  std::uint32_t state = 0x12345u;
  for (int i = 0; i < 20000; ++i) {
    state = state * 1664525u + 1013904223u;
    float f;
    static_assert(sizeof f == sizeof state);
    __builtin_memcpy(&f, &state, sizeof f);
    if (std::isnan(f)) continue;
    const float once = round_to_half(f);
    CHECK(round_to_half(once) == once);
  }
}

TEST_CASE("half_ulp spot values") {
  CHECK(half_ulp(1.0f) == 0x1p-10f);
  CHECK(half_ulp(2.0f) == 0x1p-9f);
  CHECK(half_ulp(1000.0f) == 0.5f);
  CHECK(half_ulp(65504.0f) == 32.0f);
  CHECK(half_ulp(0.0f) == 0x1p-24f);
  CHECK(half_ulp(0x1p-20f) == 0x1p-24f);  // subnormal spacing is flat
  CHECK(half_ulp(-4.0f) == half_ulp(4.0f));
  CHECK(half_ulp(kInf) == kInf);
  CHECK(std::isnan(half_ulp(std::numeric_limits<float>::quiet_NaN())));
}
