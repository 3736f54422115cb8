#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string_view>

#include "smx/errors.hpp"
#include "smx/fp16.hpp"

namespace smx {

/// The nine supported combine/accumulate pairs. Names read accumulate-first:
/// MinPlus accumulates with min and combines operands with +.
enum class Opcode {
  PlusMul,  // +, *            ordinary matrix multiply
  MinPlus,  // min, +          shortest path
  MaxPlus,  // max, +          longest / critical path
  MinMul,   // min, *          minimum reliability
  MaxMul,   // max, *          maximum reliability
  MinMax,   // min, max        minimax / bottleneck spanning
  MaxMin,   // max, min        maximin / widest capacity
  OrAnd,    // or, and         reachability on {0, 1}
  AddNorm,  // +, |a - b|^2    pairwise squared L2 distance
};

inline constexpr std::array<Opcode, 9> kAllOpcodes = {
    Opcode::PlusMul, Opcode::MinPlus, Opcode::MaxPlus,
    Opcode::MinMul,  Opcode::MaxMul,  Opcode::MinMax,
    Opcode::MaxMin,  Opcode::OrAnd,   Opcode::AddNorm,
};

/// Exact32 keeps every value in 32-bit floats end to end. Mixed16 rounds the
/// two combine operands to half precision first and accumulates in 32-bit,
/// matching hardware that multiplies fp16 inputs into fp32 accumulators.
enum class PrecisionMode { Exact32, Mixed16 };

std::string_view opcode_name(Opcode op);
std::string_view precision_name(PrecisionMode mode);

/// The accumulate identity plus the values used to pad partial tiles.
/// Padding is chosen so padded lanes contribute the identity and vanish.
/// AddNorm is the one pairwise case: only pad_a paired with pad_b vanishes.
struct IdentityAndPadding {
  float identity;
  float pad_a;
  float pad_b;
};

namespace detail {

inline constexpr float kInf = std::numeric_limits<float>::infinity();

/// Compile-time view of one opcode. The accumulator is always the first
/// oplus argument; min/max then keep the accumulator's bits on ties, which
/// makes converged fixpoints bit-stable.
template <Opcode Op>
struct OpTraits;

template <>
struct OpTraits<Opcode::PlusMul> {
  static constexpr float identity = 0.0f, pad_a = 0.0f, pad_b = 0.0f;
  static float oplus(float acc, float x) { return acc + x; }
  static float otimes(float a, float b) { return a * b; }
  static bool in_domain(float x) { return std::isfinite(x); }
};

template <>
struct OpTraits<Opcode::MinPlus> {
  static constexpr float identity = kInf, pad_a = kInf, pad_b = kInf;
  static float oplus(float acc, float x) { return std::min(acc, x); }
  static float otimes(float a, float b) { return a + b; }
  static bool in_domain(float x) { return !std::isnan(x) && x != -kInf; }
};

template <>
struct OpTraits<Opcode::MaxPlus> {
  static constexpr float identity = -kInf, pad_a = -kInf, pad_b = -kInf;
  static float oplus(float acc, float x) { return std::max(acc, x); }
  static float otimes(float a, float b) { return a + b; }
  static bool in_domain(float x) { return !std::isnan(x) && x != kInf; }
};

template <>
struct OpTraits<Opcode::MinMul> {
  static constexpr float identity = kInf, pad_a = kInf, pad_b = kInf;
  static float oplus(float acc, float x) { return std::min(acc, x); }
  static float otimes(float a, float b) { return a * b; }
  static bool in_domain(float x) { return x > 0.0f && !std::isnan(x); }
};

template <>
struct OpTraits<Opcode::MaxMul> {
  static constexpr float identity = 0.0f, pad_a = 0.0f, pad_b = 0.0f;
  static float oplus(float acc, float x) { return std::max(acc, x); }
  static float otimes(float a, float b) { return a * b; }
  static bool in_domain(float x) { return std::isfinite(x) && x >= 0.0f; }
};

template <>
struct OpTraits<Opcode::MinMax> {
  static constexpr float identity = kInf, pad_a = kInf, pad_b = kInf;
  static float oplus(float acc, float x) { return std::min(acc, x); }
  static float otimes(float a, float b) { return std::max(a, b); }
  static bool in_domain(float x) { return !std::isnan(x); }
};

template <>
struct OpTraits<Opcode::MaxMin> {
  static constexpr float identity = -kInf, pad_a = -kInf, pad_b = -kInf;
  static float oplus(float acc, float x) { return std::max(acc, x); }
  static float otimes(float a, float b) { return std::min(a, b); }
  static bool in_domain(float x) { return !std::isnan(x); }
};

template <>
struct OpTraits<Opcode::OrAnd> {
  static constexpr float identity = 0.0f, pad_a = 0.0f, pad_b = 0.0f;
  static float oplus(float acc, float x) { return std::max(acc, x); }
  static float otimes(float a, float b) { return std::min(a, b); }
  static bool in_domain(float x) { return x == 0.0f || x == 1.0f; }
};

template <>
struct OpTraits<Opcode::AddNorm> {
  static constexpr float identity = 0.0f, pad_a = 0.0f, pad_b = 0.0f;
  static float oplus(float acc, float x) { return acc + x; }
  static float otimes(float a, float b) { return (a - b) * (a - b); }
  static bool in_domain(float x) { return std::isfinite(x); }
};

/// Calls fn.template operator()<Op>() for the runtime opcode.
template <typename Fn>
decltype(auto) dispatch_opcode(Opcode op, Fn&& fn) {
  switch (op) {
    case Opcode::PlusMul: return fn.template operator()<Opcode::PlusMul>();
    case Opcode::MinPlus: return fn.template operator()<Opcode::MinPlus>();
    case Opcode::MaxPlus: return fn.template operator()<Opcode::MaxPlus>();
    case Opcode::MinMul:  return fn.template operator()<Opcode::MinMul>();
    case Opcode::MaxMul:  return fn.template operator()<Opcode::MaxMul>();
    case Opcode::MinMax:  return fn.template operator()<Opcode::MinMax>();
    case Opcode::MaxMin:  return fn.template operator()<Opcode::MaxMin>();
    case Opcode::OrAnd:   return fn.template operator()<Opcode::OrAnd>();
    case Opcode::AddNorm: return fn.template operator()<Opcode::AddNorm>();
  }
  throw ConfigError("unknown opcode");
}

}  // namespace detail

/// Runtime handle for one of the nine operations. Cheap to copy; all the
/// scalar semantics live here so every layer above shares one definition.
class SemiringOp {
 public:
  constexpr explicit SemiringOp(Opcode op) : opcode_(op) {}

  constexpr Opcode opcode() const { return opcode_; }
  std::string_view name() const { return opcode_name(opcode_); }

  /// Accumulate. The accumulator goes first; ties keep its bits.
  float oplus(float acc, float x) const;

  /// Combine two operands. No domain checks and no rounding here; the
  /// checked entry points below add those.
  float otimes(float a, float b) const;

  float oplus_identity() const;
  IdentityAndPadding identity_and_padding() const;

  /// True when x is a value this op is defined on (identity included).
  bool in_domain(float x) const;

  /// The seven opcodes with a graph encoding and an iterative closure.
  bool closure_capable() const {
    return opcode_ != Opcode::PlusMul && opcode_ != Opcode::AddNorm;
  }

  friend bool operator==(SemiringOp a, SemiringOp b) {
    return a.opcode_ == b.opcode_;
  }

 private:
  Opcode opcode_;
};

/// Checked scalar accumulate: validates both arguments against the domain.
float scalar_oplus(const SemiringOp& op, float a, float b);

/// Checked scalar combine. In Mixed16 both operands are rounded to half
/// precision first (overflow saturates to infinity); the result must still
/// lie in the op's domain or a DomainError is raised.
float scalar_otimes(const SemiringOp& op, float a, float b,
                    PrecisionMode mode = PrecisionMode::Exact32);

IdentityAndPadding identity_and_padding(Opcode op);

/// Inverse of opcode_name / precision_name; throws ConfigError on unknown.
Opcode opcode_from_name(std::string_view name);
PrecisionMode precision_from_name(std::string_view name);

}  // namespace smx
