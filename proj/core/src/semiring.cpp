#include "smx/semiring.hpp"

#include <string>

namespace smx {

namespace {

std::string domain_message(const SemiringOp& op, float x, const char* where) {
  return std::string(op.name()) + ": value " + std::to_string(x) +
         " outside domain (" + where + ")";
}

}  // namespace

std::string_view opcode_name(Opcode op) {
  switch (op) {
    case Opcode::PlusMul: return "plus-mul";
    case Opcode::MinPlus: return "min-plus";
    case Opcode::MaxPlus: return "max-plus";
    case Opcode::MinMul:  return "min-mul";
    case Opcode::MaxMul:  return "max-mul";
    case Opcode::MinMax:  return "min-max";
    case Opcode::MaxMin:  return "max-min";
    case Opcode::OrAnd:   return "or-and";
    case Opcode::AddNorm: return "add-norm";
  }
  return "unknown";
}

std::string_view precision_name(PrecisionMode mode) {
  return mode == PrecisionMode::Exact32 ? "exact32" : "mixed16";
}

Opcode opcode_from_name(std::string_view name) {
  for (Opcode op : kAllOpcodes) {
    if (opcode_name(op) == name) return op;
  }
  throw ConfigError("unknown opcode name: " + std::string(name));
}

PrecisionMode precision_from_name(std::string_view name) {
  if (name == "exact32") return PrecisionMode::Exact32;
  if (name == "mixed16") return PrecisionMode::Mixed16;
  throw ConfigError("unknown precision name: " + std::string(name));
}

float SemiringOp::oplus(float acc, float x) const {
  return detail::dispatch_opcode(opcode_, [&]<Opcode Op>() {
    return detail::OpTraits<Op>::oplus(acc, x);
  });
}

float SemiringOp::otimes(float a, float b) const {
  return detail::dispatch_opcode(opcode_, [&]<Opcode Op>() {
    return detail::OpTraits<Op>::otimes(a, b);
  });
}

float SemiringOp::oplus_identity() const {
  return detail::dispatch_opcode(opcode_, [&]<Opcode Op>() {
    return detail::OpTraits<Op>::identity;
  });
}

IdentityAndPadding SemiringOp::identity_and_padding() const {
  return detail::dispatch_opcode(opcode_, [&]<Opcode Op>() {
    using T = detail::OpTraits<Op>;
    return IdentityAndPadding{T::identity, T::pad_a, T::pad_b};
  });
}

bool SemiringOp::in_domain(float x) const {
  return detail::dispatch_opcode(opcode_, [&]<Opcode Op>() {
    return detail::OpTraits<Op>::in_domain(x);
  });
}

float scalar_oplus(const SemiringOp& op, float a, float b) {
  if (!op.in_domain(a)) throw DomainError(domain_message(op, a, "oplus lhs"));
  if (!op.in_domain(b)) throw DomainError(domain_message(op, b, "oplus rhs"));
  return op.oplus(a, b);
}

float scalar_otimes(const SemiringOp& op, float a, float b,
                    PrecisionMode mode) {
  if (!op.in_domain(a)) throw DomainError(domain_message(op, a, "otimes lhs"));
  if (!op.in_domain(b)) throw DomainError(domain_message(op, b, "otimes rhs"));
  if (mode == PrecisionMode::Mixed16) {
    a = round_to_half(a);
    b = round_to_half(b);
    // Saturation to infinity can leave the domain (e.g. a huge plus-mul
    // operand); reject instead of letting NaN leak out of 0 * inf.
    if (!op.in_domain(a))
      throw DomainError(domain_message(op, a, "otimes lhs after half round"));
    if (!op.in_domain(b))
      throw DomainError(domain_message(op, b, "otimes rhs after half round"));
  }
  return op.otimes(a, b);
}

IdentityAndPadding identity_and_padding(Opcode op) {
  return SemiringOp(op).identity_and_padding();
}

}  // namespace smx
