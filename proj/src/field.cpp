#include "spir/field.hpp"

namespace spir {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_same_modulus(const FieldElement& a, const FieldElement& b) {
  if (a.modulus() != b.modulus()) {
    throw Error("modulus mismatch: " + std::to_string(a.modulus().value()) +
                " vs " + std::to_string(b.modulus().value()));
  }
}

}  // namespace

PrimeModulus::PrimeModulus(std::uint32_t q) : q_(q) {
  if (q > 65536) {
    throw Error("modulus " + std::to_string(q) + " exceeds the supported maximum of 2^16");
  }
  if (!is_prime(q)) {
    throw Error("modulus not prime: " + std::to_string(q));
  }
}

FieldElement::FieldElement(std::uint32_t value, PrimeModulus modulus)
    : value_(value), modulus_(modulus) {
  if (value >= modulus.value()) {
    throw Error("field element " + std::to_string(value) +
                " out of range for modulus " + std::to_string(modulus.value()));
  }
}

FieldElement operator+(FieldElement a, FieldElement b) {
  require_same_modulus(a, b);
  std::uint32_t q = a.modulus().value();
  return {(a.value() + b.value()) % q, a.modulus()};
}

FieldElement operator-(FieldElement a, FieldElement b) {
  require_same_modulus(a, b);
  std::uint32_t q = a.modulus().value();
  return {(a.value() + q - b.value()) % q, a.modulus()};
}

FieldElement operator*(FieldElement a, FieldElement b) {
  require_same_modulus(a, b);
  std::uint64_t q = a.modulus().value();
  std::uint64_t product = std::uint64_t{a.value()} * b.value() % q;
  return {static_cast<std::uint32_t>(product), a.modulus()};
}

FieldElement eval_affine(std::span<const FieldElement> coeffs,
                         std::span<const FieldElement> vars,
                         FieldElement constant) {
  if (coeffs.size() != vars.size()) {
    throw Error("eval_affine: " + std::to_string(coeffs.size()) + " coefficients vs " +
                std::to_string(vars.size()) + " variables");
  }
  FieldElement acc = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc = acc + coeffs[i] * vars[i];
  }
  return acc;
}

}  // namespace spir
