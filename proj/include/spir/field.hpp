#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spir/error.hpp"

namespace spir {

// Prime modulus of the symbol alphabet. Primality is established at
// construction by trial division; moduli above 2^16 are rejected.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint32_t q);

  std::uint32_t value() const { return q_; }

  bool operator==(const PrimeModulus&) const = default;

 private:
  std::uint32_t q_;
};

// One symbol of F_q. Elements remember their modulus and refuse to mix with
// elements of a different field.
class FieldElement {
 public:
  FieldElement(std::uint32_t value, PrimeModulus modulus);

  static FieldElement zero(PrimeModulus modulus) { return {0, modulus}; }
  static FieldElement one(PrimeModulus modulus) { return {1 % modulus.value(), modulus}; }

  std::uint32_t value() const { return value_; }
  PrimeModulus modulus() const { return modulus_; }

  bool operator==(const FieldElement&) const = default;

 private:
  std::uint32_t value_;
  PrimeModulus modulus_;
};

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator*(FieldElement a, FieldElement b);

// constant + sum(coeffs[i] * vars[i]) over F_q.
FieldElement eval_affine(std::span<const FieldElement> coeffs,
                         std::span<const FieldElement> vars,
                         FieldElement constant);

}  // namespace spir
