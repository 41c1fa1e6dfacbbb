#include <doctest.h>

#include <vector>

#include "spir/error.hpp"
#include "spir/field.hpp"

using namespace spir;

TEST_CASE("prime moduli are accepted") {
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 251u, 65521u}) {
    CHECK(PrimeModulus(q).value() == q);
  }
}

TEST_CASE("composite and degenerate moduli are rejected") {
  CHECK_THROWS_WITH_AS(PrimeModulus(0), "modulus not prime: 0", Error);
  CHECK_THROWS_WITH_AS(PrimeModulus(1), "modulus not prime: 1", Error);
  CHECK_THROWS_WITH_AS(PrimeModulus(4), "modulus not prime: 4", Error);
  CHECK_THROWS_WITH_AS(PrimeModulus(6), "modulus not prime: 6", Error);
  CHECK_THROWS_WITH_AS(PrimeModulus(65535), "modulus not prime: 65535", Error);
}

TEST_CASE("oversized moduli are rejected before the primality test") {
  // 65537 is prime but over the 2^16 cap; the size check must win.
  CHECK_THROWS_WITH_AS(PrimeModulus(65537),
                       "modulus 65537 exceeds the supported maximum of 2^16", Error);
  CHECK_THROWS_WITH_AS(PrimeModulus(100000),
                       "modulus 100000 exceeds the supported maximum of 2^16", Error);
}

TEST_CASE("field elements must lie in range") {
  PrimeModulus q3(3);
  CHECK(FieldElement(2, q3).value() == 2);
  CHECK_THROWS_WITH_AS(FieldElement(3, q3), "field element 3 out of range for modulus 3",
                       Error);
  CHECK_THROWS_WITH_AS(FieldElement(7, q3), "field element 7 out of range for modulus 3",
                       Error);
}

TEST_CASE("zero and one constructors") {
  PrimeModulus q2(2), q5(5);
  CHECK(FieldElement::zero(q5) == FieldElement(0, q5));
  CHECK(FieldElement::one(q5) == FieldElement(1, q5));
  CHECK(FieldElement::one(q2) == FieldElement(1, q2));
}

TEST_CASE("arithmetic wraps modulo q") {
  PrimeModulus q5(5);
  FieldElement a(3, q5), b(4, q5);
  CHECK((a + b).value() == 2);
  CHECK((a - b).value() == 4);
  CHECK((b - a).value() == 1);
  CHECK((a * b).value() == 2);
  CHECK((a * FieldElement::zero(q5)).value() == 0);
}

TEST_CASE("mixed moduli refuse to combine") {
  FieldElement a(1, PrimeModulus(2));
  FieldElement b(1, PrimeModulus(3));
  CHECK_THROWS_WITH_AS(a + b, "modulus mismatch: 2 vs 3", Error);
  CHECK_THROWS_WITH_AS(a - b, "modulus mismatch: 2 vs 3", Error);
  CHECK_THROWS_WITH_AS(a * b, "modulus mismatch: 2 vs 3", Error);
}

TEST_CASE("field laws hold exhaustively for small q") {
  for (std::uint32_t qv : {2u, 3u, 5u}) {
    PrimeModulus q(qv);
    for (std::uint32_t i = 0; i < qv; ++i) {
      for (std::uint32_t j = 0; j < qv; ++j) {
        FieldElement a(i, q), b(j, q);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        for (std::uint32_t k = 0; k < qv; ++k) {
          FieldElement c(k, q);
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
      }
    }
  }
}

TEST_CASE("eval_affine computes constant + dot product") {
  PrimeModulus q5(5);
  std::vector<FieldElement> coeffs = {{2, q5}, {3, q5}, {0, q5}};
  std::vector<FieldElement> vars = {{1, q5}, {4, q5}, {2, q5}};
  // 1 + 2*1 + 3*4 + 0*2 = 15 = 0 mod 5
  CHECK(eval_affine(coeffs, vars, FieldElement(1, q5)) == FieldElement(0, q5));
  CHECK(eval_affine(coeffs, vars, FieldElement(3, q5)) == FieldElement(2, q5));
}

TEST_CASE("eval_affine is linear in the variables") {
  PrimeModulus q3(3);
  std::vector<FieldElement> coeffs = {{1, q3}, {2, q3}};
  FieldElement zero = FieldElement::zero(q3);
  for (std::uint32_t u0 = 0; u0 < 3; ++u0) {
    for (std::uint32_t u1 = 0; u1 < 3; ++u1) {
      for (std::uint32_t v0 = 0; v0 < 3; ++v0) {
        for (std::uint32_t v1 = 0; v1 < 3; ++v1) {
          std::vector<FieldElement> u = {{u0, q3}, {u1, q3}};
          std::vector<FieldElement> v = {{v0, q3}, {v1, q3}};
          std::vector<FieldElement> sum = {u[0] + v[0], u[1] + v[1]};
          CHECK(eval_affine(coeffs, sum, zero) ==
                eval_affine(coeffs, u, zero) + eval_affine(coeffs, v, zero));
        }
      }
    }
  }
}

TEST_CASE("eval_affine arity mismatch is an error") {
  PrimeModulus q2(2);
  std::vector<FieldElement> coeffs = {{1, q2}, {1, q2}};
  std::vector<FieldElement> vars = {{1, q2}};
  CHECK_THROWS_WITH_AS(eval_affine(coeffs, vars, FieldElement::zero(q2)),
                       "eval_affine: 2 coefficients vs 1 variables", Error);
}
