#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "spir/constructions.hpp"
#include "spir/error.hpp"
#include "spir/scheme.hpp"

using namespace spir;

namespace {

std::vector<FieldElement> bits(const std::string& s) {
  std::vector<FieldElement> out;
  PrimeModulus q2(2);
  for (char c : s) out.emplace_back(static_cast<std::uint32_t>(c - '0'), q2);
  return out;
}

AffineAnswerSpec affine2(const std::string& msg, const std::string& rnd) {
  return {bits(msg), bits(rnd), FieldElement::zero(PrimeModulus(2))};
}

QueryStrategy swap_strategy() {
  return {{"A0", "A1"}, {"B0", "B1"}, {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}}};
}

// Hand-built copy of the two-message scheme: A0 = S, A1 = W1+W2+S,
// B0 = W1+S, B1 = W2+S.
Scheme two_message_scheme() {
  return {"pair_mask",
          {2, 1, PrimeModulus(2)},
          1,
          swap_strategy(),
          {{affine2("00", "1")}, {affine2("11", "1")}},
          {{affine2("10", "1")}, {affine2("01", "1")}}};
}

std::vector<std::uint32_t> values(const std::vector<FieldElement>& elems) {
  std::vector<std::uint32_t> out;
  for (const FieldElement& e : elems) out.push_back(e.value());
  return out;
}

}  // namespace

TEST_CASE("query strategy validates labels") {
  using Pairs = std::vector<QueryStrategy::PairList>;
  CHECK_THROWS_WITH_AS(QueryStrategy({}, {"B"}, Pairs{}),
                       "query spaces must be non-empty", Error);
  CHECK_THROWS_WITH_AS(QueryStrategy({"a b"}, {"B"}, Pairs{}),
                       "x label 'a b' is not a non-empty [A-Za-z0-9_] token", Error);
  CHECK_THROWS_WITH_AS(QueryStrategy({"A", "A"}, {"B"}, Pairs{}),
                       "x label 'A' repeated", Error);
  CHECK_THROWS_WITH_AS(QueryStrategy({"A"}, {"B", ""}, Pairs{}),
                       "y label '' is not a non-empty [A-Za-z0-9_] token", Error);
}

TEST_CASE("query strategy validates pair lists") {
  using Pairs = std::vector<QueryStrategy::PairList>;
  std::vector<std::string> xs = {"A0", "A1"};
  std::vector<std::string> ys = {"B0", "B1"};
  CHECK_THROWS_WITH_AS(QueryStrategy(xs, ys, Pairs{{}}),
                       "strategy for message 1 has no pairs", Error);
  CHECK_THROWS_WITH_AS(QueryStrategy(xs, ys, Pairs{{{0, 0}}, {{0, 2}}}),
                       "strategy for message 2 references an unknown query label", Error);
  CHECK_THROWS_WITH_AS(QueryStrategy(xs, ys, Pairs{{{0, 0}, {0, 0}}}),
                       "strategy for message 1 repeats a pair", Error);
  // x label A0 appears twice on the support, A1 once.
  CHECK_THROWS_WITH_AS(QueryStrategy(xs, ys, Pairs{{{0, 0}, {0, 1}, {1, 0}}}),
                       "strategy for message 1 is not column-uniform over its support",
                       Error);
}

TEST_CASE("pairs are stored sorted so equal strategies compare equal") {
  QueryStrategy a({"A0", "A1"}, {"B0", "B1"}, {{{1, 1}, {0, 0}}, {{1, 0}, {0, 1}}});
  CHECK(a == swap_strategy());
  CHECK(a.pairs()[0] == QueryStrategy::PairList{{0, 0}, {1, 1}});
}

TEST_CASE("label lookup") {
  QueryStrategy s = swap_strategy();
  CHECK(s.x_index("A1") == 1);
  CHECK(s.y_index("B0") == 0);
  CHECK_THROWS_WITH_AS(s.x_index("Z"), "unknown x label 'Z'", Error);
  CHECK_THROWS_WITH_AS(s.y_index("A0"), "unknown y label 'A0'", Error);
}

TEST_CASE("scheme construction validates shapes") {
  MessageSpec msg{2, 1, PrimeModulus(2)};
  auto xans = std::vector<AnswerList>{{affine2("00", "1")}, {affine2("11", "1")}};
  auto yans = std::vector<AnswerList>{{affine2("10", "1")}, {affine2("01", "1")}};

  CHECK_THROWS_WITH_AS(
      Scheme("s", {1, 1, PrimeModulus(2)}, 1, swap_strategy(), xans, yans),
      "message count must be at least 2", Error);
  CHECK_THROWS_WITH_AS(
      Scheme("s", {2, 0, PrimeModulus(2)}, 1, swap_strategy(), xans, yans),
      "message length must be at least 1", Error);
  CHECK_THROWS_WITH_AS(Scheme("s", msg, -1, swap_strategy(), xans, yans),
                       "randomness count must be non-negative", Error);
  CHECK_THROWS_WITH_AS(
      Scheme("s", {3, 1, PrimeModulus(2)}, 1, swap_strategy(), xans, yans),
      "strategy covers 2 messages, expected 3", Error);
  CHECK_THROWS_WITH_AS(
      Scheme("s", msg, 1, swap_strategy(), {{affine2("00", "1")}}, yans),
      "unanswered query label: 2 x labels but 1 answer lists", Error);
  CHECK_THROWS_WITH_AS(
      Scheme("s", msg, 1, swap_strategy(), xans,
             {{affine2("10", "1")}, {affine2("01", "1"), affine2("00", "1")}}),
      "answer length for y label 'B1' differs from the side's fixed length", Error);
  CHECK_THROWS_WITH_AS(
      Scheme("s", msg, 1, swap_strategy(), {{affine2("000", "1")}, {affine2("110", "1")}},
             yans),
      "answer for 'A0' has 3 message coefficients, expected 2", Error);
  CHECK_THROWS_WITH_AS(
      Scheme("s", msg, 1, swap_strategy(), {{affine2("00", "11")}, {affine2("11", "10")}},
             yans),
      "answer for 'A0' has 2 randomness coefficients, expected 1", Error);

  AffineAnswerSpec wrong_field = affine2("00", "1");
  wrong_field.constant = FieldElement::zero(PrimeModulus(3));
  CHECK_THROWS_WITH_AS(
      Scheme("s", msg, 1, swap_strategy(), {{wrong_field}, {affine2("11", "1")}}, yans),
      "answer for 'A0': modulus mismatch", Error);
}

TEST_CASE("answers are the affine forms evaluated on messages and randomness") {
  Scheme s = two_message_scheme();
  for (std::uint32_t w1 : {0u, 1u}) {
    for (std::uint32_t w2 : {0u, 1u}) {
      for (std::uint32_t r : {0u, 1u}) {
        std::vector<FieldElement> w = bits(std::to_string(w1) + std::to_string(w2));
        std::vector<FieldElement> rv = bits(std::to_string(r));
        AnswerPair at_a1b1 = evaluate_answers(s, "A1", "B1", w, rv);
        CHECK(at_a1b1.from_db1[0].value() == (w1 + w2 + r) % 2);
        CHECK(at_a1b1.from_db2[0].value() == (w2 + r) % 2);
        // Database 1's answer minus database 2's recovers W1 on this pair.
        CHECK((at_a1b1.from_db1[0] - at_a1b1.from_db2[0]).value() == w1);
      }
    }
  }
}

TEST_CASE("evaluate_answers validates its inputs") {
  Scheme s = two_message_scheme();
  std::vector<FieldElement> w = bits("10");
  std::vector<FieldElement> r = bits("1");
  CHECK_THROWS_WITH_AS(evaluate_answers(s, "A0", "B0", bits("1"), r),
                       "expected 2 message symbols, got 1", Error);
  CHECK_THROWS_WITH_AS(evaluate_answers(s, "A0", "B0", w, bits("11")),
                       "expected 1 randomness symbols, got 2", Error);
  CHECK_THROWS_WITH_AS(evaluate_answers(s, "A2", "B0", w, r), "unknown x label 'A2'",
                       Error);

  std::vector<FieldElement> w3 = {{1, PrimeModulus(3)}, {0, PrimeModulus(3)}};
  CHECK_THROWS_WITH_AS(evaluate_answers(s, "A0", "B0", w3, r),
                       "message symbol modulus mismatch", Error);
  std::vector<FieldElement> r3 = {{1, PrimeModulus(3)}};
  CHECK_THROWS_WITH_AS(evaluate_answers(s, "A0", "B0", w, r3),
                       "randomness symbol modulus mismatch", Error);
}

TEST_CASE("ternary-query scheme answers match hand evaluation") {
  Scheme s = canonical_scheme(CanonicalName::k3_u2log3);
  // A1 answers (W1+W2+S1, W2+W3+S2); B1 answers W2+S2.
  AnswerPair ap = evaluate_answers(s, "A1", "B1", bits("101"), bits("10"));
  CHECK(values(ap.from_db1) == std::vector<std::uint32_t>{0, 1});
  CHECK(values(ap.from_db2) == std::vector<std::uint32_t>{0});
}

TEST_CASE("four-label scheme answers match hand evaluation") {
  Scheme s = canonical_scheme(CanonicalName::k3_u4);
  // A11 answers W2+W3+S1; B11 answers W1+W2+W3+S1.
  AnswerPair ap = evaluate_answers(s, "A11", "B11", bits("110"), bits("1"));
  CHECK(values(ap.from_db1) == std::vector<std::uint32_t>{0});
  CHECK(values(ap.from_db2) == std::vector<std::uint32_t>{1});

  ap = evaluate_answers(s, "A11", "B11", bits("011"), bits("1"));
  CHECK(values(ap.from_db1) == std::vector<std::uint32_t>{1});
  CHECK(values(ap.from_db2) == std::vector<std::uint32_t>{1});
}

TEST_CASE("raw symbol evaluation matches the element path") {
  Scheme s = two_message_scheme();
  std::vector<std::uint32_t> w = {1, 1};
  std::vector<std::uint32_t> r = {1};
  auto raw = evaluate_answer_symbols(s.answers_x()[1], w, r, 2);
  CHECK(raw == std::vector<std::uint32_t>{1});
  AnswerPair ap = evaluate_answers(s, "A1", "B0", bits("11"), bits("1"));
  CHECK(values(ap.from_db1) == raw);
}

TEST_CASE("costs are bit counts of label spaces, answers, and randomness") {
  Scheme s = two_message_scheme();
  CHECK(upload_cost(s) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(download_cost(s) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(randomness_bits(s) == doctest::Approx(1.0).epsilon(1e-12));

  Scheme t = canonical_scheme(CanonicalName::k3_u2log3);
  CHECK(upload_cost(t) == doctest::Approx(2.0 * std::log2(3.0)).epsilon(1e-12));
  CHECK(download_cost(t) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(randomness_bits(t) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("relabeling queries does not change the evaluated answers") {
  Scheme s = two_message_scheme();
  Scheme renamed("renamed", s.message_spec(), s.randomness_count(),
                 QueryStrategy({"left_0", "left_1"}, {"right_0", "right_1"},
                               s.strategy().pairs()),
                 s.answers_x(), s.answers_y());
  std::vector<FieldElement> w = bits("10");
  std::vector<FieldElement> r = bits("0");
  AnswerPair a = evaluate_answers(s, "A1", "B0", w, r);
  AnswerPair b = evaluate_answers(renamed, "left_1", "right_0", w, r);
  CHECK(values(a.from_db1) == values(b.from_db1));
  CHECK(values(a.from_db2) == values(b.from_db2));
}
