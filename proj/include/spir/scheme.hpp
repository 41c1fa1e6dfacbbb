#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spir/field.hpp"

namespace spir {

// Message book shape: K messages of L symbols each over F_q.
struct MessageSpec {
  int message_count;   // K >= 2
  int message_length;  // L >= 1
  PrimeModulus modulus;

  bool operator==(const MessageSpec&) const = default;
};

// Per-index randomized query strategy. For message k the user draws one
// (x, y) pair uniformly from pairs()[k-1] and sends x to database 1 and y to
// database 2. Pairs are stored sorted, so equal strategies compare equal.
class QueryStrategy {
 public:
  using PairList = std::vector<std::pair<int, int>>;

  // Validates label well-formedness and uniqueness, pair references and
  // distinctness, and the per-index necessary condition for user privacy:
  // within each pair list, every x label on its support appears equally
  // often, and likewise every y label. (Full user privacy is distributional
  // and is decided by the verifier.)
  QueryStrategy(std::vector<std::string> space_x, std::vector<std::string> space_y,
                std::vector<PairList> pairs_by_message);

  const std::vector<std::string>& space_x() const { return space_x_; }
  const std::vector<std::string>& space_y() const { return space_y_; }
  const std::vector<PairList>& pairs() const { return pairs_; }
  int message_count() const { return static_cast<int>(pairs_.size()); }

  int x_index(const std::string& label) const;
  int y_index(const std::string& label) const;

  bool operator==(const QueryStrategy&) const = default;

 private:
  std::vector<std::string> space_x_;
  std::vector<std::string> space_y_;
  std::vector<PairList> pairs_;
};

// One answer symbol as an affine map over the K*L message symbols (message-
// major order) and the rho common-randomness symbols.
struct AffineAnswerSpec {
  std::vector<FieldElement> message_coeffs;
  std::vector<FieldElement> randomness_coeffs;
  FieldElement constant;

  bool operator==(const AffineAnswerSpec&) const = default;
};

using AnswerList = std::vector<AffineAnswerSpec>;

// A complete two-database SPIR scheme: messages, common randomness, query
// strategy, and one fixed-length affine answer list per query label.
// Immutable after construction.
class Scheme {
 public:
  Scheme(std::string name, MessageSpec msg, int randomness_count, QueryStrategy strategy,
         std::vector<AnswerList> answers_x, std::vector<AnswerList> answers_y);

  const std::string& name() const { return name_; }
  const MessageSpec& message_spec() const { return msg_; }
  int message_count() const { return msg_.message_count; }
  int message_length() const { return msg_.message_length; }
  PrimeModulus modulus() const { return msg_.modulus; }
  int randomness_count() const { return rho_; }
  const QueryStrategy& strategy() const { return strategy_; }
  const std::vector<AnswerList>& answers_x() const { return answers_x_; }
  const std::vector<AnswerList>& answers_y() const { return answers_y_; }

  int answer_length_x() const { return static_cast<int>(answers_x_.front().size()); }
  int answer_length_y() const { return static_cast<int>(answers_y_.front().size()); }

  bool operator==(const Scheme&) const = default;

 private:
  std::string name_;
  MessageSpec msg_;
  int rho_;
  QueryStrategy strategy_;
  std::vector<AnswerList> answers_x_;
  std::vector<AnswerList> answers_y_;
};

struct AnswerPair {
  std::vector<FieldElement> from_db1;
  std::vector<FieldElement> from_db2;
};

// Deterministic answers of both databases to the query pair (x, y) given the
// stored messages (K*L symbols, message-major) and common randomness.
AnswerPair evaluate_answers(const Scheme& s, const std::string& x_label,
                            const std::string& y_label,
                            std::span<const FieldElement> messages,
                            std::span<const FieldElement> randomness);

// Raw-symbol evaluation by label index; the hot path for exhaustive
// enumeration. Values are symbols in [0, q).
std::vector<std::uint32_t> evaluate_answer_symbols(const AnswerList& specs,
                                                   std::span<const std::uint32_t> messages,
                                                   std::span<const std::uint32_t> randomness,
                                                   std::uint32_t q);

// log2 |X| + log2 |Y| bits.
double upload_cost(const Scheme& s);

// (lenX + lenY) * log2 q bits.
double download_cost(const Scheme& s);

// rho * log2 q bits.
double randomness_bits(const Scheme& s);

}  // namespace spir
