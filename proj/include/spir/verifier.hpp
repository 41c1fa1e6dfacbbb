#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spir/ensemble.hpp"
#include "spir/scheme.hpp"

namespace spir {

// Ceiling on exhaustively enumerated outcomes per experiment. Chosen so every
// desk-scale run stays sub-second; larger requests fail loudly instead of
// grinding.
inline constexpr long long kEnumerationGuard = 10'000'000;

// The exact joint experiment for retrieving message k (1-based): the user's
// pair choice F (uniform over pairs()[k-1]), the induced queries Q1/Q2, the
// uniform i.i.d. messages W1..WK and common randomness R, and the
// deterministic answers A1/A2. Variables, in order:
//   F, Q1, Q2, A1, A2, W1..WK, R
// F and Q1/Q2 are label indices; A1/A2/Wk/R encode symbol tuples in base q.
// Throws EnumerationLimitError when |pairs| * q^(K L) * q^rho > max_outcomes.
JointDistribution build_experiment(const Scheme& s, int message_index,
                                   long long max_outcomes = kEnumerationGuard);

struct CheckResult {
  bool pass = false;
  std::string witness;  // non-empty iff the check failed

  bool operator==(const CheckResult&) const = default;
};

struct UserPrivacyResult {
  CheckResult db1;
  CheckResult db2;

  bool pass() const { return db1.pass && db2.pass; }
};

// H(W_k | F, A1, A2) = 0 for every k, decided exactly.
CheckResult check_reliability(const Scheme& s, long long max_outcomes = kEnumerationGuard);

// Per database n: the joint distribution of (Qn, An, W1..WK, R) is identical
// under every retrieval index, decided by exact table comparison.
UserPrivacyResult check_user_privacy(const Scheme& s, long long max_outcomes = kEnumerationGuard);

// I(W_kbar ; F, A1, A2) = 0 for every k, decided by exact factorization.
CheckResult check_database_privacy(const Scheme& s, long long max_outcomes = kEnumerationGuard);

struct VerificationReport {
  std::string scheme_name;
  CheckResult reliability;
  CheckResult user_privacy_db1;
  CheckResult user_privacy_db2;
  CheckResult database_privacy;
  double upload_bits = 0.0;
  double download_bits = 0.0;
  double randomness_bits = 0.0;

  bool all_pass() const {
    return reliability.pass && user_privacy_db1.pass && user_privacy_db2.pass &&
           database_privacy.pass;
  }

  bool operator==(const VerificationReport&) const = default;
};

// All three checks plus the cost lines.
VerificationReport full_report(const Scheme& s, long long max_outcomes = kEnumerationGuard);

// One decodable row: choosing pair_index for message k and observing the two
// answer tuples pins the message value down to message_value.
struct DecodeEntry {
  int pair_index;
  std::vector<std::uint32_t> answer1;
  std::vector<std::uint32_t> answer2;
  std::uint32_t message_value;  // base-q encoding of the L symbols

  bool operator==(const DecodeEntry&) const = default;
};

struct DecodeTable {
  int message_index = 0;
  std::vector<DecodeEntry> entries;
};

// Brute-force decoder construction for message k, built by direct enumeration
// (independently of build_experiment and the ensemble checks). Succeeds iff
// every reachable (pair, answers) combination determines W_k; an ambiguous
// combination raises Error with the conflicting values.
DecodeTable build_decode_table(const Scheme& s, int message_index,
                               long long max_outcomes = kEnumerationGuard);

// The decode-table oracle's verdict on the whole scheme: true iff
// build_decode_table succeeds for every message index.
bool decode_table_exists(const Scheme& s, long long max_outcomes = kEnumerationGuard);

}  // namespace spir
