#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spir/graph.hpp"
#include "spir/scheme.hpp"

namespace spir {

// Which secret (if any) each input pair reveals. Entry codes:
//   k > 0   pair satisfies condition k (reveals secret k),
//   -j < 0  pair belongs to dummy group j (deliberately revealing nothing),
//   0       pair unused by the multi-scheme.
class ConditionTable {
 public:
  // cell (i, j) describes input pair (x_i, y_j); rows indexed by x.
  ConditionTable(int secret_count, std::vector<std::vector<int>> cells);

  int secret_count() const { return secret_count_; }
  int rows() const { return static_cast<int>(cells_.size()); }
  int cols() const { return cells_.empty() ? 0 : static_cast<int>(cells_[0].size()); }
  int at(int x, int y) const { return cells_[x][y]; }
  int dummy_group_count() const { return dummy_group_count_; }

  bool operator==(const ConditionTable&) const = default;

 private:
  int secret_count_;
  int dummy_group_count_;
  std::vector<std::vector<int>> cells_;
};

// All (x, y) with at(x, y) == code, in row-major order.
std::vector<std::pair<int, int>> all_satisfying_pairs(const ConditionTable& t, int code);

// The family of modular conditions on symbol tuples: x and y are s-symbol
// strings over an alphabet of size `base`, and pair (x, y) satisfies
// condition k (1-based, k <= condition_count) when
//   sum_i base^i * ((x_i + y_i) mod base) == k - 1,
// i.e. per-symbol carry-free modular sums combined with positional weights.
// Sums in [condition_count, group_count) land in dummy groups 1, 2, ...;
// sums >= group_count are unused. Requires base^s >= group_count >=
// condition_count >= 1.
ConditionTable modular_conditions(int condition_count, int group_count,
                                  int symbols_per_side, int base);

// The label space the modular table indexes: every length-s digit string
// over {0..base-1} (first character carries the highest weight), each
// prefixed with `prefix`, in table-index order.
std::vector<std::string> modular_labels(int symbols_per_side, int base,
                                        const std::string& prefix);

// One Alice/Bob signal: an affine form over the secrets and the shared
// randomness, same layout as AffineAnswerSpec.
struct CdmsInstance {
  std::string name;
  MessageSpec secrets;  // count, per-secret length, modulus
  int randomness_count = 0;
  ConditionTable conditions;
  std::vector<std::string> labels_x;
  std::vector<std::string> labels_y;
  std::vector<AnswerList> signals_x;  // per x label
  std::vector<AnswerList> signals_y;  // per y label

  bool operator==(const CdmsInstance&) const = default;
};

// Structural validation of a CdmsInstance (label/table/signal shapes agree,
// coefficient arities match). Throws Error on violation.
void validate_cdms(const CdmsInstance& inst);

// The graph of a condition table: one edge per nonzero cell; color = cell
// code (dummy groups come out negative).
ColoredBipartiteGraph graph_from_conditions(const ConditionTable& t,
                                            const std::vector<std::string>& labels_x,
                                            const std::vector<std::string>& labels_y);

// A scheme's pair lists as a condition table (pairs of message k -> code k;
// everything else 0 — a scheme does not distinguish dummy from unused).
ConditionTable conditions_from_scheme(const Scheme& s);

// Configure a CDMS as a retrieval scheme: secrets become messages, signals
// become answers, and carol_strategy[k-1] becomes the query pair list for
// message k. Requires at least two secrets ("K >= 2 required"), and every
// chosen pair must satisfy its condition ("pair does not satisfy f_k").
Scheme spir_from_cdms(const CdmsInstance& inst,
                      const std::vector<QueryStrategy::PairList>& carol_strategy);

// Same, with the full satisfying pair set of every condition as the strategy.
Scheme spir_from_cdms(const CdmsInstance& inst);

// Reinterpret a scheme as the CDMS it configures (inverse of spir_from_cdms
// up to dummy/unused codes).
CdmsInstance cdms_instance_from_scheme(const Scheme& s);

struct CdmsCheckResult {
  bool pass = false;
  std::string witness;  // non-empty iff the check failed
};

// Validity: for every pair (x, y) satisfying condition k, the two signals
// determine secret k exactly (over all secret and randomness values).
// Decided by direct enumeration, independent of the distribution machinery.
CdmsCheckResult cdms_check_validity(const CdmsInstance& inst,
                                    long long max_outcomes = 10'000'000);

// Security: for every used pair (x, y), the signals are jointly independent
// of the full set of secrets whose conditions (x, y) does not satisfy.
// Decided by exact counting over the enumerated signal table.
CdmsCheckResult cdms_check_security(const CdmsInstance& inst,
                                    long long max_outcomes = 10'000'000);

}  // namespace spir
