#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spir/error.hpp"

namespace spir {

// Exact probability, kept rational end to end so the privacy and reliability
// verdicts never depend on a floating-point tolerance.
using Rational = boost::multiprecision::cpp_rational;

// One joint outcome: a value per variable, in the distribution's declared
// variable order.
using Outcome = std::vector<int>;

// What find_determinism_violation returns: an assignment of the conditioning
// variables that leaves more than one value of the target possible.
struct DeterminismWitness {
  Outcome given_values;
  std::vector<Outcome> target_values;  // at least two
};

// A pair of group outcomes whose joint probability fails to factor.
struct IndependenceWitness {
  Outcome group_a_values;
  Outcome group_b_values;
  Rational joint;
  Rational product;
};

// An outcome at which two distributions over the same variables disagree.
struct DifferenceWitness {
  Outcome values;
  Rational p1;
  Rational p2;
};

// Exact joint distribution over named discrete variables, built by exhaustive
// enumeration. Immutable after construction; all queries are read-only.
class JointDistribution {
 public:
  // Validates: variable names non-empty and unique, outcome arity matches,
  // probabilities non-negative, total mass exactly 1.
  JointDistribution(std::vector<std::string> variables, std::map<Outcome, Rational> table);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::map<Outcome, Rational>& table() const { return table_; }

  // Exact marginal over `keep` (kept variables stay in declared order).
  JointDistribution marginal(const std::set<std::string>& keep) const;

  // True iff every positive-probability assignment of `given` admits exactly
  // one value of `target`.
  bool is_deterministic_given(const std::set<std::string>& target,
                              const std::set<std::string>& given) const;
  std::optional<DeterminismWitness> find_determinism_violation(
      const std::set<std::string>& target, const std::set<std::string>& given) const;

  // True iff p(a,b) == p(a) p(b) for every outcome pair, exactly.
  bool is_independent(const std::set<std::string>& group_a,
                      const std::set<std::string>& group_b) const;
  std::optional<IndependenceWitness> find_independence_violation(
      const std::set<std::string>& group_a, const std::set<std::string>& group_b) const;

  // Shannon entropy of the marginal over `vars`, in bits. Reporting-only:
  // exact rationals are converted to double per term; a deterministic
  // distribution yields exactly 0.
  double entropy_bits(const std::set<std::string>& vars) const;

  bool operator==(const JointDistribution&) const = default;

 private:
  // Fast path for tables this class built itself (already known valid).
  struct Trusted {};
  JointDistribution(Trusted, std::vector<std::string> variables, std::map<Outcome, Rational> table)
      : variables_(std::move(variables)), table_(std::move(table)) {}

  std::vector<std::size_t> resolve(const std::set<std::string>& names) const;

  std::vector<std::string> variables_;
  std::map<Outcome, Rational> table_;
};

// Exact table equality. The variable lists must match; anything else is an error.
bool distributions_equal(const JointDistribution& d1, const JointDistribution& d2);

std::optional<DifferenceWitness> find_first_difference(const JointDistribution& d1,
                                                       const JointDistribution& d2);

}  // namespace spir
