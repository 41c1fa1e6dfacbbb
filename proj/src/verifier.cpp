#include "spir/verifier.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "spir/error.hpp"

namespace spir {
namespace {

// Odometer increment over fixed-radix digit vectors; false once wrapped.
bool advance(std::vector<std::uint32_t>& digits, std::uint32_t q) {
  for (auto& d : digits) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

std::uint32_t encode(std::span<const std::uint32_t> symbols, std::uint32_t q) {
  std::uint64_t v = 0;
  for (std::size_t i = symbols.size(); i-- > 0;) v = v * q + symbols[i];
  return static_cast<std::uint32_t>(v);
}

std::vector<std::uint32_t> decode(std::uint32_t value, int length, std::uint32_t q) {
  std::vector<std::uint32_t> out(length);
  for (int i = 0; i < length; ++i) {
    out[i] = value % q;
    value /= q;
  }
  return out;
}

std::string format_tuple(std::span<const std::uint32_t> symbols) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < symbols.size(); ++i) out << (i ? "," : "") << symbols[i];
  out << ')';
  return out.str();
}

std::string format_encoded(int value, int length, std::uint32_t q) {
  return format_tuple(decode(static_cast<std::uint32_t>(value), length, q));
}

// pairs * q^(K*L + rho), saturating at LLONG_MAX.
long long experiment_size(const Scheme& s, int message_index) {
  __int128 size = s.strategy().pairs()[message_index - 1].size();
  int symbols = s.message_count() * s.message_length() + s.randomness_count();
  for (int i = 0; i < symbols; ++i) {
    size *= s.modulus().value();
    if (size > LLONG_MAX) return LLONG_MAX;
  }
  return static_cast<long long>(size);
}

std::vector<std::string> experiment_variables(const Scheme& s) {
  std::vector<std::string> vars = {"F", "Q1", "Q2", "A1", "A2"};
  for (int k = 1; k <= s.message_count(); ++k) vars.push_back("W" + std::to_string(k));
  vars.push_back("R");
  return vars;
}

void check_message_index(const Scheme& s, int message_index) {
  if (message_index < 1 || message_index > s.message_count())
    throw Error("message index " + std::to_string(message_index) + " out of range");
}

}  // namespace

JointDistribution build_experiment(const Scheme& s, int message_index, long long max_outcomes) {
  check_message_index(s, message_index);
  long long total = experiment_size(s, message_index);
  if (total > max_outcomes) throw EnumerationLimitError(total, max_outcomes);

  const std::uint32_t q = s.modulus().value();
  const int K = s.message_count();
  const int L = s.message_length();
  const auto& pairs = s.strategy().pairs()[message_index - 1];
  const Rational probability = Rational(1) / Rational(total);

  // Rows are pairwise distinct (the message and randomness symbols are part
  // of each outcome), so sort once and fill the map in key order.
  std::vector<Outcome> rows;
  rows.reserve(static_cast<std::size_t>(total));
  std::vector<std::uint32_t> messages(static_cast<std::size_t>(K) * L, 0);
  do {
    std::vector<std::uint32_t> randomness(s.randomness_count(), 0);
    do {
      for (std::size_t f = 0; f < pairs.size(); ++f) {
        auto [x, y] = pairs[f];
        auto a1 = evaluate_answer_symbols(s.answers_x()[x], messages, randomness, q);
        auto a2 = evaluate_answer_symbols(s.answers_y()[y], messages, randomness, q);
        Outcome outcome;
        outcome.reserve(5 + K + 1);
        outcome.push_back(static_cast<int>(f));
        outcome.push_back(x);
        outcome.push_back(y);
        outcome.push_back(static_cast<int>(encode(a1, q)));
        outcome.push_back(static_cast<int>(encode(a2, q)));
        for (int k = 0; k < K; ++k)
          outcome.push_back(static_cast<int>(
              encode(std::span(messages.data() + static_cast<std::size_t>(k) * L, L), q)));
        outcome.push_back(static_cast<int>(encode(randomness, q)));
        rows.push_back(std::move(outcome));
      }
    } while (advance(randomness, q));
  } while (advance(messages, q));

  std::sort(rows.begin(), rows.end());
  std::map<Outcome, Rational> table;
  for (auto& row : rows) table.emplace_hint(table.end(), std::move(row), probability);
  return JointDistribution(experiment_variables(s), std::move(table));
}

namespace {

// Builds each retrieval-index experiment at most once, on first use, so the
// checks in full_report can share them without losing their early exits.
class ExperimentCache {
 public:
  ExperimentCache(const Scheme& s, long long max_outcomes)
      : scheme_(s), max_outcomes_(max_outcomes), built_(s.message_count()) {}

  const JointDistribution& get(int message_index) {
    auto& slot = built_[message_index - 1];
    if (!slot) slot = build_experiment(scheme_, message_index, max_outcomes_);
    return *slot;
  }

 private:
  const Scheme& scheme_;
  long long max_outcomes_;
  std::vector<std::optional<JointDistribution>> built_;
};

CheckResult reliability_check(const Scheme& s, ExperimentCache& experiments) {
  const std::uint32_t q = s.modulus().value();
  for (int k = 1; k <= s.message_count(); ++k) {
    const JointDistribution& d = experiments.get(k);
    std::string wk = "W" + std::to_string(k);
    auto violation = d.find_determinism_violation({wk}, {"F", "A1", "A2"});
    if (!violation) continue;

    // given_values follow declared order: F, A1, A2.
    int f = violation->given_values[0];
    auto [x, y] = s.strategy().pairs()[k - 1][f];
    std::ostringstream w;
    w << "message " << k << ": pair (" << s.strategy().space_x()[x] << ","
      << s.strategy().space_y()[y] << ") with answers A1="
      << format_encoded(violation->given_values[1], s.answer_length_x(), q)
      << " A2=" << format_encoded(violation->given_values[2], s.answer_length_y(), q)
      << " leaves " << wk << " ambiguous:";
    for (const auto& target : violation->target_values)
      w << " " << format_encoded(target[0], s.message_length(), q);
    return {false, w.str()};
  }
  return {true, ""};
}

std::string difference_witness(int other_index, const std::vector<std::string>& variables,
                               const DifferenceWitness& diff) {
  std::ostringstream w;
  w << "retrieval indices 1 and " << other_index << " are distinguishable at";
  for (std::size_t i = 0; i < variables.size(); ++i) {
    w << (i ? ", " : " ") << variables[i] << "=" << diff.values[i];
  }
  w << ": probability " << diff.p1.str() << " vs " << diff.p2.str();
  return w.str();
}

UserPrivacyResult user_privacy_check(const Scheme& s, ExperimentCache& experiments) {
  UserPrivacyResult result{{true, ""}, {true, ""}};
  std::set<std::string> keep1 = {"Q1", "A1", "R"};
  std::set<std::string> keep2 = {"Q2", "A2", "R"};
  for (int k = 1; k <= s.message_count(); ++k) {
    keep1.insert("W" + std::to_string(k));
    keep2.insert("W" + std::to_string(k));
  }

  JointDistribution base1 = experiments.get(1).marginal(keep1);
  JointDistribution base2 = experiments.get(1).marginal(keep2);

  for (int k = 2; k <= s.message_count(); ++k) {
    if (!result.db1.pass && !result.db2.pass) break;
    const JointDistribution& d = experiments.get(k);
    if (result.db1.pass) {
      JointDistribution m = d.marginal(keep1);
      if (auto diff = find_first_difference(base1, m))
        result.db1 = {false, difference_witness(k, base1.variables(), *diff)};
    }
    if (result.db2.pass) {
      JointDistribution m = d.marginal(keep2);
      if (auto diff = find_first_difference(base2, m))
        result.db2 = {false, difference_witness(k, base2.variables(), *diff)};
    }
  }
  return result;
}

CheckResult database_privacy_check(const Scheme& s, ExperimentCache& experiments) {
  for (int k = 1; k <= s.message_count(); ++k) {
    const JointDistribution& d = experiments.get(k);
    std::set<std::string> others;
    std::vector<std::string> other_names;  // declared order for the witness
    for (int j = 1; j <= s.message_count(); ++j) {
      if (j == k) continue;
      others.insert("W" + std::to_string(j));
      other_names.push_back("W" + std::to_string(j));
    }
    auto violation = d.find_independence_violation(others, {"F", "A1", "A2"});
    if (!violation) continue;

    std::ostringstream w;
    w << "retrieving message " << k << " leaks about the others at";
    for (std::size_t i = 0; i < other_names.size(); ++i)
      w << (i ? ", " : " ") << other_names[i] << "=" << violation->group_a_values[i];
    w << " with F=" << violation->group_b_values[0] << ", A1=" << violation->group_b_values[1]
      << ", A2=" << violation->group_b_values[2] << ": joint " << violation->joint.str()
      << " vs product " << violation->product.str();
    return {false, w.str()};
  }
  return {true, ""};
}

}  // namespace

CheckResult check_reliability(const Scheme& s, long long max_outcomes) {
  ExperimentCache experiments(s, max_outcomes);
  return reliability_check(s, experiments);
}

UserPrivacyResult check_user_privacy(const Scheme& s, long long max_outcomes) {
  ExperimentCache experiments(s, max_outcomes);
  return user_privacy_check(s, experiments);
}

CheckResult check_database_privacy(const Scheme& s, long long max_outcomes) {
  ExperimentCache experiments(s, max_outcomes);
  return database_privacy_check(s, experiments);
}

VerificationReport full_report(const Scheme& s, long long max_outcomes) {
  ExperimentCache experiments(s, max_outcomes);
  VerificationReport r;
  r.scheme_name = s.name();
  r.reliability = reliability_check(s, experiments);
  UserPrivacyResult up = user_privacy_check(s, experiments);
  r.user_privacy_db1 = up.db1;
  r.user_privacy_db2 = up.db2;
  r.database_privacy = database_privacy_check(s, experiments);
  r.upload_bits = upload_cost(s);
  r.download_bits = download_cost(s);
  r.randomness_bits = randomness_bits(s);
  return r;
}

namespace {

std::optional<DecodeTable> try_decode_table(const Scheme& s, int message_index,
                                            long long max_outcomes, std::string* conflict) {
  check_message_index(s, message_index);
  long long total = experiment_size(s, message_index);
  if (total > max_outcomes) throw EnumerationLimitError(total, max_outcomes);

  const std::uint32_t q = s.modulus().value();
  const int K = s.message_count();
  const int L = s.message_length();
  const auto& pairs = s.strategy().pairs()[message_index - 1];

  using Key = std::tuple<int, std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
  std::map<Key, std::uint32_t> rows;

  std::vector<std::uint32_t> messages(static_cast<std::size_t>(K) * L, 0);
  do {
    std::vector<std::uint32_t> randomness(s.randomness_count(), 0);
    do {
      for (std::size_t f = 0; f < pairs.size(); ++f) {
        auto [x, y] = pairs[f];
        auto a1 = evaluate_answer_symbols(s.answers_x()[x], messages, randomness, q);
        auto a2 = evaluate_answer_symbols(s.answers_y()[y], messages, randomness, q);
        std::uint32_t value = encode(
            std::span(messages.data() + static_cast<std::size_t>(message_index - 1) * L, L), q);
        Key key{static_cast<int>(f), std::move(a1), std::move(a2)};
        auto [it, inserted] = rows.emplace(std::move(key), value);
        if (!inserted && it->second != value) {
          if (conflict) {
            std::ostringstream w;
            w << "message " << message_index << ": pair (" << s.strategy().space_x()[x] << ","
              << s.strategy().space_y()[y] << ") with answers A1="
              << format_tuple(std::get<1>(it->first)) << " A2="
              << format_tuple(std::get<2>(it->first)) << " admits values "
              << format_encoded(static_cast<int>(it->second), L, q) << " and "
              << format_encoded(static_cast<int>(value), L, q);
            *conflict = w.str();
          }
          return std::nullopt;
        }
      }
    } while (advance(randomness, q));
  } while (advance(messages, q));

  DecodeTable table;
  table.message_index = message_index;
  for (auto& [key, value] : rows)
    table.entries.push_back(
        {std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
  return table;
}

}  // namespace

DecodeTable build_decode_table(const Scheme& s, int message_index, long long max_outcomes) {
  std::string conflict;
  auto table = try_decode_table(s, message_index, max_outcomes, &conflict);
  if (!table) throw Error("decode ambiguity: " + conflict);
  return *table;
}

bool decode_table_exists(const Scheme& s, long long max_outcomes) {
  for (int k = 1; k <= s.message_count(); ++k)
    if (!try_decode_table(s, k, max_outcomes, nullptr)) return false;
  return true;
}

}  // namespace spir
