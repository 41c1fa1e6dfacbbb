#include "spir/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_set>

namespace spir {
namespace {

Outcome project(const Outcome& outcome, const std::vector<std::size_t>& indices) {
  Outcome values;
  values.reserve(indices.size());
  for (std::size_t i : indices) values.push_back(outcome[i]);
  return values;
}

// Collapses equal-key runs of a key-sorted row list, summing their masses.
template <typename Key>
void fold_sorted_runs(std::vector<std::pair<Key, Rational>>& rows) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t run = i + 1;
    while (run < rows.size() && rows[run].first == rows[i].first) {
      rows[i].second += rows[run].second;
      ++run;
    }
    if (kept != i) rows[kept] = std::move(rows[i]);
    ++kept;
    i = run;
  }
  rows.resize(kept);
}

}  // namespace

JointDistribution::JointDistribution(std::vector<std::string> variables,
                                     std::map<Outcome, Rational> table)
    : variables_(std::move(variables)), table_(std::move(table)) {
  std::unordered_set<std::string> seen;
  for (const auto& name : variables_) {
    if (name.empty()) throw Error("variable names must be non-empty");
    if (!seen.insert(name).second) throw Error("duplicate variable name '" + name + "'");
  }
  Rational total = 0;
  for (const auto& [outcome, p] : table_) {
    if (outcome.size() != variables_.size()) {
      throw Error("outcome arity " + std::to_string(outcome.size()) +
                  " does not match " + std::to_string(variables_.size()) + " variables");
    }
    if (p < 0) throw Error("negative probability in distribution table");
    total += p;
  }
  if (total != 1) throw Error("probabilities do not sum to 1");
}

std::vector<std::size_t> JointDistribution::resolve(const std::set<std::string>& names) const {
  std::vector<std::size_t> indices;
  std::unordered_set<std::string> wanted(names.begin(), names.end());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (wanted.erase(variables_[i])) indices.push_back(i);
  }
  if (!wanted.empty()) throw Error("unknown variable '" + *wanted.begin() + "'");
  return indices;
}

JointDistribution JointDistribution::marginal(const std::set<std::string>& keep) const {
  if (keep.empty()) throw Error("marginal requires at least one variable");
  auto indices = resolve(keep);
  std::vector<std::string> names;
  names.reserve(indices.size());
  for (std::size_t i : indices) names.push_back(variables_[i]);
  // Sort projected rows once and fold equal runs; far cheaper than a map
  // lookup per row when the table is large.
  std::vector<std::pair<Outcome, Rational>> rows;
  rows.reserve(table_.size());
  for (const auto& [outcome, p] : table_) {
    rows.emplace_back(project(outcome, indices), p);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
  std::map<Outcome, Rational> projected;
  for (auto it = rows.begin(); it != rows.end();) {
    auto run = std::next(it);
    while (run != rows.end() && run->first == it->first) {
      it->second += run->second;
      ++run;
    }
    projected.emplace_hint(projected.end(), std::move(it->first), std::move(it->second));
    it = run;
  }
  return {Trusted{}, std::move(names), std::move(projected)};
}

bool JointDistribution::is_deterministic_given(const std::set<std::string>& target,
                                               const std::set<std::string>& given) const {
  return !find_determinism_violation(target, given).has_value();
}

std::optional<DeterminismWitness> JointDistribution::find_determinism_violation(
    const std::set<std::string>& target, const std::set<std::string>& given) const {
  auto target_idx = resolve(target);
  auto given_idx = resolve(given);
  std::vector<std::pair<Outcome, Outcome>> rows;  // (given values, target values)
  rows.reserve(table_.size());
  for (const auto& [outcome, p] : table_) {
    if (p == 0) continue;
    rows.emplace_back(project(outcome, given_idx), project(outcome, target_idx));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (auto it = rows.begin(); it != rows.end();) {
    auto run = std::next(it);
    while (run != rows.end() && run->first == it->first) ++run;
    if (run - it > 1) {
      DeterminismWitness witness{it->first, {}};
      for (; it != run; ++it) witness.target_values.push_back(std::move(it->second));
      return witness;
    }
    it = run;
  }
  return std::nullopt;
}

bool JointDistribution::is_independent(const std::set<std::string>& group_a,
                                       const std::set<std::string>& group_b) const {
  return !find_independence_violation(group_a, group_b).has_value();
}

std::optional<IndependenceWitness> JointDistribution::find_independence_violation(
    const std::set<std::string>& group_a, const std::set<std::string>& group_b) const {
  if (group_a.empty() || group_b.empty()) throw Error("independence groups must be non-empty");
  for (const auto& name : group_a) {
    if (group_b.count(name)) throw Error("independence groups overlap on '" + name + "'");
  }
  auto a_idx = resolve(group_a);
  auto b_idx = resolve(group_b);

  // Joint masses over (a, b), sorted so the scan below visits pairs in the
  // same a-major order an exhaustive product loop would.
  using Key = std::pair<Outcome, Outcome>;
  std::vector<std::pair<Key, Rational>> pab;
  pab.reserve(table_.size());
  for (const auto& [outcome, p] : table_) {
    if (p == 0) continue;
    pab.emplace_back(Key{project(outcome, a_idx), project(outcome, b_idx)}, p);
  }
  std::sort(pab.begin(), pab.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
  fold_sorted_runs(pab);

  std::vector<std::pair<Outcome, Rational>> pa;
  for (std::size_t i = 0; i < pab.size();) {
    Rational mass = pab[i].second;
    std::size_t run = i + 1;
    while (run < pab.size() && pab[run].first.first == pab[i].first.first) {
      mass += pab[run].second;
      ++run;
    }
    pa.emplace_back(pab[i].first.first, std::move(mass));
    i = run;
  }

  std::vector<std::pair<Outcome, Rational>> pb;
  pb.reserve(pab.size());
  for (const auto& [key, p] : pab) pb.emplace_back(key.second, p);
  std::sort(pb.begin(), pb.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
  fold_sorted_runs(pb);

  auto mass_of = [](const std::vector<std::pair<Outcome, Rational>>& rows,
                    const Outcome& key) -> const Rational& {
    auto it = std::lower_bound(rows.begin(), rows.end(), key,
                               [](const auto& row, const Outcome& k) { return row.first < k; });
    return it->second;  // keys looked up here always carry positive mass
  };

  // First positive-mass pair whose joint fails to factor, in scan order.
  std::optional<IndependenceWitness> violation;
  std::size_t ai = 0;
  for (const auto& [key, joint] : pab) {
    while (pa[ai].first != key.first) ++ai;
    Rational product = pa[ai].second * mass_of(pb, key.second);
    if (joint != product) {
      violation = IndependenceWitness{key.first, key.second, joint, product};
      break;
    }
  }

  // A missing pair is a violation too (joint 0, product positive). It exists
  // iff the joint support is smaller than the product of the marginals', and
  // the first one may precede the mismatch found above.
  if (pab.size() != pa.size() * pb.size()) {
    std::size_t i = 0;
    for (const auto& [a, p_a] : pa) {
      for (const auto& [b, p_b] : pb) {
        if (i < pab.size() && pab[i].first.first == a && pab[i].first.second == b) {
          ++i;
          continue;
        }
        if (!violation || std::tie(a, b) < std::tie(violation->group_a_values,
                                                    violation->group_b_values)) {
          violation = IndependenceWitness{a, b, 0, p_a * p_b};
        }
        return violation;
      }
    }
  }
  return violation;
}

double JointDistribution::entropy_bits(const std::set<std::string>& vars) const {
  JointDistribution m = marginal(vars);
  double entropy = 0.0;
  for (const auto& [outcome, p] : m.table_) {
    if (p == 0 || p == 1) continue;
    double pd = p.convert_to<double>();
    entropy -= pd * std::log2(pd);
  }
  return entropy;
}

bool distributions_equal(const JointDistribution& d1, const JointDistribution& d2) {
  if (d1.variables() != d2.variables()) {
    throw Error("distributions_equal: variable lists differ");
  }
  return d1.table() == d2.table();
}

std::optional<DifferenceWitness> find_first_difference(const JointDistribution& d1,
                                                       const JointDistribution& d2) {
  if (d1.variables() != d2.variables()) {
    throw Error("find_first_difference: variable lists differ");
  }
  auto it1 = d1.table().begin();
  auto it2 = d2.table().begin();
  while (it1 != d1.table().end() || it2 != d2.table().end()) {
    if (it2 == d2.table().end() || (it1 != d1.table().end() && it1->first < it2->first)) {
      if (it1->second != 0) return DifferenceWitness{it1->first, it1->second, 0};
      ++it1;
    } else if (it1 == d1.table().end() || it2->first < it1->first) {
      if (it2->second != 0) return DifferenceWitness{it2->first, 0, it2->second};
      ++it2;
    } else {
      if (it1->second != it2->second) {
        return DifferenceWitness{it1->first, it1->second, it2->second};
      }
      ++it1;
      ++it2;
    }
  }
  return std::nullopt;
}

}  // namespace spir
