#include "spir/cdms.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "spir/error.hpp"

namespace spir {

ConditionTable::ConditionTable(int secret_count, std::vector<std::vector<int>> cells)
    : secret_count_(secret_count), dummy_group_count_(0), cells_(std::move(cells)) {
  if (secret_count_ < 1) throw Error("condition table needs at least one secret");
  if (cells_.empty() || cells_[0].empty()) throw Error("condition table must not be empty");
  for (const auto& row : cells_) {
    if (row.size() != cells_[0].size()) throw Error("condition table rows differ in length");
    for (int code : row) {
      if (code > secret_count_)
        throw Error("condition code " + std::to_string(code) + " exceeds secret count " +
                    std::to_string(secret_count_));
      if (code < 0) dummy_group_count_ = std::max(dummy_group_count_, -code);
    }
  }
}

std::vector<std::pair<int, int>> all_satisfying_pairs(const ConditionTable& t, int code) {
  if (code == 0) throw Error("code 0 marks unused pairs; pick a condition or dummy code");
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      if (t.at(i, j) == code) out.push_back({i, j});
  return out;
}

namespace {

long long checked_power(int base, int exponent) {
  long long v = 1;
  for (int i = 0; i < exponent; ++i) {
    v *= base;
    if (v > 1'000'000) throw Error("label space too large");
  }
  return v;
}

}  // namespace

ConditionTable modular_conditions(int condition_count, int group_count, int symbols_per_side,
                                  int base) {
  if (condition_count < 1) throw Error("need at least one condition");
  if (group_count < condition_count) throw Error("group count below condition count");
  if (base < 2) throw Error("base must be at least 2");
  if (symbols_per_side < 1) throw Error("need at least one symbol per side");
  long long size = checked_power(base, symbols_per_side);
  if (size < group_count)
    throw Error("label space of size " + std::to_string(size) + " cannot host " +
                std::to_string(group_count) + " groups");

  std::vector<std::vector<int>> cells(size, std::vector<int>(size, 0));
  for (long long x = 0; x < size; ++x) {
    for (long long y = 0; y < size; ++y) {
      long long value = 0, weight = 1, xd = x, yd = y;
      for (int p = 0; p < symbols_per_side; ++p) {
        value += weight * ((xd % base + yd % base) % base);
        weight *= base;
        xd /= base;
        yd /= base;
      }
      if (value < condition_count)
        cells[x][y] = static_cast<int>(value) + 1;
      else if (value < group_count)
        cells[x][y] = -(static_cast<int>(value) - condition_count + 1);
    }
  }
  return ConditionTable(condition_count, std::move(cells));
}

std::vector<std::string> modular_labels(int symbols_per_side, int base,
                                        const std::string& prefix) {
  if (base < 2 || base > 10) throw Error("labels support bases 2 through 10");
  if (symbols_per_side < 1) throw Error("need at least one symbol per side");
  long long size = checked_power(base, symbols_per_side);
  std::vector<std::string> labels;
  labels.reserve(size);
  for (long long v = 0; v < size; ++v) {
    std::string digits(symbols_per_side, '0');
    long long rest = v;
    for (int p = symbols_per_side - 1; p >= 0; --p) {
      digits[p] = static_cast<char>('0' + rest % base);
      rest /= base;
    }
    labels.push_back(prefix + digits);
  }
  return labels;
}

void validate_cdms(const CdmsInstance& inst) {
  if (inst.name.empty()) throw Error("empty name");
  if (inst.secrets.message_count < 1) throw Error("need at least one secret");
  if (inst.secrets.message_length < 1) throw Error("secret length must be positive");
  if (inst.randomness_count < 0) throw Error("negative randomness count");
  if (inst.conditions.secret_count() != inst.secrets.message_count)
    throw Error("condition table secret count differs from the declared secrets");
  if (inst.conditions.rows() != static_cast<int>(inst.labels_x.size()) ||
      inst.conditions.cols() != static_cast<int>(inst.labels_y.size()))
    throw Error("condition table shape differs from the label spaces");

  auto check_side = [&](const std::vector<std::string>& labels,
                        const std::vector<AnswerList>& signals, const char* side) {
    if (labels.empty()) throw Error(std::string("empty ") + side + " label space");
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (l.empty()) throw Error(std::string("empty ") + side + " label");
      if (!seen.insert(l).second) throw Error("duplicate label '" + l + "'");
    }
    if (signals.size() != labels.size())
      throw Error(std::string("one signal list per ") + side + " label required");
    for (std::size_t i = 0; i < signals.size(); ++i) {
      if (signals[i].empty()) throw Error("empty signal for label '" + labels[i] + "'");
      if (signals[i].size() != signals[0].size())
        throw Error(std::string("signal lengths differ within side ") + side);
      for (const auto& spec : signals[i]) {
        if (spec.message_coeffs.size() !=
            static_cast<std::size_t>(inst.secrets.message_count * inst.secrets.message_length))
          throw Error("signal for label '" + labels[i] +
                      "' has the wrong number of secret coefficients");
        if (spec.randomness_coeffs.size() != static_cast<std::size_t>(inst.randomness_count))
          throw Error("signal for label '" + labels[i] +
                      "' has the wrong number of randomness coefficients");
        for (const auto& c : spec.message_coeffs)
          if (!(c.modulus() == inst.secrets.modulus)) throw Error("modulus mismatch in signal");
        for (const auto& c : spec.randomness_coeffs)
          if (!(c.modulus() == inst.secrets.modulus)) throw Error("modulus mismatch in signal");
        if (!(spec.constant.modulus() == inst.secrets.modulus))
          throw Error("modulus mismatch in signal");
      }
    }
  };
  check_side(inst.labels_x, inst.signals_x, "x");
  check_side(inst.labels_y, inst.signals_y, "y");
}

ColoredBipartiteGraph graph_from_conditions(const ConditionTable& t,
                                            const std::vector<std::string>& labels_x,
                                            const std::vector<std::string>& labels_y) {
  if (t.rows() != static_cast<int>(labels_x.size()) ||
      t.cols() != static_cast<int>(labels_y.size()))
    throw Error("condition table shape differs from the label spaces");
  std::vector<ColoredEdge> edges;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      if (t.at(i, j) != 0) edges.push_back({i, j, t.at(i, j)});
  return ColoredBipartiteGraph(labels_x, labels_y, t.secret_count(), std::move(edges));
}

ConditionTable conditions_from_scheme(const Scheme& s) {
  const auto& st = s.strategy();
  std::vector<std::vector<int>> cells(st.space_x().size(),
                                      std::vector<int>(st.space_y().size(), 0));
  for (int k = 1; k <= st.message_count(); ++k) {
    for (auto [x, y] : st.pairs()[k - 1]) {
      if (cells[x][y] != 0)
        throw Error("ambiguous edge color: pair (" + st.space_x()[x] + ", " + st.space_y()[y] +
                    ") is listed for messages " + std::to_string(cells[x][y]) + " and " +
                    std::to_string(k));
      cells[x][y] = k;
    }
  }
  return ConditionTable(st.message_count(), std::move(cells));
}

Scheme spir_from_cdms(const CdmsInstance& inst,
                      const std::vector<QueryStrategy::PairList>& carol_strategy) {
  validate_cdms(inst);
  if (inst.secrets.message_count < 2) throw Error("K >= 2 required");
  if (carol_strategy.size() != static_cast<std::size_t>(inst.secrets.message_count))
    throw Error("one pair list per condition required");
  for (std::size_t k = 0; k < carol_strategy.size(); ++k) {
    if (carol_strategy[k].empty())
      throw Error("condition " + std::to_string(k + 1) + " has no chosen pair");
    for (auto [x, y] : carol_strategy[k]) {
      if (x < 0 || x >= inst.conditions.rows() || y < 0 || y >= inst.conditions.cols())
        throw Error("strategy pair out of range");
      if (inst.conditions.at(x, y) != static_cast<int>(k) + 1)
        throw Error("pair does not satisfy f_" + std::to_string(k + 1) + ": (" +
                    inst.labels_x[x] + ", " + inst.labels_y[y] + ")");
    }
  }
  QueryStrategy strategy(inst.labels_x, inst.labels_y, carol_strategy);
  return Scheme(inst.name, inst.secrets, inst.randomness_count, std::move(strategy),
                inst.signals_x, inst.signals_y);
}

Scheme spir_from_cdms(const CdmsInstance& inst) {
  std::vector<QueryStrategy::PairList> strategy;
  for (int k = 1; k <= inst.conditions.secret_count(); ++k)
    strategy.push_back(all_satisfying_pairs(inst.conditions, k));
  return spir_from_cdms(inst, strategy);
}

CdmsInstance cdms_instance_from_scheme(const Scheme& s) {
  CdmsInstance inst{s.name(),
                    s.message_spec(),
                    s.randomness_count(),
                    conditions_from_scheme(s),
                    s.strategy().space_x(),
                    s.strategy().space_y(),
                    s.answers_x(),
                    s.answers_y()};
  validate_cdms(inst);
  return inst;
}

namespace {

// Odometer increment over fixed-radix digit vectors; false once wrapped.
bool advance(std::vector<std::uint32_t>& digits, std::uint32_t q) {
  for (auto& d : digits) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

long long enumeration_size_per_pair(const CdmsInstance& inst) {
  long long size = 1;
  int symbols = inst.secrets.message_count * inst.secrets.message_length + inst.randomness_count;
  for (int i = 0; i < symbols; ++i) {
    size *= inst.secrets.modulus.value();
    if (size > (1LL << 62) / 2) throw Error("enumeration size overflow");
  }
  return size;
}

std::uint32_t encode(std::span<const std::uint32_t> symbols, std::uint32_t q) {
  std::uint64_t v = 0;
  for (std::size_t i = symbols.size(); i-- > 0;) v = v * q + symbols[i];
  return static_cast<std::uint32_t>(v);
}

std::string format_tuple(std::span<const std::uint32_t> symbols) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < symbols.size(); ++i) out << (i ? "," : "") << symbols[i];
  out << ')';
  return out.str();
}

}  // namespace

CdmsCheckResult cdms_check_validity(const CdmsInstance& inst, long long max_outcomes) {
  validate_cdms(inst);
  const std::uint32_t q = inst.secrets.modulus.value();
  const int K = inst.secrets.message_count;
  const int L = inst.secrets.message_length;
  long long per_pair = enumeration_size_per_pair(inst);

  long long total = 0;
  for (int k = 1; k <= K; ++k)
    total += static_cast<long long>(all_satisfying_pairs(inst.conditions, k).size()) * per_pair;
  if (total > max_outcomes) throw EnumerationLimitError(total, max_outcomes);

  for (int k = 1; k <= K; ++k) {
    for (auto [x, y] : all_satisfying_pairs(inst.conditions, k)) {
      // signals -> revealed value of secret k; two values = ambiguity.
      std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, std::uint32_t>
          revealed;
      std::vector<std::uint32_t> secrets(static_cast<std::size_t>(K) * L, 0);
      do {
        std::vector<std::uint32_t> randomness(inst.randomness_count, 0);
        do {
          auto ax = evaluate_answer_symbols(inst.signals_x[x], secrets, randomness, q);
          auto by = evaluate_answer_symbols(inst.signals_y[y], secrets, randomness, q);
          std::span<const std::uint32_t> sk(secrets.data() + (k - 1) * L, L);
          std::uint32_t value = encode(sk, q);
          auto [it, inserted] = revealed.insert({{ax, by}, value});
          if (!inserted && it->second != value) {
            CdmsCheckResult r;
            r.pass = false;
            std::ostringstream w;
            w << "condition " << k << ", pair (" << inst.labels_x[x] << "," << inst.labels_y[y]
              << "): signals x=" << format_tuple(ax) << " y=" << format_tuple(by)
              << " admit secret values " << it->second << " and " << value;
            r.witness = w.str();
            return r;
          }
        } while (advance(randomness, q));
      } while (advance(secrets, q));
    }
  }
  return {true, ""};
}

CdmsCheckResult cdms_check_security(const CdmsInstance& inst, long long max_outcomes) {
  validate_cdms(inst);
  const std::uint32_t q = inst.secrets.modulus.value();
  const int K = inst.secrets.message_count;
  const int L = inst.secrets.message_length;
  long long per_pair = enumeration_size_per_pair(inst);

  std::vector<std::pair<int, int>> used;
  for (int i = 0; i < inst.conditions.rows(); ++i)
    for (int j = 0; j < inst.conditions.cols(); ++j)
      if (inst.conditions.at(i, j) != 0) used.push_back({i, j});
  long long total = static_cast<long long>(used.size()) * per_pair;
  if (total > max_outcomes) throw EnumerationLimitError(total, max_outcomes);

  for (auto [x, y] : used) {
    int satisfied = inst.conditions.at(x, y);  // <= 0 for dummy pairs
    std::vector<int> hidden;                   // secret indices that must stay independent
    for (int k = 1; k <= K; ++k)
      if (k != satisfied) hidden.push_back(k);

    using Tuple = std::vector<std::uint32_t>;
    std::map<std::pair<Tuple, Tuple>, long long> signal_count;
    std::map<Tuple, long long> hidden_count;
    std::map<std::pair<std::pair<Tuple, Tuple>, Tuple>, long long> joint_count;

    std::vector<std::uint32_t> secrets(static_cast<std::size_t>(K) * L, 0);
    do {
      Tuple hidden_values;
      hidden_values.reserve(hidden.size() * L);
      for (int k : hidden)
        for (int p = 0; p < L; ++p) hidden_values.push_back(secrets[(k - 1) * L + p]);
      std::vector<std::uint32_t> randomness(inst.randomness_count, 0);
      do {
        auto ax = evaluate_answer_symbols(inst.signals_x[x], secrets, randomness, q);
        auto by = evaluate_answer_symbols(inst.signals_y[y], secrets, randomness, q);
        std::pair<Tuple, Tuple> signals{std::move(ax), std::move(by)};
        ++hidden_count[hidden_values];
        ++joint_count[{signals, hidden_values}];
        ++signal_count[std::move(signals)];
      } while (advance(randomness, q));
    } while (advance(secrets, q));

    for (const auto& [key, joint] : joint_count) {
      long long lhs = joint * per_pair;
      long long rhs = signal_count.at(key.first) * hidden_count.at(key.second);
      if (lhs != rhs) {
        CdmsCheckResult r;
        r.pass = false;
        std::ostringstream w;
        w << "pair (" << inst.labels_x[x] << "," << inst.labels_y[y] << "): signals x="
          << format_tuple(key.first.first) << " y=" << format_tuple(key.first.second)
          << " correlate with the hidden secrets " << format_tuple(key.second) << " (joint "
          << joint << "/" << per_pair << ", product " << signal_count.at(key.first) << "*"
          << hidden_count.at(key.second) << "/" << per_pair << "^2)";
        r.witness = w.str();
        return r;
      }
    }
    // Zero-joint combinations with positive marginals also break factorization.
    for (const auto& [sig, sc] : signal_count) {
      for (const auto& [hid, hc] : hidden_count) {
        if (joint_count.count({sig, hid})) continue;
        CdmsCheckResult r;
        r.pass = false;
        std::ostringstream w;
        w << "pair (" << inst.labels_x[x] << "," << inst.labels_y[y] << "): signals x="
          << format_tuple(sig.first) << " y=" << format_tuple(sig.second)
          << " never occur with hidden secrets " << format_tuple(hid) << " (joint 0, product "
          << sc << "*" << hc << "/" << per_pair << "^2)";
        r.witness = w.str();
        return r;
      }
    }
  }
  return {true, ""};
}

}  // namespace spir
