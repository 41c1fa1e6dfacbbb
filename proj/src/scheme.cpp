#include "spir/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "spir/error.hpp"

namespace spir {
namespace {

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

void check_labels(const std::vector<std::string>& labels, const char* side) {
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!valid_label(label)) {
      throw Error(std::string(side) + " label '" + label +
                  "' is not a non-empty [A-Za-z0-9_] token");
    }
    if (!seen.insert(label).second) {
      throw Error(std::string(side) + " label '" + label + "' repeated");
    }
  }
}

// Every label on the support of the multiset must occur equally often.
bool uniform_over_support(const std::vector<int>& occurrences) {
  std::map<int, int> counts;
  for (int v : occurrences) ++counts[v];
  int expected = counts.begin()->second;
  for (const auto& [value, count] : counts) {
    if (count != expected) return false;
  }
  return true;
}

void check_answer_side(const std::vector<AnswerList>& answers,
                       const std::vector<std::string>& labels, const MessageSpec& msg,
                       int rho, const char* side) {
  if (answers.size() != labels.size()) {
    throw Error(std::string("unanswered query label: ") + std::to_string(labels.size()) +
                " " + side + " labels but " + std::to_string(answers.size()) +
                " answer lists");
  }
  std::size_t symbols = answers.front().size();
  std::size_t kl = static_cast<std::size_t>(msg.message_count) * msg.message_length;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (answers[i].size() != symbols) {
      throw Error("answer length for " + std::string(side) + " label '" + labels[i] +
                  "' differs from the side's fixed length");
    }
    for (const AffineAnswerSpec& spec : answers[i]) {
      if (spec.message_coeffs.size() != kl) {
        throw Error("answer for '" + labels[i] + "' has " +
                    std::to_string(spec.message_coeffs.size()) +
                    " message coefficients, expected " + std::to_string(kl));
      }
      if (spec.randomness_coeffs.size() != static_cast<std::size_t>(rho)) {
        throw Error("answer for '" + labels[i] + "' has " +
                    std::to_string(spec.randomness_coeffs.size()) +
                    " randomness coefficients, expected " + std::to_string(rho));
      }
      if (spec.constant.modulus() != msg.modulus) {
        throw Error("answer for '" + labels[i] + "': modulus mismatch");
      }
      for (const FieldElement& c : spec.message_coeffs) {
        if (c.modulus() != msg.modulus) throw Error("answer for '" + labels[i] + "': modulus mismatch");
      }
      for (const FieldElement& c : spec.randomness_coeffs) {
        if (c.modulus() != msg.modulus) throw Error("answer for '" + labels[i] + "': modulus mismatch");
      }
    }
  }
}

}  // namespace

QueryStrategy::QueryStrategy(std::vector<std::string> space_x, std::vector<std::string> space_y,
                             std::vector<PairList> pairs_by_message)
    : space_x_(std::move(space_x)), space_y_(std::move(space_y)),
      pairs_(std::move(pairs_by_message)) {
  if (space_x_.empty() || space_y_.empty()) throw Error("query spaces must be non-empty");
  check_labels(space_x_, "x");
  check_labels(space_y_, "y");
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    PairList& list = pairs_[k];
    if (list.empty()) {
      throw Error("strategy for message " + std::to_string(k + 1) + " has no pairs");
    }
    std::vector<int> xs, ys;
    for (auto [x, y] : list) {
      if (x < 0 || x >= static_cast<int>(space_x_.size()) || y < 0 ||
          y >= static_cast<int>(space_y_.size())) {
        throw Error("strategy for message " + std::to_string(k + 1) +
                    " references an unknown query label");
      }
      xs.push_back(x);
      ys.push_back(y);
    }
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw Error("strategy for message " + std::to_string(k + 1) + " repeats a pair");
    }
    if (!uniform_over_support(xs) || !uniform_over_support(ys)) {
      throw Error("strategy for message " + std::to_string(k + 1) +
                  " is not column-uniform over its support");
    }
  }
}

int QueryStrategy::x_index(const std::string& label) const {
  auto it = std::find(space_x_.begin(), space_x_.end(), label);
  if (it == space_x_.end()) throw Error("unknown x label '" + label + "'");
  return static_cast<int>(it - space_x_.begin());
}

int QueryStrategy::y_index(const std::string& label) const {
  auto it = std::find(space_y_.begin(), space_y_.end(), label);
  if (it == space_y_.end()) throw Error("unknown y label '" + label + "'");
  return static_cast<int>(it - space_y_.begin());
}

Scheme::Scheme(std::string name, MessageSpec msg, int randomness_count, QueryStrategy strategy,
               std::vector<AnswerList> answers_x, std::vector<AnswerList> answers_y)
    : name_(std::move(name)), msg_(msg), rho_(randomness_count),
      strategy_(std::move(strategy)), answers_x_(std::move(answers_x)),
      answers_y_(std::move(answers_y)) {
  if (msg_.message_count < 2) throw Error("message count must be at least 2");
  if (msg_.message_length < 1) throw Error("message length must be at least 1");
  if (rho_ < 0) throw Error("randomness count must be non-negative");
  if (strategy_.message_count() != msg_.message_count) {
    throw Error("strategy covers " + std::to_string(strategy_.message_count()) +
                " messages, expected " + std::to_string(msg_.message_count));
  }
  check_answer_side(answers_x_, strategy_.space_x(), msg_, rho_, "x");
  check_answer_side(answers_y_, strategy_.space_y(), msg_, rho_, "y");
}

std::vector<std::uint32_t> evaluate_answer_symbols(const AnswerList& specs,
                                                   std::span<const std::uint32_t> messages,
                                                   std::span<const std::uint32_t> randomness,
                                                   std::uint32_t q) {
  std::vector<std::uint32_t> out;
  out.reserve(specs.size());
  for (const AffineAnswerSpec& spec : specs) {
    std::uint64_t acc = spec.constant.value();
    for (std::size_t i = 0; i < spec.message_coeffs.size(); ++i) {
      acc += std::uint64_t{spec.message_coeffs[i].value()} * messages[i];
    }
    for (std::size_t i = 0; i < spec.randomness_coeffs.size(); ++i) {
      acc += std::uint64_t{spec.randomness_coeffs[i].value()} * randomness[i];
    }
    out.push_back(static_cast<std::uint32_t>(acc % q));
  }
  return out;
}

AnswerPair evaluate_answers(const Scheme& s, const std::string& x_label,
                            const std::string& y_label,
                            std::span<const FieldElement> messages,
                            std::span<const FieldElement> randomness) {
  std::size_t kl = static_cast<std::size_t>(s.message_count()) * s.message_length();
  if (messages.size() != kl) {
    throw Error("expected " + std::to_string(kl) + " message symbols, got " +
                std::to_string(messages.size()));
  }
  if (randomness.size() != static_cast<std::size_t>(s.randomness_count())) {
    throw Error("expected " + std::to_string(s.randomness_count()) +
                " randomness symbols, got " + std::to_string(randomness.size()));
  }
  std::vector<std::uint32_t> w, r;
  for (const FieldElement& e : messages) {
    if (e.modulus() != s.modulus()) throw Error("message symbol modulus mismatch");
    w.push_back(e.value());
  }
  for (const FieldElement& e : randomness) {
    if (e.modulus() != s.modulus()) throw Error("randomness symbol modulus mismatch");
    r.push_back(e.value());
  }
  int xi = s.strategy().x_index(x_label);
  int yi = s.strategy().y_index(y_label);
  std::uint32_t q = s.modulus().value();
  AnswerPair result;
  for (std::uint32_t v : evaluate_answer_symbols(s.answers_x()[xi], w, r, q)) {
    result.from_db1.emplace_back(v, s.modulus());
  }
  for (std::uint32_t v : evaluate_answer_symbols(s.answers_y()[yi], w, r, q)) {
    result.from_db2.emplace_back(v, s.modulus());
  }
  return result;
}

double upload_cost(const Scheme& s) {
  return std::log2(static_cast<double>(s.strategy().space_x().size())) +
         std::log2(static_cast<double>(s.strategy().space_y().size()));
}

double download_cost(const Scheme& s) {
  return (s.answer_length_x() + s.answer_length_y()) *
         std::log2(static_cast<double>(s.modulus().value()));
}

double randomness_bits(const Scheme& s) {
  return s.randomness_count() * std::log2(static_cast<double>(s.modulus().value()));
}

}  // namespace spir
