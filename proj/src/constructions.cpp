#include "spir/constructions.hpp"

#include <cmath>
#include <cstring>

#include "spir/cdms.hpp"
#include "spir/error.hpp"
#include "spir/verifier.hpp"

namespace spir {

std::vector<CanonicalName> list_canonical() {
  return {CanonicalName::k2_u2, CanonicalName::k3_u2log3, CanonicalName::k3_u4,
          CanonicalName::k4_u4};
}

std::string format_canonical(CanonicalName name) {
  switch (name) {
    case CanonicalName::k2_u2: return "k2_u2";
    case CanonicalName::k3_u2log3: return "k3_u2log3";
    case CanonicalName::k3_u4: return "k3_u4";
    case CanonicalName::k4_u4: return "k4_u4";
  }
  throw Error("unknown canonical scheme");
}

CanonicalName parse_canonical(const std::string& text) {
  for (CanonicalName name : list_canonical())
    if (format_canonical(name) == text) return name;
  std::string available;
  for (CanonicalName name : list_canonical())
    available += (available.empty() ? "" : ", ") + format_canonical(name);
  throw Error("unknown canonical scheme '" + text + "'; available: " + available);
}

namespace {

// One affine answer symbol from digit strings: "110" means coefficients
// 1,1,0 on W1,W2,W3; constants are always 0 in the canonical schemes.
AffineAnswerSpec spec_of(PrimeModulus q, const char* msg, const char* rnd) {
  AffineAnswerSpec s{{}, {}, FieldElement::zero(q)};
  for (const char* c = msg; *c; ++c)
    s.message_coeffs.emplace_back(static_cast<std::uint32_t>(*c - '0'), q);
  for (const char* c = rnd; *c; ++c)
    s.randomness_coeffs.emplace_back(static_cast<std::uint32_t>(*c - '0'), q);
  return s;
}

using Rows = std::vector<std::vector<std::pair<const char*, const char*>>>;

std::vector<AnswerList> side_of(PrimeModulus q, const Rows& rows) {
  std::vector<AnswerList> side;
  for (const auto& row : rows) {
    AnswerList list;
    for (auto [msg, rnd] : row) list.push_back(spec_of(q, msg, rnd));
    side.push_back(std::move(list));
  }
  return side;
}

QueryStrategy modular_strategy(int message_count, int group_count, int symbols_per_side,
                               int base) {
  ConditionTable table = modular_conditions(message_count, group_count, symbols_per_side, base);
  std::vector<QueryStrategy::PairList> pairs;
  for (int k = 1; k <= message_count; ++k) pairs.push_back(all_satisfying_pairs(table, k));
  return QueryStrategy(modular_labels(symbols_per_side, base, "A"),
                       modular_labels(symbols_per_side, base, "B"), std::move(pairs));
}

Scheme build_canonical(CanonicalName name) {
  PrimeModulus q2(2);
  switch (name) {
    case CanonicalName::k2_u2:
      return Scheme("k2_u2", {2, 1, q2}, 1, modular_strategy(2, 2, 1, 2),
                    side_of(q2, {{{"00", "1"}}, {{"11", "1"}}}),
                    side_of(q2, {{{"10", "1"}}, {{"01", "1"}}}));
    case CanonicalName::k3_u2log3:
      return Scheme("k3_u2log3", {3, 1, q2}, 2, modular_strategy(3, 3, 1, 3),
                    side_of(q2, {{{"000", "10"}, {"000", "01"}},
                                 {{"110", "10"}, {"011", "01"}},
                                 {{"101", "10"}, {"110", "01"}}}),
                    side_of(q2, {{{"100", "10"}}, {{"010", "01"}}, {{"001", "11"}}}));
    case CanonicalName::k3_u4:
      return Scheme("k3_u4", {3, 1, q2}, 1, modular_strategy(3, 4, 2, 2),
                    side_of(q2, {{{"000", "1"}}, {{"110", "1"}}, {{"101", "1"}}, {{"011", "1"}}}),
                    side_of(q2, {{{"100", "1"}}, {{"010", "1"}}, {{"001", "1"}}, {{"111", "1"}}}));
    case CanonicalName::k4_u4:
      return Scheme(
          "k4_u4", {4, 1, q2}, 4, modular_strategy(4, 4, 2, 2),
          side_of(q2, {{{"0000", "1000"}, {"0000", "0010"}},
                       {{"1100", "1000"}, {"0011", "0010"}},
                       {{"0000", "0100"}, {"0000", "0001"}},
                       {{"1100", "0100"}, {"0011", "0001"}}}),
          side_of(q2, {{{"1000", "1000"}, {"0010", "0001"}},
                       {{"0100", "1000"}, {"0001", "0001"}},
                       {{"1000", "0100"}, {"0010", "0010"}},
                       {{"0100", "0100"}, {"0001", "0010"}}}));
  }
  throw Error("unknown canonical scheme");
}

}  // namespace

Scheme canonical_scheme(CanonicalName name) { return build_canonical(name); }

Scheme double_scheme(const Scheme& s) {
  if (!full_report(s).all_pass()) throw Error("input scheme fails verification");

  const int P = s.message_count();
  const int L = s.message_length();
  const int rho = s.randomness_count();
  const PrimeModulus q = s.modulus();
  const auto& st = s.strategy();
  const int nx = static_cast<int>(st.space_x().size());
  const int ny = static_cast<int>(st.space_y().size());

  std::vector<std::string> xs, ys;
  for (char bit : {'0', '1'}) {
    for (const auto& l : st.space_x()) xs.push_back(std::string(1, bit) + l);
    for (const auto& l : st.space_y()) ys.push_back(std::string(1, bit) + l);
  }

  // Colors 1..P live inside the two diagonal sectors; colors P+1..2P reuse
  // color j's pairs across the off-diagonal sectors.
  std::vector<QueryStrategy::PairList> pairs(2 * P);
  for (int k = 0; k < P; ++k) {
    for (auto [x, y] : st.pairs()[k]) {
      for (int b : {0, 1}) pairs[k].push_back({b * nx + x, b * ny + y});
      pairs[P + k].push_back({x, ny + y});
      pairs[P + k].push_back({nx + x, y});
    }
  }

  auto widen = [&](const AffineAnswerSpec& o, bool right_messages, int block) {
    AffineAnswerSpec out{{}, {}, o.constant};
    std::vector<FieldElement> msg(static_cast<std::size_t>(2 * P) * L, FieldElement::zero(q));
    std::size_t offset = right_messages ? static_cast<std::size_t>(P) * L : 0;
    for (std::size_t i = 0; i < o.message_coeffs.size(); ++i)
      msg[offset + i] = o.message_coeffs[i];
    std::vector<FieldElement> rnd(static_cast<std::size_t>(4) * rho, FieldElement::zero(q));
    for (std::size_t i = 0; i < o.randomness_coeffs.size(); ++i)
      rnd[static_cast<std::size_t>(block - 1) * rho + i] = o.randomness_coeffs[i];
    out.message_coeffs = std::move(msg);
    out.randomness_coeffs = std::move(rnd);
    return out;
  };

  // Sector bit b picks the fresh randomness block; the off-diagonal halves of
  // the two sides deliberately cross (x uses block 3 with b=0 where y uses
  // block 4) so each off-diagonal sector is masked by its own block.
  std::vector<AnswerList> ax, ay;
  for (int b : {0, 1}) {
    for (const auto& list : s.answers_x()) {
      AnswerList widened;
      for (const auto& o : list) widened.push_back(widen(o, false, b ? 2 : 1));
      for (const auto& o : list) widened.push_back(widen(o, true, b ? 4 : 3));
      ax.push_back(std::move(widened));
    }
  }
  for (int c : {0, 1}) {
    for (const auto& list : s.answers_y()) {
      AnswerList widened;
      for (const auto& o : list) widened.push_back(widen(o, false, c ? 2 : 1));
      for (const auto& o : list) widened.push_back(widen(o, true, c ? 3 : 4));
      ay.push_back(std::move(widened));
    }
  }

  Scheme out(s.name() + "_doubled", MessageSpec{2 * P, L, q}, 4 * rho,
             QueryStrategy(std::move(xs), std::move(ys), std::move(pairs)), std::move(ax),
             std::move(ay));
  if (!full_report(out).all_pass()) throw Error("doubling produced invalid scheme");
  return out;
}

Scheme repeat_scheme(const Scheme& s, int copies) {
  if (copies < 1) throw Error("copy count must be positive");
  if (copies == 1) return s;
  if (s.message_length() != 1) throw Error("repetition requires message length 1");
  if (!full_report(s).all_pass()) throw Error("input scheme fails verification");

  const int K = s.message_count();
  const int rho = s.randomness_count();
  const PrimeModulus q = s.modulus();

  // Copy c answers act on symbol position c of every message and on
  // randomness block c; the query strategy is shared by all copies.
  auto widen_side = [&](const std::vector<AnswerList>& side) {
    std::vector<AnswerList> out;
    for (const auto& list : side) {
      AnswerList widened;
      for (int c = 0; c < copies; ++c) {
        for (const auto& o : list) {
          AffineAnswerSpec spec{
              std::vector<FieldElement>(static_cast<std::size_t>(K) * copies,
                                        FieldElement::zero(q)),
              std::vector<FieldElement>(static_cast<std::size_t>(copies) * rho,
                                        FieldElement::zero(q)),
              o.constant};
          for (int m = 0; m < K; ++m)
            spec.message_coeffs[static_cast<std::size_t>(m) * copies + c] = o.message_coeffs[m];
          for (int i = 0; i < rho; ++i)
            spec.randomness_coeffs[static_cast<std::size_t>(c) * rho + i] =
                o.randomness_coeffs[i];
          widened.push_back(std::move(spec));
        }
      }
      out.push_back(std::move(widened));
    }
    return out;
  };

  Scheme out(s.name() + "_x" + std::to_string(copies), MessageSpec{K, copies, q}, copies * rho,
             s.strategy(), widen_side(s.answers_x()), widen_side(s.answers_y()));
  if (!full_report(out).all_pass()) throw Error("repetition produced invalid scheme");
  return out;
}

std::vector<RegionPoint> region_points(int message_count, int message_length) {
  if (message_count != 3 || message_length != 1)
    throw Error("region known only for K=3, L=1");
  auto point = [](CanonicalName name) {
    Scheme s = canonical_scheme(name);
    double u = upload_cost(s), d = download_cost(s);
    return RegionPoint{u, d, u + d, s.name()};
  };
  return {point(CanonicalName::k3_u2log3), point(CanonicalName::k3_u4)};
}

}  // namespace spir
