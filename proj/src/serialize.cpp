#include "spir/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spir/error.hpp"

namespace spir {
namespace {

struct Line {
  int number = 0;
  std::string text;
};

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Physical lines minus comments ('#' to end of line) and blanks.
std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string raw = text.substr(start, nl == std::string::npos ? nl : nl - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return pos_ >= lines_.size(); }

  const Line& peek() const {
    if (done()) throw ParseError(last_number(), "unexpected end of document");
    return lines_[pos_];
  }

  Line next() {
    Line l = peek();
    ++pos_;
    return l;
  }

  int last_number() const { return lines_.empty() ? 0 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_integer(const std::string& tok, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
  return v;
}

double parse_float(const std::string& tok, int line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw ParseError(line, "expected number, got '" + tok + "'");
  return v;
}

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "key: rest" -> rest; any other line is an error.
Line expect_keyed(Cursor& cur, const std::string& key) {
  Line l = cur.next();
  if (l.text.compare(0, key.size(), key) != 0)
    throw ParseError(l.number, "expected '" + key + "' line, got '" + l.text + "'");
  l.text = trim(l.text.substr(key.size()));
  return l;
}

int expect_keyed_int(Cursor& cur, const std::string& key, long long lo, long long hi) {
  Line l = expect_keyed(cur, key);
  long long v = parse_integer(l.text, l.number);
  if (v < lo || v > hi)
    throw ParseError(l.number, "'" + key + "' value " + std::to_string(v) + " out of range");
  return static_cast<int>(v);
}

// "A0,B1" -> (index in xs, index in ys).
std::pair<int, int> parse_pair_token(const std::string& tok, int line,
                                     const std::vector<std::string>& xs,
                                     const std::vector<std::string>& ys) {
  auto comma = tok.find(',');
  if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos)
    throw ParseError(line, "expected 'X,Y' pair, got '" + tok + "'");
  std::string xl = tok.substr(0, comma);
  std::string yl = tok.substr(comma + 1);
  auto find = [&](const std::vector<std::string>& labels, const std::string& l) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == l) return static_cast<int>(i);
    throw ParseError(line, "unknown query label '" + l + "'");
  };
  return {find(xs, xl), find(ys, yl)};
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string::npos ? p : p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

std::vector<FieldElement> parse_coeffs(const std::string& section, int line, int expected,
                                       const char* what, PrimeModulus q) {
  auto toks = tokens_of(section);
  if (static_cast<int>(toks.size()) != expected)
    throw ParseError(line, std::string("expected ") + std::to_string(expected) + " " + what +
                               " coefficients, got " + std::to_string(toks.size()));
  std::vector<FieldElement> out;
  out.reserve(toks.size());
  for (const auto& t : toks) {
    long long v = parse_integer(t, line);
    if (v < 0 || v >= q.value())
      throw ParseError(line, "coefficient " + t + " out of range for modulus " +
                                 std::to_string(q.value()));
    out.emplace_back(static_cast<std::uint32_t>(v), q);
  }
  return out;
}

// "[m m m ; r r ; c] [..]" -> AnswerList.
AnswerList parse_symbol_list(const std::string& rest, int line, int msg_coeffs, int rnd_coeffs,
                             PrimeModulus q) {
  AnswerList out;
  std::size_t i = 0;
  while (true) {
    while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
    if (i == rest.size()) break;
    if (rest[i] != '[') throw ParseError(line, "expected '[' to open an answer symbol");
    auto close = rest.find(']', i);
    if (close == std::string::npos) throw ParseError(line, "missing ']' in answer symbol");
    std::string inner = rest.substr(i + 1, close - i - 1);
    i = close + 1;
    auto sections = split_on(inner, ';');
    if (sections.size() != 3)
      throw ParseError(line, "expected 'messages ; randomness ; constant' sections");
    AffineAnswerSpec spec{parse_coeffs(sections[0], line, msg_coeffs, "message", q),
                          parse_coeffs(sections[1], line, rnd_coeffs, "randomness", q),
                          parse_coeffs(sections[2], line, 1, "constant", q)[0]};
    out.push_back(std::move(spec));
  }
  return out;
}

std::string format_symbol_list(const AnswerList& specs) {
  std::ostringstream out;
  for (std::size_t n = 0; n < specs.size(); ++n) {
    if (n) out << ' ';
    out << '[';
    for (std::size_t i = 0; i < specs[n].message_coeffs.size(); ++i) {
      if (i) out << ' ';
      out << specs[n].message_coeffs[i].value();
    }
    out << " ;";
    for (const auto& c : specs[n].randomness_coeffs) out << ' ' << c.value();
    out << " ; " << specs[n].constant.value() << ']';
  }
  return out.str();
}

struct ParsedBody {
  std::vector<QueryStrategy::PairList> pair_lists;  // by 1-based code (size = count)
  std::vector<AnswerList> answers_x;
  std::vector<AnswerList> answers_y;
  std::vector<QueryStrategy::PairList> dummy_lists;  // by 1-based dummy group
};

// Shared body reader for scheme and cdms documents: pair-list lines keyed by
// `list_key` ("pairs"/"condition"), answer lines keyed by `answer_key`
// ("answer"/"signal"), optional "dummy" lines, terminated by "end".
ParsedBody parse_body(Cursor& cur, const std::string& list_key, const std::string& answer_key,
                      bool allow_dummy, int count, const std::vector<std::string>& xs,
                      const std::vector<std::string>& ys, int msg_coeffs, int rnd_coeffs,
                      PrimeModulus q) {
  ParsedBody body;
  body.pair_lists.resize(count);
  std::vector<bool> seen_list(count, false);
  std::map<std::string, AnswerList> ax, ay;
  std::map<int, QueryStrategy::PairList> dummies;
  int end_line = 0;

  while (true) {
    Line l = cur.next();
    if (l.text == "end") {
      end_line = l.number;
      break;
    }
    auto toks = tokens_of(l.text);
    if (toks[0] == list_key) {
      if (toks.size() < 2 || toks[1].back() != ':')
        throw ParseError(l.number, "expected '" + list_key + " <index>:'");
      long long k = parse_integer(toks[1].substr(0, toks[1].size() - 1), l.number);
      if (k < 1 || k > count)
        throw ParseError(l.number, list_key + " index " + std::to_string(k) + " out of range");
      if (seen_list[k - 1])
        throw ParseError(l.number, "duplicate '" + list_key + " " + std::to_string(k) + "' line");
      seen_list[k - 1] = true;
      for (std::size_t t = 2; t < toks.size(); ++t)
        body.pair_lists[k - 1].push_back(parse_pair_token(toks[t], l.number, xs, ys));
    } else if (allow_dummy && toks[0] == "dummy") {
      if (toks.size() < 2 || toks[1].back() != ':')
        throw ParseError(l.number, "expected 'dummy <index>:'");
      long long j = parse_integer(toks[1].substr(0, toks[1].size() - 1), l.number);
      if (j < 1) throw ParseError(l.number, "dummy index must be positive");
      if (dummies.count(static_cast<int>(j)))
        throw ParseError(l.number, "duplicate 'dummy " + std::to_string(j) + "' line");
      auto& list = dummies[static_cast<int>(j)];
      for (std::size_t t = 2; t < toks.size(); ++t)
        list.push_back(parse_pair_token(toks[t], l.number, xs, ys));
    } else if (toks[0] == answer_key) {
      if (toks.size() < 3 || (toks[1] != "x" && toks[1] != "y") || toks[2].back() != ':')
        throw ParseError(l.number, "expected '" + answer_key + " x|y <label>:'");
      std::string label = toks[2].substr(0, toks[2].size() - 1);
      const auto& labels = toks[1] == "x" ? xs : ys;
      bool known = false;
      for (const auto& cand : labels) known = known || cand == label;
      if (!known) throw ParseError(l.number, "unknown query label '" + label + "'");
      auto& side = toks[1] == "x" ? ax : ay;
      if (side.count(label))
        throw ParseError(l.number, "duplicate '" + answer_key + "' line for label '" + label + "'");
      auto colon = l.text.find(':');
      side[label] = parse_symbol_list(l.text.substr(colon + 1), l.number, msg_coeffs, rnd_coeffs, q);
    } else {
      throw ParseError(l.number, "unrecognized line '" + l.text + "'");
    }
  }

  if (!cur.done())
    throw ParseError(cur.peek().number, "content after 'end'");
  for (int k = 0; k < count; ++k)
    if (!seen_list[k])
      throw ParseError(end_line, "missing '" + list_key + " " + std::to_string(k + 1) + "' line");
  auto collect = [&](const std::vector<std::string>& labels, std::map<std::string, AnswerList>& got,
                     std::vector<AnswerList>& out) {
    for (const auto& label : labels) {
      auto it = got.find(label);
      if (it == got.end()) throw ParseError(end_line, "unanswered query label '" + label + "'");
      out.push_back(std::move(it->second));
    }
  };
  collect(xs, ax, body.answers_x);
  collect(ys, ay, body.answers_y);
  if (!dummies.empty()) {
    body.dummy_lists.resize(dummies.rbegin()->first);
    for (auto& [j, list] : dummies) body.dummy_lists[j - 1] = std::move(list);
  }
  return body;
}

struct Preamble {
  std::string name;
  PrimeModulus q;
  int count;  // messages / secrets
  int length;
  int randomness;
  std::vector<std::string> xs, ys;
};

Preamble parse_preamble(Cursor& cur, const std::string& count_key) {
  Line name = expect_keyed(cur, "name:");
  if (name.text.empty()) throw ParseError(name.number, "empty name");
  Line qline = expect_keyed(cur, "q:");
  long long qv = parse_integer(qline.text, qline.number);
  if (qv < 2 || qv > 65536) throw ParseError(qline.number, "'q:' value out of range");
  Preamble p{name.text,
             [&] {
               try {
                 return PrimeModulus(static_cast<std::uint32_t>(qv));
               } catch (const Error& e) {
                 throw ParseError(qline.number, e.what());
               }
             }(),
             expect_keyed_int(cur, count_key, 1, 1000),
             expect_keyed_int(cur, "length:", 1, 1000),
             expect_keyed_int(cur, "randomness:", 0, 1000),
             {},
             {}};
  Line sx = expect_keyed(cur, "space-x:");
  p.xs = tokens_of(sx.text);
  Line sy = expect_keyed(cur, "space-y:");
  p.ys = tokens_of(sy.text);
  if (p.xs.empty()) throw ParseError(sx.number, "empty query space");
  if (p.ys.empty()) throw ParseError(sy.number, "empty query space");
  return p;
}

void expect_header(Cursor& cur, const std::string& header) {
  Line h = cur.next();
  if (h.text != header) throw ParseError(h.number, "expected header '" + header + "'");
}

void emit_preamble(std::ostringstream& out, const std::string& name, std::uint32_t q, int count,
                   const char* count_key, int length, int randomness,
                   const std::vector<std::string>& xs, const std::vector<std::string>& ys) {
  out << "name: " << name << "\n";
  out << "q: " << q << "\n";
  out << count_key << ' ' << count << "\n";
  out << "length: " << length << "\n";
  out << "randomness: " << randomness << "\n";
  out << "space-x:";
  for (const auto& l : xs) out << ' ' << l;
  out << "\nspace-y:";
  for (const auto& l : ys) out << ' ' << l;
  out << "\n";
}

void emit_pair_lines(std::ostringstream& out, const char* key,
                     const std::vector<QueryStrategy::PairList>& lists,
                     const std::vector<std::string>& xs, const std::vector<std::string>& ys,
                     int first_index) {
  for (std::size_t k = 0; k < lists.size(); ++k) {
    out << key << ' ' << first_index + static_cast<int>(k) << ':';
    for (auto [i, j] : lists[k]) out << ' ' << xs[i] << ',' << ys[j];
    out << "\n";
  }
}

void emit_answer_lines(std::ostringstream& out, const char* key, char side,
                       const std::vector<std::string>& labels,
                       const std::vector<AnswerList>& answers) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << key << ' ' << side << ' ' << labels[i] << ": " << format_symbol_list(answers[i])
        << "\n";
}

}  // namespace

std::string emit_scheme(const Scheme& s) {
  std::ostringstream out;
  out << "spir-scheme v1\n";
  emit_preamble(out, s.name(), s.modulus().value(), s.message_count(), "messages:",
                s.message_length(), s.randomness_count(), s.strategy().space_x(),
                s.strategy().space_y());
  emit_pair_lines(out, "pairs", s.strategy().pairs(), s.strategy().space_x(),
                  s.strategy().space_y(), 1);
  emit_answer_lines(out, "answer", 'x', s.strategy().space_x(), s.answers_x());
  emit_answer_lines(out, "answer", 'y', s.strategy().space_y(), s.answers_y());
  out << "end\n";
  return out.str();
}

Scheme parse_scheme(const std::string& text) {
  Cursor cur(content_lines(text));
  expect_header(cur, "spir-scheme v1");
  Preamble p = parse_preamble(cur, "messages:");
  ParsedBody body = parse_body(cur, "pairs", "answer", false, p.count, p.xs, p.ys,
                               p.count * p.length, p.randomness, p.q);
  QueryStrategy strategy(p.xs, p.ys, std::move(body.pair_lists));
  return Scheme(p.name, MessageSpec{p.count, p.length, p.q}, p.randomness, std::move(strategy),
                std::move(body.answers_x), std::move(body.answers_y));
}

namespace {

void emit_check(std::ostringstream& out, const char* key, const CheckResult& c) {
  out << key << ": " << (c.pass ? "pass" : "fail") << "\n";
  if (!c.pass) out << key << "-witness: " << c.witness << "\n";
}

CheckResult parse_check(Cursor& cur, const std::string& key) {
  Line l = expect_keyed(cur, key + ":");
  CheckResult c;
  if (l.text == "pass") {
    c.pass = true;
  } else if (l.text == "fail") {
    c.pass = false;
    Line w = expect_keyed(cur, key + "-witness:");
    if (w.text.empty()) throw ParseError(w.number, "empty witness for failed check");
    c.witness = w.text;
  } else {
    throw ParseError(l.number, "expected 'pass' or 'fail', got '" + l.text + "'");
  }
  return c;
}

double parse_keyed_float(Cursor& cur, const std::string& key) {
  Line l = expect_keyed(cur, key);
  return parse_float(l.text, l.number);
}

}  // namespace

std::string emit_report(const VerificationReport& r) {
  std::ostringstream out;
  out << "spir-report v1\n";
  out << "scheme: " << r.scheme_name << "\n";
  emit_check(out, "reliability", r.reliability);
  emit_check(out, "user-privacy-db1", r.user_privacy_db1);
  emit_check(out, "user-privacy-db2", r.user_privacy_db2);
  emit_check(out, "database-privacy", r.database_privacy);
  out << "upload-bits: " << format_float(r.upload_bits) << "\n";
  out << "download-bits: " << format_float(r.download_bits) << "\n";
  out << "randomness-bits: " << format_float(r.randomness_bits) << "\n";
  out << "end\n";
  return out.str();
}

VerificationReport parse_report(const std::string& text) {
  Cursor cur(content_lines(text));
  expect_header(cur, "spir-report v1");
  VerificationReport r;
  r.scheme_name = expect_keyed(cur, "scheme:").text;
  r.reliability = parse_check(cur, "reliability");
  r.user_privacy_db1 = parse_check(cur, "user-privacy-db1");
  r.user_privacy_db2 = parse_check(cur, "user-privacy-db2");
  r.database_privacy = parse_check(cur, "database-privacy");
  r.upload_bits = parse_keyed_float(cur, "upload-bits:");
  r.download_bits = parse_keyed_float(cur, "download-bits:");
  r.randomness_bits = parse_keyed_float(cur, "randomness-bits:");
  Line endl = cur.next();
  if (endl.text != "end") throw ParseError(endl.number, "expected 'end'");
  if (!cur.done()) throw ParseError(cur.peek().number, "content after 'end'");
  return r;
}

std::string emit_cdms(const CdmsInstance& inst) {
  std::ostringstream out;
  out << "spir-cdms v1\n";
  emit_preamble(out, inst.name, inst.secrets.modulus.value(), inst.secrets.message_count,
                "secrets:", inst.secrets.message_length, inst.randomness_count, inst.labels_x,
                inst.labels_y);
  std::vector<QueryStrategy::PairList> conditions, dummies;
  for (int k = 1; k <= inst.conditions.secret_count(); ++k)
    conditions.push_back(all_satisfying_pairs(inst.conditions, k));
  for (int j = 1; j <= inst.conditions.dummy_group_count(); ++j)
    dummies.push_back(all_satisfying_pairs(inst.conditions, -j));
  emit_pair_lines(out, "condition", conditions, inst.labels_x, inst.labels_y, 1);
  emit_pair_lines(out, "dummy", dummies, inst.labels_x, inst.labels_y, 1);
  emit_answer_lines(out, "signal", 'x', inst.labels_x, inst.signals_x);
  emit_answer_lines(out, "signal", 'y', inst.labels_y, inst.signals_y);
  out << "end\n";
  return out.str();
}

CdmsInstance parse_cdms(const std::string& text) {
  Cursor cur(content_lines(text));
  expect_header(cur, "spir-cdms v1");
  Preamble p = parse_preamble(cur, "secrets:");
  ParsedBody body = parse_body(cur, "condition", "signal", true, p.count, p.xs, p.ys,
                               p.count * p.length, p.randomness, p.q);

  std::vector<std::vector<int>> cells(p.xs.size(), std::vector<int>(p.ys.size(), 0));
  auto assign = [&](int x, int y, int code) {
    if (cells[x][y] != 0)
      throw ParseError(0, "pair (" + p.xs[x] + "," + p.ys[y] + ") assigned two condition codes");
    cells[x][y] = code;
  };
  for (std::size_t k = 0; k < body.pair_lists.size(); ++k)
    for (auto [i, j] : body.pair_lists[k]) assign(i, j, static_cast<int>(k) + 1);
  for (std::size_t d = 0; d < body.dummy_lists.size(); ++d)
    for (auto [i, j] : body.dummy_lists[d]) assign(i, j, -(static_cast<int>(d) + 1));

  CdmsInstance inst{p.name,
                    MessageSpec{p.count, p.length, p.q},
                    p.randomness,
                    ConditionTable(p.count, std::move(cells)),
                    p.xs,
                    p.ys,
                    std::move(body.answers_x),
                    std::move(body.answers_y)};
  validate_cdms(inst);
  return inst;
}

}  // namespace spir
