#include "spir/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "spir/error.hpp"

namespace spir {
namespace {

void check_labels(const std::vector<std::string>& labels, const char* side) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(std::string("empty ") + side + " label");
    if (!seen.insert(l).second) throw Error(std::string("duplicate ") + side + " label '" + l + "'");
  }
}

}  // namespace

ColoredBipartiteGraph::ColoredBipartiteGraph(std::vector<std::string> left_labels,
                                             std::vector<std::string> right_labels,
                                             int color_count, std::vector<ColoredEdge> edges)
    : left_labels_(std::move(left_labels)),
      right_labels_(std::move(right_labels)),
      color_count_(color_count),
      edges_(std::move(edges)) {
  check_labels(left_labels_, "left");
  check_labels(right_labels_, "right");
  if (color_count_ < 0) throw Error("negative color count");

  for (const auto& e : edges_) {
    if (e.left < 0 || e.left >= static_cast<int>(left_labels_.size()))
      throw Error("edge left endpoint out of range");
    if (e.right < 0 || e.right >= static_cast<int>(right_labels_.size()))
      throw Error("edge right endpoint out of range");
    if (e.color == 0) throw Error("edge color must be nonzero");
    if (e.color > color_count_)
      throw Error("edge color " + std::to_string(e.color) + " exceeds color count " +
                  std::to_string(color_count_));
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].left == edges_[i - 1].left && edges_[i].right == edges_[i - 1].right)
      throw Error("duplicate edge (" + left_labels_[edges_[i].left] + ", " +
                  right_labels_[edges_[i].right] + ")");
  std::set<int> used;
  for (const auto& e : edges_)
    if (e.color > 0) used.insert(e.color);
  for (int c = 1; c <= color_count_; ++c)
    if (!used.count(c)) throw Error("color " + std::to_string(c) + " is unused");
}

ColoredBipartiteGraph graph_from_scheme(const Scheme& s) {
  const auto& st = s.strategy();
  std::map<std::pair<int, int>, int> color_of;
  std::vector<ColoredEdge> edges;
  for (int k = 1; k <= st.message_count(); ++k) {
    for (auto [x, y] : st.pairs()[k - 1]) {
      auto [it, inserted] = color_of.insert({{x, y}, k});
      if (!inserted)
        throw Error("ambiguous edge color: pair (" + st.space_x()[x] + ", " + st.space_y()[y] +
                    ") is listed for messages " + std::to_string(it->second) + " and " +
                    std::to_string(k));
      edges.push_back({x, y, k});
    }
  }
  return ColoredBipartiteGraph(st.space_x(), st.space_y(), st.message_count(), std::move(edges));
}

namespace {

// counts[node][color-1] over real colors only.
std::vector<std::vector<int>> color_counts(const ColoredBipartiteGraph& g, bool left_side) {
  std::size_t n = left_side ? g.left_labels().size() : g.right_labels().size();
  std::vector<std::vector<int>> counts(n, std::vector<int>(g.color_count(), 0));
  for (const auto& e : g.edges())
    if (e.color > 0) ++counts[left_side ? e.left : e.right][e.color - 1];
  return counts;
}

void check_side(const ColoredBipartiteGraph& g, bool left_side, RegularityReport& report) {
  const auto& labels = left_side ? g.left_labels() : g.right_labels();
  auto counts = color_counts(g, left_side);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& row = counts[i];
    if (std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>()) == row.end()) continue;
    std::ostringstream msg;
    msg << (left_side ? "left " : "right ") << labels[i] << ":";
    for (int c = 0; c < g.color_count(); ++c)
      msg << " color " << c + 1 << " has " << row[c] << (c + 1 < g.color_count() ? "," : " edges");
    report.offending_nodes.push_back(msg.str());
  }
}

}  // namespace

RegularityReport validate_regularity(const ColoredBipartiteGraph& g) {
  RegularityReport report;
  check_side(g, true, report);
  check_side(g, false, report);
  report.pass = report.offending_nodes.empty();
  return report;
}

std::string export_dot(const ColoredBipartiteGraph& g, const std::string& graph_name) {
  static const char* kPalette[] = {"red",    "yellow", "green", "blue",
                                   "orange", "purple", "brown", "cyan"};
  std::ostringstream out;
  out << "graph \"" << graph_name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (const auto& l : g.left_labels())
    out << "  \"x:" << l << "\" [label=\"" << l << "\"];\n";
  for (const auto& l : g.right_labels())
    out << "  \"y:" << l << "\" [label=\"" << l << "\"];\n";
  for (const auto& e : g.edges()) {
    out << "  \"x:" << g.left_labels()[e.left] << "\" -- \"y:" << g.right_labels()[e.right]
        << "\" [";
    if (e.color > 0)
      out << "color=" << kPalette[(e.color - 1) % 8] << ", label=\"" << e.color << "\"";
    else
      out << "color=gray, style=dashed, label=\"d" << -e.color << "\"";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

// Sorted (color) multiset of a node's incident edges: the invariant any
// isomorphism must preserve nodewise.
std::vector<std::vector<int>> signatures(const ColoredBipartiteGraph& g, bool left_side) {
  std::size_t n = left_side ? g.left_labels().size() : g.right_labels().size();
  std::vector<std::vector<int>> sig(n);
  for (const auto& e : g.edges()) sig[left_side ? e.left : e.right].push_back(e.color);
  for (auto& s : sig) std::sort(s.begin(), s.end());
  return sig;
}

// Incident (other endpoint, color) sets per right node, with left endpoints
// renamed through `left_map` when given.
std::vector<std::vector<std::pair<int, int>>> right_incidence(const ColoredBipartiteGraph& g,
                                                              const std::vector<int>* left_map) {
  std::vector<std::vector<std::pair<int, int>>> inc(g.right_labels().size());
  for (const auto& e : g.edges())
    inc[e.right].push_back({left_map ? (*left_map)[e.left] : e.left, e.color});
  for (auto& v : inc) std::sort(v.begin(), v.end());
  return inc;
}

bool extend_left_map(std::size_t next, std::vector<int>& map, std::vector<bool>& used,
                     const std::vector<std::vector<int>>& sig_a,
                     const std::vector<std::vector<int>>& sig_b,
                     const ColoredBipartiteGraph& a, const ColoredBipartiteGraph& b) {
  if (next == sig_a.size()) {
    auto inc_a = right_incidence(a, &map);
    auto inc_b = right_incidence(b, nullptr);
    std::sort(inc_a.begin(), inc_a.end());
    std::sort(inc_b.begin(), inc_b.end());
    return inc_a == inc_b;
  }
  for (std::size_t cand = 0; cand < sig_b.size(); ++cand) {
    if (used[cand] || sig_a[next] != sig_b[cand]) continue;
    used[cand] = true;
    map[next] = static_cast<int>(cand);
    if (extend_left_map(next + 1, map, used, sig_a, sig_b, a, b)) return true;
    used[cand] = false;
  }
  return false;
}

}  // namespace

bool color_isomorphic(const ColoredBipartiteGraph& a, const ColoredBipartiteGraph& b) {
  if (a.left_labels().size() != b.left_labels().size()) return false;
  if (a.right_labels().size() != b.right_labels().size()) return false;
  if (a.color_count() != b.color_count()) return false;
  if (a.edges().size() != b.edges().size()) return false;

  auto sig_la = signatures(a, true), sig_lb = signatures(b, true);
  auto sig_ra = signatures(a, false), sig_rb = signatures(b, false);
  auto sorted = [](std::vector<std::vector<int>> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(sig_la) != sorted(sig_lb)) return false;
  if (sorted(sig_ra) != sorted(sig_rb)) return false;

  std::vector<int> map(sig_la.size(), -1);
  std::vector<bool> used(sig_lb.size(), false);
  return extend_left_map(0, map, used, sig_la, sig_lb, a, b);
}

}  // namespace spir
