#pragma once

#include <string>
#include <vector>

#include "spir/scheme.hpp"

namespace spir {

// Edge of a colored bipartite graph. Colors are nonzero: positive colors are
// message indices (1-based); negative colors are dummy groups (-1, -2, ...)
// that carry no message and are ignored by regularity.
struct ColoredEdge {
  int left;   // index into left labels
  int right;  // index into right labels
  int color;

  bool operator==(const ColoredEdge&) const = default;
  auto operator<=>(const ColoredEdge&) const = default;
};

class ColoredBipartiteGraph {
 public:
  // Validates: labels well-formed and unique per side, edge endpoints in
  // range, colors nonzero, at most one edge per (left, right) pair, and every
  // real color 1..color_count appears on at least one edge. Edges are stored
  // sorted by (left, right).
  ColoredBipartiteGraph(std::vector<std::string> left_labels,
                        std::vector<std::string> right_labels, int color_count,
                        std::vector<ColoredEdge> edges);

  const std::vector<std::string>& left_labels() const { return left_labels_; }
  const std::vector<std::string>& right_labels() const { return right_labels_; }
  int color_count() const { return color_count_; }
  const std::vector<ColoredEdge>& edges() const { return edges_; }

  bool operator==(const ColoredBipartiteGraph&) const = default;

 private:
  std::vector<std::string> left_labels_;
  std::vector<std::string> right_labels_;
  int color_count_;
  std::vector<ColoredEdge> edges_;
};

// The scheme's retrieval structure as a graph: left = space_x, right =
// space_y, one edge of color k per pair in pairs()[k-1]. A pair listed under
// two different messages raises Error ("ambiguous edge color").
ColoredBipartiteGraph graph_from_scheme(const Scheme& s);

struct RegularityReport {
  bool pass = false;
  // Offending node descriptions ("left A1: color 2 has 0 edges, color 1 has
  // 1"), empty iff pass.
  std::vector<std::string> offending_nodes;
};

// Every node must touch each real color the same number of times (the count
// may vary between nodes but not between colors at one node). Dummy colors
// are exempt.
RegularityReport validate_regularity(const ColoredBipartiteGraph& g);

// Graphviz rendering. Deterministic output: nodes in label order, edges in
// stored order. Real colors cycle through a fixed palette; dummy edges are
// gray and dashed.
std::string export_dot(const ColoredBipartiteGraph& g, const std::string& graph_name);

// True iff relabeling left nodes within the left side and right nodes within
// the right side (sides never swap) can make the edge sets equal color for
// color. Decided by backtracking with degree/color-signature pruning.
bool color_isomorphic(const ColoredBipartiteGraph& a, const ColoredBipartiteGraph& b);

}  // namespace spir
