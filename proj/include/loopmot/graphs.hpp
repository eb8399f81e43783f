#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace loopmot {

// A quotient of the n-gon with disjoint pinched (contracted) and cut edge
// subsets, always stored relative to the parent n-gon. The fully contracted
// graph (pinched = {1..n}, cuts empty) is the point graph.
struct CutQuotientGraph {
  int n = 0;
  std::set<int> pinched;
  std::set<int> cuts;

  std::vector<int> edges() const;        // {1..n} \ pinched, ascending
  std::vector<int> uncut_edges() const;  // edges \ cuts, ascending
  bool is_point() const { return static_cast<int>(pinched.size()) == n; }

  bool operator==(const CutQuotientGraph&) const = default;
  auto operator<=>(const CutQuotientGraph&) const = default;
};

CutQuotientGraph n_gon(int n);

// Contracts an uncut edge. Cut edges cannot be pinched.
CutQuotientGraph pinch(CutQuotientGraph g, int edge);

// Marks an uncut edge as cut.
CutQuotientGraph cut(CutQuotientGraph g, int edge);

// Sign of the permutation sorting the cut order ascending; iterated residues
// anticommute, and the canonical order is increasing edge index.
int residue_sign(const std::vector<int>& order);

struct Reduction {
  int k = 0;
  std::map<int, int> edge_map;  // parent edge -> edge of the k-gon
  CutQuotientGraph graph;       // the k-gon with re-indexed cuts
};

// Identifies the quotient graph with the k-gon on its surviving edges.
Reduction reduce_to_k_gon(const CutQuotientGraph& g);

// Text notation "n=4;pinch=2;cut=1,3" (ascending lists, omitted when empty).
std::string graph_notation(const CutQuotientGraph& g);
CutQuotientGraph parse_graph_notation(const std::string& text);

}  // namespace loopmot
