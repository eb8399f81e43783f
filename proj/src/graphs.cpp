#include "loopmot/graphs.hpp"

#include <algorithm>
#include <sstream>

#include "loopmot/errors.hpp"

namespace loopmot {

std::vector<int> CutQuotientGraph::edges() const {
  std::vector<int> out;
  for (int e = 1; e <= n; ++e)
    if (!pinched.count(e)) out.push_back(e);
  return out;
}

std::vector<int> CutQuotientGraph::uncut_edges() const {
  std::vector<int> out;
  for (int e = 1; e <= n; ++e)
    if (!pinched.count(e) && !cuts.count(e)) out.push_back(e);
  return out;
}

CutQuotientGraph n_gon(int n) {
  if (n < 1) fail("NonPositive", "n-gon needs n >= 1");
  return CutQuotientGraph{n, {}, {}};
}

namespace {

void check_uncut_edge(const CutQuotientGraph& g, int edge) {
  if (edge < 1 || edge > g.n || g.pinched.count(edge))
    fail("EdgeNotPresent", "edge " + std::to_string(edge) + " is not in the graph");
}

}  // namespace

CutQuotientGraph pinch(CutQuotientGraph g, int edge) {
  check_uncut_edge(g, edge);
  if (g.cuts.count(edge)) fail("EdgeIsCut", "cut edge " + std::to_string(edge) + " cannot be pinched");
  g.pinched.insert(edge);
  return g;
}

CutQuotientGraph cut(CutQuotientGraph g, int edge) {
  check_uncut_edge(g, edge);
  if (g.cuts.count(edge)) fail("AlreadyCut", "edge " + std::to_string(edge) + " is already cut");
  g.cuts.insert(edge);
  return g;
}

int residue_sign(const std::vector<int>& order) {
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[a] == order[b]) fail("DuplicateEdge", "edge " + std::to_string(order[a]));
  int sign = 1;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b]) sign = -sign;
  return sign;
}

Reduction reduce_to_k_gon(const CutQuotientGraph& g) {
  if (g.is_point()) fail("PointGraph", "the point graph has no k-gon reduction");
  Reduction r;
  const std::vector<int> survivors = g.edges();
  r.k = static_cast<int>(survivors.size());
  r.graph = n_gon(r.k);
  for (int a = 0; a < r.k; ++a) {
    r.edge_map[survivors[a]] = a + 1;
    if (g.cuts.count(survivors[a])) r.graph.cuts.insert(a + 1);
  }
  return r;
}

namespace {

std::string join(const std::set<int>& values) {
  std::string out;
  for (int v : values) {
    if (!out.empty()) out += ",";
    out += std::to_string(v);
  }
  return out;
}

std::set<int> parse_int_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail("BadGraphNotation", "empty list entry");
    std::size_t pos = 0;
    int value = std::stoi(item, &pos);
    if (pos != item.size()) fail("BadGraphNotation", "bad integer '" + item + "'");
    out.insert(value);
  }
  return out;
}

}  // namespace

std::string graph_notation(const CutQuotientGraph& g) {
  std::string out = "n=" + std::to_string(g.n);
  if (!g.pinched.empty()) out += ";pinch=" + join(g.pinched);
  if (!g.cuts.empty()) out += ";cut=" + join(g.cuts);
  return out;
}

CutQuotientGraph parse_graph_notation(const std::string& text) {
  CutQuotientGraph g;
  bool have_n = false;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ';')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) fail("BadGraphNotation", "expected key=value in '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "n") {
      g.n = std::stoi(value);
      have_n = true;
    } else if (key == "pinch") {
      g.pinched = parse_int_list(value);
    } else if (key == "cut") {
      g.cuts = parse_int_list(value);
    } else {
      fail("BadGraphNotation", "unknown key '" + key + "'");
    }
  }
  if (!have_n || g.n < 1) fail("BadGraphNotation", "missing or invalid n");
  for (int e : g.pinched)
    if (e < 1 || e > g.n) fail("BadGraphNotation", "pinched edge out of range");
  for (int e : g.cuts) {
    if (e < 1 || e > g.n) fail("BadGraphNotation", "cut edge out of range");
    if (g.pinched.count(e)) fail("BadGraphNotation", "edge both pinched and cut");
  }
  return g;
}

}  // namespace loopmot
