#include "loopmot/jsonio.hpp"

#include "loopmot/errors.hpp"

namespace loopmot {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail("BadRational", "expected a rational as integer or \"a/b\" string");
}

Json character_to_json(const WeightPiece& piece) {
  if (piece.kernel) return Json("kernel");
  const Integer& rep = piece.character->representative;
  if (rep.fits_slong_p()) return Json(rep.get_si());
  return Json(rep.get_str());
}

}  // namespace

Json kinematics_to_json(const KinematicPoint& k) {
  Json j;
  j["n"] = k.n;
  Json rows = Json::array();
  for (const auto& row : k.s) {
    Json cells = Json::array();
    for (const auto& q : row) cells.push_back(rational_string(q));
    rows.push_back(std::move(cells));
  }
  j["s"] = std::move(rows);
  Json masses = Json::array();
  for (const auto& q : k.m2) masses.push_back(rational_string(q));
  j["m2"] = std::move(masses);
  return j;
}

KinematicPoint kinematics_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  RatMatrix s;
  for (const auto& row : j.at("s")) {
    RatVector cells;
    for (const auto& cell : row) cells.push_back(rational_from_json(cell));
    s.push_back(std::move(cells));
  }
  RatVector m2;
  for (const auto& cell : j.at("m2")) m2.push_back(rational_from_json(cell));
  return from_invariants(n, std::move(s), std::move(m2));
}

Json graph_to_json(const CutQuotientGraph& g) {
  Json j;
  j["n"] = g.n;
  j["pinch"] = Json(g.pinched);
  j["cut"] = Json(g.cuts);
  return j;
}

CutQuotientGraph graph_from_json(const Json& j) {
  CutQuotientGraph g;
  g.n = j.at("n").get<int>();
  if (j.contains("pinch"))
    for (int e : j.at("pinch")) g.pinched.insert(e);
  if (j.contains("cut"))
    for (int e : j.at("cut")) g.cuts.insert(e);
  // Route through the notation validator for range/disjointness checks.
  return parse_graph_notation(graph_notation(g));
}

Json gram_subset_to_json(const GramSubset& subset) {
  Json out = Json::array();
  for (GramIndex i : subset) {
    if (i == kInfinity)
      out.push_back("inf");
    else
      out.push_back(i);
  }
  return out;
}

Json genericity_to_json(const GenericityReport& r) {
  Json j;
  j["generic"] = r.is_generic;
  j["d"] = r.d;
  j["rank_ok"] = r.rank_ok;
  Json failures = Json::array();
  for (const auto& [subset, det] : r.failures) {
    Json f;
    f["subset"] = gram_subset_to_json(subset);
    f["det"] = rational_string(det);
    failures.push_back(std::move(f));
  }
  j["failures"] = std::move(failures);
  return j;
}

Json motive_to_json(const MotiveDescription& m) {
  Json j;
  j["graph"] = graph_to_json(m.graph);
  j["variant"] = variant_name(m.variant);
  Json pieces = Json::array();
  for (const auto& piece : m.pieces) {
    Json p;
    p["gamma"] = Json(piece.gamma);
    p["infty"] = piece.infty;
    p["weight"] = piece.weight;
    p["twist"] = piece.twist;
    if (piece.kernel || piece.character) p["character"] = character_to_json(piece);
    p["mult"] = piece.multiplicity;
    pieces.push_back(std::move(p));
  }
  j["pieces"] = std::move(pieces);
  j["rank"] = m.rank;
  return j;
}

namespace {

Json symbol_to_json(const PeriodSymbol& s) {
  Json j;
  switch (s.kind) {
    case PeriodSymbol::Kind::Unit:
      j["type"] = "unit";
      break;
    case PeriodSymbol::Kind::Im:
      j["type"] = "Im";
      j["graph"] = graph_to_json(s.graph);
      break;
    case PeriodSymbol::Kind::Idr:
      j["type"] = "Idr";
      j["n"] = s.graph.n;
      j["gamma"] = Json(s.graph.cuts);
      if (!s.graph.pinched.empty()) j["pinch"] = Json(s.graph.pinched);
      break;
  }
  return j;
}

}  // namespace

Json coaction_to_json(const CoactionExpression& e) {
  Json j;
  Json terms = Json::array();
  for (const auto& term : e.terms) {
    Json t;
    t["coeff"] = rational_string(term.coeff);
    t["left"] = symbol_to_json(term.left);
    t["right"] = symbol_to_json(term.right);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Json integral_result_to_json(const IntegralResult& r, const Json& spec_echo) {
  Json j;
  j["value"] = r.value;
  j["error"] = r.error_estimate;
  j["n_evals"] = r.n_evaluations;
  j["method"] = r.method == Method::QuasiMonteCarlo ? "mc" : "quad";
  j["tolerance_reached"] = r.tolerance_reached;
  j["spec_echo"] = spec_echo;
  return j;
}

}  // namespace loopmot
