#pragma once

#include <set>
#include <string>
#include <vector>

#include "loopmot/graphs.hpp"
#include "loopmot/rational.hpp"

namespace loopmot {

// Formal period symbol. Im carries a quotient graph (cuts empty); Idr a cut
// quotient graph whose cut set is the symbol's gamma. The point graph yields
// the unit symbol in either role.
struct PeriodSymbol {
  enum class Kind { Unit, Im, Idr };

  Kind kind = Kind::Unit;
  CutQuotientGraph graph;

  static PeriodSymbol unit();
  static PeriodSymbol im(CutQuotientGraph g);
  static PeriodSymbol idr(CutQuotientGraph g);

  bool operator==(const PeriodSymbol&) const = default;
  auto operator<=>(const PeriodSymbol&) const = default;
};

struct CoactionTerm {
  Rational coeff;
  PeriodSymbol left;
  PeriodSymbol right;
};

struct CoactionExpression {
  std::vector<CoactionTerm> terms;
};

// rho I^m(Gamma_n) = sum_gamma I^m(Gamma_n/gamma^c) (x) I^dr(Gamma_n,gamma).
// Even n drops odd-size gamma; odd n groups the single-edge block through
// the zero-sum convention with reference edge j. Result is in normal form.
CoactionExpression coaction(int n, int j = 1);

// Delta I^dr(Gamma_n,gamma) = sum_{gamma'=gamma..E}
//   I^dr(Gamma_n/gamma'^c,gamma) (x) I^dr(Gamma_n,gamma'). Normal form.
CoactionExpression coproduct(int n, const std::set<int>& gamma);

// Relation-aware normal form:
//  - Idr symbols on an even-edge-count graph with an odd cut set vanish;
//  - the highest-index single-edge cut symbol of each graph is eliminated
//    via sum_i I^dr(.,e_i) = 0;
//  - Im/Idr symbols on the point graph become the unit;
//  - zero coefficients dropped, like terms merged, deterministic order.
CoactionExpression normal_form(CoactionExpression expr);

struct CoassociativityResult {
  bool ok = false;
  std::string counterexample;  // first mismatching triple term, if any
};

// Expands (rho on left factors (x) id) o rho and (id (x) Delta) o rho
// symbolically and compares the normalized triple-tensor term multisets.
CoassociativityResult check_coassociativity(int n);

// Plain-text rendering, e.g. "I^m(n=4;pinch=1,3) (x) I^dr(n=4, {2,4})".
std::string render_text(const CoactionExpression& expr);
std::string render_text(const PeriodSymbol& symbol);

}  // namespace loopmot
