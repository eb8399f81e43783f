#include <doctest.h>

#include <functional>

#include "loopmot/coaction.hpp"
#include "loopmot/errors.hpp"

using namespace loopmot;

namespace {

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.code();
  }
  return "";
}

PeriodSymbol idr(int n, std::set<int> cuts, std::set<int> pinched = {}) {
  CutQuotientGraph g;
  g.n = n;
  g.pinched = std::move(pinched);
  g.cuts = std::move(cuts);
  return PeriodSymbol::idr(std::move(g));
}

PeriodSymbol im(int n, std::set<int> pinched) {
  CutQuotientGraph g;
  g.n = n;
  g.pinched = std::move(pinched);
  return PeriodSymbol::im(std::move(g));
}

bool has_term(const CoactionExpression& e, const Rational& coeff, const PeriodSymbol& left,
              const PeriodSymbol& right) {
  for (const auto& t : e.terms)
    if (t.coeff == coeff && t.left == left && t.right == right) return true;
  return false;
}

}  // namespace

TEST_CASE("coaction of the bubble") {
  const CoactionExpression e = coaction(2);
  REQUIRE(e.terms.size() == 2);
  CHECK(has_term(e, 1, PeriodSymbol::unit(), idr(2, {})));
  CHECK(has_term(e, 1, im(2, {}), idr(2, {1, 2})));
}

TEST_CASE("coaction of the triangle groups the single-edge block") {
  const CoactionExpression e = coaction(3);
  CHECK(e.terms.size() == 9);
  // Tadpole-left entries relative to reference edge 1 vanish, and the
  // eliminated symbol Idr(3,{3}) redistributes onto lower indices.
  CHECK(has_term(e, 1, im(3, {2, 3}), idr(3, {1})));
  CHECK(has_term(e, -1, im(3, {1, 2}), idr(3, {1})));
  CHECK(has_term(e, 1, im(3, {1, 3}), idr(3, {2})));
  CHECK(has_term(e, -1, im(3, {1, 2}), idr(3, {2})));
  for (const auto& t : e.terms) CHECK(t.right.graph.cuts != std::set<int>{3});
  // Per right factor, tadpole coefficients sum to zero.
  for (const std::set<int>& gamma : {std::set<int>{1}, std::set<int>{2}}) {
    Rational sum = 0;
    for (const auto& t : e.terms)
      if (t.right.graph.cuts == gamma) sum += t.coeff;
    CHECK(sum == 0);
  }
}

TEST_CASE("coaction term counts for even n") {
  for (int n : {2, 4, 6}) {
    const CoactionExpression e = coaction(n);
    CHECK(e.terms.size() == (1u << (n - 1)));
    for (const auto& t : e.terms) CHECK(t.right.graph.cuts.size() % 2 == 0);
  }
}

TEST_CASE("single-edge block is independent of the reference edge") {
  for (int n : {3, 5}) {
    const CoactionExpression base = coaction(n, 1);
    for (int j = 2; j <= n; ++j) {
      const CoactionExpression other = coaction(n, j);
      REQUIRE(other.terms.size() == base.terms.size());
      for (std::size_t i = 0; i < base.terms.size(); ++i) {
        CHECK(base.terms[i].coeff == other.terms[i].coeff);
        CHECK(base.terms[i].left == other.terms[i].left);
        CHECK(base.terms[i].right == other.terms[i].right);
      }
    }
  }
  CHECK(code_of([] { coaction(1); }) == "TooSmall");
  CHECK(code_of([] { coaction(3, 7); }) == "IndexOutOfRange");
}

TEST_CASE("coproduct") {
  // Maximal cut is group-like.
  const CoactionExpression top = coproduct(2, {1, 2});
  REQUIRE(top.terms.size() == 1);
  CHECK(has_term(top, 1, idr(2, {1, 2}), idr(2, {1, 2})));

  // Both raw terms of Delta I^dr(Gamma_2, {1}) carry factors that the
  // parity rule or the one-edge relation kills.
  CHECK(coproduct(2, {1}).terms.empty());

  const CoactionExpression e3 = coproduct(3, {});
  CHECK(e3.terms.size() == 9);
  CHECK(has_term(e3, 1, PeriodSymbol::unit(), idr(3, {})));
  CHECK(has_term(e3, 1, idr(3, {}), idr(3, {1, 2, 3})));

  // The gamma' = E term is Idr(n,gamma) (x) Idr(n,E), and the gamma' = gamma
  // term's left factor is the maximal cut of the quotient graph.
  const CoactionExpression e = coproduct(3, {1, 2});
  CHECK(has_term(e, 1, idr(3, {1, 2}), idr(3, {1, 2, 3})));
  CHECK(has_term(e, 1, idr(3, {1, 2}, {3}), idr(3, {1, 2})));
  CHECK(e.terms.size() == 2);

  CHECK(code_of([] { coproduct(3, {5}); }) == "BadSubset");
}

TEST_CASE("normal form implements the zero-sum relation") {
  CoactionExpression e;
  for (int i = 1; i <= 3; ++i) e.terms.push_back({1, PeriodSymbol::unit(), idr(3, {i})});
  CHECK(normal_form(std::move(e)).terms.empty());
}

TEST_CASE("normal form drops parity-zero symbols and merges") {
  CoactionExpression e;
  e.terms.push_back({1, PeriodSymbol::unit(), idr(4, {2})});  // 4 even, |gamma| odd
  CHECK(normal_form(e).terms.empty());

  CoactionExpression f;
  f.terms.push_back({rat(1, 2), PeriodSymbol::unit(), idr(4, {1, 2})});
  f.terms.push_back({rat(1, 3), PeriodSymbol::unit(), idr(4, {1, 2})});
  f.terms.push_back({rat(-5, 6), PeriodSymbol::unit(), idr(4, {1, 2})});
  CHECK(normal_form(f).terms.empty());

  CoactionExpression g;
  g.terms.push_back({rat(2, 4), PeriodSymbol::unit(), idr(4, {1, 2})});
  const CoactionExpression ng = normal_form(g);
  REQUIRE(ng.terms.size() == 1);
  CHECK(ng.terms[0].coeff == rat(1, 2));
}

TEST_CASE("normal form is idempotent") {
  for (int n = 2; n <= 5; ++n) {
    const CoactionExpression once = coaction(n);
    const CoactionExpression twice = normal_form(once);
    REQUIRE(once.terms.size() == twice.terms.size());
    for (std::size_t i = 0; i < once.terms.size(); ++i) {
      CHECK(once.terms[i].coeff == twice.terms[i].coeff);
      CHECK(once.terms[i].left == twice.terms[i].left);
      CHECK(once.terms[i].right == twice.terms[i].right);
    }
  }
}

TEST_CASE("coassociativity") {
  for (int n = 2; n <= 6; ++n) {
    const CoassociativityResult r = check_coassociativity(n);
    CHECK(r.ok);
    if (!r.ok) MESSAGE(r.counterexample);
  }
}

TEST_CASE("text rendering") {
  CHECK(render_text(coaction(2)) ==
        "1 (x) I^dr(n=2, {}) + I^m(n=2) (x) I^dr(n=2, {1,2})");
  CHECK(render_text(PeriodSymbol::unit()) == "1");
  CHECK(render_text(im(4, {1, 3})) == "I^m(n=4;pinch=1,3)");
  CHECK(render_text(idr(4, {2, 4})) == "I^dr(n=4, {2,4})");
  CHECK(render_text(CoactionExpression{}) == "0");
}
