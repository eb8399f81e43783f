#include "loopmot/coaction.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "loopmot/errors.hpp"

namespace loopmot {

PeriodSymbol PeriodSymbol::unit() { return PeriodSymbol{Kind::Unit, {}}; }

PeriodSymbol PeriodSymbol::im(CutQuotientGraph g) {
  if (!g.cuts.empty()) fail("BadSymbol", "I^m symbols carry no cuts");
  if (g.is_point()) return unit();
  return PeriodSymbol{Kind::Im, std::move(g)};
}

PeriodSymbol PeriodSymbol::idr(CutQuotientGraph g) {
  if (g.is_point()) return unit();
  return PeriodSymbol{Kind::Idr, std::move(g)};
}

namespace {

// Relation-aware rewriting of a single symbol: a list of (coeff, symbol)
// replacements; an empty list means the symbol is zero.
std::vector<std::pair<Rational, PeriodSymbol>> rewrite_symbol(const PeriodSymbol& sym) {
  if (sym.kind != PeriodSymbol::Kind::Idr) return {{1, sym}};

  const std::vector<int> edges = sym.graph.edges();
  const std::size_t k = edges.size();
  const std::size_t cut_count = sym.graph.cuts.size();

  // Even edge count with an odd cut set pairs to zero.
  if (k % 2 == 0 && cut_count % 2 == 1) return {};

  // sum_i I^dr(.,e_i) = 0: eliminate the highest-index single-edge symbol.
  if (cut_count == 1 && *sym.graph.cuts.begin() == edges.back()) {
    std::vector<std::pair<Rational, PeriodSymbol>> out;
    for (std::size_t a = 0; a + 1 < k; ++a) {
      CutQuotientGraph g = sym.graph;
      g.cuts = {edges[a]};
      out.emplace_back(-1, PeriodSymbol::idr(std::move(g)));
    }
    return out;
  }
  return {{1, sym}};
}

struct SymbolKey {
  int kind;
  int n;
  std::vector<int> pinched;
  std::vector<int> cuts;

  auto operator<=>(const SymbolKey&) const = default;
};

SymbolKey key_of(const PeriodSymbol& s) {
  return SymbolKey{static_cast<int>(s.kind), s.graph.n,
                   {s.graph.pinched.begin(), s.graph.pinched.end()},
                   {s.graph.cuts.begin(), s.graph.cuts.end()}};
}

// Term order: size of the right factor's cut set, then the cut set itself,
// then the remaining symbol data.
using TermKey = std::tuple<std::size_t, SymbolKey, SymbolKey>;

TermKey term_key(const PeriodSymbol& left, const PeriodSymbol& right) {
  return {right.graph.cuts.size(), key_of(right), key_of(left)};
}

}  // namespace

CoactionExpression normal_form(CoactionExpression expr) {
  std::map<TermKey, CoactionTerm> merged;
  for (const auto& term : expr.terms) {
    if (term.coeff == 0) continue;
    for (const auto& [cl, left] : rewrite_symbol(term.left)) {
      for (const auto& [cr, right] : rewrite_symbol(term.right)) {
        const Rational coeff = term.coeff * cl * cr;
        auto [it, inserted] = merged.try_emplace(term_key(left, right),
                                                 CoactionTerm{coeff, left, right});
        if (!inserted) it->second.coeff += coeff;
      }
    }
  }
  CoactionExpression out;
  for (auto& [key, term] : merged)
    if (term.coeff != 0) out.terms.push_back(std::move(term));
  return out;
}

namespace {

std::vector<std::vector<int>> subsets_of(const std::vector<int>& pool) {
  std::vector<std::vector<int>> out;
  const int m = static_cast<int>(pool.size());
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < m; ++i)
      if (mask & (1ul << i)) subset.push_back(pool[i]);
    out.push_back(std::move(subset));
  }
  return out;
}

CutQuotientGraph pinch_all_but(const CutQuotientGraph& g, const std::vector<int>& keep) {
  CutQuotientGraph out = g;
  for (int e : g.edges())
    if (std::find(keep.begin(), keep.end(), e) == keep.end()) out.pinched.insert(e);
  return out;
}

CutQuotientGraph with_cuts(const CutQuotientGraph& g, const std::vector<int>& gamma) {
  CutQuotientGraph out = g;
  out.cuts = {gamma.begin(), gamma.end()};
  return out;
}

// Raw coaction terms of I^m of an uncut quotient graph. For an even number
// of edges the odd-size terms are dropped outright; for an odd number the
// single-edge block is grouped through the zero-sum convention relative to
// reference edge j.
std::vector<CoactionTerm> coaction_terms(const CutQuotientGraph& g, int j) {
  const std::vector<int> edges = g.edges();
  const std::size_t k = edges.size();
  std::vector<CoactionTerm> terms;
  for (const auto& gamma : subsets_of(edges)) {
    if (k % 2 == 0 && gamma.size() % 2 == 1) continue;
    if (k % 2 == 1 && gamma.size() == 1) {
      const int e = gamma[0];
      terms.push_back({1, PeriodSymbol::im(pinch_all_but(g, {e})), PeriodSymbol::idr(with_cuts(g, gamma))});
      terms.push_back({-1, PeriodSymbol::im(pinch_all_but(g, {j})), PeriodSymbol::idr(with_cuts(g, gamma))});
      continue;
    }
    terms.push_back({1, PeriodSymbol::im(pinch_all_but(g, gamma)), PeriodSymbol::idr(with_cuts(g, gamma))});
  }
  return terms;
}

std::vector<CoactionTerm> coproduct_terms(const CutQuotientGraph& parent,
                                          const std::vector<int>& gamma) {
  std::vector<CoactionTerm> terms;
  const std::vector<int> edges = parent.edges();
  std::vector<int> rest;
  for (int e : edges)
    if (std::find(gamma.begin(), gamma.end(), e) == gamma.end()) rest.push_back(e);
  for (const auto& extra : subsets_of(rest)) {
    std::vector<int> gamma_prime = gamma;
    gamma_prime.insert(gamma_prime.end(), extra.begin(), extra.end());
    std::sort(gamma_prime.begin(), gamma_prime.end());
    CutQuotientGraph left = with_cuts(pinch_all_but(parent, gamma_prime), gamma);
    terms.push_back({1, PeriodSymbol::idr(std::move(left)),
                     PeriodSymbol::idr(with_cuts(parent, gamma_prime))});
  }
  return terms;
}

}  // namespace

CoactionExpression coaction(int n, int j) {
  if (n < 2) fail("TooSmall", "the coaction needs n >= 2");
  if (j < 1 || j > n) fail("IndexOutOfRange", "reference edge " + std::to_string(j));
  CoactionExpression expr;
  expr.terms = coaction_terms(n_gon(n), j);
  return normal_form(std::move(expr));
}

CoactionExpression coproduct(int n, const std::set<int>& gamma) {
  const CutQuotientGraph parent = n_gon(n);
  for (int e : gamma)
    if (e < 1 || e > n) fail("BadSubset", "cut edge " + std::to_string(e));
  CoactionExpression expr;
  expr.terms = coproduct_terms(parent, {gamma.begin(), gamma.end()});
  return normal_form(std::move(expr));
}

namespace {

struct TripleTerm {
  Rational coeff;
  PeriodSymbol a, b, c;
};

using TripleKey = std::tuple<SymbolKey, SymbolKey, SymbolKey>;

std::map<TripleKey, std::pair<TripleTerm, Rational>> normalize_triples(
    const std::vector<TripleTerm>& raw) {
  std::map<TripleKey, std::pair<TripleTerm, Rational>> merged;
  for (const auto& t : raw) {
    if (t.coeff == 0) continue;
    for (const auto& [ca, a] : rewrite_symbol(t.a))
      for (const auto& [cb, b] : rewrite_symbol(t.b))
        for (const auto& [cc, c] : rewrite_symbol(t.c)) {
          const Rational coeff = t.coeff * ca * cb * cc;
          const TripleKey key{key_of(a), key_of(b), key_of(c)};
          auto [it, inserted] = merged.try_emplace(key, std::pair{TripleTerm{coeff, a, b, c}, coeff});
          if (!inserted) it->second.second += coeff;
        }
  }
  for (auto it = merged.begin(); it != merged.end();) {
    if (it->second.second == 0)
      it = merged.erase(it);
    else
      ++it;
  }
  return merged;
}

std::string render_triple(const TripleTerm& t, const Rational& coeff) {
  return rational_string(coeff) + " * " + render_text(t.a) + " (x) " + render_text(t.b) +
         " (x) " + render_text(t.c);
}

}  // namespace

CoassociativityResult check_coassociativity(int n) {
  if (n < 2 || n > 8) fail("TooSmall", "coassociativity check supports 2 <= n <= 8");
  const CoactionExpression base = coaction(n);

  std::vector<TripleTerm> lhs;
  for (const auto& term : base.terms) {
    if (term.left.kind == PeriodSymbol::Kind::Unit) {
      lhs.push_back({term.coeff, PeriodSymbol::unit(), PeriodSymbol::unit(), term.right});
      continue;
    }
    const CutQuotientGraph& g = term.left.graph;
    const int j = g.edges().front();
    for (const auto& inner : coaction_terms(g, j))
      lhs.push_back({term.coeff * inner.coeff, inner.left, inner.right, term.right});
  }

  std::vector<TripleTerm> rhs;
  for (const auto& term : base.terms) {
    const std::vector<int> gamma{term.right.graph.cuts.begin(), term.right.graph.cuts.end()};
    for (const auto& inner : coproduct_terms(n_gon(n), gamma))
      rhs.push_back({term.coeff * inner.coeff, term.left, inner.left, inner.right});
  }

  const auto left = normalize_triples(lhs);
  const auto right = normalize_triples(rhs);

  CoassociativityResult result;
  result.ok = true;
  for (const auto& [key, value] : left) {
    auto it = right.find(key);
    if (it == right.end() || it->second.second != value.second) {
      result.ok = false;
      result.counterexample = "lhs term " + render_triple(value.first, value.second);
      return result;
    }
  }
  for (const auto& [key, value] : right) {
    if (!left.count(key)) {
      result.ok = false;
      result.counterexample = "rhs term " + render_triple(value.first, value.second);
      return result;
    }
  }
  return result;
}

std::string render_text(const PeriodSymbol& symbol) {
  switch (symbol.kind) {
    case PeriodSymbol::Kind::Unit:
      return "1";
    case PeriodSymbol::Kind::Im:
      return "I^m(" + graph_notation(symbol.graph) + ")";
    case PeriodSymbol::Kind::Idr: {
      CutQuotientGraph bare = symbol.graph;
      bare.cuts.clear();
      std::string cuts = "{";
      bool first = true;
      for (int e : symbol.graph.cuts) {
        if (!first) cuts += ",";
        cuts += std::to_string(e);
        first = false;
      }
      cuts += "}";
      return "I^dr(" + graph_notation(bare) + ", " + cuts + ")";
    }
  }
  return "?";
}

std::string render_text(const CoactionExpression& expr) {
  if (expr.terms.empty()) return "0";
  std::string out;
  for (const auto& term : expr.terms) {
    const bool negative = term.coeff < 0;
    Rational mag = abs(term.coeff);
    if (out.empty()) {
      if (negative) out += "- ";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += rational_string(mag) + " ";
    out += render_text(term.left) + " (x) " + render_text(term.right);
  }
  return out;
}

}  // namespace loopmot
