#include "loopmot/motive.hpp"

#include <algorithm>

#include "loopmot/errors.hpp"

namespace loopmot {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Reduced: return "reduced";
    case Variant::Full: return "full";
    case Variant::Quotient: return "quotient";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "reduced") return Variant::Reduced;
  if (name == "full") return Variant::Full;
  if (name == "quotient") return Variant::Quotient;
  fail("BadVariant", "unknown variant '" + name + "'");
}

SquareClass square_class(const KinematicPoint& k, GramSubset subset) {
  std::sort(subset.begin(), subset.end());
  if (subset.empty() || subset.size() % 2 != 0)
    fail("OddSubset", "square class needs an even positive subset");
  const Rational g = gram_det(k, subset);
  if (g == 0) fail("GramVanishes", "Gram determinant vanishes");
  const long m = static_cast<long>(subset.size()) / 2;
  const Rational sgned = m % 2 == 0 ? g : -g;
  return SquareClass{squarefree_kernel(sgned)};
}

SquareClass square_class_max_cut(const KinematicPoint& k, const std::vector<int>& cut_edges) {
  GramSubset subset(cut_edges.begin(), cut_edges.end());
  const std::size_t cut_count = subset.size();
  if (cut_count % 2 != 0) subset.push_back(kInfinity);
  std::sort(subset.begin(), subset.end());
  const Rational g = gram_det(k, subset);
  if (g == 0) fail("GramVanishes", "Gram determinant vanishes");
  // (-1)^{k/2} for an even cut set, (-1)^{(k+1)/2} with infinity adjoined
  // for an odd one.
  const long half = static_cast<long>((cut_count + 1) / 2);
  const Rational sgned = half % 2 == 0 ? g : -g;
  return SquareClass{squarefree_kernel(sgned)};
}

namespace {

// Subsets of `pool` enumerated in (size, lexicographic) order.
std::vector<std::vector<int>> subsets_of(const std::vector<int>& pool) {
  std::vector<std::vector<int>> out;
  const int m = static_cast<int>(pool.size());
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < m; ++i)
      if (mask & (1ul << i)) subset.push_back(pool[i]);
    out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

int effective_dimension(const CutQuotientGraph& g) {
  const int k = static_cast<int>(g.edges().size());
  return std::max(2, 2 * ((k + 1) / 2));
}

std::optional<SquareClass> piece_character(const std::optional<KinematicPoint>& kin,
                                           const CutQuotientGraph& g, const std::vector<int>& gamma,
                                           bool with_infinity) {
  if (!kin) return std::nullopt;
  GramSubset subset(g.cuts.begin(), g.cuts.end());
  subset.insert(subset.end(), gamma.begin(), gamma.end());
  if (with_infinity) subset.push_back(kInfinity);
  return square_class(*kin, std::move(subset));
}

std::vector<WeightPiece> reduced_pieces(const CutQuotientGraph& g,
                                        const std::optional<KinematicPoint>& kin) {
  std::vector<WeightPiece> pieces;
  if (g.is_point()) {
    pieces.push_back(WeightPiece{{}, false, 0, 0, std::nullopt, false, 1});
    return pieces;
  }
  const int r = static_cast<int>(g.cuts.size());
  for (const auto& gamma : subsets_of(g.uncut_edges())) {
    const int w = r + static_cast<int>(gamma.size());
    if (w % 2 != 0) continue;
    WeightPiece piece;
    piece.gamma = gamma;
    piece.weight = w;
    piece.twist = -w / 2;
    piece.character = w > 0 ? piece_character(kin, g, gamma, false) : std::nullopt;
    if (w == 0 && kin) piece.character = SquareClass{1};  // Q(0)
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::vector<WeightPiece> quotient_pieces(const CutQuotientGraph& g,
                                         const std::optional<KinematicPoint>& kin) {
  std::vector<WeightPiece> pieces;
  if (g.is_point()) return pieces;

  const std::vector<int> edges = g.edges();
  const int r = static_cast<int>(g.cuts.size());

  // One-edge graphs are special: the uncut tadpole has no quotient part and
  // the cut tadpole is Q(-1) outright.
  if (edges.size() == 1) {
    if (r == 1) {
      WeightPiece piece;
      piece.infty = true;
      piece.weight = 2;
      piece.twist = -1;
      if (kin) piece.character = SquareClass{1};
      pieces.push_back(std::move(piece));
    }
    return pieces;
  }

  const std::vector<int> uncut = g.uncut_edges();
  if (r == 0) {
    // Weight 2 is the kernel of the sum map Q(-1)^E -> Q(-1); the remaining
    // pieces are indexed by odd subsets of size >= 3.
    if (uncut.size() >= 2) {
      WeightPiece kernel;
      kernel.infty = true;
      kernel.weight = 2;
      kernel.twist = -1;
      kernel.kernel = true;
      kernel.multiplicity = static_cast<int>(uncut.size()) - 1;
      pieces.push_back(std::move(kernel));
    }
    for (const auto& gamma : subsets_of(uncut)) {
      if (gamma.size() % 2 == 0 || gamma.size() < 3) continue;
      const int w = static_cast<int>(gamma.size()) + 1;
      WeightPiece piece;
      piece.gamma = gamma;
      piece.infty = true;
      piece.weight = w;
      piece.twist = -w / 2;
      piece.character = piece_character(kin, g, gamma, true);
      pieces.push_back(std::move(piece));
    }
  } else {
    // With cuts present the section at infinity is smooth; every subset with
    // |cuts| + |gamma| + 1 even contributes its own character piece.
    for (const auto& gamma : subsets_of(uncut)) {
      const int w = r + static_cast<int>(gamma.size()) + 1;
      if (w % 2 != 0) continue;
      WeightPiece piece;
      piece.gamma = gamma;
      piece.infty = true;
      piece.weight = w;
      piece.twist = -w / 2;
      piece.character = piece_character(kin, g, gamma, true);
      pieces.push_back(std::move(piece));
    }
  }

  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const WeightPiece& a, const WeightPiece& b) { return a.weight < b.weight; });
  return pieces;
}

}  // namespace

MotiveDescription weight_pieces(const CutQuotientGraph& g, Variant variant,
                                const std::optional<KinematicPoint>& kin) {
  if (kin && !g.is_point()) {
    // d-genericity: every Gram determinant the pieces can touch is nonzero.
    // The rank condition is deliberately not imposed; it concerns
    // realizability in this dimension, not the existence of the pieces.
    const GenericityReport report = is_generic(*kin, effective_dimension(g));
    if (!report.failures.empty())
      fail("NotGeneric", "kinematics are not generic in dimension " +
                             std::to_string(effective_dimension(g)));
  }

  MotiveDescription desc;
  desc.graph = g;
  desc.variant = variant;
  switch (variant) {
    case Variant::Reduced:
      desc.pieces = reduced_pieces(g, kin);
      break;
    case Variant::Quotient:
      desc.pieces = quotient_pieces(g, kin);
      break;
    case Variant::Full: {
      desc.pieces = reduced_pieces(g, kin);
      auto q = quotient_pieces(g, kin);
      desc.pieces.insert(desc.pieces.end(), q.begin(), q.end());
      std::stable_sort(desc.pieces.begin(), desc.pieces.end(),
                       [](const WeightPiece& a, const WeightPiece& b) { return a.weight < b.weight; });
      break;
    }
  }
  for (const auto& piece : desc.pieces) desc.rank += piece.multiplicity;
  return desc;
}

std::vector<DeRhamBasisElement> de_rham_basis(const CutQuotientGraph& g, Variant variant,
                                              int base_index) {
  const std::vector<int> uncut = g.uncut_edges();
  std::vector<DeRhamBasisElement> basis;

  const bool needs_base = variant != Variant::Reduced;
  if (needs_base &&
      (std::find(uncut.begin(), uncut.end(), base_index) == uncut.end()))
    fail("BadBaseIndex", "base edge " + std::to_string(base_index) + " is not an uncut edge");

  for (const auto& gamma : subsets_of(uncut)) {
    const std::size_t size = gamma.size();
    const bool keep = variant == Variant::Reduced  ? size % 2 == 0
                      : variant == Variant::Full   ? size != 1
                                                   : size % 2 == 1 && size >= 3;
    if (!keep) continue;
    DeRhamBasisElement el;
    el.gamma = gamma;
    basis.push_back(std::move(el));
  }
  if (needs_base) {
    for (int j : uncut) {
      if (j == base_index) continue;  // omega_pair(i,i) is zero
      DeRhamBasisElement el;
      el.is_pair = true;
      el.i = base_index;
      el.j = j;
      basis.push_back(std::move(el));
    }
  }
  return basis;
}

WeightBounds weight_bounds(const CutQuotientGraph& g, Variant variant) {
  if (g.is_point()) fail("PointGraph", "weight bounds of the point graph");
  const MotiveDescription desc = weight_pieces(g, variant);
  WeightBounds bounds;
  if (desc.pieces.empty()) return bounds;
  int bottom = desc.pieces.front().weight;
  for (const auto& p : desc.pieces) {
    bounds.top_weight = std::max(bounds.top_weight, p.weight);
    bottom = std::min(bottom, p.weight);
  }
  for (const auto& p : desc.pieces) {
    if (p.weight == bounds.top_weight) bounds.top_rank += p.multiplicity;
    if (p.weight == bottom) bounds.bottom_rank += p.multiplicity;
  }
  return bounds;
}

MotiveDescription truncate(MotiveDescription m, int d) {
  if (d < 0 || d % 2 != 0) fail("DimensionMismatch", "truncation weight must be even and >= 0");
  std::vector<WeightPiece> kept;
  for (auto& piece : m.pieces)
    if (piece.weight <= d) kept.push_back(std::move(piece));
  m.pieces = std::move(kept);
  m.rank = 0;
  for (const auto& piece : m.pieces) m.rank += piece.multiplicity;
  return m;
}

std::vector<long long> plus_part_cohomology_ranks(int n, int d) {
  if (n < 1 || d < 2) fail("DimensionMismatch", "need n >= 1 and d >= 2");

  // Subsets of {1..n} of fixed size, lexicographic.
  auto level = [&](int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> subset;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(subset.size()) == k) {
        out.push_back(subset);
        return;
      }
      for (int v = start; v <= n; ++v) {
        subset.push_back(v);
        self(self, v + 1);
        subset.pop_back();
      }
    };
    rec(rec, 1);
    return out;
  };

  std::vector<long long> ranks(d + 1, 0);
  ranks[0] = 1;
  std::vector<std::vector<int>> below = level(0);
  for (int k = 1; k <= d; ++k) {
    const std::vector<std::vector<int>> at = level(k);
    if (at.empty()) break;
    std::map<std::vector<int>, int> index;
    for (std::size_t c = 0; c < below.size(); ++c) index[below[c]] = static_cast<int>(c);

    // Alternating incidence differential: I -> sum_r (-1)^r (I minus its
    // r-th element).
    std::vector<std::vector<Integer>> diff(at.size(), std::vector<Integer>(below.size(), 0));
    for (std::size_t row = 0; row < at.size(); ++row) {
      for (int r = 0; r < k; ++r) {
        std::vector<int> smaller = at[row];
        smaller.erase(smaller.begin() + r);
        diff[row][index[smaller]] = (r % 2 == 0) ? 1 : -1;
      }
    }
    ranks[k] = static_cast<long long>(at.size()) - rank_integer(std::move(diff));
    below = at;
  }
  return ranks;
}

std::map<int, long long> minus_part_gr_ranks(int n, Variant variant) {
  if (n < 1) fail("DimensionMismatch", "need n >= 1");
  auto binom = [](int a, int b) {
    if (b < 0 || b > a) return 0ll;
    long long r = 1;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  std::map<int, long long> ranks;
  if (variant == Variant::Reduced || variant == Variant::Full)
    for (int m = 0; 2 * m <= n; ++m) ranks[2 * m] += binom(n, 2 * m);
  if (variant == Variant::Quotient || variant == Variant::Full) {
    if (n >= 2) ranks[2] += n - 1;
    for (int m = 2; 2 * m - 1 <= n; ++m) ranks[2 * m] += binom(n, 2 * m - 1);
  }
  return ranks;
}

}  // namespace loopmot
