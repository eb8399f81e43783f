#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "loopmot/errors.hpp"
#include "loopmot/motive.hpp"
#include "loopmot/selfcheck.hpp"

using namespace loopmot;

namespace {

KinematicPoint e1() {
  return from_invariants(2, {{rat(1), rat(-1)}, {rat(-1), rat(1)}}, {rat(1), rat(1)});
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.code();
  }
  return "";
}

std::map<int, int> weight_multiplicities(const MotiveDescription& m) {
  std::map<int, int> out;
  for (const auto& p : m.pieces) out[p.weight] += p.multiplicity;
  return out;
}

}  // namespace

TEST_CASE("square_class") {
  CHECK(square_class(e1(), {1, 2}) == SquareClass{5});

  const KinematicPoint heavier =
      from_invariants(2, {{rat(1), rat(-1)}, {rat(-1), rat(1)}}, {rat(2), rat(1)});
  CHECK(square_class(heavier, {1, 2}) == SquareClass{2});

  // (-1) G_{12} = 9/4 is a perfect square, so the character splits.
  const KinematicPoint split =
      from_invariants(2, {{rat(1, 2), rat(-1, 2)}, {rat(-1, 2), rat(1, 2)}}, {rat(1), rat(1)});
  CHECK(gram_det(split, {1, 2}) == rat(-9, 4));
  CHECK(square_class(split, {1, 2}).trivial());

  CHECK(code_of([] { square_class(e1(), {1}); }) == "OddSubset");
  const KinematicPoint degenerate =
      from_invariants(2, {{rat(0), rat(0)}, {rat(0), rat(0)}}, {rat(1), rat(1)});
  CHECK(code_of([&] { square_class(degenerate, {1, 2}); }) == "GramVanishes");
}

TEST_CASE("square_class is invariant under square scalings") {
  std::mt19937_64 rng(4);
  const auto cfg = selfcheck::random_generic_euclidean(rng, 3, 2);
  KinematicPoint k = from_momenta(2, cfg.p, cfg.m2);
  const SquareClass before = square_class(k, {1, 3});
  const Rational lambda_sq = rat(9, 4);
  for (auto& row : k.s)
    for (auto& x : row) x *= lambda_sq;
  for (auto& m : k.m2) m *= lambda_sq;
  CHECK(square_class(k, {1, 3}) == before);
}

TEST_CASE("box reduced decomposition") {
  const MotiveDescription box = weight_pieces(n_gon(4), Variant::Reduced);
  CHECK(box.rank == 8);
  CHECK(weight_multiplicities(box) == std::map<int, int>{{0, 1}, {2, 6}, {4, 1}});
  for (const auto& piece : box.pieces) {
    CHECK(piece.weight == static_cast<int>(piece.gamma.size()));
    CHECK(piece.twist == -piece.weight / 2);
    CHECK_FALSE(piece.infty);
  }
}

TEST_CASE("tadpole special cases") {
  const MotiveDescription full = weight_pieces(n_gon(1), Variant::Full);
  CHECK(full.rank == 1);
  CHECK(full.pieces.size() == 1);
  CHECK(full.pieces[0].weight == 0);

  CHECK(weight_pieces(n_gon(1), Variant::Quotient).rank == 0);
  CHECK(weight_pieces(n_gon(1), Variant::Reduced).rank == 1);

  // Cut tadpole: reduced part vanishes, full = quotient = a single Q(-1).
  const CutQuotientGraph cut_tad = cut(n_gon(1), 1);
  CHECK(weight_pieces(cut_tad, Variant::Reduced).rank == 0);
  const MotiveDescription cut_full = weight_pieces(cut_tad, Variant::Full);
  CHECK(cut_full.rank == 1);
  CHECK(cut_full.pieces[0].weight == 2);
  CHECK(cut_full.pieces[0].twist == -1);
  CHECK(cut_full.pieces[0].infty);

  const KinematicPoint tad_kin = from_invariants(1, {{rat(0)}}, {rat(1)});
  const MotiveDescription with_char = weight_pieces(cut_tad, Variant::Full, tad_kin);
  REQUIRE(with_char.pieces[0].character.has_value());
  CHECK(with_char.pieces[0].character->trivial());
}

TEST_CASE("quotient pieces") {
  const MotiveDescription bubble = weight_pieces(n_gon(2), Variant::Quotient);
  CHECK(bubble.rank == 1);
  CHECK(bubble.pieces.size() == 1);
  CHECK(bubble.pieces[0].kernel);
  CHECK(bubble.pieces[0].weight == 2);
  CHECK(bubble.pieces[0].multiplicity == 1);

  const MotiveDescription tri = weight_pieces(n_gon(3), Variant::Quotient);
  CHECK(weight_multiplicities(tri) == std::map<int, int>{{2, 2}, {4, 1}});
}

TEST_CASE("characters attach when kinematics are supplied") {
  const MotiveDescription bubble = weight_pieces(n_gon(2), Variant::Reduced, e1());
  REQUIRE(bubble.pieces.size() == 2);
  CHECK(bubble.pieces[1].weight == 2);
  REQUIRE(bubble.pieces[1].character.has_value());
  CHECK(bubble.pieces[1].character->representative == 5);

  const KinematicPoint degenerate =
      from_invariants(2, {{rat(0), rat(0)}, {rat(0), rat(0)}}, {rat(1), rat(1)});
  CHECK(code_of([&] { weight_pieces(n_gon(2), Variant::Reduced, degenerate); }) == "NotGeneric");
}

TEST_CASE("maximal-cut characters agree along both routes") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto cfg = selfcheck::random_generic_euclidean(rng, 4, 4);
    const KinematicPoint k = from_momenta(4, cfg.p, cfg.m2);

    // Even cut set {1,3}: the reduced motive of the fully cut graph.
    CutQuotientGraph even_cut = n_gon(4);
    even_cut.pinched = {2, 4};
    even_cut.cuts = {1, 3};
    const MotiveDescription desc = weight_pieces(even_cut, Variant::Reduced, k);
    REQUIRE(desc.pieces.size() == 1);
    const SquareClass via_pieces = *desc.pieces[0].character;
    CHECK(via_pieces == square_class_max_cut(k, {1, 3}));
    CHECK(via_pieces == square_class(k, {1, 3}));

    // Odd cut set {1,2,4}: the quotient motive, with infinity adjoined.
    CutQuotientGraph odd_cut = n_gon(4);
    odd_cut.pinched = {3};
    odd_cut.cuts = {1, 2, 4};
    const MotiveDescription odd_desc = weight_pieces(odd_cut, Variant::Quotient, k);
    REQUIRE(odd_desc.pieces.size() == 1);
    CHECK(*odd_desc.pieces[0].character == square_class_max_cut(k, {1, 2, 4}));
    CHECK(*odd_desc.pieces[0].character == square_class(k, {1, 2, 4, kInfinity}));
  }
}

TEST_CASE("rank identities") {
  for (int n = 2; n <= 8; ++n) {
    const CutQuotientGraph g = n_gon(n);
    const int reduced = weight_pieces(g, Variant::Reduced).rank;
    const int full = weight_pieces(g, Variant::Full).rank;
    const int quotient = weight_pieces(g, Variant::Quotient).rank;
    CHECK(reduced == 1 << (n - 1));
    CHECK(full == (1 << n) - 1);
    CHECK(full == reduced + quotient);
    CHECK(static_cast<int>(de_rham_basis(g, Variant::Full, 1).size()) == full);
  }
}

TEST_CASE("de_rham_basis") {
  const auto bubble = de_rham_basis(n_gon(2), Variant::Reduced);
  REQUIRE(bubble.size() == 2);
  CHECK(bubble[0].gamma.empty());
  CHECK(bubble[1].gamma == std::vector<int>{1, 2});

  const auto box_full = de_rham_basis(n_gon(4), Variant::Full, 1);
  CHECK(box_full.size() == 15);
  int pairs = 0;
  for (const auto& el : box_full) pairs += el.is_pair ? 1 : 0;
  CHECK(pairs == 3);

  const auto tad = de_rham_basis(n_gon(1), Variant::Reduced);
  REQUIRE(tad.size() == 1);
  CHECK(tad[0].gamma.empty());

  CHECK(code_of([] { de_rham_basis(n_gon(4), Variant::Full, 9); }) == "BadBaseIndex");
  CHECK(code_of([] { de_rham_basis(cut(n_gon(4), 1), Variant::Full, 1); }) == "BadBaseIndex");
}

TEST_CASE("weight bounds") {
  const WeightBounds box = weight_bounds(n_gon(4), Variant::Reduced);
  CHECK(box.top_weight == 4);
  CHECK(box.bottom_rank == 1);
  CHECK(box.top_rank == 1);

  CHECK(weight_bounds(n_gon(3), Variant::Full).top_weight == 4);
  CHECK(weight_bounds(n_gon(2), Variant::Full).top_weight == 2);

  for (int n = 2; n <= 8; ++n) {
    const WeightBounds full = weight_bounds(n_gon(n), Variant::Full);
    const WeightBounds reduced = weight_bounds(n_gon(n), Variant::Reduced);
    CHECK(full.top_weight == 2 * ((n + 1) / 2));
    CHECK(reduced.top_weight == 2 * (n / 2));
    CHECK(full.bottom_rank == 1);
    CHECK(reduced.bottom_rank == 1);
    if (n % 2 == 1) CHECK(full.top_rank == 1);
    if (n % 2 == 0) CHECK(reduced.top_rank == 1);
  }
}

TEST_CASE("truncate") {
  const MotiveDescription box = weight_pieces(n_gon(4), Variant::Reduced);
  CHECK(truncate(box, 2).rank == 7);
  CHECK(truncate(box, 4).rank == 8);
  CHECK(truncate(box, 8).rank == 8);
  const MotiveDescription bottom = truncate(box, 0);
  CHECK(bottom.rank == 1);
  CHECK(bottom.pieces[0].weight == 0);
}

TEST_CASE("plus part cohomology ranks") {
  CHECK(plus_part_cohomology_ranks(3, 4) == std::vector<long long>{1, 2, 1, 0, 0});
  CHECK(plus_part_cohomology_ranks(1, 4) == std::vector<long long>{1, 0, 0, 0, 0});
  CHECK(plus_part_cohomology_ranks(5, 4) == std::vector<long long>{1, 4, 6, 4, 1});
}

TEST_CASE("minus part weight-graded ranks") {
  CHECK(minus_part_gr_ranks(4, Variant::Reduced) ==
        std::map<int, long long>{{0, 1}, {2, 6}, {4, 1}});
  CHECK(minus_part_gr_ranks(2, Variant::Quotient) == std::map<int, long long>{{2, 1}});
  CHECK(minus_part_gr_ranks(3, Variant::Quotient) == std::map<int, long long>{{2, 2}, {4, 1}});
}

TEST_CASE("minus part ranks agree with piece enumeration") {
  for (int n = 1; n <= 8; ++n)
    for (Variant variant : {Variant::Reduced, Variant::Quotient, Variant::Full}) {
      std::map<int, long long> enumerated;
      for (const auto& piece : weight_pieces(n_gon(n), variant).pieces)
        enumerated[piece.weight] += piece.multiplicity;
      CHECK(enumerated == minus_part_gr_ranks(n, variant));
    }
}
