#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopmot/graphs.hpp"
#include "loopmot/kinematics.hpp"

namespace loopmot {

enum class Variant { Reduced, Full, Quotient };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& name);

// Quadratic character of the kinematics, stored as the squarefree integer
// representative of a rational modulo squares. Trivial iff representative 1.
struct SquareClass {
  Integer representative = 1;

  bool trivial() const { return representative == 1; }
  bool operator==(const SquareClass&) const = default;
};

// Signed-discriminant character of the Gram subset I: the square class of
// (-1)^{|I|/2} * G_I. Requires |I| even and G_I != 0.
SquareClass square_class(const KinematicPoint& k, GramSubset subset);

// Same character reached through the maximal-cut description: for an even
// cut set the signed Gram of the cuts themselves, for an odd one the signed
// Gram with the vector at infinity adjoined. Kept as an independent route
// for consistency checks against square_class.
SquareClass square_class_max_cut(const KinematicPoint& k, const std::vector<int>& cut_edges);

// One weight-graded summand. `gamma` lists the uncut edges adjoined to the
// graph's cut set; `infty` marks quotient-variant pieces whose Gram subset
// includes infinity. `kernel` marks the weight-2 kernel-of-sum piece, which
// carries no square class.
struct WeightPiece {
  std::vector<int> gamma;
  bool infty = false;
  int weight = 0;
  int twist = 0;
  std::optional<SquareClass> character;  // set iff kinematics were supplied
  bool kernel = false;
  int multiplicity = 1;
};

struct MotiveDescription {
  CutQuotientGraph graph;
  Variant variant = Variant::Reduced;
  std::vector<WeightPiece> pieces;
  int rank = 0;
};

// Weight-graded description of the reduced/full/quotient motive of a cut
// quotient graph. With kinematics supplied, characters are attached and the
// point must be generic in dimension 2*ceil(k/2), k the number of edges.
MotiveDescription weight_pieces(const CutQuotientGraph& g, Variant variant,
                                const std::optional<KinematicPoint>& kin = std::nullopt);

struct DeRhamBasisElement {
  bool is_pair = false;
  std::vector<int> gamma;  // omega(gamma), |gamma| != 1
  int i = 0, j = 0;        // omega_pair(i,j), i != j
};

// Basis classes of the de Rham realization: even subsets for the reduced
// variant; subsets of size != 1 plus pairs (i,j), j != i, for the full one.
std::vector<DeRhamBasisElement> de_rham_basis(const CutQuotientGraph& g, Variant variant,
                                              int base_index = 0);

struct WeightBounds {
  int top_weight = 0;
  int bottom_rank = 0;
  int top_rank = 0;
};

WeightBounds weight_bounds(const CutQuotientGraph& g, Variant variant);

// W_d truncation: keeps pieces of weight <= d, recomputing the rank.
MotiveDescription truncate(MotiveDescription m, int d);

// Ranks of H^k, k = 0..d, of the "+" part: the kernel of the alternating
// incidence differential Q^C(n,k) -> Q^C(n,k-1), computed by exact integer
// rank. Independent oracle for the closed form C(n-1,k).
std::vector<long long> plus_part_cohomology_ranks(int n, int d);

// Closed-form ranks of the "-" part weight-graded pieces, as a cross-check
// of the weight_pieces enumeration: reduced -> C(n,2m) at weight 2m;
// quotient -> n-1 at weight 2 and C(n,2m-1) at weight 2m for m >= 2.
std::map<int, long long> minus_part_gr_ranks(int n, Variant variant);

}  // namespace loopmot
