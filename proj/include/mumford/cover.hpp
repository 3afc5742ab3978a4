#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mumford/tree.hpp"

namespace mumford {

// Branch data of a cyclic degree-m Kummer cover y^m = prod (x - pt_i)^{a_i}.
// Infinity is listed explicitly when branched; exponents sum to 0 mod m.
struct KummerEquation {
  FieldPtr field;
  uint32_t degree = 0;
  struct Term {
    ProjectivePoint point;
    uint32_t exponent;  // 1 <= exponent < degree
  };
  std::vector<Term> terms;

  static KummerEquation make(FieldPtr field, uint32_t degree, std::vector<Term> terms);
};

// A perfect matching of the branch points into pairs with complementary
// exponents; e_i = m / gcd(m, a_i) is the local ramification order.
struct HMDecomposition {
  struct Pair {
    size_t idx1, idx2;       // indices into KummerEquation::terms
    uint32_t ram_index;      // e_i >= 2
  };
  std::vector<Pair> pairs;
};

enum class MumfordFailure { not_hm_type, pairs_not_separated, bound_violated, boundary_equality };

struct MumfordVerdict {
  bool is_mumford = false;
  std::optional<HMDecomposition> witness;
  // distances between the witness pairs' geodesics, row-major over i < j
  std::vector<Rational> witness_distances;
  std::vector<Rational> thresholds;  // required strict lower bounds, same order
  std::optional<MumfordFailure> failure;
};

// threshold valuation (eps_m + eps_n) / (p - 1); the bound as an absolute
// value is p^{-threshold}
Rational alpha_bound(uint32_t p, uint32_t m, uint32_t n);

// All pairings of the terms into exponent-complementary pairs; empty when no
// pairing exists (odd term count included: nothing to pair).
std::vector<HMDecomposition> hm_decompose(const KummerEquation& eq);

// Four-branch-point test via normalization to {0, inf, 1, lambda}:
// requires |lambda| = 1 and |lambda - 1| < alpha_p(e_1, e_2) strictly.
MumfordVerdict classify_four_point(const KummerEquation& eq);

// Many-point criterion: some decomposition has all pair-geodesics pairwise
// disjoint with gaps strictly above (eps_{e_i} + eps_{e_j}) v(zeta_p - 1).
MumfordVerdict classify(const KummerEquation& eq);

// Tate curve check at p = 2: j = 2^8 (l^2-l+1)^3 / (l^2 (l-1)^2) and the
// equivalence |lambda - 1| < |2|^2 <=> |j| > |2|^4 on this lambda.
struct TateCheck {
  PadicElement j;
  bool lambda_side;
  bool j_side;
  bool consistent;
};
TateCheck tate_j_check(const PadicElement& lambda);

std::string failure_name(MumfordFailure f);

}  // namespace mumford
