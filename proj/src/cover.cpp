#include "mumford/cover.hpp"

#include <numeric>

namespace mumford {

KummerEquation KummerEquation::make(FieldPtr field, uint32_t degree, std::vector<Term> terms) {
  if (degree < 2) fail(errc::invalid_argument, "cover degree must be >= 2");
  uint64_t sum = 0;
  for (const auto& t : terms) {
    if (t.exponent == 0 || t.exponent >= degree)
      fail(errc::invalid_argument, "exponents must satisfy 1 <= a < m");
    sum += t.exponent;
  }
  if (sum % degree != 0)
    fail(errc::invalid_argument, "exponent sum must vanish mod m (list infinity explicitly)");
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i].point.same_point(terms[j].point))
        fail(errc::coincident_points, "branch points must be pairwise distinct");
  KummerEquation eq;
  eq.field = std::move(field);
  eq.degree = degree;
  eq.terms = std::move(terms);
  return eq;
}

Rational alpha_bound(uint32_t p, uint32_t m, uint32_t n) {
  if (!is_prime(p)) fail(errc::invalid_argument, "p must be prime");
  long long eps = (m % p == 0 ? 1 : 0) + (n % p == 0 ? 1 : 0);
  return Rational(eps, (long long)p - 1);
}

namespace {

void match_rec(const KummerEquation& eq, std::vector<bool>& used, HMDecomposition& cur,
               std::vector<HMDecomposition>& out) {
  size_t first = used.size();
  for (size_t i = 0; i < used.size(); ++i)
    if (!used[i]) {
      first = i;
      break;
    }
  if (first == used.size()) {
    out.push_back(cur);
    return;
  }
  used[first] = true;
  for (size_t j = first + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    if ((eq.terms[first].exponent + eq.terms[j].exponent) % eq.degree != 0) continue;
    used[j] = true;
    uint32_t e = eq.degree / std::gcd(eq.degree, eq.terms[first].exponent);
    cur.pairs.push_back({first, j, e});
    match_rec(eq, used, cur, out);
    cur.pairs.pop_back();
    used[j] = false;
  }
  used[first] = false;
}

}  // namespace

std::vector<HMDecomposition> hm_decompose(const KummerEquation& eq) {
  // an odd number of branch points cannot pair: empty result, same as any
  // other failure to match
  if (eq.terms.size() % 2 != 0) return {};
  std::vector<bool> used(eq.terms.size(), false);
  HMDecomposition cur;
  std::vector<HMDecomposition> out;
  match_rec(eq, used, cur, out);
  return out;
}

namespace {

struct PairCheck {
  bool separated = false;
  bool at_boundary = false;
  bool above = false;
  Rational distance;
  Rational threshold;
};

PairCheck check_pair(const KummerEquation& eq, const HMDecomposition::Pair& pi,
                     const HMDecomposition::Pair& pj) {
  PairCheck r;
  r.threshold = alpha_bound(eq.field->p, pi.ram_index, pj.ram_index);
  GeodesicLine li(eq.terms[pi.idx1].point, eq.terms[pi.idx2].point);
  GeodesicLine lj(eq.terms[pj.idx1].point, eq.terms[pj.idx2].point);
  LineArrangement ar = arrange(li, lj);
  if (!ar.is_disjoint()) return r;
  r.separated = true;
  r.distance = ar.distance;
  if (ar.distance == r.threshold)
    r.at_boundary = true;
  else if (ar.distance > r.threshold)
    r.above = true;
  return r;
}

// shared scaffolding: try every decomposition, keep the most advanced
// failure; per-pair verdicts come from `checker`
template <typename Checker>
MumfordVerdict classify_impl(const KummerEquation& eq, Checker checker) {
  MumfordVerdict verdict;
  auto decomps = hm_decompose(eq);
  if (decomps.empty()) {
    verdict.failure = MumfordFailure::not_hm_type;
    return verdict;
  }
  bool have_failure = false;
  MumfordFailure best = MumfordFailure::pairs_not_separated;
  std::vector<Rational> best_dists, best_thresholds;
  auto upgrade = [&](MumfordFailure f, std::vector<Rational> dists, std::vector<Rational> thr) {
    if (have_failure && (int)f <= (int)best) return;
    have_failure = true;
    best = f;
    best_dists = std::move(dists);
    best_thresholds = std::move(thr);
  };
  for (const auto& dec : decomps) {
    bool all_ok = true, any_boundary = false, any_below = false, any_unseparated = false;
    std::vector<Rational> dists, thresholds;
    for (size_t i = 0; i < dec.pairs.size() && all_ok; ++i) {
      for (size_t j = i + 1; j < dec.pairs.size(); ++j) {
        PairCheck c = checker(eq, dec.pairs[i], dec.pairs[j]);
        if (!c.separated) {
          any_unseparated = true;
          all_ok = false;
          break;
        }
        dists.push_back(c.distance);
        thresholds.push_back(c.threshold);
        if (c.at_boundary) {
          any_boundary = true;
          all_ok = false;
          break;
        }
        if (!c.above) {
          any_below = true;
          all_ok = false;
          break;
        }
      }
    }
    if (all_ok) {
      verdict.is_mumford = true;
      verdict.witness = dec;
      verdict.witness_distances = std::move(dists);
      verdict.thresholds = std::move(thresholds);
      return verdict;
    }
    if (any_boundary)
      upgrade(MumfordFailure::boundary_equality, std::move(dists), std::move(thresholds));
    else if (any_below)
      upgrade(MumfordFailure::bound_violated, std::move(dists), std::move(thresholds));
    else if (any_unseparated)
      upgrade(MumfordFailure::pairs_not_separated, std::move(dists), std::move(thresholds));
  }
  verdict.failure = best;
  verdict.witness_distances = std::move(best_dists);
  verdict.thresholds = std::move(best_thresholds);
  return verdict;
}

PairCheck check_pair_normalized(const KummerEquation& eq, const HMDecomposition::Pair& pi,
                                const HMDecomposition::Pair& pj) {
  // normalize pair i to (0, inf) and pair j to (1, lambda); demand |lambda|=1
  // and v(lambda - 1) strictly above the threshold
  PairCheck r;
  r.threshold = alpha_bound(eq.field->p, pi.ram_index, pj.ram_index);
  MoebiusMap n = normalize_triple(eq.terms[pi.idx1].point, eq.terms[pi.idx2].point,
                                  eq.terms[pj.idx1].point);
  ProjectivePoint lam_pt = n.apply(eq.terms[pj.idx2].point);
  if (lam_pt.is_infinity()) return r;
  PadicElement lambda = lam_pt.affine_value();
  Valuation vl = lambda.val();
  if (vl.is_zero_to_precision() || vl.value() != Rational(0)) return r;  // |lambda| != 1
  Valuation vl1 = (lambda - PadicElement::one(eq.field)).val();
  if (vl1.is_zero_to_precision())
    fail(errc::insufficient_precision, "lambda - 1 vanishes to precision");
  if (vl1.value() == Rational(0)) return r;  // geodesics meet
  r.separated = true;
  r.distance = vl1.value();
  if (r.distance == r.threshold)
    r.at_boundary = true;
  else if (r.distance > r.threshold)
    r.above = true;
  return r;
}

}  // namespace

MumfordVerdict classify_four_point(const KummerEquation& eq) {
  if (eq.terms.size() != 4) fail(errc::invalid_argument, "four branch points expected");
  return classify_impl(eq, check_pair_normalized);
}

MumfordVerdict classify(const KummerEquation& eq) {
  return classify_impl(eq, [](const KummerEquation& e, const HMDecomposition::Pair& a,
                              const HMDecomposition::Pair& b) {
    try {
      return check_pair(e, a, b);
    } catch (const error& err) {
      if (err.code() == errc::shared_end) return PairCheck{};  // pairs share a point
      throw;
    }
  });
}

TateCheck tate_j_check(const PadicElement& lambda) {
  const FieldPtr& k = lambda.field();
  if (k->p != 2) fail(errc::invalid_argument, "Tate j-check is the p = 2 example");
  PadicElement one = PadicElement::one(k);
  Valuation vl = lambda.val();
  if (vl.is_zero_to_precision() || vl.value() != Rational(0))
    fail(errc::invalid_argument, "|lambda| = 1 required");
  PadicElement lm1 = lambda - one;
  if (lm1.is_zero_to_precision() || lambda.is_zero_to_precision())
    fail(errc::invalid_argument, "lambda must avoid 0 and 1");

  PadicElement num = lambda * lambda - lambda + one;
  PadicElement j =
      PadicElement::from_integer(k, 256) * num.pow(3) / (lambda.pow(2) * lm1.pow(2));
  TateCheck r{j, false, false, false};
  r.lambda_side = lm1.val().value() > Rational(2);
  Valuation vj = j.val();
  if (vj.is_zero_to_precision()) fail(errc::insufficient_precision, "j vanishes to precision");
  r.j_side = vj.value() < Rational(4);  // |j| > |2|^4
  r.consistent = r.lambda_side == r.j_side;
  return r;
}

std::string failure_name(MumfordFailure f) {
  switch (f) {
    case MumfordFailure::not_hm_type: return "NotHMType";
    case MumfordFailure::pairs_not_separated: return "PairsNotSeparated";
    case MumfordFailure::bound_violated: return "BoundViolated";
    case MumfordFailure::boundary_equality: return "BoundaryEquality";
  }
  return "Unknown";
}

}  // namespace mumford
