// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Every tolerance here is exact (integer/rational comparisons only).

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "mumford/cover.hpp"
#include "mumford/json_io.hpp"
#include "mumford/schottky.hpp"

using namespace mumford;

namespace {

int failures = 0;
std::vector<std::string> notes;

void criterion(int num, const std::string& name, double budget_secs,
               const std::function<bool()>& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string err;
  try {
    ok = body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok && secs > budget_secs) {
    ok = false;
    err = "exceeded the " + std::to_string(budget_secs) + "s budget";
  }
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(), secs,
              err.empty() ? "" : " error: ", err.c_str());
  if (!ok) ++failures;
}

bool expect(bool cond, const std::string& what) {
  if (!cond) {
    std::printf("       unmet: %s\n", what.c_str());
    return false;
  }
  return true;
}

ProjectivePoint pt(const FieldPtr& k, const Rational& q) {
  return ProjectivePoint::from_rational(k, q);
}

KummerEquation four_point(const FieldPtr& k, uint32_t m, const PadicElement& lambda) {
  return KummerEquation::make(k, m,
                              {{pt(k, Rational(0)), 1},
                               {ProjectivePoint::infinity(k), m - 1},
                               {pt(k, Rational(1)), 1},
                               {ProjectivePoint::affine(lambda), m - 1}});
}

// ---------------------------------------------------------------------------

bool tate_bound() {
  auto k = make_field(2, 2);
  bool ok = true;
  for (long long kk = 1; kk <= 6; ++kk) {
    long long lam = 1 + (1ll << kk);
    auto v = classify_four_point(four_point(k, 2, PadicElement::from_integer(k, lam)));
    ok &= expect(v.is_mumford == (kk >= 3),
                 "lambda = 1+2^" + std::to_string(kk) + " acceptance mismatch");
    auto t = tate_j_check(PadicElement::from_integer(k, lam));
    ok &= expect(t.consistent, "j-invariant biconditional at k = " + std::to_string(kk));
    ok &= expect(t.lambda_side == (kk >= 3), "lambda side at k = " + std::to_string(kk));
  }
  return ok;
}

bool sharpness_sweep() {
  bool ok = true;
  for (uint32_t p : {2u, 3u, 5u}) {
    auto k = make_field(p, p);
    Rational threshold(2, (long long)p - 1);
    for (long long kk = 1; kk <= 5; ++kk) {
      long long lam = 1;
      for (long long i = 0; i < kk; ++i) lam *= p;
      lam += 1;
      CoverSpec spec = CoverSpec::make(k, p, p, PadicElement::from_integer(k, lam), 1);
      auto rep = verify_schottky(synth_prime(spec));
      bool should = Rational(kk) > threshold;
      ok &= expect(rep.is_schottky_certified == should,
                   "p=" + std::to_string(p) + " k=" + std::to_string(kk) + " certification");
      if (Rational(kk) == threshold)
        ok &= expect(!rep.all_hyperbolic, "boundary non-hyperbolicity at p=" + std::to_string(p));
    }
  }
  return ok;
}

bool rank_oracle_agreement() {
  bool ok = true;
  int cases = 0;
  // prime kernels: rank q - 1
  for (uint32_t q : {2u, 3u, 5u})
    for (uint32_t f = 1; f < q; ++f) {
      auto kg = kernel_generators_rs(FreeProduct({q, q}), CyclicAssignment{q, {1, f}});
      ok &= expect(kg.rank() == q - 1, "prime q=" + std::to_string(q));
      ++cases;
    }
  // (m+1)-fold products: rank m(n-1)
  for (auto [m, n] : std::vector<std::pair<uint32_t, uint32_t>>{
           {1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}, {3, 3}, {1, 4}, {2, 4}, {1, 6}}) {
    auto kg = kernel_generators_rs(FreeProduct(std::vector<uint32_t>(m + 1, n)),
                                   CyclicAssignment{n, std::vector<uint32_t>(m + 1, 1)});
    ok &= expect(kg.rank() == m * (n - 1), "m(n-1) case m=" + std::to_string(m));
    ++cases;
  }
  // totally ramified composite: rank m - 1
  for (uint32_t m : {4u, 6u, 8u, 9u, 12u}) {
    auto kg = kernel_generators_rs(FreeProduct({m, m}), CyclicAssignment{m, {1, 1}});
    ok &= expect(kg.rank() == m - 1, "total_ram m=" + std::to_string(m));
    ++cases;
  }
  // divisor case: rank (d/e)(e-1), s -> 1, t -> (d/e) k
  for (auto [d, e, k] : std::vector<std::array<uint32_t, 3>>{{4, 2, 1},
                                                             {6, 2, 1},
                                                             {6, 3, 1},
                                                             {6, 3, 2},
                                                             {8, 2, 1},
                                                             {8, 4, 3},
                                                             {9, 3, 2},
                                                             {12, 4, 1},
                                                             {12, 6, 5}}) {
    auto kg = kernel_generators_rs(FreeProduct({d, e}), CyclicAssignment{d, {1, (d / e) * k % d}});
    ok &= expect(kg.rank() == (d / e) * (e - 1),
                 "divisor d=" + std::to_string(d) + " e=" + std::to_string(e));
    ++cases;
  }
  // coprime: rank (d-1)(e-1), s -> e k, t -> d l
  for (auto [d, e, kt, lt] : std::vector<std::array<uint32_t, 4>>{{2, 3, 1, 1},
                                                                  {2, 5, 1, 1},
                                                                  {3, 4, 1, 1},
                                                                  {3, 5, 2, 2},
                                                                  {2, 7, 1, 1},
                                                                  {4, 5, 3, 1},
                                                                  {5, 6, 1, 1},
                                                                  {2, 9, 1, 1}}) {
    uint32_t n = d * e;
    auto kg =
        kernel_generators_rs(FreeProduct({d, e}), CyclicAssignment{n, {e * kt % n, d * lt % n}});
    ok &= expect(kg.rank() == (d - 1) * (e - 1),
                 "coprime d=" + std::to_string(d) + " e=" + std::to_string(e));
    ++cases;
  }
  // mixed: rank (d'-1)(e'-1) + (l-1) d'e', s -> e', t -> d' in C_lcm
  for (auto [d, e] : std::vector<std::pair<uint32_t, uint32_t>>{
           {4, 6}, {6, 9}, {6, 10}, {10, 4}, {6, 8}, {9, 12}}) {
    uint32_t l = std::gcd(d, e), dp = d / l, ep = e / l;
    uint32_t n = (uint32_t)std::lcm(d, e);
    auto kg = kernel_generators_rs(FreeProduct({d, e}), CyclicAssignment{n, {ep, dp}});
    ok &= expect(kg.rank() == (dp - 1) * (ep - 1) + (l - 1) * dp * ep,
                 "mixed d=" + std::to_string(d) + " e=" + std::to_string(e));
    ++cases;
  }
  ok &= expect(cases >= 20, "at least 20 oracle cases");
  notes.push_back("criterion 3 covered " + std::to_string(cases) + " kernels");
  return ok;
}

bool matrix_closed_forms() {
  bool ok = true;
  for (uint32_t q : {3u, 5u, 7u}) {
    auto k = make_field(q, q);
    PadicElement zeta = root_of_unity(k, q);
    PadicElement one = PadicElement::one(k);
    long long lamval = 1;
    for (int i = 0; i < 3; ++i) lamval *= q;
    PadicElement lam = PadicElement::from_integer(k, lamval + 1);
    for (uint32_t f = 1; f < q; ++f) {
      auto pres = synth_prime(CoverSpec::make(k, q, q, lam, f));
      for (uint32_t i = 1; i < q; ++i) {
        const MoebiusMap& g = pres.generators[i - 1].matrix;
        PadicElement tr_expect =
            (one + zeta.pow(1 - (long long)f)) * lam - (zeta + zeta.pow(-(long long)f));
        PadicElement det_expect = (lam - one).pow(2) * zeta.pow(1 - (long long)f);
        ok &= expect((g.trace() - tr_expect).is_zero_to_precision(),
                     "trace q=" + std::to_string(q) + " i=" + std::to_string(i) +
                         " f=" + std::to_string(f));
        ok &= expect((g.det() - det_expect).is_zero_to_precision(),
                     "det q=" + std::to_string(q) + " f=" + std::to_string(f));
      }
    }
  }
  for (auto [p, d, e] :
       std::vector<std::array<uint32_t, 3>>{{5, 2, 3}, {5, 3, 4}, {3, 2, 5}}) {
    uint32_t n = d * e;
    auto k = make_field(p, n);
    PadicElement lam = PadicElement::from_integer(k, 1 + (long long)p);
    PadicElement one = PadicElement::one(k);
    PadicElement zeta = root_of_unity(k, n);
    auto pres = synth_coprime(CoverSpec::make(k, d, e, lam));
    size_t idx = 0;
    for (uint32_t i = 1; i < d; ++i)
      for (uint32_t j = 1; j < e; ++j, ++idx) {
        const MoebiusMap& g = pres.generators[idx].matrix;
        ok &= expect((g.det() - (lam - one).pow(4)).is_zero_to_precision(),
                     "det gamma_ij = 1 at d=" + std::to_string(d) + " e=" + std::to_string(e));
        PadicElement zei = zeta.pow((long long)e * i);
        PadicElement zdj = zeta.pow((long long)d * j);
        PadicElement d_expect =
            (lam - one).pow(2) + lam * (one - zei) * (one - zdj) * (one - zdj.inv());
        ok &= expect((g.d() - d_expect).is_zero_to_precision(),
                     "d_ij rewrite at d=" + std::to_string(d) + " e=" + std::to_string(e));
      }
  }
  return ok;
}

bool crossratio_trichotomy() {
  bool ok = true;
  std::mt19937 rng(271828);
  std::uniform_int_distribution<long long> nd(-50, 50);
  std::uniform_int_distribution<int> dd(0, 2);
  std::uniform_int_distribution<long long> md(-6, 6);
  for (uint32_t p : {2u, 3u, 5u}) {
    auto k = make_field(p, 1);  // rational points live in Q_p itself
    int configs = 0;
    while (configs < 500) {
      Rational vals[4];
      for (auto& v : vals) {
        long long den = 1;
        for (int j = dd(rng); j > 0; --j) den *= p;
        v = Rational(nd(rng), den);
      }
      bool distinct = true;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (vals[i] == vals[j]) distinct = false;
      if (!distinct) continue;
      ProjectivePoint pts[4] = {pt(k, vals[0]), pt(k, vals[1]), pt(k, vals[2]), pt(k, vals[3])};
      GeodesicLine l1(pts[0], pts[1]), l2(pts[2], pts[3]);
      LineArrangement base = arrange(l1, l2);
      LineArrangement sym = arrange(l2, l1);
      ok &= expect(base.kind == sym.kind && base.distance == sym.distance, "symmetry");
      int transforms = 0;
      while (transforms < 20) {
        PadicElement a = PadicElement::from_integer(k, md(rng));
        PadicElement b = PadicElement::from_integer(k, md(rng));
        PadicElement c = PadicElement::from_integer(k, md(rng));
        PadicElement d = PadicElement::from_integer(k, md(rng));
        if ((a * d - b * c).is_zero_to_precision()) continue;
        MoebiusMap g(a, b, c, d);
        GeodesicLine m1(g.apply(pts[0]), g.apply(pts[1]));
        GeodesicLine m2(g.apply(pts[2]), g.apply(pts[3]));
        LineArrangement moved = arrange(m1, m2);
        ok &= expect(moved.kind == base.kind && moved.distance == base.distance,
                     "Moebius invariance");
        ++transforms;
        if (!ok) return false;
      }
      ++configs;
      if (!ok) return false;
    }
  }
  return ok;
}

bool quotient_tree_distances() {
  bool ok = true;
  for (uint32_t p : {2u, 3u, 5u})
    for (uint32_t m : {2u, 3u, 4u, 6u})
      for (uint32_t n : {2u, 3u, 4u, 6u}) {
        Rational unit(1, (long long)p - 1);
        Rational expect_off = (m % p == 0 ? unit : Rational(0)) + (n % p == 0 ? unit : Rational(0));
        Rational lv = expect_off + Rational(1);
        auto q = quotient_tree(p, m, n, lv);
        ok &= expect(q.dist_x_v + q.dist_w_y == expect_off, "offset pattern");
        ok &= expect(q.dist_x_v + q.dist_v_w + q.dist_w_y == lv, "additivity");
        bool threw = false;
        try {
          quotient_tree(p, m, n, expect_off);
        } catch (const error&) {
          threw = true;
        }
        ok &= expect(threw, "threshold is strict");
      }
  return ok;
}

bool many_point_consistency() {
  bool ok = true;
  for (uint32_t p : {2u, 3u, 5u})
    for (uint32_t m : {2u, 3u, 4u, 6u}) {
      auto k = make_field(p, m);
      for (long long kk = 1; kk <= 6; ++kk) {
        long long lam = 1;
        for (long long i = 0; i < kk; ++i) lam *= p;
        lam += 1;
        auto eq = four_point(k, m, PadicElement::from_integer(k, lam));
        auto v4 = classify_four_point(eq);
        auto vg = classify(eq);
        ok &= expect(v4.is_mumford == vg.is_mumford, "grid consistency");
      }
    }
  // six points: three clusters; the verdict flips exactly when one
  // inter-cluster gap crosses the threshold v = 2
  auto k2 = make_field(2, 2);
  for (long long t = 1; t <= 4; ++t)
    for (long long u = 1; u <= 4; ++u) {
      auto eq = KummerEquation::make(
          k2, 2,
          {{pt(k2, Rational(0)), 1},
           {ProjectivePoint::infinity(k2), 1},
           {pt(k2, Rational(1)), 1},
           {pt(k2, Rational(1 + (1ll << t))), 1},
           {pt(k2, Rational(1, 1 << 10)), 1},
           {pt(k2, Rational((1 + (1ll << u)), 1 << 10)), 1}});
      bool verdict = classify(eq).is_mumford;
      ok &= expect(verdict == (t > 2 && u > 2),
                   "six-point flip at t=" + std::to_string(t) + " u=" + std::to_string(u));
    }
  // eight points: four clusters, a single crossing distance flips the verdict
  for (long long t : {2, 3}) {
    auto eq = KummerEquation::make(
        k2, 2,
        {{pt(k2, Rational(0)), 1},
         {ProjectivePoint::infinity(k2), 1},
         {pt(k2, Rational(1)), 1},
         {pt(k2, Rational(9)), 1},
         {pt(k2, Rational(1, 1 << 10)), 1},
         {pt(k2, Rational(9, 1 << 10)), 1},
         {pt(k2, Rational(1 << 10)), 1},
         {pt(k2, Rational((1 + (1ll << t)) * (1 << 10))), 1}});
    bool verdict = classify(eq).is_mumford;
    ok &= expect(verdict == (t > 2), "eight-point flip at t=" + std::to_string(t));
  }
  return ok;
}

bool torsion_freeness() {
  bool ok = true;
  // every kernel from criterion 3 scans torsion-free at L = 6
  std::vector<std::pair<FreeProduct, CyclicAssignment>> kernels;
  for (uint32_t q : {2u, 3u, 5u})
    for (uint32_t f = 1; f < q; ++f)
      kernels.push_back({FreeProduct({q, q}), CyclicAssignment{q, {1, f}}});
  for (auto [m, n] : std::vector<std::pair<uint32_t, uint32_t>>{
           {1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}, {3, 3}, {1, 4}, {2, 4}, {1, 6}})
    kernels.push_back({FreeProduct(std::vector<uint32_t>(m + 1, n)),
                       CyclicAssignment{n, std::vector<uint32_t>(m + 1, 1)}});
  for (uint32_t m : {4u, 6u, 8u, 9u, 12u})
    kernels.push_back({FreeProduct({m, m}), CyclicAssignment{m, {1, 1}}});
  for (auto [d, e, k] : std::vector<std::array<uint32_t, 3>>{
           {4, 2, 1}, {6, 2, 1}, {6, 3, 1}, {6, 3, 2}, {8, 2, 1}, {8, 4, 3}, {9, 3, 2},
           {12, 4, 1}, {12, 6, 5}})
    kernels.push_back({FreeProduct({d, e}), CyclicAssignment{d, {1, (d / e) * k % d}}});
  for (auto [d, e, kt, lt] : std::vector<std::array<uint32_t, 4>>{
           {2, 3, 1, 1}, {2, 5, 1, 1}, {3, 4, 1, 1}, {3, 5, 2, 2}, {2, 7, 1, 1}, {4, 5, 3, 1},
           {5, 6, 1, 1}, {2, 9, 1, 1}}) {
    uint32_t n = d * e;
    kernels.push_back({FreeProduct({d, e}), CyclicAssignment{n, {e * kt % n, d * lt % n}}});
  }
  for (auto [d, e] : std::vector<std::pair<uint32_t, uint32_t>>{
           {4, 6}, {6, 9}, {6, 10}, {10, 4}, {6, 8}, {9, 12}}) {
    uint32_t n = (uint32_t)std::lcm(d, e);
    kernels.push_back({FreeProduct({d, e}), CyclicAssignment{n, {e / std::gcd(d, e), d / std::gcd(d, e)}}});
  }
  for (const auto& [fp, a] : kernels) ok &= expect(torsion_scan(fp, &a, 6), "kernel torsion-free");
  // the ambient free products themselves contain torsion
  ok &= expect(!torsion_scan(FreeProduct({2, 2}), nullptr, 6), "ambient C2*C2 has torsion");
  ok &= expect(!torsion_scan(FreeProduct({5, 7}), nullptr, 6), "ambient C5*C7 has torsion");
  ok &= expect(!torsion_scan(FreeProduct({3, 3, 3}), nullptr, 6), "ambient triple C3 has torsion");
  notes.push_back("criterion 8 scanned " + std::to_string(kernels.size()) + " kernels at L = 6");
  return ok;
}

}  // namespace

int main() {
  criterion(1, "Tate bound and j-invariant biconditional (p = 2)", 1.0, tate_bound);
  criterion(2, "sharpness sweep: certification iff v(lambda-1) > 2/(p-1)", 5.0, sharpness_sweep);
  criterion(3, "kernel rank oracle vs closed formulas (index <= 36)", 30.0, rank_oracle_agreement);
  criterion(4, "displayed trace/determinant closed forms", 10.0, matrix_closed_forms);
  criterion(5, "cross-ratio trichotomy: 500 configs x 20 conjugations per p", 30.0,
            crossratio_trichotomy);
  criterion(6, "quotient-tree mirror offsets over the (p, m, n) grid", 1.0, quotient_tree_distances);
  criterion(7, "many-point criterion consistency and threshold flips", 10.0, many_point_consistency);
  criterion(8, "torsion-freeness of kernels at scan length 6", 60.0, torsion_freeness);
  for (const auto& n : notes) std::printf("       %s\n", n.c_str());
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
