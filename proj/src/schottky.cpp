#include "mumford/schottky.hpp"

#include <numeric>
#include <sstream>

namespace mumford {

const char* case_name(SchottkyCase c) {
  switch (c) {
    case SchottkyCase::prime: return "prime";
    case SchottkyCase::total_ram: return "total_ram";
    case SchottkyCase::divisor: return "divisor";
    case SchottkyCase::coprime: return "coprime";
    case SchottkyCase::mixed: return "mixed";
  }
  return "unknown";
}

CoverSpec CoverSpec::make(FieldPtr field, uint32_t d, uint32_t e, PadicElement lambda, uint32_t f,
                          uint32_t k, uint32_t l) {
  if (d < 2 || e < 2) fail(errc::invalid_argument, "orders d, e must be >= 2");
  CoverSpec s;
  s.field = std::move(field);
  s.d = d;
  s.e = e;
  s.lambda = std::move(lambda);
  s.f = f;
  s.k = k;
  s.l = l;
  uint32_t n = s.quotient_order();
  if (s.field->m % n != 0)
    fail(errc::invalid_argument, "field must contain the n-th roots of unity (m % n == 0)");
  Valuation vl = s.lambda.val();
  if (vl.is_zero_to_precision() || vl.value() != Rational(0))
    fail(errc::invalid_argument, "|lambda| = 1 required");
  if ((s.lambda - PadicElement::one(s.field)).is_zero_to_precision())
    fail(errc::invalid_argument, "lambda must differ from 1");
  if (d == e && is_prime(d) && std::gcd(f, d) != 1)
    fail(errc::invalid_argument, "prime case needs gcd(f, q) = 1");
  if (std::gcd(k, e) != 1) fail(errc::invalid_argument, "gcd(k, e) = 1 required");
  if (std::gcd(l, d) != 1) fail(errc::invalid_argument, "gcd(l, d) = 1 required");
  return s;
}

uint32_t CoverSpec::quotient_order() const {
  if (d == e) return d;
  if (d % e == 0) return d;
  if (e % d == 0) return e;
  return (uint32_t)std::lcm(d, e);
}

std::pair<MoebiusMap, MoebiusMap> base_matrices(const CoverSpec& spec) {
  const FieldPtr& k = spec.field;
  PadicElement zd = root_of_unity(k, spec.d);
  PadicElement ze = root_of_unity(k, spec.e);
  PadicElement one = PadicElement::one(k);
  PadicElement zero = PadicElement::zero(k);
  MoebiusMap s(zd, zero, zero, one);
  MoebiusMap t(spec.lambda * ze - one, spec.lambda * (one - ze), ze - one, spec.lambda - ze);
  return {s, t};
}

uint32_t exponents_to_f(uint32_t a, uint32_t q) {
  if (a == 0 || a >= q) fail(errc::invalid_argument, "need 1 <= a < q");
  for (uint32_t f = 1; f < q; ++f)
    if ((uint64_t)a * f % q == 1) return f;
  fail(errc::invalid_argument, "a has no inverse mod q");
}

namespace {

// signed words keep the integer exponent bookkeeping the descent
// constructions rely on; reduction merges adjacent letters over Z
using SignedWord = std::vector<std::pair<uint32_t, long long>>;

SignedWord sw_reduce(const SignedWord& w) {
  SignedWord r;
  for (const auto& [f, e] : w) {
    if (e == 0) continue;
    if (!r.empty() && r.back().first == f) {
      r.back().second += e;
      if (r.back().second == 0) r.pop_back();
    } else {
      r.emplace_back(f, e);
    }
  }
  return r;
}

SignedWord sw_concat(const SignedWord& a, const SignedWord& b) {
  SignedWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return sw_reduce(r);
}

SignedWord sw_inverse(const SignedWord& w) {
  SignedWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.emplace_back(it->first, -it->second);
  return r;
}

SignedWord sw_conj(const SignedWord& g, const SignedWord& w) {
  return sw_concat(sw_concat(g, w), sw_inverse(g));
}

// substitute factor i by base word bases[i] (exponents multiply)
SignedWord sw_substitute(const SignedWord& w, const std::vector<SignedWord>& bases) {
  SignedWord r;
  for (const auto& [f, e] : w) {
    const SignedWord& base = bases[f];
    if (base.size() == 1) {
      r.emplace_back(base[0].first, base[0].second * e);
    } else {
      SignedWord powed;
      long long reps = e < 0 ? -e : e;
      SignedWord unit = e < 0 ? sw_inverse(base) : base;
      for (long long i = 0; i < reps; ++i) powed = sw_concat(powed, unit);
      r.insert(r.end(), powed.begin(), powed.end());
    }
  }
  return sw_reduce(r);
}

std::string sw_str(const SignedWord& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [f, e] : w) {
    if (!first) os << " ";
    first = false;
    os << (f == 0 ? "s" : "t");
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

MoebiusMap sw_matrix(const SignedWord& w, const MoebiusMap& s, const MoebiusMap& t,
                     const FieldPtr& field) {
  MoebiusMap acc = MoebiusMap::identity(field);
  for (const auto& [f, e] : w) acc = acc * (f == 0 ? s : t).pow(e);
  return acc;
}

FreeProductWord sw_normal_form(const SignedWord& w, const FreeProduct& fp) {
  FreeProductWord acc;
  for (const auto& [f, e] : w) acc = fp.mul(acc, fp.generator(f, e));
  return fp.reduce(acc);
}

LabeledGenerator make_gen(const SignedWord& w, const std::string& label, const FreeProduct& fp,
                          const MoebiusMap& s, const MoebiusMap& t, const FieldPtr& field) {
  return {label, sw_str(w), sw_normal_form(w, fp), sw_matrix(w, s, t, field)};
}

// the descent basis for ker(C_m * C_m -> C_m) over two abstract letters,
// exponents signed so that every word has integer exponent sum zero
void total_ram_words(uint32_t m, const SignedWord& A, const SignedWord& B,
                     const std::string& chain, std::vector<std::pair<SignedWord, std::string>>& out) {
  if (is_prime(m)) {
    for (uint32_t i = 1; i < m; ++i) {
      SignedWord w = sw_concat(sw_concat(sw_substitute({{0, (long long)i}}, {A, B}),
                                         sw_substitute({{1, 1}}, {A, B})),
                               sw_substitute({{0, -(long long)i - 1}}, {A, B}));
      out.emplace_back(w, chain + "q" + std::to_string(m) + "[i=" + std::to_string(i) + "]");
    }
    return;
  }
  uint32_t q = 2;
  while (m % q != 0) ++q;
  uint32_t mp = m / q;
  // Gamma_{q,q} part on (A^{mp}, B^{mp})
  SignedWord Amp = sw_substitute({{0, (long long)mp}}, {A, B});
  SignedWord Bmp = sw_substitute({{1, (long long)mp}}, {A, B});
  for (uint32_t i = 1; i < q; ++i) {
    SignedWord w = sw_concat(
        sw_concat(sw_substitute({{0, (long long)i}}, {Amp, Bmp}), Bmp),
        sw_substitute({{0, -(long long)i - 1}}, {Amp, Bmp}));
    out.emplace_back(w, chain + "q" + std::to_string(q) + "[i=" + std::to_string(i) + "]");
  }
  // conjugates of the Gamma_{m',m'} part by A^{mp i}
  std::vector<std::pair<SignedWord, std::string>> sub;
  total_ram_words(mp, A, B, chain + "m" + std::to_string(mp) + "/", sub);
  for (uint32_t i = 0; i < q; ++i) {
    SignedWord conj = sw_reduce({{0, (long long)mp * i}});
    for (const auto& [w, lbl] : sub)
      out.emplace_back(sw_conj(conj, w),
                       chain + "conj[s^" + std::to_string(mp * i) + "]/" + lbl);
  }
}

}  // namespace

SchottkyPresentation synth_prime(const CoverSpec& spec) {
  uint32_t q = spec.d;
  if (spec.d != spec.e || !is_prime(q)) fail(errc::invalid_argument, "prime case needs d = e = q prime");
  if (std::gcd(spec.f, q) != 1) fail(errc::invalid_argument, "gcd(f, q) = 1 required");
  const FieldPtr& k = spec.field;
  auto [s, t] = base_matrices(spec);
  PadicElement zeta = root_of_unity(k, q);
  PadicElement one = PadicElement::one(k);
  const PadicElement& lam = spec.lambda;
  FreeProduct fp({q, q});

  SchottkyPresentation pres;
  pres.case_tag = SchottkyCase::prime;
  pres.spec = spec;
  pres.expected_rank = q - 1;
  pres.rep_s = s;
  pres.rep_t = t;
  long long f = spec.f;
  for (uint32_t i = 1; i < q; ++i) {
    SignedWord w = {{0, (long long)i}, {1, 1}, {0, -f - (long long)i}};
    // displayed closed form, 1/(lambda-1) cleared
    MoebiusMap closed((lam * zeta - one) * zeta.pow(-f), lam * zeta.pow(i) * (one - zeta),
                      zeta.pow(-(long long)i - f) * (zeta - one), lam - zeta);
    pres.generators.push_back({"gamma[i=" + std::to_string(i) + ",f=" + std::to_string(spec.f) + "]",
                               sw_str(w), sw_normal_form(w, fp), closed});
  }
  return pres;
}

SchottkyPresentation synth_total_ram(const CoverSpec& spec) {
  if (spec.d != spec.e) fail(errc::invalid_argument, "total ramification needs d = e");
  uint32_t m = spec.d;
  if (is_prime(m)) {
    CoverSpec base = spec;
    base.f = 1;  // the descent kernel is the untwisted one
    SchottkyPresentation pres = synth_prime(base);
    pres.case_tag = SchottkyCase::total_ram;
    return pres;
  }
  auto [s, t] = base_matrices(spec);
  FreeProduct fp({m, m});
  std::vector<std::pair<SignedWord, std::string>> words;
  total_ram_words(m, {{0, 1}}, {{1, 1}}, "", words);

  SchottkyPresentation pres;
  pres.case_tag = SchottkyCase::total_ram;
  pres.spec = spec;
  pres.expected_rank = m - 1;
  pres.rep_s = s;
  pres.rep_t = t;
  for (const auto& [w, lbl] : words)
    pres.generators.push_back(make_gen(w, lbl, fp, s, t, spec.field));
  if (pres.generators.size() != pres.expected_rank)
    fail(errc::invalid_argument, "descent produced a wrong generator count");
  return pres;
}

SchottkyPresentation synth_divisor(const CoverSpec& spec) {
  bool swapped = false;
  uint32_t d = spec.d, e = spec.e;
  if (d % e != 0) {
    if (e % d != 0) fail(errc::invalid_argument, "divisor case needs e | d or d | e");
    std::swap(d, e);
    swapped = true;  // roles of s and t exchange
  }
  if (d == e && !is_prime(d))
    fail(errc::invalid_argument, "equal composite orders dispatch to total_ram");
  uint32_t f = d / e;
  if (std::gcd(spec.k, e) != 1) fail(errc::invalid_argument, "gcd(k, e) = 1 required");
  // the B_k recipe distributes conjugates over the relator orbits only when
  // k is invertible mod d; phi_k depends on k mod e only, so replace k by a
  // congruent representative that is a unit mod d (one exists by CRT)
  long long kk = spec.k % e;
  if (kk == 0) kk = e;
  while (std::gcd((long long)d, kk) != 1) kk += e;
  auto [s, t] = base_matrices(spec);
  FreeProduct fp({spec.d, spec.e});
  uint32_t big = swapped ? 1 : 0;   // factor index of the order-d generator
  uint32_t small = swapped ? 0 : 1;

  SchottkyPresentation pres;
  pres.case_tag = SchottkyCase::divisor;
  pres.spec = spec;
  pres.expected_rank = f * (e - 1);
  pres.rep_s = s;
  pres.rep_t = t;
  long long fk = (long long)f * kk;
  for (uint32_t i = 1; i <= f; ++i) {
    for (uint32_t j = 1; j < e; ++j) {
      SignedWord gjk = {{big, fk * j}, {small, 1}, {big, -fk * ((long long)j + 1)}};
      SignedWord w = sw_conj({{big, (long long)i * kk}}, gjk);
      pres.generators.push_back(make_gen(
          w, "B[k=" + std::to_string(spec.k) + ",i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]",
          fp, s, t, spec.field));
    }
  }
  return pres;
}

SchottkyPresentation synth_coprime(const CoverSpec& spec) {
  uint32_t d = spec.d, e = spec.e;
  if (d == e || std::gcd(d, e) != 1) fail(errc::invalid_argument, "coprime case needs gcd(d, e) = 1");
  uint32_t n = d * e;
  const FieldPtr& k = spec.field;
  PadicElement zeta = root_of_unity(k, n);
  PadicElement one = PadicElement::one(k);
  const PadicElement& lam = spec.lambda;

  // choose the primitive roots so that s^e and t^d are exactly
  // diag(zeta^e, 1) and phi diag(zeta^d, 1) phi^{-1}: then the commutator
  // matrices take the displayed closed form
  long long c = exponents_to_f((uint32_t)(e % d), d);   // e^{-1} mod d
  long long cp = exponents_to_f((uint32_t)(d % e), e);  // d^{-1} mod e
  PadicElement zd = zeta.pow((long long)e * c);
  PadicElement ze = zeta.pow((long long)d * cp);
  PadicElement zero = PadicElement::zero(k);
  MoebiusMap s(zd, zero, zero, one);
  MoebiusMap t(lam * ze - one, lam * (one - ze), ze - one, lam - ze);

  FreeProduct fp({d, e});
  SchottkyPresentation pres;
  pres.case_tag = SchottkyCase::coprime;
  pres.spec = spec;
  pres.expected_rank = (d - 1) * (e - 1);
  pres.rep_s = s;
  pres.rep_t = t;
  for (uint32_t i = 1; i < d; ++i) {
    for (uint32_t j = 1; j < e; ++j) {
      SignedWord w = {{0, -(long long)e * i},
                      {1, -(long long)d * j},
                      {0, (long long)e * i},
                      {1, (long long)d * j}};
      // displayed entries of (lambda-1)^2 gamma_{ij}
      PadicElement zdj = zeta.pow((long long)d * j), zdjm = zeta.pow(-(long long)d * j);
      PadicElement zei = zeta.pow((long long)e * i), zeim = zeta.pow(-(long long)e * i);
      PadicElement a = (lam * zdj - one) * (lam * zdjm - one) - lam * zeim * (zdj - one) * (zdjm - one);
      PadicElement b = lam * (lam * zdjm - one) * (one - zdj) + lam * zeim * (one - zdjm) * (lam - zdj);
      PadicElement cc = (zdjm - one) * (lam * zdj - one) * zei + (lam - zdjm) * (zdj - one);
      PadicElement dd = lam * zei * (zdjm - one) * (one - zdj) + (lam - zdjm) * (lam - zdj);
      pres.generators.push_back({"gamma[i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]",
                                 sw_str(w), sw_normal_form(w, fp), MoebiusMap(a, b, cc, dd)});
    }
  }
  return pres;
}

SchottkyPresentation synth_mixed(const CoverSpec& spec) {
  uint32_t d = spec.d, e = spec.e;
  uint32_t l = std::gcd(d, e);
  if (d % e == 0 || e % d == 0 || l == 1)
    fail(errc::invalid_argument, "mixed case needs gcd > 1 and neither order dividing the other");
  uint32_t dp = d / l, ep = e / l, m = dp * ep;
  uint32_t n = (uint32_t)std::lcm(d, e);
  auto [s, t] = base_matrices(spec);
  FreeProduct fp({d, e});

  // The split-column assembly breaks down when gcd(m, l) > 1 (conjugates of
  // the Gamma_{l,l} lift collapse onto inverses of one another), so the
  // basis is produced by Reidemeister-Schreier on s -> zeta^{e'}, t -> zeta^{d'}
  // and checked against the rank formula.
  CyclicAssignment assign{n, {ep, dp}};
  auto kg = kernel_generators_rs(FreeProduct({d, e}), assign);

  SchottkyPresentation pres;
  pres.case_tag = SchottkyCase::mixed;
  pres.spec = spec;
  pres.expected_rank = (dp - 1) * (ep - 1) + (l - 1) * m;
  pres.rep_s = s;
  pres.rep_t = t;
  if (kg.rank() != pres.expected_rank)
    fail(errc::invalid_argument, "kernel rank disagrees with the genus formula");
  std::vector<MoebiusMap> rep{s, t};
  size_t idx = 0;
  for (const auto& w : kg.generators) {
    SignedWord sw;
    for (const auto& syl : w.syllables) sw.emplace_back(syl.factor, (long long)syl.exponent);
    pres.generators.push_back({"rs[" + std::to_string(idx++) + "]", sw_str(sw), w,
                               word_to_matrix(w, rep, spec.field)});
  }
  return pres;
}

SchottkyPresentation synthesize(const CoverSpec& spec) {
  if (spec.d == spec.e) {
    if (is_prime(spec.d)) return synth_prime(spec);
    return synth_total_ram(spec);
  }
  if (spec.d % spec.e == 0 || spec.e % spec.d == 0) return synth_divisor(spec);
  if (std::gcd(spec.d, spec.e) == 1) return synth_coprime(spec);
  return synth_mixed(spec);
}

ReidemeisterBasis synth_reidemeister(uint32_t m, uint32_t n) {
  if (m < 1 || n < 2) fail(errc::invalid_argument, "need m >= 1 copies and order n >= 2");
  FreeProduct fp(std::vector<uint32_t>(m + 1, n));
  ReidemeisterBasis out{fp, {}, {}};
  for (uint32_t j = 1; j < n; ++j)
    for (uint32_t i = 1; i <= m; ++i) {
      FreeProductWord w = fp.mul(fp.mul(fp.generator(0, j), fp.generator(i)),
                                 fp.generator(0, -(long long)j - 1));
      out.words.push_back(w);
      out.labels.push_back("s0^" + std::to_string(j) + " s" + std::to_string(i) + " s0^-" +
                           std::to_string(j + 1));
    }
  return out;
}

long long expected_genus(uint32_t degree, const std::vector<uint32_t>& ram_indices) {
  if (degree < 2) fail(errc::invalid_ramification, "degree must be >= 2");
  long long acc = -2ll * degree;
  for (uint32_t ei : ram_indices) {
    if (ei < 2 || degree % ei != 0)
      fail(errc::invalid_ramification, "each e_i must divide the degree and be >= 2");
    acc += (long long)(degree / ei) * (ei - 1);
  }
  if (acc % 2 != 0) fail(errc::invalid_ramification, "2g - 2 parity violated");
  long long g = acc / 2 + 1;
  if (g < 0) fail(errc::invalid_ramification, "negative genus");
  return g;
}

VerificationReport verify_schottky(const SchottkyPresentation& pres) {
  VerificationReport rep;
  rep.genus = pres.expected_rank;
  rep.all_hyperbolic = true;
  for (const auto& g : pres.generators) {
    if (classify_map(g.matrix) != MapClass::hyperbolic) {
      rep.all_hyperbolic = false;
      rep.first_non_hyperbolic = g.label;
      break;
    }
  }
  if (!rep.all_hyperbolic) {
    rep.circles_disjoint = false;
    rep.is_schottky_certified = false;
    return rep;
  }
  struct Named {
    std::string label;
    UltrametricDisk disk;
  };
  std::vector<Named> disks;
  try {
    for (const auto& g : pres.generators) {
      disks.push_back({g.label, isometric_circle(g.matrix)});
      disks.push_back({g.label + "^-1", isometric_circle(g.matrix.inverse())});
    }
  } catch (const error& err) {
    if (err.code() == errc::fixes_infinity) {
      rep.circles_disjoint = false;
      rep.is_schottky_certified = false;
      rep.note = "a generator fixes infinity; Ford certificate unavailable";
      return rep;
    }
    throw;
  }
  rep.circles_disjoint = true;
  for (size_t i = 0; i < disks.size() && rep.circles_disjoint; ++i) {
    for (size_t j = i + 1; j < disks.size(); ++j) {
      bool ok;
      try {
        ok = disks_disjoint(disks[i].disk, disks[j].disk);
      } catch (const error& err) {
        if (err.code() == errc::insufficient_precision)
          fail(errc::insufficient_precision, "disks " + disks[i].label + " vs " + disks[j].label +
                                                 ": " + err.what());
        throw;
      }
      if (!ok) {
        rep.circles_disjoint = false;
        rep.first_intersecting_a = disks[i].label;
        rep.first_intersecting_b = disks[j].label;
        break;
      }
      PadicElement gap = disks[i].disk.center.affine_value() - disks[j].disk.center.affine_value();
      Rational gv = gap.val().value();
      if (!rep.min_center_gap_val || gv < *rep.min_center_gap_val) rep.min_center_gap_val = gv;
    }
  }
  rep.is_schottky_certified = rep.all_hyperbolic && rep.circles_disjoint;
  return rep;
}

}  // namespace mumford
