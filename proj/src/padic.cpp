#include "mumford/padic.hpp"

#include <algorithm>
#include <sstream>

namespace mumford {

namespace {

// ---------------------------------------------------------------------------
// base-p digit vectors
// ---------------------------------------------------------------------------

DigitVec dv_zero(size_t n) { return DigitVec(n, 0); }

bool dv_is_zero(const DigitVec& a) {
  for (uint32_t d : a)
    if (d) return false;
  return true;
}

// index of first nonzero digit; a.size() when zero
size_t dv_val(const DigitVec& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i]) return i;
  return a.size();
}

DigitVec dv_trunc(const DigitVec& a, size_t n) {
  DigitVec r(a.begin(), a.begin() + std::min(n, a.size()));
  r.resize(n, 0);
  return r;
}

DigitVec dv_add(uint32_t p, const DigitVec& a, const DigitVec& b) {
  size_t n = std::min(a.size(), b.size());
  DigitVec r(n);
  uint64_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t s = (uint64_t)a[i] + b[i] + carry;
    r[i] = (uint32_t)(s % p);
    carry = s / p;
  }
  return r;
}

DigitVec dv_sub(uint32_t p, const DigitVec& a, const DigitVec& b) {
  size_t n = std::min(a.size(), b.size());
  DigitVec r(n);
  int64_t borrow = 0;
  for (size_t i = 0; i < n; ++i) {
    int64_t s = (int64_t)a[i] - b[i] - borrow;
    if (s < 0) {
      s += p;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = (uint32_t)s;
  }
  return r;
}

DigitVec dv_neg(uint32_t p, const DigitVec& a) { return dv_sub(p, dv_zero(a.size()), a); }

DigitVec dv_mul(uint32_t p, const DigitVec& a, const DigitVec& b, size_t nout) {
  // deferred-carry fast path: digit products accumulate without overflow
  // whenever nout * (p-1)^2 stays below 2^63 (always true for desk primes)
  if ((uint64_t)(p - 1) * (p - 1) < (uint64_t(1) << 62) / (nout + 1)) {
    std::vector<uint64_t> acc(nout, 0);
    for (size_t i = 0; i < a.size() && i < nout; ++i) {
      if (!a[i]) continue;
      uint64_t ai = a[i];
      size_t jmax = std::min(b.size(), nout - i);
      for (size_t j = 0; j < jmax; ++j) acc[i + j] += ai * b[j];
    }
    DigitVec r(nout);
    uint64_t carry = 0;
    for (size_t k = 0; k < nout; ++k) {
      uint64_t cur = acc[k] + carry;
      r[k] = (uint32_t)(cur % p);
      carry = cur / p;
    }
    return r;
  }
  DigitVec r(nout, 0);
  for (size_t i = 0; i < a.size() && i < nout; ++i) {
    if (!a[i]) continue;
    uint64_t carry = 0;
    for (size_t j = 0; j + i < nout; ++j) {
      uint64_t cur = r[i + j] + carry;
      if (j < b.size()) cur += (uint64_t)a[i] * b[j];
      r[i + j] = (uint32_t)(cur % p);
      carry = cur / p;
    }
  }
  return r;
}

DigitVec dv_mul_small(uint32_t p, const DigitVec& a, uint32_t k) {
  DigitVec r(a.size());
  uint64_t carry = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t cur = (uint64_t)a[i] * k + carry;
    r[i] = (uint32_t)(cur % p);
    carry = cur / p;
  }
  return r;
}

DigitVec dv_from_u64(uint32_t p, size_t n, uint64_t v) {
  DigitVec r(n, 0);
  for (size_t i = 0; i < n && v; ++i) {
    r[i] = (uint32_t)(v % p);
    v /= p;
  }
  return r;
}

DigitVec dv_from_ll(uint32_t p, size_t n, long long v) {
  if (v >= 0) return dv_from_u64(p, n, (uint64_t)v);
  return dv_neg(p, dv_from_u64(p, n, (uint64_t)(-(v + 1)) + 1));
}

DigitVec dv_shift_up(const DigitVec& a, size_t k, size_t nout) {
  DigitVec r(nout, 0);
  for (size_t i = 0; i + k < nout && i < a.size(); ++i) r[i + k] = a[i];
  return r;
}

DigitVec dv_shift_down(const DigitVec& a, size_t k) {
  if (k >= a.size()) return DigitVec();
  return DigitVec(a.begin() + k, a.end());
}

// ---------------------------------------------------------------------------
// residue field F_{p^f}: coefficient vectors mod p, reduced mod a monic
// irreducible polynomial
// ---------------------------------------------------------------------------

using ResElt = std::vector<uint32_t>;
using ResPoly = std::vector<uint32_t>;  // little-endian, arbitrary degree

ResPoly rp_trim(ResPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ResPoly rp_mul(uint32_t p, const ResPoly& a, const ResPoly& b) {
  if (a.empty() || b.empty()) return {};
  ResPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (uint32_t)((r[i + j] + (uint64_t)a[i] * b[j]) % p);
  return rp_trim(r);
}

uint32_t inv_mod_p(uint32_t a, uint32_t p) {
  // extended Euclid on machine ints
  int64_t t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (t < 0) t += p;
  return (uint32_t)t;
}

// a mod g, g monic
ResPoly rp_mod(uint32_t p, ResPoly a, const ResPoly& g) {
  a = rp_trim(a);
  size_t dg = g.size() - 1;
  while (a.size() > dg) {
    uint32_t c = a.back();
    size_t shift = a.size() - 1 - dg;
    if (c) {
      for (size_t j = 0; j < g.size(); ++j) {
        uint64_t sub = (uint64_t)c * g[j] % p;
        uint32_t& tgt = a[shift + j];
        tgt = (uint32_t)((tgt + p - sub) % p);
      }
    }
    a.pop_back();
    a = rp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

ResPoly rp_powmod(uint32_t p, ResPoly base, uint64_t e, const ResPoly& g) {
  ResPoly r = {1};
  base = rp_mod(p, base, g);
  while (e) {
    if (e & 1) r = rp_mod(p, rp_mul(p, r, base), g);
    base = rp_mod(p, rp_mul(p, base, base), g);
    e >>= 1;
  }
  return r;
}

ResPoly rp_gcd(uint32_t p, ResPoly a, ResPoly b) {
  a = rp_trim(a);
  b = rp_trim(b);
  while (!b.empty()) {
    // make b monic for rp_mod
    uint32_t lead = b.back();
    ResPoly bm = b;
    if (lead != 1) {
      uint32_t li = inv_mod_p(lead, p);
      for (auto& c : bm) c = (uint32_t)((uint64_t)c * li % p);
    }
    ResPoly r = rp_mod(p, a, bm);
    a = b;
    b = r;
  }
  return a;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
  std::vector<uint32_t> fs;
  for (uint32_t q = 2; q * q <= n; ++q)
    while (n % q == 0) {
      if (fs.empty() || fs.back() != q) fs.push_back(q);
      n /= q;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

bool rp_irreducible(uint32_t p, const ResPoly& g) {
  size_t f = g.size() - 1;
  ResPoly x = {0, 1};
  // x^{p^f} == x mod g
  ResPoly xp = x;
  for (size_t i = 0; i < f; ++i) xp = rp_powmod(p, xp, p, g);
  ResPoly diff = xp;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = (uint32_t)((diff[1] + p - 1) % p);
  if (!rp_trim(diff).empty()) return false;
  for (uint32_t q : prime_factors((uint32_t)f)) {
    ResPoly xq = x;
    for (size_t i = 0; i < f / q; ++i) xq = rp_powmod(p, xq, p, g);
    ResPoly d2 = xq;
    d2.resize(std::max<size_t>(d2.size(), 2), 0);
    d2[1] = (uint32_t)((d2[1] + p - 1) % p);
    d2 = rp_trim(d2);
    if (rp_gcd(p, d2, g).size() > 1) return false;
  }
  return true;
}

// deterministic search for a monic irreducible of degree f over F_p
ResPoly find_res_modulus(uint32_t p, uint32_t f) {
  if (f == 1) return {0, 1};  // X
  ResPoly g(f + 1, 0);
  g[f] = 1;
  // enumerate lower coefficients in lexicographic order
  while (true) {
    if (g[0] != 0 && rp_irreducible(p, g)) return g;
    size_t i = 0;
    while (i < f && ++g[i] == p) g[i++] = 0;
    if (i == f) fail(errc::invalid_argument, "no irreducible polynomial found");
  }
}

struct ResField {
  uint32_t p;
  uint32_t f;
  ResPoly mod;  // monic, degree f

  ResElt zero() const { return ResElt(f, 0); }
  ResElt one() const {
    ResElt r(f, 0);
    r[0] = 1;
    return r;
  }
  bool is_zero(const ResElt& a) const {
    for (uint32_t c : a)
      if (c) return false;
    return true;
  }
  ResElt from_poly(const ResPoly& a) const {
    ResPoly r = rp_mod(p, a, mod);
    r.resize(f, 0);
    return r;
  }
  ResElt mul(const ResElt& a, const ResElt& b) const { return from_poly(rp_mul(p, a, b)); }
  ResElt pow(const ResElt& a, uint64_t e) const {
    ResElt r = one(), base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  ResElt inverse(const ResElt& a) const {
    uint64_t q = 1;
    for (uint32_t i = 0; i < f; ++i) q *= p;
    return pow(a, q - 2);
  }
  uint64_t order_of(const ResElt& a) const {
    ResElt x = a;
    for (uint64_t k = 1;; ++k) {
      if (is_zero(x)) return 0;
      ResElt d = x;
      d[0] = (d[0] + p - 1) % p;
      if (is_zero(d)) return k;
      x = mul(x, a);
      if (k > (1ull << 40)) fail(errc::invalid_argument, "order search overflow");
    }
  }
  // deterministic generator of the multiplicative group
  ResElt primitive_element() const {
    uint64_t q = 1;
    for (uint32_t i = 0; i < f; ++i) q *= p;
    ResElt cand(f, 0);
    while (true) {
      size_t i = 0;
      while (i < f && ++cand[i] == p) cand[i++] = 0;
      if (i == f) fail(errc::invalid_argument, "no primitive element");
      if (is_zero(cand)) continue;
      if (order_of(cand) == q - 1) return cand;
    }
  }
};

// ---------------------------------------------------------------------------
// unramified layer W = Q_p[X]/(G), G the lifted residue modulus; vectors of
// f digit vectors, all of one common length
// ---------------------------------------------------------------------------

using W = std::vector<DigitVec>;

struct Tower {
  const FieldDescriptor* k;
  uint32_t p() const { return k->p; }
  uint32_t f() const { return k->f; }
  uint32_t e() const { return k->e_ram; }

  W w_zero(size_t mp) const { return W(f(), dv_zero(mp)); }
  W w_one(size_t mp) const {
    W r = w_zero(mp);
    if (mp) r[0][0] = 1;
    return r;
  }
  bool w_is_zero(const W& a) const {
    for (auto& c : a)
      if (!dv_is_zero(c)) return false;
    return true;
  }
  size_t w_prec(const W& a) const { return a[0].size(); }
  size_t w_val(const W& a) const {
    size_t v = w_prec(a);
    for (auto& c : a) v = std::min(v, dv_val(c));
    return v;
  }
  W w_trunc(const W& a, size_t n) const {
    W r(f());
    for (size_t j = 0; j < f(); ++j) r[j] = dv_trunc(a[j], n);
    return r;
  }
  W w_add(const W& a, const W& b) const {
    W r(f());
    for (size_t j = 0; j < f(); ++j) r[j] = dv_add(p(), a[j], b[j]);
    return r;
  }
  W w_sub(const W& a, const W& b) const {
    W r(f());
    for (size_t j = 0; j < f(); ++j) r[j] = dv_sub(p(), a[j], b[j]);
    return r;
  }
  W w_neg(const W& a) const {
    W r(f());
    for (size_t j = 0; j < f(); ++j) r[j] = dv_neg(p(), a[j]);
    return r;
  }
  W w_scale(const W& a, const DigitVec& s) const {
    size_t n = std::min(w_prec(a), s.size());
    W r(f());
    for (size_t j = 0; j < f(); ++j) r[j] = dv_mul(p(), dv_trunc(a[j], n), dv_trunc(s, n), n);
    return r;
  }
  W w_mul(const W& a, const W& b) const {
    size_t n = std::min(w_prec(a), w_prec(b));
    std::vector<DigitVec> tmp(2 * f() - 1, dv_zero(n));
    for (size_t i = 0; i < f(); ++i) {
      if (dv_is_zero(a[i])) continue;
      for (size_t j = 0; j < f(); ++j) {
        if (dv_is_zero(b[j])) continue;
        tmp[i + j] = dv_add(p(), tmp[i + j], dv_mul(p(), dv_trunc(a[i], n), dv_trunc(b[j], n), n));
      }
    }
    // reduce X^D for D >= f via the monic small-coefficient modulus
    for (size_t D = 2 * f() - 2; D + 1 > f(); --D) {
      DigitVec c = tmp[D];
      if (dv_is_zero(c)) continue;
      for (size_t j = 0; j < f(); ++j) {
        uint32_t gj = k->res_modulus[j];
        if (gj) tmp[D - f() + j] = dv_sub(p(), tmp[D - f() + j], dv_mul_small(p(), c, gj));
      }
    }
    tmp.resize(f());
    return tmp;
  }
  ResElt w_residue(const W& a) const {
    ResElt r(f());
    for (size_t j = 0; j < f(); ++j) r[j] = a[j].empty() ? 0 : a[j][0];
    return r;
  }
  W w_from_res(const ResElt& a, size_t mp) const {
    W r = w_zero(mp);
    for (size_t j = 0; j < f(); ++j)
      if (mp) r[j][0] = a[j];
    return r;
  }
  W w_pow(const W& a, uint64_t ex) const {
    W r = w_one(w_prec(a)), base = a;
    while (ex) {
      if (ex & 1) r = w_mul(r, base);
      base = w_mul(base, base);
      ex >>= 1;
    }
    return r;
  }
  // Newton inverse of a unit
  W w_inv(const W& a, const ResField& rf) const {
    ResElt r0 = w_residue(a);
    if (rf.is_zero(r0)) fail(errc::division_by_zero_to_precision, "unramified inverse of non-unit");
    size_t n = w_prec(a);
    W z = w_from_res(rf.inverse(r0), n);
    for (size_t iter = 0; iter < 64; ++iter) {
      W err = w_sub(w_one(n), w_mul(a, z));
      if (w_is_zero(err)) return z;
      z = w_add(z, w_mul(z, err));
    }
    fail(errc::insufficient_precision, "unramified inversion did not converge");
  }

  // ---------------------------------------------------------------------
  // mantissa layer O_K = W[y]/(E), vectors of e_ram W-coefficients
  // ---------------------------------------------------------------------

  using Mant = std::vector<W>;

  Mant mt_zero(size_t mp) const { return Mant(e(), w_zero(mp)); }
  Mant mt_one(size_t mp) const {
    Mant r = mt_zero(mp);
    r[0] = w_one(mp);
    return r;
  }
  size_t mt_prec(const Mant& a) const { return w_prec(a[0]); }
  bool mt_is_zero(const Mant& a) const {
    for (auto& c : a)
      if (!w_is_zero(c)) return false;
    return true;
  }
  Mant mt_trunc(const Mant& a, size_t n) const {
    Mant r(e());
    for (size_t i = 0; i < e(); ++i) r[i] = w_trunc(a[i], n);
    return r;
  }
  Mant mt_add(const Mant& a, const Mant& b) const {
    Mant r(e());
    for (size_t i = 0; i < e(); ++i) r[i] = w_add(a[i], b[i]);
    return r;
  }
  Mant mt_sub(const Mant& a, const Mant& b) const {
    Mant r(e());
    for (size_t i = 0; i < e(); ++i) r[i] = w_sub(a[i], b[i]);
    return r;
  }
  Mant mt_neg(const Mant& a) const {
    Mant r(e());
    for (size_t i = 0; i < e(); ++i) r[i] = w_neg(a[i]);
    return r;
  }
  void mt_reduce(std::vector<W>& tmp, size_t n) const {
    for (size_t D = tmp.size() - 1; D + 1 > e(); --D) {
      W c = tmp[D];
      if (w_is_zero(c)) continue;
      for (size_t j = 0; j < e(); ++j) {
        const DigitVec& Ej = k->eis[j];
        if (!dv_is_zero(Ej)) tmp[D - e() + j] = w_sub(tmp[D - e() + j], w_scale(c, Ej));
      }
      tmp[D] = w_zero(n);
    }
    tmp.resize(e());
  }
  Mant mt_mul(const Mant& a, const Mant& b) const {
    size_t n = std::min(mt_prec(a), mt_prec(b));
    if (e() == 1) return {w_mul(w_trunc(a[0], n), w_trunc(b[0], n))};
    std::vector<W> tmp(2 * e() - 1, w_zero(n));
    for (size_t i = 0; i < e(); ++i) {
      if (w_is_zero(a[i])) continue;
      for (size_t j = 0; j < e(); ++j) {
        if (w_is_zero(b[j])) continue;
        tmp[i + j] = w_add(tmp[i + j], w_mul(w_trunc(a[i], n), w_trunc(b[j], n)));
      }
    }
    mt_reduce(tmp, n);
    return tmp;
  }
  // multiply by pi^j (pi = p when unramified)
  Mant mt_mul_pi(const Mant& a, size_t j) const {
    if (j == 0) return a;
    size_t n = mt_prec(a);
    if (e() == 1) return mt_shift_up(a, j, std::min(n + j, (size_t)k->work_digits));
    std::vector<W> tmp(e() + j, w_zero(n));
    for (size_t i = 0; i < e(); ++i) tmp[i + j] = a[i];
    mt_reduce(tmp, n);
    return tmp;
  }
  // valuation of the mantissa in pi-units, or nullopt-like flag via bool
  bool mt_val_pi(const Mant& a, long long& out) const {
    long long best = -1;
    size_t n = mt_prec(a);
    for (size_t i = 0; i < e(); ++i) {
      size_t wv = w_val(a[i]);
      if (wv >= n) continue;
      long long cand = (long long)i + (long long)e() * (long long)wv;
      if (best < 0 || cand < best) best = cand;
    }
    if (best < 0) return false;
    out = best;
    return true;
  }
  Mant mt_shift_up(const Mant& a, size_t kdig, size_t cap) const {
    size_t n = std::min(mt_prec(a) + kdig, cap);
    Mant r(e());
    for (size_t i = 0; i < e(); ++i) {
      r[i].resize(f());
      for (size_t j = 0; j < f(); ++j) r[i][j] = dv_shift_up(a[i][j], kdig, n);
    }
    return r;
  }
  Mant mt_shift_down(const Mant& a, size_t kdig) const {
    Mant r(e());
    for (size_t i = 0; i < e(); ++i) {
      r[i].resize(f());
      for (size_t j = 0; j < f(); ++j) r[i][j] = dv_shift_down(a[i][j], kdig);
    }
    return r;
  }
  ResElt mt_residue(const Mant& a) const { return w_residue(a[0]); }
  Mant mt_from_res(const ResElt& a, size_t mp) const {
    Mant r = mt_zero(mp);
    r[0] = w_from_res(a, mp);
    return r;
  }
  Mant mt_inv_unit(const Mant& a, const ResField& rf) const {
    size_t n = mt_prec(a);
    ResElt r0 = mt_residue(a);
    if (rf.is_zero(r0)) fail(errc::division_by_zero_to_precision, "inverse of non-unit mantissa");
    Mant z = mt_from_res(rf.inverse(r0), n);
    for (size_t iter = 0; iter < 128; ++iter) {
      Mant err = mt_sub(mt_one(n), mt_mul(a, z));
      if (mt_is_zero(err)) return z;
      z = mt_add(z, mt_mul(z, err));
    }
    fail(errc::insufficient_precision, "inversion did not converge");
  }
};

ResField res_field_of(const FieldDescriptor& k) { return ResField{k.p, k.f, k.res_modulus}; }

}  // namespace

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// element plumbing: shared access to internals
// ---------------------------------------------------------------------------

struct PadicOps {
  static PadicElement make(const FieldPtr& k, uint32_t d, Tower::Mant m) {
    PadicElement x;
    x.field_ = k;
    x.denom_exp_ = d;
    x.mant_prec_ = (uint32_t)Tower{k.get()}.mt_prec(m);
    x.coeffs_ = std::move(m);
    normalize(x);
    return x;
  }

  static Tower::Mant mant(const PadicElement& x) { return x.coeffs_; }

  static void normalize(PadicElement& x) {
    if (x.mant_prec_ == 0) fail(errc::insufficient_precision, "element precision exhausted");
    if (x.denom_exp_ == 0) return;
    Tower t{x.field_.get()};
    size_t k = x.mant_prec_;
    for (auto& wc : x.coeffs_)
      for (auto& dvec : wc) k = std::min(k, dv_val(dvec));
    k = std::min<size_t>(k, x.denom_exp_);
    if (k == 0) return;
    x.coeffs_ = t.mt_shift_down(x.coeffs_, k);
    x.denom_exp_ -= (uint32_t)k;
    x.mant_prec_ -= (uint32_t)k;
    if (x.mant_prec_ == 0) fail(errc::insufficient_precision, "element precision exhausted");
  }

  static void check_same(const PadicElement& a, const PadicElement& b) {
    if (!a.valid() || !b.valid()) fail(errc::invalid_argument, "uninitialized element");
    if (!a.field_->same_tower(*b.field_)) fail(errc::field_mismatch, "elements from different fields");
  }

  // unit decomposition: x = p^{q_out} * pi^{t_out} * unit, 0 <= t_out < e_ram
  static Tower::Mant unit_part(const PadicElement& x, long long& q_out, uint32_t& t_out) {
    Tower t{x.field_.get()};
    long long tpi = 0;
    if (!t.mt_val_pi(x.coeffs_, tpi))
      fail(errc::division_by_zero_to_precision, "unit part of zero-to-precision element");
    long long q = tpi / t.e();
    uint32_t tp = (uint32_t)(tpi % t.e());
    Tower::Mant u;
    if (tp == 0) {
      u = t.mt_shift_down(x.coeffs_, (size_t)q);
    } else {
      Tower::Mant lifted = t.mt_mul_pi(x.coeffs_, t.e() - tp);
      u = t.mt_shift_down(lifted, (size_t)(q + 1));
    }
    if (t.mt_prec(u) == 0) fail(errc::insufficient_precision, "precision exhausted in unit part");
    q_out = q - (long long)x.denom_exp_;
    t_out = tp;
    return u;
  }

  // assemble p^q * pi^t * mant into an element
  static PadicElement assemble(const FieldPtr& k, long long q, uint32_t tpow, Tower::Mant m) {
    Tower t{k.get()};
    if (tpow) m = t.mt_mul_pi(m, tpow);
    uint32_t d = 0;
    if (q >= 0) {
      m = t.mt_shift_up(m, (size_t)q, k->work_digits);
    } else {
      d = (uint32_t)(-q);
    }
    return make(k, d, std::move(m));
  }
};

namespace {

// E(y) = Phi_{p^r}(y+1) = sum_{t=0}^{p-1} (y+1)^{t p^{r-1}}
std::vector<DigitVec> eisenstein_poly(uint32_t p, uint32_t r, size_t nd) {
  uint32_t pr1 = 1;
  for (uint32_t i = 0; i + 1 < r; ++i) pr1 *= p;
  uint32_t deg = pr1 * (p - 1);
  std::vector<DigitVec> acc(deg + 1, dv_zero(nd));
  for (uint32_t tt = 0; tt < p; ++tt) {
    uint32_t n = tt * pr1;
    // binomial row C(n, j) via Pascal recurrence in digit vectors
    std::vector<DigitVec> row(n + 1, dv_zero(nd));
    row[0] = dv_from_u64(p, nd, 1);
    for (uint32_t i = 1; i <= n; ++i)
      for (uint32_t j = i; j > 0; --j) row[j] = dv_add(p, row[j], row[j - 1]);
    for (uint32_t j = 0; j <= n; ++j) acc[j] = dv_add(p, acc[j], row[j]);
  }
  return acc;
}

}  // namespace

FieldPtr make_field(uint32_t p, uint32_t m, uint32_t precision) {
  if (!is_prime(p)) fail(errc::invalid_argument, "p must be prime");
  if (m == 0) fail(errc::invalid_argument, "m must be positive");
  if (precision == 0) fail(errc::invalid_argument, "precision must be positive");

  auto k = std::make_shared<FieldDescriptor>();
  k->p = p;
  k->m = m;
  k->precision = precision;
  k->r = 0;
  k->u = m;
  while (k->u % p == 0) {
    k->u /= p;
    ++k->r;
  }
  k->e_ram = 1;
  if (k->r >= 1) {
    k->e_ram = p - 1;
    for (uint32_t i = 0; i + 1 < k->r; ++i) k->e_ram *= p;
  }
  k->f = 1;
  if (k->u > 1) {
    uint32_t x = p % k->u, ord = 1;
    while (x != 1) {
      x = (uint32_t)((uint64_t)x * p % k->u);
      ++ord;
      if (ord > k->u) fail(errc::invalid_argument, "order computation failed (u not coprime to p?)");
    }
    k->f = ord;
  }
  k->work_digits = std::max<uint32_t>((precision + k->e_ram - 1) / k->e_ram, 4);

  k->res_modulus = find_res_modulus(p, k->f);
  if (k->e_ram >= 2) k->eis = eisenstein_poly(p, k->r, k->work_digits);

  // Teichmueller lift of a primitive element of F_{p^f}
  uint64_t q = 1;
  for (uint32_t i = 0; i < k->f; ++i) q *= p;
  k->omega_order = (uint32_t)(q - 1);
  Tower t{k.get()};
  ResField rf = res_field_of(*k);
  if (q - 1 <= 1) {
    k->omega = t.w_one(k->work_digits);
  } else {
    ResElt g0 = rf.primitive_element();
    W z = t.w_from_res(g0, k->work_digits);
    // Newton on z^{q-1} - 1 = 0; the derivative (q-1) z^{q-2} is a unit
    bool settled = false;
    for (size_t iter = 0; iter < 64 && !settled; ++iter) {
      W zq = t.w_pow(z, q - 2);                 // z^{q-2}
      W fz = t.w_sub(t.w_mul(zq, z), t.w_one(k->work_digits));  // z^{q-1} - 1
      if (t.w_is_zero(fz)) {
        settled = true;
        break;
      }
      W fprime = t.w_scale(zq, dv_from_u64(p, k->work_digits, q - 1));
      z = t.w_sub(z, t.w_mul(fz, t.w_inv(fprime, rf)));
    }
    if (!settled) fail(errc::insufficient_precision, "Teichmueller lift did not converge");
    k->omega = z;
  }
  return k;
}

// ---------------------------------------------------------------------------
// PadicElement
// ---------------------------------------------------------------------------

PadicElement PadicElement::zero(const FieldPtr& k) {
  Tower t{k.get()};
  return PadicOps::make(k, 0, t.mt_zero(k->work_digits));
}

PadicElement PadicElement::one(const FieldPtr& k) {
  Tower t{k.get()};
  return PadicOps::make(k, 0, t.mt_one(k->work_digits));
}

PadicElement PadicElement::from_integer(const FieldPtr& k, long long n) {
  Tower t{k.get()};
  auto m = t.mt_zero(k->work_digits);
  m[0][0] = dv_from_ll(k->p, k->work_digits, n);
  return PadicOps::make(k, 0, std::move(m));
}

PadicElement PadicElement::from_rational(const FieldPtr& k, const Rational& q) {
  PadicElement num = from_integer(k, q.num());
  if (q.den() == 1) return num;
  return num / from_integer(k, q.den());
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
  PadicOps::check_same(*this, o);
  Tower t{field_.get()};
  uint32_t d = std::max(denom_exp_, o.denom_exp_);
  auto a = t.mt_shift_up(coeffs_, d - denom_exp_, field_->work_digits);
  auto b = t.mt_shift_up(o.coeffs_, d - o.denom_exp_, field_->work_digits);
  size_t n = std::min(t.mt_prec(a), t.mt_prec(b));
  return PadicOps::make(field_, d, t.mt_add(t.mt_trunc(a, n), t.mt_trunc(b, n)));
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator-() const {
  Tower t{field_.get()};
  return PadicOps::make(field_, denom_exp_, t.mt_neg(coeffs_));
}

PadicElement PadicElement::operator*(const PadicElement& o) const {
  PadicOps::check_same(*this, o);
  Tower t{field_.get()};
  return PadicOps::make(field_, denom_exp_ + o.denom_exp_, t.mt_mul(coeffs_, o.coeffs_));
}

PadicElement PadicElement::inv() const {
  Tower t{field_.get()};
  long long q;
  uint32_t tp;
  // With u := x * pi^{e-tp} * p^{-q-1} for tp > 0 (resp. u := x p^{-q} when
  // tp = 0), the inverse is x^{-1} = p^{-q-1} pi^{e-tp} u^{-1}: the unit
  // pi^e/p cancels between the two occurrences.
  auto u = PadicOps::unit_part(*this, q, tp);
  auto z = t.mt_inv_unit(u, res_field_of(*field_));
  if (tp == 0) return PadicOps::assemble(field_, -q, 0, std::move(z));
  return PadicOps::assemble(field_, -q - 1, 0, t.mt_mul_pi(z, t.e() - tp));
}

PadicElement PadicElement::operator/(const PadicElement& o) const {
  PadicOps::check_same(*this, o);
  return *this * o.inv();
}

PadicElement PadicElement::pow(long long n) const {
  if (n < 0) return inv().pow(-n);
  PadicElement r = one(field_), base = *this;
  unsigned long long e = (unsigned long long)n;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool PadicElement::is_zero_to_precision() const {
  Tower t{field_.get()};
  return t.mt_is_zero(coeffs_);
}

Valuation PadicElement::val() const {
  Tower t{field_.get()};
  long long tpi;
  if (!t.mt_val_pi(coeffs_, tpi)) return Valuation::zero_to_precision();
  return Valuation(Rational(tpi, field_->e_ram) - Rational(denom_exp_));
}

Valuation PadicElement::known_precision() const {
  return Valuation(Rational((long long)mant_prec_ - (long long)denom_exp_));
}

bool PadicElement::is_unit() const {
  Valuation v = val();
  return !v.is_zero_to_precision() && v.value() == Rational(0);
}

Cmp PadicElement::abs_cmp(const PadicElement& x, const PadicElement& y) {
  PadicOps::check_same(x, y);
  Valuation vx = x.val(), vy = y.val();
  if (vx.is_zero_to_precision() && vy.is_zero_to_precision())
    fail(errc::insufficient_precision, "both operands vanish to precision");
  if (vx.is_zero_to_precision()) {
    if (vy.value() < x.known_precision().value()) return Cmp::less;
    fail(errc::insufficient_precision, "cannot separate |x| from |y| at working precision");
  }
  if (vy.is_zero_to_precision()) {
    if (vx.value() < y.known_precision().value()) return Cmp::greater;
    fail(errc::insufficient_precision, "cannot separate |x| from |y| at working precision");
  }
  if (vx.value() == vy.value()) return Cmp::equal;
  return vx.value() > vy.value() ? Cmp::less : Cmp::greater;
}

namespace {

// Teichmueller digit set {0} and powers of omega, used as residue system
std::vector<Tower::Mant> teich_digits(const FieldPtr& k) {
  Tower t{k.get()};
  std::vector<Tower::Mant> set;
  set.push_back(t.mt_zero(k->work_digits));
  Tower::Mant cur = t.mt_one(k->work_digits);
  for (uint32_t a = 0; a < std::max<uint32_t>(k->omega_order, 1); ++a) {
    set.push_back(cur);
    Tower::Mant om = t.mt_zero(k->work_digits);
    om[0] = k->omega;
    cur = t.mt_mul(cur, om);
  }
  return set;
}

}  // namespace

namespace {

// pi as an element: the degree-1 coordinate when ramified, p otherwise
PadicElement pi_element(const FieldPtr& k) {
  Tower t{k.get()};
  if (k->e_ram == 1) return PadicElement::from_integer(k, (long long)k->p);
  auto m = t.mt_zero(k->work_digits);
  m[1] = t.w_one(k->work_digits);
  return PadicOps::make(k, 0, std::move(m));
}

}  // namespace

PadicElement PadicElement::sqrt() const {
  Tower t{field_.get()};
  const auto& k = field_;
  Valuation v = val();
  if (v.is_zero_to_precision())
    fail(errc::insufficient_precision, "square root of zero-to-precision element");
  long long T = (v.value() * Rational(k->e_ram)).num();  // pi-valuation
  if (T % 2 != 0) fail(errc::extension_required, "odd valuation: square root outside the tower");
  PadicElement pihalf = pi_element(k).pow(T / 2);
  PadicElement unit_elt = *this / (pihalf * pihalf);
  long long q0 = 0;
  uint32_t t0 = 0;
  auto u = PadicOps::unit_part(unit_elt, q0, t0);  // q0 = 0, t0 = 0 for a unit
  (void)q0;
  (void)t0;
  ResField rf = res_field_of(*k);
  size_t n = t.mt_prec(u);

  Tower::Mant z;
  if (k->p != 2) {
    ResElt r0 = t.mt_residue(u);
    // residue square root by enumeration of the small field F_{p^f}
    uint64_t qsize = 1;
    for (uint32_t i = 0; i < k->f; ++i) qsize *= k->p;
    if (qsize > 2000000) fail(errc::invalid_argument, "residue field too large for sqrt search");
    bool found = false;
    ResElt cand(k->f, 0);
    for (uint64_t it = 0; it + 1 < qsize && !found; ++it) {
      size_t i = 0;
      while (i < k->f && ++cand[i] == k->p) cand[i++] = 0;
      if (rf.mul(cand, cand) == r0) found = true;
    }
    if (!found) fail(errc::extension_required, "residue is a non-square");
    z = t.mt_from_res(cand, n);
    for (size_t iter = 0; iter < 128; ++iter) {
      Tower::Mant err = t.mt_sub(t.mt_mul(z, z), t.mt_trunc(u, t.mt_prec(z)));
      if (t.mt_is_zero(err)) break;
      Tower::Mant dz = t.mt_mul(err, t.mt_inv_unit(t.mt_add(z, z), rf));
      z = t.mt_sub(z, dz);
    }
  } else {
    // p = 2: strong Hensel. Search an initial z0 with v(z0^2 - u) > 2 v(2)
    // over Teichmueller digit expansions modulo pi^{2 v_pi(2) + 1}.
    uint32_t e2 = k->e_ram;  // v_pi(2)
    uint32_t B = 2 * e2 + 1;
    auto digitset = teich_digits(k);
    std::vector<Tower::Mant> pi_pows(B);
    pi_pows[0] = t.mt_one(k->work_digits);
    for (uint32_t i = 1; i < B; ++i) pi_pows[i] = t.mt_mul_pi(pi_pows[i - 1], 1);
    std::vector<size_t> idx(B, 0);
    bool found = false;
    Tower::Mant best;
    while (true) {
      Tower::Mant candidate = t.mt_zero(k->work_digits);
      for (uint32_t i = 0; i < B; ++i)
        if (idx[i]) candidate = t.mt_add(candidate, t.mt_mul(digitset[idx[i]], pi_pows[i]));
      // compare at the unit's own precision; candidates are exact
      Tower::Mant err = t.mt_sub(t.mt_trunc(t.mt_mul(candidate, candidate), n), u);
      long long verr;
      if (!t.mt_val_pi(err, verr) || verr > 2ll * e2) {
        found = true;
        best = candidate;
        break;
      }
      size_t i = 0;
      while (i < B && ++idx[i] == digitset.size()) idx[i++] = 0;
      if (i == B) break;
    }
    if (!found) fail(errc::extension_required, "no 2-adic square root in the tower");
    // Newton: each step divides the error valuation distance above 2 v(2)
    PadicElement zel = PadicOps::make(k, 0, best);
    for (size_t iter = 0; iter < 256; ++iter) {
      PadicElement err = zel * zel - unit_elt;
      if (err.is_zero_to_precision()) break;
      zel = zel - err / (zel + zel);
    }
    if (zel.denom_exp() != 0) fail(errc::insufficient_precision, "sqrt iteration left O_K");
    z = PadicOps::mant(zel);
  }
  PadicElement root = PadicOps::make(k, 0, std::move(z)) * pihalf;
  // canonical choice between the two roots: smaller digit string
  PadicElement neg = -root;
  return root.str() <= neg.str() ? root : neg;
}

PadicElement root_of_unity(const FieldPtr& k, uint32_t order) {
  if (order == 0 || k->m % order != 0) fail(errc::invalid_argument, "order must divide m");
  if (k->work_digits < 1) fail(errc::insufficient_precision, "field precision too small");
  uint32_t s = 0, ku = order;
  while (ku % k->p == 0) {
    ku /= k->p;
    ++s;
  }
  Tower t{k.get()};
  // prime-to-p part
  PadicElement zu = PadicElement::one(k);
  if (ku > 1) {
    auto m = t.mt_zero(k->work_digits);
    m[0] = k->omega;
    PadicElement om = PadicOps::make(k, 0, std::move(m));
    zu = om.pow(k->omega_order / ku);
  }
  // p-power part
  PadicElement zp = PadicElement::one(k);
  if (s >= 1) {
    uint32_t ps = 1;
    for (uint32_t i = 0; i < s; ++i) ps *= k->p;
    if (ps == 2) {
      zp = PadicElement::from_integer(k, -1);
    } else {
      auto m = t.mt_one(k->work_digits);
      m[1] = t.w_one(k->work_digits);  // 1 + pi, requires e_ram >= 2 which holds for p^s > 2
      PadicElement base = PadicOps::make(k, 0, std::move(m));
      uint32_t expo = 1;
      for (uint32_t i = 0; i < k->r - s; ++i) expo *= k->p;
      zp = base.pow(expo);
    }
  }
  return zu * zp;
}

// ---------------------------------------------------------------------------
// text form: "val:<rational>;digits:<denom_exp>,<mant_prec>,<flat digits>"
// ---------------------------------------------------------------------------

std::string PadicElement::str() const {
  std::ostringstream os;
  os << "val:" << val().str() << ";digits:" << denom_exp_ << "," << mant_prec_;
  for (const auto& wc : coeffs_)
    for (const auto& dvec : wc)
      for (uint32_t dg : dvec) os << "," << dg;
  return os.str();
}

PadicElement PadicElement::parse(const FieldPtr& k, const std::string& s) {
  if (s.rfind("val:", 0) != 0) return from_rational(k, Rational::parse(s));
  auto semi = s.find(";digits:");
  if (semi == std::string::npos) fail(errc::parse_error, "missing digits section");
  std::string rest = s.substr(semi + 8);
  std::vector<long long> nums;
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      nums.push_back(std::stoll(tok));
    } catch (...) {
      fail(errc::parse_error, "bad digit '" + tok + "'");
    }
  }
  if (nums.size() < 2) fail(errc::parse_error, "truncated digit list");
  uint32_t d = (uint32_t)nums[0], mp = (uint32_t)nums[1];
  size_t need = (size_t)k->e_ram * k->f * mp;
  if (mp == 0 || mp > k->work_digits || nums.size() != 2 + need)
    fail(errc::parse_error, "digit list does not match field layout");
  Tower t{k.get()};
  auto m = t.mt_zero(mp);
  size_t idx = 2;
  for (uint32_t i = 0; i < k->e_ram; ++i)
    for (uint32_t j = 0; j < k->f; ++j)
      for (uint32_t g = 0; g < mp; ++g) {
        long long dg = nums[idx++];
        if (dg < 0 || dg >= (long long)k->p) fail(errc::parse_error, "digit out of range");
        m[i][j][g] = (uint32_t)dg;
      }
  return PadicOps::make(k, d, std::move(m));
}

}  // namespace mumford
