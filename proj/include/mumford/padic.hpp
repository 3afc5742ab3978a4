#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mumford/errors.hpp"
#include "mumford/rational.hpp"

namespace mumford {

// Little-endian base-p digit vector; value = sum digits[i] * p^i.
using DigitVec = std::vector<uint32_t>;

// K = Q_p(zeta_m) realized as the compositum of the unramified extension of
// degree f = ord_u(p) (u the prime-to-p part of m) and the totally ramified
// extension Q_p(zeta_{p^r}) with uniformizer pi = zeta_{p^r} - 1.
// Valuations are normalized by v(p) = 1 and take values in (1/e_ram) Z.
struct FieldDescriptor {
  uint32_t p = 0;
  uint32_t m = 0;
  uint32_t r = 0;      // p-part exponent: m = p^r * u
  uint32_t u = 1;      // prime-to-p part of m
  uint32_t f = 1;      // inertia degree: multiplicative order of p mod u
  uint32_t e_ram = 1;  // ramification index phi(p^r)
  uint32_t precision = 64;  // requested absolute precision, in uniformizer powers
  uint32_t work_digits = 64;  // mantissa budget in base-p digits

  // Monic irreducible modulus of the residue field F_{p^f} over F_p,
  // coefficients res_modulus[0..f] in [0, p), res_modulus[f] = 1.
  std::vector<uint32_t> res_modulus;

  // Eisenstein polynomial of pi over the unramified subfield when e_ram >= 2:
  // E(y) = Phi_{p^r}(y + 1), monic of degree e_ram, integer coefficients
  // stored mod p^work_digits. Empty when e_ram == 1.
  std::vector<DigitVec> eis;

  // Teichmueller lift of a generator of F_{p^f}^x (order p^f - 1), as
  // coefficients over the unramified basis. Equals 1 when p^f = 2.
  std::vector<DigitVec> omega;
  uint32_t omega_order = 1;

  bool same_tower(const FieldDescriptor& o) const {
    return p == o.p && m == o.m && precision == o.precision;
  }
};

using FieldPtr = std::shared_ptr<const FieldDescriptor>;

FieldPtr make_field(uint32_t p, uint32_t m, uint32_t precision = 64);

enum class Cmp { less, equal, greater };

// Finite-precision element of K. Immutable after construction; all
// operations return fresh values, so sharing across threads is safe.
//
// Representation: x = p^{-denom_exp} * C(pi), where C is a polynomial of
// degree < e_ram over the unramified subfield, each coefficient a polynomial
// of degree < f over Z/p^{mant_prec}. The stored digits are exact modulo
// p^{mant_prec}, so every valuation below the precision cap is exact.
class PadicElement {
 public:
  PadicElement() = default;

  static PadicElement zero(const FieldPtr& k);
  static PadicElement one(const FieldPtr& k);
  static PadicElement from_integer(const FieldPtr& k, long long n);
  static PadicElement from_rational(const FieldPtr& k, const Rational& q);
  // Accepts the canonical "val:<v>;digits:<...>" form or a rational "a/b".
  static PadicElement parse(const FieldPtr& k, const std::string& s);

  bool valid() const { return field_ != nullptr; }
  const FieldPtr& field() const { return field_; }

  PadicElement operator+(const PadicElement& o) const;
  PadicElement operator-(const PadicElement& o) const;
  PadicElement operator*(const PadicElement& o) const;
  PadicElement operator/(const PadicElement& o) const;
  PadicElement operator-() const;
  PadicElement inv() const;
  PadicElement pow(long long n) const;

  // Exact rational valuation, or the zero-to-precision marker.
  Valuation val() const;
  // Absolute precision of this value, in v(p) = 1 units.
  Valuation known_precision() const;
  bool is_zero_to_precision() const;
  bool is_unit() const;  // certified v = 0

  // Compares |x| against |y| without floating point.
  static Cmp abs_cmp(const PadicElement& x, const PadicElement& y);

  bool eq_to_precision(const PadicElement& o) const {
    return (*this - o).is_zero_to_precision();
  }

  // Square root in K; ExtensionRequired when none exists in the tower.
  PadicElement sqrt() const;

  std::string str() const;

  // Exposed for serialization and hashing; layout documented in str().
  uint32_t denom_exp() const { return denom_exp_; }
  uint32_t mant_prec() const { return mant_prec_; }
  const std::vector<std::vector<DigitVec>>& coeffs() const { return coeffs_; }

 private:
  friend PadicElement root_of_unity(const FieldPtr&, uint32_t);
  friend struct PadicOps;

  FieldPtr field_;
  uint32_t denom_exp_ = 0;  // x = p^{-denom_exp} * mantissa
  uint32_t mant_prec_ = 0;  // digits valid in every coefficient
  // coeffs_[i][j] = digit vector of the X^j coordinate of the pi^i coefficient
  std::vector<std::vector<DigitVec>> coeffs_;
};

// zeta_k for k | m: the p-power part is carried exactly on the Eisenstein
// coordinate (zeta_{p^s} = (1 + pi)^{p^{r-s}}), the prime-to-p part is a
// power of the Hensel-lifted Teichmueller generator.
PadicElement root_of_unity(const FieldPtr& k, uint32_t order);

inline Valuation val(const PadicElement& x) { return x.val(); }

bool is_prime(uint32_t n);

}  // namespace mumford
