#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "mumford/errors.hpp"

namespace mumford {

// Exact rational with reduced representation, denominator > 0.
// Small by design: valuations and tree distances at desk scale.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) fail(errc::invalid_argument, "rational division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }
  bool is_integer() const { return den_ == 1; }

  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  long long ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "a" or "a/b", optional leading '-'.
  static Rational parse(const std::string& s) {
    if (s.empty()) fail(errc::parse_error, "empty rational");
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      long long n = std::stoll(s.substr(0, slash));
      long long d = std::stoll(s.substr(slash + 1));
      if (d == 0) fail(errc::parse_error, "zero denominator in '" + s + "'");
      return Rational(n, d);
    } catch (const std::invalid_argument&) {
      fail(errc::parse_error, "bad rational '" + s + "'");
    } catch (const std::out_of_range&) {
      fail(errc::parse_error, "rational out of range '" + s + "'");
    }
  }

 private:
  void reduce() {
    if (den_ == 0) fail(errc::invalid_argument, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_;
  long long den_;
};

// Additive valuation normalized by v(p) = 1, with a distinguished top
// element for quantities that vanish to the working precision.
class Valuation {
 public:
  Valuation() : finite_(true), value_() {}
  Valuation(Rational v) : finite_(true), value_(v) {}
  Valuation(long long n) : finite_(true), value_(n) {}

  static Valuation zero_to_precision() {
    Valuation v;
    v.finite_ = false;
    return v;
  }

  bool is_zero_to_precision() const { return !finite_; }
  const Rational& value() const {
    if (!finite_) fail(errc::insufficient_precision, "valuation of zero-to-precision element");
    return value_;
  }

  // Top element compares greater than every finite valuation.
  bool operator<(const Valuation& o) const {
    if (!finite_) return false;
    if (!o.finite_) return true;
    return value_ < o.value_;
  }
  bool operator==(const Valuation& o) const {
    if (finite_ != o.finite_) return false;
    return !finite_ || value_ == o.value_;
  }
  bool operator!=(const Valuation& o) const { return !(*this == o); }
  bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
  bool operator>(const Valuation& o) const { return o < *this; }
  bool operator>=(const Valuation& o) const { return o <= *this; }

  std::string str() const { return finite_ ? value_.str() : "+inf"; }

 private:
  bool finite_;
  Rational value_;
};

}  // namespace mumford
