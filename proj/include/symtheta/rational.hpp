#pragma once

// Exact rational scalar on top of GMP.  Every value is kept canonical:
// reduced to lowest terms, denominator > 0, zero stored as 0/1.  There is
// deliberately no conversion to or from floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symtheta {

using Integer = mpz_class;

class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose
  Rational(const Integer& n) : v_(n) {}
  Rational(long num, long den) { assign(Integer(num), Integer(den)); }
  Rational(const Integer& num, const Integer& den) { assign(num, den); }

  /// Parses "a" or "a/b"; rejects b == 0 and malformed input.
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(s));
      return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational::parse: malformed input \"" + s + "\"");
    }
  }

  const Integer num() const { return v_.get_num(); }
  const Integer den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Total bit length of numerator and denominator; the pivoting heuristic.
  size_t bit_length() const {
    return mpz_sizeinbase(v_.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
  }

  /// "a/b", or just "a" when the denominator is 1.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational inv() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1 / v_));
  }

private:
  explicit Rational(const mpq_class& q) : v_(q) { /* already canonical */ }

  void assign(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num) / mpq_class(den);  // mpq_class division canonicalizes
  }

  mpq_class v_;
};

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace symtheta
