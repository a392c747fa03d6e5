#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace dp3 {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator, so that 2-adic valuations can be read off the
/// stored numerator and denominator directly.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  Rational(mpz_class n, mpz_class d);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// "num/den", always with the slash, e.g. "4/3", "-1/2", "7/1".
  std::string str() const;
  /// Accepts "num/den" or a bare integer.
  static Rational parse(const std::string& s);

  Rational operator-() const { return wrap(-q_); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.q_ + b.q_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.q_ - b.q_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.q_ * b.q_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  // mpq arithmetic keeps canonical operands canonical, so results are
  // wrapped without re-reducing.
  static Rational wrap(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    return r;
  }
  mpq_class q_;
};

/// 2-adic valuation of a nonzero integer.
int val2(const mpz_class& n);

/// 2-adic valuation of a nonzero rational: val2(num) - val2(den).
/// Throws std::domain_error for zero.
int val2(const Rational& q);

}  // namespace dp3
