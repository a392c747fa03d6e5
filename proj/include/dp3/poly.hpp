#pragma once

#include <complex>
#include <vector>

#include "dp3/rational.hpp"

namespace dp3 {

/// Dense univariate polynomial over Q, coefficients in ascending powers,
/// canonical form without trailing zeros. degree() of the zero polynomial
/// is the distinguished sentinel kZeroDegree standing in for minus infinity.
class RationalPoly {
 public:
  static constexpr int kZeroDegree = -1;

  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RationalPoly constant(Rational v);
  static RationalPoly monomial(Rational v, int power);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int power) const;

  std::complex<double> eval(std::complex<double> x) const;
  Rational eval(const Rational& x) const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Exact product. Internally clears denominators and convolves the integer
/// coefficient vectors, which avoids per-term gcd reduction in hot loops.
RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b);

/// Integer-cleared representation of a rational polynomial:
/// value = (1/den) * sum num[i] x^i, den > 0. Canonical form has
/// gcd(content(num), den) = 1 and no trailing zero entries.
struct ZPoly {
  mpz_class den{1};
  std::vector<mpz_class> num;

  bool is_zero() const { return num.empty(); }
  int degree() const { return static_cast<int>(num.size()) - 1; }
  void canonicalize();

  static ZPoly from_poly(const RationalPoly& p);
  RationalPoly to_poly() const;
  Rational coeff(int power) const;
};

/// out = a*b (exact), integer convolution on cleared numerators.
ZPoly zp_mul(const ZPoly& a, const ZPoly& b, bool allow_parallel = true);

/// acc += w * t for an integer weight w. Rescales acc to lcm(acc.den, t.den).
void zp_axpy(ZPoly& acc, const mpz_class& w, const ZPoly& t);

/// p /= k for a nonzero integer k (exact rational division; folds into den).
void zp_div_scalar(ZPoly& p, const mpz_class& k);

}  // namespace dp3
