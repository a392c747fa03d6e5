#include "dp3/poly.hpp"

#include <stdexcept>

#include "dp3/convolve.hpp"

namespace dp3 {

RationalPoly RationalPoly::constant(Rational v) {
  RationalPoly p;
  if (!v.is_zero()) p.c_.push_back(std::move(v));
  return p;
}

RationalPoly RationalPoly::monomial(Rational v, int power) {
  if (power < 0) throw std::invalid_argument("RationalPoly: negative power");
  RationalPoly p;
  if (!v.is_zero()) {
    p.c_.assign(static_cast<std::size_t>(power) + 1, Rational(0));
    p.c_.back() = std::move(v);
  }
  return p;
}

Rational RationalPoly::coeff(int power) const {
  if (power < 0 || power > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(power)];
}

std::complex<double> RationalPoly::eval(std::complex<double> x) const {
  std::complex<double> r(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_double();
  return r;
}

Rational RationalPoly::eval(const Rational& x) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

void RationalPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return RationalPoly(std::move(c));
}

RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return RationalPoly();
  return zp_mul(ZPoly::from_poly(a), ZPoly::from_poly(b)).to_poly();
}

void ZPoly::canonicalize() {
  while (!num.empty() && sgn(num.back()) == 0) num.pop_back();
  if (num.empty()) {
    den = 1;
    return;
  }
  if (sgn(den) < 0) {
    den = -den;
    for (auto& n : num) n = -n;
  }
  mpz_class g = den;
  for (const auto& n : num) {
    if (sgn(n) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    if (g == 1) break;
  }
  if (g != 1) {
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    for (auto& n : num) {
      if (sgn(n) != 0) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
    }
  }
}

ZPoly ZPoly::from_poly(const RationalPoly& p) {
  ZPoly z;
  if (p.is_zero()) return z;
  for (const auto& c : p.coeffs()) mpz_lcm(z.den.get_mpz_t(), z.den.get_mpz_t(), c.den().get_mpz_t());
  z.num.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    mpz_class scale;
    mpz_divexact(scale.get_mpz_t(), z.den.get_mpz_t(), c.den().get_mpz_t());
    z.num.push_back(c.num() * scale);
  }
  return z;
}

RationalPoly ZPoly::to_poly() const {
  std::vector<Rational> c;
  c.reserve(num.size());
  for (const auto& n : num) c.emplace_back(n, den);
  return RationalPoly(std::move(c));
}

Rational ZPoly::coeff(int power) const {
  if (power < 0 || power > degree()) return Rational(0);
  return Rational(num[static_cast<std::size_t>(power)], den);
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, bool allow_parallel) {
  ZPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.den = a.den * b.den;
  convolve(a.num, b.num, r.num, allow_parallel);
  return r;
}

void zp_axpy(ZPoly& acc, const mpz_class& w, const ZPoly& t) {
  if (sgn(w) == 0 || t.is_zero()) return;
  mpz_class g, l;
  mpz_gcd(g.get_mpz_t(), acc.den.get_mpz_t(), t.den.get_mpz_t());
  mpz_divexact(l.get_mpz_t(), t.den.get_mpz_t(), g.get_mpz_t());
  l *= acc.den;  // lcm(acc.den, t.den)
  if (l != acc.den) {
    mpz_class scale;
    mpz_divexact(scale.get_mpz_t(), l.get_mpz_t(), acc.den.get_mpz_t());
    for (auto& n : acc.num) n *= scale;
    acc.den = l;
  }
  mpz_class tscale;
  mpz_divexact(tscale.get_mpz_t(), l.get_mpz_t(), t.den.get_mpz_t());
  tscale *= w;
  if (acc.num.size() < t.num.size()) acc.num.resize(t.num.size(), mpz_class(0));
  for (std::size_t i = 0; i < t.num.size(); ++i) {
    if (sgn(t.num[i]) != 0) mpz_addmul(acc.num[i].get_mpz_t(), tscale.get_mpz_t(), t.num[i].get_mpz_t());
  }
}

void zp_div_scalar(ZPoly& p, const mpz_class& k) {
  if (sgn(k) == 0) throw std::invalid_argument("zp_div_scalar: division by zero");
  if (p.is_zero()) return;
  p.den *= k;
  p.canonicalize();
}

}  // namespace dp3
