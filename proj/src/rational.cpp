#include "dp3/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace dp3 {

Rational::Rational(long n, long d) : q_(n, d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  q_.canonicalize();
}

Rational::Rational(mpz_class n, mpz_class d) {
  if (sgn(d) == 0) throw std::invalid_argument("Rational: zero denominator");
  q_ = mpq_class(std::move(n), std::move(d));
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
  return Rational::wrap(a.q_ / b.q_);
}

std::string Rational::str() const {
  return num().get_str() + "/" + den().get_str();
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    mpz_class n;
    if (n.set_str(s, 10) != 0) throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
    return Rational(std::move(n), mpz_class(1));
  }
  mpz_class n, d;
  if (n.set_str(s.substr(0, slash), 10) != 0 || d.set_str(s.substr(slash + 1), 10) != 0)
    throw std::invalid_argument("Rational::parse: bad rational '" + s + "'");
  return Rational(std::move(n), std::move(d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

int val2(const mpz_class& n) {
  if (sgn(n) == 0) throw std::domain_error("val2: valuation of zero undefined");
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

int val2(const Rational& q) {
  if (q.is_zero()) throw std::domain_error("val2: valuation of zero undefined");
  return val2(q.num()) - val2(q.den());
}

}  // namespace dp3
