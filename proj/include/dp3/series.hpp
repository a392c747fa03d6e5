#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dp3/rational.hpp"

namespace dp3 {

template <class K>
struct SeriesTraits;

template <>
struct SeriesTraits<Rational> {
  static bool is_zero(const Rational& v, double) { return v.is_zero(); }
  static double mag(const Rational& v) { return std::abs(v.to_double()); }
};

template <>
struct SeriesTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& v, double tol) { return std::abs(v) <= tol; }
  static double mag(const std::complex<double>& v) { return std::abs(v); }
};

/// Truncated Laurent series: coefficients are stored densely for every
/// exponent in [val, order); the truncation order is explicit metadata and
/// every operation computes the exact window on which its result is known.
/// Coefficients at exponents below val are identically zero; exponents at or
/// above order are unknown.
template <class K>
class Series {
 public:
  Series() = default;

  static Series zero(int order) {
    Series s;
    s.val_ = order;
    s.order_ = order;
    return s;
  }

  static Series monomial(K v, int exponent, int order) {
    Series s = zero(order);
    if (exponent < order) {
      s.val_ = exponent;
      s.coeff_.assign(static_cast<std::size_t>(order - exponent), K(0));
      s.coeff_[0] = std::move(v);
    }
    return s;
  }

  static Series constant(K v, int order) { return monomial(std::move(v), 0, order); }

  /// coeffs[i] is the coefficient of exponent val+i; order = val + coeffs.size().
  static Series from_coeffs(std::vector<K> coeffs, int val) {
    Series s;
    s.val_ = val;
    s.order_ = val + static_cast<int>(coeffs.size());
    s.coeff_ = std::move(coeffs);
    return s;
  }

  int order() const { return order_; }
  int val() const { return val_; }

  /// Coefficient of z^e. Requires e < order (beyond the truncation the
  /// coefficient is unknown, and asking for it is a logic error).
  K coeff(int e) const {
    if (e >= order_) throw std::logic_error("Series::coeff: exponent beyond truncation order");
    if (e < val_) return K(0);
    return coeff_[static_cast<std::size_t>(e - val_)];
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& c : coeff_)
      if (!SeriesTraits<K>::is_zero(c, tol)) return false;
    return true;
  }

  double max_mag() const {
    double m = 0.0;
    for (const auto& c : coeff_) m = std::max(m, SeriesTraits<K>::mag(c));
    return m;
  }

  /// Lowest exponent with a (tol-)nonzero coefficient, or order if none.
  int lowest_nonzero(double tol = 0.0) const {
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      if (!SeriesTraits<K>::is_zero(coeff_[i], tol)) return val_ + static_cast<int>(i);
    return order_;
  }

  Series& truncate(int new_order) {
    if (new_order < order_) {
      order_ = new_order;
      if (val_ >= order_) {
        val_ = order_;
        coeff_.clear();
      } else {
        coeff_.resize(static_cast<std::size_t>(order_ - val_));
      }
    }
    return *this;
  }

  Series shifted(int k) const {
    Series s = *this;
    s.val_ += k;
    s.order_ += k;
    return s;
  }

  Series scaled(const K& f) const {
    Series s = *this;
    for (auto& c : s.coeff_) c = c * f;
    return s;
  }

  Series operator-() const { return scaled(K(-1)); }

  friend Series operator+(const Series& a, const Series& b) { return axpy(a, K(1), b); }
  friend Series operator-(const Series& a, const Series& b) { return axpy(a, K(-1), b); }

  static Series axpy(const Series& a, const K& w, const Series& b) {
    const int order = std::min(a.order_, b.order_);
    const int val = std::min(std::min(a.val_, b.val_), order);
    Series s = zero(order);
    s.val_ = val;
    s.coeff_.assign(static_cast<std::size_t>(order - val), K(0));
    for (int e = a.val_; e < std::min(a.order_, order); ++e)
      s.coeff_[static_cast<std::size_t>(e - val)] = a.coeff_[static_cast<std::size_t>(e - a.val_)];
    for (int e = b.val_; e < std::min(b.order_, order); ++e)
      s.coeff_[static_cast<std::size_t>(e - val)] =
          s.coeff_[static_cast<std::size_t>(e - val)] + w * b.coeff_[static_cast<std::size_t>(e - b.val_)];
    return s;
  }

  friend Series operator*(const Series& a, const Series& b) {
    if (a.coeff_.empty() || b.coeff_.empty()) {
      // A zero window still caps what is known of the product.
      return zero(std::min(a.order_ + b.val_, b.order_ + a.val_));
    }
    const int val = a.val_ + b.val_;
    const int order = std::min(a.order_ + b.val_, b.order_ + a.val_);
    Series s = zero(order);
    if (val >= order) return s;
    s.val_ = val;
    s.coeff_.assign(static_cast<std::size_t>(order - val), K(0));
    for (std::size_t i = 0; i < a.coeff_.size(); ++i) {
      if (SeriesTraits<K>::is_zero(a.coeff_[i], 0.0)) continue;
      const int ea = a.val_ + static_cast<int>(i);
      const std::size_t jmax = std::min(b.coeff_.size(), static_cast<std::size_t>(order - ea - b.val_));
      for (std::size_t j = 0; j < jmax; ++j)
        s.coeff_[static_cast<std::size_t>(ea + b.val_ + static_cast<int>(j) - val)] =
            s.coeff_[static_cast<std::size_t>(ea + b.val_ + static_cast<int>(j) - val)] + a.coeff_[i] * b.coeff_[j];
    }
    return s;
  }

  /// Exact long division after shifting out the divisor's valuation. The
  /// divisor must have a (tol-)nonzero leading coefficient; a divisor that is
  /// zero to its truncation order is an error.
  static Series div(const Series& a, const Series& b, double lead_tol = 0.0) {
    const double tol_abs = lead_tol > 0.0 ? lead_tol * std::max(1.0, b.max_mag()) : 0.0;
    const int bv = b.lowest_nonzero(tol_abs);
    if (bv >= b.order_) throw std::runtime_error("Series::div: division by zero series");
    const K lead = b.coeff(bv);
    const int rel = std::min(a.order_ - a.val_, b.order_ - bv);
    const int qval = a.val_ - bv;
    Series q = zero(qval + rel);
    if (rel <= 0) return q;
    q.val_ = qval;
    q.coeff_.assign(static_cast<std::size_t>(rel), K(0));
    std::vector<K> rem(a.coeff_.begin(), a.coeff_.end());
    rem.resize(static_cast<std::size_t>(rel), K(0));
    for (int n = 0; n < rel; ++n) {
      const K qc = rem[static_cast<std::size_t>(n)] / lead;
      q.coeff_[static_cast<std::size_t>(n)] = qc;
      if (SeriesTraits<K>::is_zero(qc, 0.0)) continue;
      for (int t = 1; n + t < rel; ++t) {
        const int be = bv + t;
        if (be >= b.order_) break;
        const K bc = b.coeff(be);
        if (SeriesTraits<K>::is_zero(bc, 0.0)) continue;
        rem[static_cast<std::size_t>(n + t)] = rem[static_cast<std::size_t>(n + t)] - qc * bc;
      }
    }
    return q;
  }

  Series derivative() const {
    Series s = zero(order_ - 1);
    if (coeff_.empty()) return s;
    s.val_ = val_ - 1;
    s.coeff_.assign(coeff_.size(), K(0));
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      const int e = val_ + static_cast<int>(i);
      s.coeff_[i] = coeff_[i] * K(e);
    }
    if (s.val_ + static_cast<int>(s.coeff_.size()) > s.order_) s.coeff_.pop_back();
    return s;
  }

  /// Drops (tol-)zero leading coefficients, keeping the window end fixed.
  Series& normalize(double tol = 0.0) {
    const double tol_abs = tol > 0.0 ? tol * std::max(1.0, max_mag()) : 0.0;
    std::size_t lead = 0;
    while (lead < coeff_.size() && SeriesTraits<K>::is_zero(coeff_[lead], tol_abs)) ++lead;
    if (lead > 0) {
      coeff_.erase(coeff_.begin(), coeff_.begin() + static_cast<long>(lead));
      val_ += static_cast<int>(lead);
      if (coeff_.empty()) val_ = order_;
    }
    return *this;
  }

 private:
  int val_ = 0;
  int order_ = 0;
  std::vector<K> coeff_;
};

using RationalSeries = Series<Rational>;
using ComplexSeries = Series<std::complex<double>>;

inline std::complex<double> series_eval(const ComplexSeries& s, std::complex<double> x) {
  std::complex<double> r(0.0, 0.0);
  for (int e = s.order() - 1; e >= s.val(); --e) r = r * x + s.coeff(e);
  for (int k = 0; k < s.val(); ++k) r *= x;
  for (int k = 0; k > s.val(); --k) r /= x;
  return r;
}

}  // namespace dp3
