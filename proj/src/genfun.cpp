#include "dp3/genfun.hpp"

#include <stdexcept>

namespace dp3 {

namespace {

Rational rat(long n, long d) { return Rational(n, d); }

Rational pow_2_9(int k) {
  mpz_class n, d;
  mpz_ui_pow_ui(n.get_mpz_t(), 2, static_cast<unsigned long>(k));
  mpz_ui_pow_ui(d.get_mpz_t(), 9, static_cast<unsigned long>(k));
  return Rational(n, d);
}

Rational binom(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b, mpz_class(1));
}

}  // namespace

RationalSeries GenFnExpr::series(int order) const {
  RationalSeries s = RationalSeries::zero(order);
  for (const auto& t : terms) {
    if (t.inv_pow == 0) {
      s = s + RationalSeries::monomial(t.c, t.z_pow, order);
      continue;
    }
    std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(0, order - t.z_pow)), Rational(0));
    for (int k = 0; t.z_pow + 3 * k < order; ++k)
      coeffs[static_cast<std::size_t>(3 * k)] = t.c * binom(k + t.inv_pow - 1, t.inv_pow - 1) * pow_2_9(k);
    s = s + RationalSeries::from_coeffs(std::move(coeffs), t.z_pow);
  }
  return s;
}

GenFnExpr gen_fn_closed(int n) {
  GenFnExpr e;
  switch (n) {
    case 0:
      e.terms = {{rat(1, 1), 1, 2}};
      break;
    case 1:
      // Printed over (2z^3-9)^3 = -729 (1-2z^3/9)^3 with numerator
      // (2z^3+45)(4z^6-252z^3-405) = 8z^9-324z^6-12150z^3-18225.
      e.basis_note = "converted from (2z^3-9)^3 = -729 (1-2z^3/9)^3";
      e.terms = {{rat(-8, 18225), 9, 3}, {rat(324, 18225), 6, 3}, {rat(12150, 18225), 3, 3}, {rat(1, 1), 0, 3}};
      break;
    case 2:
      // Third piece printed over (2z^3-9)^4 = 6561 (1-2z^3/9)^4; the factor
      // -162/(30625*6561) reduces to -2/2480625.
      e.basis_note = "converted from (2z^3-9)^4 = 6561 (1-2z^3/9)^4";
      e.terms = {{rat(-8, 16875), 5, 0},         {rat(1108, 91875), 2, 0},   {rat(-680, 2480625), 11, 4},
                 {rat(28224, 2480625), 8, 4},    {rat(873018, 2480625), 5, 4}, {rat(3277584, 2480625), 2, 4}};
      break;
    case 3:
      e.terms = {{rat(-32, 2953125), 7, 0},      {rat(-8752, 4134375), 4, 0}, {rat(68258, 2296875), 1, 0},
                 {rat(116878, 459375), 1, 2},    {rat(8086604, 2296875), 1, 3}, {rat(-9771516, 765625), 1, 4},
                 {rat(139968, 15625), 1, 5}};
      break;
    case 4:
      e.terms = {{rat(256, 13953515625L), 12, 0},
                 {rat(-78928, 45581484375L), 9, 0},
                 {rat(-17694848, 1838453203125L), 6, 0},
                 {rat(-330698309, 81709031250L), 3, 0},
                 {rat(61927956, 3242421875L), 0, 0},
                 {rat(48238574611L, 453939062500L), 0, 1},
                 {rat(-1400615705869L, 453939062500L), 0, 2},
                 {rat(1407265401L, 2316015625L), 0, 3},
                 {rat(59441369643L, 1875781250L), 0, 4},
                 {rat(-1024460784L, 19140625L), 0, 5},
                 {rat(1889568, 78125), 0, 6}};
      break;
    case 5:
      e.terms = {{rat(131072, 197791083984375L), 14, 0},
                 {rat(90116032, 564070869140625L), 11, 0},
                 {rat(-324630499328L, 23302394349609375L), 8, 0},
                 {rat(4366976622L, 9785166015625L), 5, 0},
                 {rat(-385406999424L, 68496162109375L), 2, 0},
                 {rat(4531503785253L, 479473134765625L), 2, 1},
                 {rat(59545228803909L, 479473134765625L), 2, 2},
                 {rat(-37276082380518L, 13699232421875L), 2, 3},
                 {rat(14383449268992L, 2837119140625L), 2, 4},
                 {rat(268395996744L, 23447265625L), 2, 5},
                 {rat(-13329012672L, 478515625L), 2, 6},
                 {rat(136048896, 9765625), 2, 7}};
      break;
    default:
      throw std::invalid_argument("gen_fn_closed: closed form not transcribed for n=" + std::to_string(n));
  }
  return e;
}

RationalSeries gen_fn_series(int n, int order) {
  if (order < 1) throw std::invalid_argument("gen_fn_series: order must be >= 1");
  return gen_fn_closed(n).series(order);
}

Rational leading_coeff_closed(int m) {
  if (m < 0) throw std::invalid_argument("leading_coeff_closed: negative m");
  if (m == 0) return Rational(1);
  const int k = m / 3;
  switch (m % 3) {
    case 1:
      return Rational(k + 1) * pow_2_9(k);
    case 0:
      return rat(6, 25) * Rational((3L * k + 2) * (3L * k + 2)) * pow_2_9(k);
    default:
      if (m == 2) return rat(4, 3);
      if (m == 5) return rat(206, 135);
      return rat(9, 30625) * Rational(196L * k + 281) * Rational((3L * k + 4) * (3L * k + 4)) * pow_2_9(k);
  }
}

Rational subleading_coeff_closed(int m) {
  const int k = m / 3;
  if (coeff_r(m) < 1)
    throw std::invalid_argument("subleading_coeff_closed: c_" + std::to_string(m) + " has no second column");
  switch (m % 3) {
    case 1:
      if (m == 4) return rat(16, 15);
      if (m == 7) return rat(1336, 945);
      return rat(2, 15625) *
             (Rational(2916L * k * k) + rat(328779, 49) * Rational(k) - rat(34129, 147)) *
             Rational((k + 1L) * (k + 1L)) * pow_2_9(k);
    case 0:
      if (m == 6) return rat(256, 315);
      if (m == 9) return rat(253774, 212625);
      if (m == 12) return Rational(4788251008L, 4862521125L);
      return Rational(1, 78125) *
             (rat(8748, 5) * Rational(1L * k * k * k) + rat(223074, 49) * Rational(1L * k * k) -
              rat(281982223, 48020) * Rational(k) - rat(15481989, 41503)) *
             Rational((3L * k + 2) * (3L * k + 2)) * pow_2_9(k);
    default:
      if (m == 8) return rat(4864, 8505);
      if (m == 11) return rat(3958936, 4209975);
      if (m == 14) return Rational(44744664088576L, 51771262417875L);
      return Rational(3, 9765625) *
             (rat(34992, 5) * Rational(1L * k * k * k * k) + rat(10865016, 245) * Rational(1L * k * k * k) +
              rat(86107493, 12005) * Rational(1L * k * k) - rat(86860273454L, 1452605L) * Rational(k) +
              rat(8029312488L, 7014007L)) *
             Rational((3L * k + 4) * (3L * k + 4)) * pow_2_9(k);
  }
}

namespace {

RationalSeries zshift(const RationalSeries& s) { return s.shifted(1); }

// Left side (z (An/A0)')' - 4 z An shared by every hierarchy line.
RationalSeries hierarchy_lhs(const RationalSeries& an, const RationalSeries& a0) {
  const RationalSeries ratio = RationalSeries::div(an, a0);
  return zshift(ratio.derivative()).derivative() - zshift(an).scaled(Rational(4));
}

RationalSeries hierarchy_residual_at(int n, int order) {
  const RationalSeries a0 = gen_fn_series(0, order);
  if (n == 0) {
    const RationalSeries lhs = zshift(RationalSeries::div(a0.derivative(), a0)).derivative() -
                               zshift(a0).scaled(Rational(4));
    return lhs;
  }
  const RationalSeries one = RationalSeries::constant(Rational(1), order);
  const RationalSeries a1 = gen_fn_series(1, order);
  if (n == 1) return hierarchy_lhs(a1, a0) - RationalSeries::div(one, zshift(a0));
  const RationalSeries a2 = gen_fn_series(2, order);
  const RationalSeries al1 = RationalSeries::div(a1, a0);
  const RationalSeries za02 = zshift(a0 * a0);
  if (n == 2) {
    const RationalSeries rhs =
        zshift((al1 * al1).derivative()).scaled(rat(1, 2)).derivative() - RationalSeries::div(a1 + one, za02);
    return hierarchy_lhs(a2, a0) - rhs;
  }
  const RationalSeries a3 = gen_fn_series(3, order);
  const RationalSeries al2 = RationalSeries::div(a2, a0);
  if (n == 3) {
    const RationalSeries t1 = zshift((al1 * al2).derivative()).derivative();
    const RationalSeries t2 = zshift((al1 * al1 * al1).derivative()).scaled(rat(1, 3)).derivative();
    const RationalSeries t3 = RationalSeries::div(
        -a2 + RationalSeries::div(a1 * a1 + a1.scaled(Rational(2)), a0), za02);
    return hierarchy_lhs(a3, a0) - (t1 - t2 + t3);
  }
  if (n == 4) {
    const RationalSeries a4 = gen_fn_series(4, order);
    const RationalSeries al3 = RationalSeries::div(a3, a0);
    const RationalSeries al1sq = al1 * al1;
    const RationalSeries u1 = zshift((al1 * al3).derivative()).derivative();
    const RationalSeries u2 = zshift((al2 * al2).derivative()).scaled(rat(1, 2)).derivative();
    const RationalSeries u3 = zshift((al1sq * al1sq).derivative()).scaled(rat(1, 4)).derivative();
    const RationalSeries u4 = zshift((al1sq * al2).derivative()).derivative();
    const RationalSeries inner =
        -a3 + RationalSeries::div((a2 * (a1 + one)).scaled(Rational(2)), a0) -
        RationalSeries::div(a1 * a1 * a1 + (a1 * a1).scaled(Rational(3)), a0 * a0);
    const RationalSeries u5 = RationalSeries::div(inner, za02);
    return hierarchy_lhs(a4, a0) - (u1 + u2 + u3 - u4 + u5);
  }
  throw std::invalid_argument("verify_hierarchy: n out of range");
}

}  // namespace

std::optional<RationalSeries> verify_hierarchy(int n, int order) {
  if (n < 0 || n > 5) throw std::invalid_argument("verify_hierarchy: n must be 0..5");
  if (order < 6) throw std::invalid_argument("verify_hierarchy: order must be >= 6");
  if (n == 5) return std::nullopt;
  // Derivatives and divisions trim the valid window; pad the inputs until
  // the residual is known at least up to the requested order.
  for (int pad = 8; pad <= 64; pad *= 2) {
    RationalSeries res = hierarchy_residual_at(n, order + pad);
    if (res.order() >= order) {
      res.truncate(order);
      return res;
    }
  }
  throw std::logic_error("verify_hierarchy: failed to reach requested order");
}

ColumnReport compare_column(int j, const CoeffCache& cache, int order) {
  if (j != 0 && j != 1) throw std::invalid_argument("compare_column: column must be 0 or 1");
  ColumnReport rep;
  rep.column = j;
  // Residue class r of m picks the generating function: A_{j*3} covers
  // m = 3k+1, A_{j*3+1} covers m = 3k, A_{j*3+2} covers m = 3k+2.
  const RationalSeries s1 = gen_fn_series(3 * j + 0, order);
  const RationalSeries s0 = gen_fn_series(3 * j + 1, order);
  const RationalSeries s2 = gen_fn_series(3 * j + 2, order);
  for (int m = 0; m <= cache.max_m() && m < order; ++m) {
    if (coeff_r(m) < j) continue;
    const Rational from_series = (m % 3 == 1 ? s1 : (m % 3 == 0 ? s0 : s2)).coeff(m);
    const CoeffTable t = coeff_table(cache, m);
    const Rational from_cache = t.entries[static_cast<std::size_t>(j)].p;
    ++rep.checked;
    if (from_cache != from_series) rep.mismatches.push_back({m, from_cache, from_series});
  }
  return rep;
}

}  // namespace dp3
