#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dp3/coeff_engine.hpp"
#include "dp3/series.hpp"

namespace dp3 {

/// One term c * z^j / (1 - 2z^3/9)^e of a closed-form generating function.
struct GenFnTerm {
  Rational c;
  int z_pow;
  int inv_pow;
};

/// Structured rational-function expression in the canonical
/// (1 - 2z^3/9)-power basis. Terms with inv_pow = 0 form the polynomial part.
struct GenFnExpr {
  std::vector<GenFnTerm> terms;
  std::string basis_note;  // records the basis conversion applied at transcription
  RationalSeries series(int order) const;
};

/// Closed forms of the six generating functions A_0..A_5. Throws for n > 5
/// (not transcribed).
GenFnExpr gen_fn_closed(int n);

/// Exact Taylor coefficients of A_n about z = 0, valid below `order`.
RationalSeries gen_fn_series(int n, int order);

/// Closed form of the leading coefficient p_{m,0} of c_m.
Rational leading_coeff_closed(int m);

/// Closed form of the second-column coefficient p_{m,1}; defined for m = 4
/// and every m >= 6 with a second column (m = 5 has none). Throws otherwise.
Rational subleading_coeff_closed(int m);

/// Series-level residual of the n-th hierarchy equation
///   (z (A_n/A_0)')' - 4 z A_n = f_n(A_1..A_{n-1}),
/// expected identically zero below `order`. n = 5 returns nullopt: the
/// forcing term f_5 has no transcribed closed form, so that line is checked
/// only through the coefficient columns.
std::optional<RationalSeries> verify_hierarchy(int n, int order);

struct ColumnMismatch {
  int m;
  Rational from_cache;
  Rational from_series;
};

struct ColumnReport {
  int column = 0;
  int checked = 0;
  std::vector<ColumnMismatch> mismatches;
};

/// Compares column j (j = 0 leading, j = 1 subleading) of the cached
/// polynomials against the matching generating-function expansion
/// (A_0,A_1,A_2 for j=0; A_3,A_4,A_5 for j=1), exact rational equality.
ColumnReport compare_column(int j, const CoeffCache& cache, int order);

}  // namespace dp3
