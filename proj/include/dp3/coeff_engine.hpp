#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "dp3/poly.hpp"

namespace dp3 {

/// delta is 1 for m = 3k+1 and 0 for m = 3k, 3k+2; together with the degree
/// law deg c_m = floor(m/3) + delta it fixes the exponent layout
/// c_m = sum_n p_n * x^(floor(m/3)+delta-2n), n = 0..r_m.
int coeff_delta(int m);
int coeff_r(int m);

struct CoeffTableEntry {
  int n;
  Rational p;
};

/// Structured coefficient list of one cached polynomial: entries ordered by
/// n ascending, i.e. exponents strictly decreasing by 2.
struct CoeffTable {
  int m = 0;
  int delta = 0;
  int r = 0;
  std::vector<CoeffTableEntry> entries;
};

/// Append-only store of the Taylor-coefficient polynomials c_m(c_1) of the
/// vanishing solution, c_0 = 1 and c_1 = x. Also owns the incremental
/// self-convolution cache d_p = sum_i c_i c_{p-i} that makes one extension
/// step cost O(m) polynomial products instead of O(m^2).
class CoeffCache {
 public:
  CoeffCache();

  int max_m() const { return static_cast<int>(c_.size()) - 1; }
  const ZPoly& zpoly(int m) const;
  RationalPoly poly(int m) const { return zpoly(m).to_poly(); }

 private:
  friend struct CoeffEngineAccess;
  std::vector<ZPoly> c_;
  std::vector<ZPoly> d_;  // rebuilt lazily after a cache load
};

struct EngineOptions {
  int threads = 0;  // 0 = leave the OpenMP default
  std::function<void(int m, double seconds)> progress;
};

/// Extends the cache up to c_target via the quadratic/cubic recurrence.
/// No-op when the cache already covers the target. Exact arithmetic; the
/// result is independent of the thread count.
void extend_cache(CoeffCache& cache, int target_m, const EngineOptions& opts = {});

CoeffTable coeff_table(const CoeffCache& cache, int m);

/// True iff every monomial exponent in c_m has the parity of m.
bool check_parity(const CoeffCache& cache, int m);

/// True iff deg c_m = k for m in {3k, 3k+2} and k+1 for m = 3k+1.
bool check_degree(const CoeffCache& cache, int m);

/// (m^2-1) c_m minus the recurrence right-hand side, rebuilt from the cached
/// entries below m. Zero for a healthy cache. literal_first_sum selects the
/// direct quadratic sum; otherwise the sign-converted half-range form is
/// used (the two are identical polynomials).
RationalPoly recurrence_residual(const CoeffCache& cache, int m, bool literal_first_sum = false);

/// Throws std::runtime_error naming m if the recurrence residual at m is
/// nonzero.
void validate_entry(const CoeffCache& cache, int m);

/// Ratio bound R_m = (m+1)/(m-1) * alpha * (pi^2/6 - 1
///   + 4 (pi^2/3+2)(pi^2/3+1) alpha / (c_squared (m+1)^2)).
/// The inductive convergence step closes where this drops below 1.
double bound_convergence_ratio(int m, double alpha, double c_squared);

struct EstimateViolation {
  int m;
  double lhs;  // |c_m(c1)|
  double rhs;  // alpha C^m / (m+1)^2
};

/// Evaluates |c_m(c1)| against alpha C^m/(m+1)^2 for m = 0..M and reports
/// every violation. Requires C >= max(sqrt(12/alpha), 4|c1|/alpha).
std::vector<EstimateViolation> check_estimate(const CoeffCache& cache, int M,
                                              std::complex<double> c1, double alpha, double C);

/// Runs the recurrence with numeric coefficients: c[0]=1, c[1]=c1, and the
/// triple-product sum weighted by cubic_weight (4 in the normalized
/// variables; -8i*kappa*eps*b in the original ones).
std::vector<std::complex<double>> numeric_recurrence(std::complex<double> c1, int M,
                                                     std::complex<double> cubic_weight);

/// Line-oriented text format, one record `m delta r p_0 .. p_r` per row,
/// every p reduced "num/den"; header carries the format version and the
/// expansion convention. Round-trips bit-exactly.
void save_cache(const CoeffCache& cache, const std::string& path);
CoeffCache load_cache(const std::string& path);

}  // namespace dp3
