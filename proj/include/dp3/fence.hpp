#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dp3/coeff_engine.hpp"

namespace dp3 {

/// OEIS A085058: 2-adic valuation of 4n.
int seq_a(long n);
/// OEIS A001511 (ruler sequence): 2-adic valuation of 2n.
int seq_a_tilde(long n);
/// OEIS A005187: partial sums of seq_a_tilde, equal to k + val2(k!).
long seq_b_tilde(long k);
/// OEIS A004134: partial sums of seq_a.
long seq_b(long k);

/// The doubling construction of seq_a: start from {2}; having a_1..a_k,
/// append a_1..a_{k-1}, a_k+1. Independent of the valuation formula, kept as
/// its cross-check.
std::vector<int> build_seq_a_inductive(std::size_t count);

long val2_factorial(long k);  // Legendre floor sum
int popcount_binary(long k);  // binary digit sum

/// Tower sequences of the even fence. l_k is 5 at odd k and r_{k/2} at even
/// k; r_k = 2 a_{3k-1} + 3; m_k interleaves 0 with seq_a_tilde.
int tower_l(long k);
int tower_r(long k);
int tower_m(long k);

struct FencePrediction {
  long m = 0;
  long z = 0;
  std::string rule;  // which formula fired
  long k = 0;        // family index used by the rule
  long tower = 0;    // l/r/m tower value, 0 when the rule has none
};

/// Closed-form prediction for odd n >= 3 (digit-sum formula).
FencePrediction predict_odd(long n);
/// Closed-form prediction for even n >= 2 (offsets, nine regular and three
/// singular families tiling the even integers >= 8).
FencePrediction predict_even(long n);
FencePrediction predict(long m);

/// Geometric reconstructions: repeated 8-point shapes with drop-downs for
/// odd indices, the glued 13-point tower shapes for even indices. Entry i
/// holds z_{2i+1} (odd walk) resp. z_{2i+2} (even walk), for all indices
/// <= n_max.
std::vector<long> odd_fence_walk(long n_max);
std::vector<long> even_fence_walk(long n_max);

/// (S_n, S_n - 2^n): area of the n-th odd-fence apportionment and the same
/// with the height-1 basis row removed. Closed form (2n+3) 2^(n-2) holds
/// from n = 3; S_1 = 5 and S_2 = 6 are irregular. Validates the recurrence
/// and partial-sum identities once, lazily.
std::pair<long, long> fence_area(int n);

struct ContentResult {
  int z = 0;               // min 2-adic valuation over the coefficients
  bool power_of_two = false;  // gcd of numerators is exactly 2^z with z >= 1
};

/// Content data of c_m, m >= 2, read from the reduced coefficient table.
ContentResult polynomial_content(const CoeffCache& cache, int m);
int content_val2(const CoeffCache& cache, int m);

struct FenceEntry {
  long m;
  long computed;
  long predicted;
  std::string rule;
  bool match;
};

struct FenceReport {
  long from = 0;
  long to = 0;
  std::vector<FenceEntry> entries;
  long mismatches = 0;
  double elapsed_seconds = 0.0;
};

/// Compares computed content against the closed-form prediction over
/// [from, to]. A mismatch is recorded, never thrown: the content law is
/// conjectural and a counterexample is a result.
FenceReport verify_fence_range(const CoeffCache& cache, long from, long to);

std::string fence_report_json(const FenceReport& report);

}  // namespace dp3
