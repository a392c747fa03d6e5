#pragma once

#include <gmpxx.h>

#include <vector>

namespace dp3 {

/// out[k] = sum_{i+j=k} a[i]*b[j], k = 0 .. |a|+|b|-2.
/// Serial reference implementation; kept as the oracle for the parallel kernel.
void convolve_serial(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                     std::vector<mpz_class>& out);

/// Same contract, parallelized over the output index with OpenMP.
void convolve_omp(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                  std::vector<mpz_class>& out);

/// Dispatch: parallel kernel for workloads large enough to amortize the
/// fork/join, serial otherwise.
void convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
              std::vector<mpz_class>& out, bool allow_parallel = true);

}  // namespace dp3
