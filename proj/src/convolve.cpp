#include "dp3/convolve.hpp"

#include <cstddef>

namespace dp3 {

void convolve_serial(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                     std::vector<mpz_class>& out) {
  if (a.empty() || b.empty()) {
    out.clear();
    return;
  }
  out.assign(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
}

void convolve_omp(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                  std::vector<mpz_class>& out) {
  if (a.empty() || b.empty()) {
    out.clear();
    return;
  }
  const long n = static_cast<long>(a.size());
  const long m = static_cast<long>(b.size());
  out.assign(static_cast<std::size_t>(n + m - 1), mpz_class(0));
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < n + m - 1; ++k) {
    mpz_class acc(0);
    const long lo = k - (m - 1) > 0 ? k - (m - 1) : 0;
    const long hi = k < n - 1 ? k : n - 1;
    for (long i = lo; i <= hi; ++i) {
      if (sgn(a[static_cast<std::size_t>(i)]) == 0) continue;
      const mpz_class& bj = b[static_cast<std::size_t>(k - i)];
      if (sgn(bj) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), a[static_cast<std::size_t>(i)].get_mpz_t(), bj.get_mpz_t());
    }
    out[static_cast<std::size_t>(k)] = std::move(acc);
  }
}

void convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
              std::vector<mpz_class>& out, bool allow_parallel) {
  if (allow_parallel && a.size() * b.size() >= 1024) {
    convolve_omp(a, b, out);
  } else {
    convolve_serial(a, b, out);
  }
}

}  // namespace dp3
