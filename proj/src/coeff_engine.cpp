#include "dp3/coeff_engine.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dp3 {

namespace {

constexpr const char* kCacheHeader =
    "# dp3 coefficient cache v1; convention y(x) = -(x/2)*(1 + sum_{m>=1} c_m x^m); "
    "fields: m delta r p_0..p_r (reduced num/den)";

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct ProductTask {
  long weight;
  const ZPoly* a;
  const ZPoly* b;
};

// Each thread multiplies and folds its share of tasks into a private
// accumulator; partial sums are merged afterwards. Exact rationals make the
// result independent of the partition.
ZPoly accumulate_products(const std::vector<ProductTask>& tasks) {
  const int nt = omp_get_max_threads();
  std::vector<ZPoly> partial(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
  {
    ZPoly& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
    for (long i = 0; i < static_cast<long>(tasks.size()); ++i) {
      const ProductTask& t = tasks[static_cast<std::size_t>(i)];
      ZPoly prod = zp_mul(*t.a, *t.b, /*allow_parallel=*/false);
      zp_axpy(acc, mpz_class(t.weight), prod);
    }
  }
  ZPoly sum;
  for (auto& p : partial) zp_axpy(sum, mpz_class(1), p);
  return sum;
}

}  // namespace

int coeff_delta(int m) { return m % 3 == 1 ? 1 : 0; }

int coeff_r(int m) { return (m / 3 + coeff_delta(m)) / 2; }

struct CoeffEngineAccess {
  static std::vector<ZPoly>& c(CoeffCache& cache) { return cache.c_; }
  static std::vector<ZPoly>& d(CoeffCache& cache) { return cache.d_; }
};

CoeffCache::CoeffCache() {
  ZPoly one;
  one.num = {mpz_class(1)};
  ZPoly x;
  x.num = {mpz_class(0), mpz_class(1)};
  c_ = {one, x};
}

const ZPoly& CoeffCache::zpoly(int m) const {
  if (m < 0 || m > max_m())
    throw std::invalid_argument("CoeffCache: c_" + std::to_string(m) + " not computed");
  return c_[static_cast<std::size_t>(m)];
}

namespace {

// d_t = sum_{i=0}^{t} c_i c_{t-i}, folded symmetrically.
ZPoly self_convolution(const std::vector<ZPoly>& c, int t) {
  std::vector<ProductTask> tasks;
  tasks.reserve(static_cast<std::size_t>(t / 2) + 1);
  for (int i = 0; 2 * i <= t; ++i) {
    const long w = (2 * i == t) ? 1 : 2;
    tasks.push_back({w, &c[static_cast<std::size_t>(i)], &c[static_cast<std::size_t>(t - i)]});
  }
  return accumulate_products(tasks);
}

}  // namespace

void extend_cache(CoeffCache& cache, int target_m, const EngineOptions& opts) {
  if (target_m < 2 && target_m > cache.max_m())
    throw std::invalid_argument("extend_cache: target must be >= 2");
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
  auto& c = CoeffEngineAccess::c(cache);
  auto& d = CoeffEngineAccess::d(cache);

  for (int m = cache.max_m() + 1; m <= target_m; ++m) {
    const double t0 = now_seconds();
    // The self-convolution cache trails two behind m; rebuild covers the
    // resume-from-file case where d starts empty.
    while (static_cast<int>(d.size()) <= m - 2) d.push_back(self_convolution(c, static_cast<int>(d.size())));

    std::vector<ProductTask> tasks;
    tasks.reserve(static_cast<std::size_t>(m) + static_cast<std::size_t>(m) / 2 + 2);
    // Sign-converted first sum: -(m-2p-2)^2 c_{p+1} c_{m-p-1}, p = 0..floor((m-2)/2).
    for (int p = 0; p <= (m - 2) / 2; ++p) {
      const long k = m - 2 * p - 2;
      if (k == 0) continue;
      tasks.push_back({-k * k, &c[static_cast<std::size_t>(p + 1)], &c[static_cast<std::size_t>(m - p - 1)]});
    }
    // Triple-product sum via the cached d_p: 4 sum_p c_{m-p-2} d_p.
    for (int p = 0; p <= m - 2; ++p)
      tasks.push_back({4, &c[static_cast<std::size_t>(m - p - 2)], &d[static_cast<std::size_t>(p)]});

    ZPoly cm = accumulate_products(tasks);
    zp_div_scalar(cm, mpz_class(static_cast<long>(m) * m - 1));
    cm.canonicalize();
    c.push_back(std::move(cm));

    if (!check_parity(cache, m) || !check_degree(cache, m))
      throw std::runtime_error("extend_cache: structural invariant failed at m=" + std::to_string(m));
    if (opts.progress) opts.progress(m, now_seconds() - t0);
  }
}

CoeffTable coeff_table(const CoeffCache& cache, int m) {
  const ZPoly& z = cache.zpoly(m);
  CoeffTable t;
  t.m = m;
  t.delta = coeff_delta(m);
  t.r = coeff_r(m);
  const int top = m / 3 + t.delta;
  for (int n = 0; n <= t.r; ++n) t.entries.push_back({n, z.coeff(top - 2 * n)});
  // Entries must reproduce the polynomial: every exponent off the
  // top-minus-2n ladder has to be zero.
  for (int e = 0; e <= z.degree(); ++e) {
    const bool on_ladder = e <= top && (top - e) % 2 == 0;
    if (!on_ladder && !z.coeff(e).is_zero())
      throw std::runtime_error("coeff_table: stray exponent " + std::to_string(e) + " in c_" +
                               std::to_string(m));
  }
  return t;
}

bool check_parity(const CoeffCache& cache, int m) {
  const ZPoly& z = cache.zpoly(m);
  for (int e = 0; e <= z.degree(); ++e)
    if ((e - m) % 2 != 0 && sgn(z.num[static_cast<std::size_t>(e)]) != 0) return false;
  return true;
}

bool check_degree(const CoeffCache& cache, int m) {
  return cache.zpoly(m).degree() == m / 3 + coeff_delta(m);
}

RationalPoly recurrence_residual(const CoeffCache& cache, int m, bool literal_first_sum) {
  if (m < 2 || m > cache.max_m())
    throw std::invalid_argument("recurrence_residual: m out of range");
  ZPoly rhs;
  if (literal_first_sum) {
    for (int p = 0; p <= m - 2; ++p) {
      const long w = static_cast<long>(p + 2) * (m - 2 * (p + 1));
      if (w == 0) continue;
      ZPoly prod = zp_mul(cache.zpoly(p + 1), cache.zpoly(m - p - 1));
      zp_axpy(rhs, mpz_class(w), prod);
    }
  } else {
    for (int p = 0; p <= (m - 2) / 2; ++p) {
      const long k = m - 2 * p - 2;
      if (k == 0) continue;
      ZPoly prod = zp_mul(cache.zpoly(p + 1), cache.zpoly(m - p - 1));
      zp_axpy(rhs, mpz_class(-k * k), prod);
    }
  }
  for (int p = 0; p <= m - 2; ++p) {
    ZPoly dp;
    for (int i = 0; i <= p; ++i) {
      ZPoly prod = zp_mul(cache.zpoly(i), cache.zpoly(p - i));
      zp_axpy(dp, mpz_class(1), prod);
    }
    ZPoly prod = zp_mul(cache.zpoly(m - p - 2), dp);
    zp_axpy(rhs, mpz_class(4), prod);
  }
  ZPoly lhs = cache.zpoly(m);
  ZPoly res;
  zp_axpy(res, mpz_class(static_cast<long>(m) * m - 1), lhs);
  zp_axpy(res, mpz_class(-1), rhs);
  res.canonicalize();
  return res.to_poly();
}

void validate_entry(const CoeffCache& cache, int m) {
  if (!recurrence_residual(cache, m).is_zero())
    throw std::runtime_error("coefficient cache corrupt: recurrence residual nonzero at m=" +
                             std::to_string(m));
}

double bound_convergence_ratio(int m, double alpha, double c_squared) {
  if (m < 2) throw std::invalid_argument("bound_convergence_ratio: m must be >= 2");
  if (alpha < 1.0 || c_squared <= 0.0)
    throw std::invalid_argument("bound_convergence_ratio: need alpha >= 1 and c_squared > 0");
  const double pi2_3 = std::numbers::pi * std::numbers::pi / 3.0;
  const double mp1 = m + 1.0;
  return (mp1 / (m - 1.0)) * alpha *
         (pi2_3 / 2.0 - 1.0 + 4.0 * (pi2_3 + 2.0) * (pi2_3 + 1.0) * alpha / (c_squared * mp1 * mp1));
}

std::vector<EstimateViolation> check_estimate(const CoeffCache& cache, int M,
                                              std::complex<double> c1, double alpha, double C) {
  if (M > cache.max_m()) throw std::invalid_argument("check_estimate: cache does not cover M");
  const double cmin = std::max(std::sqrt(12.0 / alpha), 4.0 * std::abs(c1) / alpha);
  if (C < cmin) throw std::invalid_argument("check_estimate: C below max(sqrt(12/alpha), 4|c1|/alpha)");
  std::vector<EstimateViolation> out;
  double cpow = 1.0;
  for (int m = 0; m <= M; ++m) {
    const double lhs = std::abs(cache.zpoly(m).to_poly().eval(c1));
    const double rhs = alpha * cpow / ((m + 1.0) * (m + 1.0));
    if (!(lhs < rhs)) out.push_back({m, lhs, rhs});
    cpow *= C;
  }
  return out;
}

std::vector<std::complex<double>> numeric_recurrence(std::complex<double> c1, int M,
                                                     std::complex<double> cubic_weight) {
  using C = std::complex<double>;
  std::vector<C> c(static_cast<std::size_t>(std::max(M, 1)) + 1, C(0.0, 0.0));
  std::vector<C> d;  // d_p = sum_i c_i c_{p-i}
  c[0] = C(1.0, 0.0);
  c[1] = c1;
  for (int m = 2; m <= M; ++m) {
    while (static_cast<int>(d.size()) <= m - 2) {
      const int t = static_cast<int>(d.size());
      C s(0.0, 0.0);
      for (int i = 0; i <= t; ++i) s += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(t - i)];
      d.push_back(s);
    }
    C s1(0.0, 0.0);
    for (int p = 0; p <= m - 2; ++p)
      s1 += static_cast<double>((p + 2) * (m - 2 * (p + 1))) * c[static_cast<std::size_t>(p + 1)] *
            c[static_cast<std::size_t>(m - p - 1)];
    C s2(0.0, 0.0);
    for (int p = 0; p <= m - 2; ++p) s2 += c[static_cast<std::size_t>(m - p - 2)] * d[static_cast<std::size_t>(p)];
    c[static_cast<std::size_t>(m)] = (s1 + cubic_weight * s2) / static_cast<double>(static_cast<long>(m) * m - 1);
  }
  c.resize(static_cast<std::size_t>(M) + 1);
  return c;
}

void save_cache(const CoeffCache& cache, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("save_cache: cannot open '" + path + "' for writing");
  os << kCacheHeader << "\n";
  for (int m = 0; m <= cache.max_m(); ++m) {
    const CoeffTable t = coeff_table(cache, m);
    os << m << " " << t.delta << " " << t.r;
    for (const auto& e : t.entries) os << " " << e.p.str();
    os << "\n";
  }
  if (!os.flush()) throw std::runtime_error("save_cache: write failed for '" + path + "'");
}

CoeffCache load_cache(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_cache: cannot open '" + path + "'");
  std::string header;
  std::getline(is, header);
  if (header.find("dp3 coefficient cache v1") == std::string::npos)
    throw std::runtime_error("load_cache: unrecognized cache format in '" + path + "'");
  CoeffCache cache;
  auto& c = CoeffEngineAccess::c(cache);
  c.clear();
  std::string line;
  int expect_m = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int m = 0, delta = 0, r = 0;
    if (!(ls >> m >> delta >> r))
      throw std::runtime_error("load_cache: malformed record in '" + path + "'");
    if (m != expect_m)
      throw std::runtime_error("load_cache: non-consecutive record m=" + std::to_string(m));
    if (delta != coeff_delta(m) || r != coeff_r(m))
      throw std::runtime_error("load_cache: bad delta/r at m=" + std::to_string(m));
    const int top = m / 3 + delta;
    std::vector<Rational> coeffs(static_cast<std::size_t>(top) + 1, Rational(0));
    for (int n = 0; n <= r; ++n) {
      std::string tok;
      if (!(ls >> tok)) throw std::runtime_error("load_cache: missing coefficient at m=" + std::to_string(m));
      coeffs[static_cast<std::size_t>(top - 2 * n)] = Rational::parse(tok);
    }
    std::string extra;
    if (ls >> extra) throw std::runtime_error("load_cache: trailing data at m=" + std::to_string(m));
    c.push_back(ZPoly::from_poly(RationalPoly(std::move(coeffs))));
    ++expect_m;
  }
  if (cache.max_m() < 1) throw std::runtime_error("load_cache: cache in '" + path + "' is empty");
  if (cache.poly(0) != RationalPoly::constant(Rational(1)) ||
      cache.poly(1) != RationalPoly::monomial(Rational(1), 1))
    throw std::runtime_error("load_cache: seed entries c_0, c_1 are wrong");
  // Spot-check the newest entry against the recurrence; a full audit is
  // available via validate_entry over any range.
  if (cache.max_m() >= 2) validate_entry(cache, cache.max_m());
  return cache;
}

}  // namespace dp3
