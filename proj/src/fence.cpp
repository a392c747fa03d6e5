#include "dp3/fence.hpp"

#include <bit>
#include <chrono>
#include <mutex>
#include <stdexcept>

#include "json.hpp"

namespace dp3 {

namespace {

int ctz(long v) { return std::countr_zero(static_cast<unsigned long>(v)); }

double wall_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int seq_a(long n) {
  if (n < 1) throw std::invalid_argument("seq_a: n must be >= 1");
  return ctz(4 * n);
}

int seq_a_tilde(long n) {
  if (n < 1) throw std::invalid_argument("seq_a_tilde: n must be >= 1");
  return ctz(2 * n);
}

long seq_b_tilde(long k) {
  if (k < 0) throw std::invalid_argument("seq_b_tilde: k must be >= 0");
  return k + val2_factorial(k);
}

long seq_b(long k) {
  if (k < 0) throw std::invalid_argument("seq_b: k must be >= 0");
  long s = 0;
  for (long l = 1; l <= k; ++l) s += seq_a(l);
  return s;
}

std::vector<int> build_seq_a_inductive(std::size_t count) {
  std::vector<int> a{2};
  while (a.size() < count) {
    const std::size_t k = a.size();
    a.reserve(2 * k);
    for (std::size_t i = 0; i + 1 < k; ++i) a.push_back(a[i]);
    a.push_back(a[k - 1] + 1);
  }
  a.resize(count);
  return a;
}

long val2_factorial(long k) {
  long s = 0;
  for (long q = k / 2; q > 0; q /= 2) s += q;
  return s;
}

int popcount_binary(long k) { return std::popcount(static_cast<unsigned long>(k)); }

int tower_l(long k) {
  if (k < 1) throw std::invalid_argument("tower_l: k must be >= 1");
  return k % 2 == 1 ? 5 : tower_r(k / 2);
}

int tower_r(long k) {
  if (k < 1) throw std::invalid_argument("tower_r: k must be >= 1");
  return 2 * seq_a(3 * k - 1) + 3;
}

int tower_m(long k) {
  if (k < 1) throw std::invalid_argument("tower_m: k must be >= 1");
  return k % 2 == 1 ? 0 : seq_a_tilde(k / 2);
}

FencePrediction predict_odd(long n) {
  if (n % 2 == 0) throw std::invalid_argument("predict_odd: n must be odd");
  if (n < 1) throw std::invalid_argument("predict_odd: n must be >= 1");
  const long k = n / 8;
  const long p = n % 8;
  static constexpr int q[8] = {0, 0, 0, 2, 0, 1, 0, 2};
  FencePrediction f;
  f.m = n;
  f.k = k;
  f.z = popcount_binary(k) + q[p];
  f.rule = "odd s2(k)+q(" + std::to_string(p) + ")";
  return f;
}

FencePrediction predict_even(long n) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("predict_even: n must be even and >= 2");
  FencePrediction f;
  f.m = n;
  if (n == 2 || n == 4 || n == 6) {
    f.z = n == 6 ? 8 : 2;
    f.rule = "even offset";
    return f;
  }
  const long r24 = n % 24;
  const long k24 = n / 24;
  switch (r24) {
    case 8:  f.k = k24; f.z = 4 + 8 * k24;  f.rule = "even regular 8+24k";  return f;
    case 10: f.k = k24; f.z = 5 + 8 * k24;  f.rule = "even regular 10+24k"; return f;
    case 12: f.k = k24; f.z = 7 + 8 * k24;  f.rule = "even regular 12+24k"; return f;
    case 16: f.k = k24; f.z = 6 + 8 * k24;  f.rule = "even regular 16+24k"; return f;
    case 18: f.k = k24; f.z = 9 + 8 * k24;  f.rule = "even regular 18+24k"; return f;
    case 20: f.k = k24; f.z = 8 + 8 * k24;  f.rule = "even regular 20+24k"; return f;
    case 0:  f.k = k24 - 1; f.z = 10 + 8 * f.k; f.rule = "even regular 24+24k"; return f;
    case 2:  f.k = k24 - 1; f.z = 12 + 8 * f.k; f.rule = "even regular 26+24k"; return f;
    case 4:  f.k = k24 - 1; f.z = 10 + 8 * f.k; f.rule = "even regular 28+24k"; return f;
    default: break;
  }
  const long r48 = n % 48;
  const long k48 = n / 48;
  switch (r48) {
    case 14:
      f.k = k48; f.tower = tower_l(k48 + 1);
      f.z = 7 + f.tower + 16 * k48;
      f.rule = "even singular 14+48k (l tower)";
      return f;
    case 38:
      f.k = k48; f.z = 18 + 16 * k48; f.rule = "even singular 38+48k";
      return f;
    case 30:
      f.k = k48; f.tower = tower_r(k48 + 1);
      f.z = 10 + f.tower + 16 * k48;
      f.rule = "even singular 30+48k (r tower)";
      return f;
    case 6:
      f.k = k48 - 1; f.z = 23 + 16 * f.k; f.rule = "even singular 54+48k";
      return f;
    case 22:
      f.k = k48; f.z = 10 + 16 * k48; f.rule = "even singular 22+48k";
      return f;
    case 46:
      f.k = k48; f.tower = tower_m(k48 + 1);
      f.z = 19 + f.tower + 16 * k48;
      f.rule = "even singular 46+48k (m tower)";
      return f;
    default:
      throw std::logic_error("predict_even: residue families failed to tile n=" + std::to_string(n));
  }
}

FencePrediction predict(long m) {
  if (m < 2) throw std::invalid_argument("predict: m must be >= 2");
  return m % 2 == 0 ? predict_even(m) : predict_odd(m);
}

std::vector<long> odd_fence_walk(long n_max) {
  // Shape height offsets after the anchor point: 8 points per shape, the
  // anchor is the previous end (or (1,0) initially), then a drop by a_n.
  static constexpr int kOffsets[7] = {2, 1, 2, 1, 3, 2, 3};
  std::vector<long> z;
  z.reserve(static_cast<std::size_t>(n_max / 2 + 16));
  z.push_back(0);  // z_1
  long x = 1, h = 0, shape = 0;
  while (x < n_max) {
    ++shape;
    for (int o : kOffsets) {
      z.push_back(h + o);
      x += 2;
    }
    h = z.back() - seq_a(shape);
    z.push_back(h);
    x += 2;
  }
  return z;
}

std::vector<long> even_fence_walk(long n_max) {
  std::vector<long> z{2, 2, 8, 4};  // z_2, z_4, z_6, z_8
  long x = 8, h = 4;
  long k1 = 0, k2 = 0;
  bool towered = true;  // alternate the two 13-point shapes, towered first
  while (x < n_max) {
    std::vector<long> offs;
    if (towered) {
      ++k1;
      const long l = tower_l(k1), r = tower_r(k1);
      offs = {1, 3, 3 + l, 2, 5, 4, 6, 6, 8, 6, 6 + r, 8};
    } else {
      ++k2;
      const long mid = tower_m(k2);
      offs = {1, 3, 6, 2, 5, 4, 7 + mid, 6, 8, 6, 11, 8};
    }
    for (long o : offs) {
      z.push_back(h + o);
      x += 2;
    }
    h = z.back();
    towered = !towered;
  }
  return z;
}

namespace {

long area_closed(int n) {
  if (n == 1) return 5;
  if (n == 2) return 6;
  return (2L * n + 3) << (n - 2);
}

void validate_area_identities() {
  // S_{n+1} = 2^n + 2 S_n (n >= 3) and S_{n+1} = 2^{n+1} - 1 + sum_{k<=n} S_k
  // (n >= 2, the irregular S_1 included in the sum).
  long sum = area_closed(1) + area_closed(2);
  for (int n = 2; n <= 20; ++n) {
    const long next = area_closed(n + 1);
    if (next != (2L << n) - 1 + sum)
      throw std::logic_error("fence_area: partial-sum identity failed at n=" + std::to_string(n));
    if (n >= 3 && next != (1L << n) + 2 * area_closed(n))
      throw std::logic_error("fence_area: recurrence identity failed at n=" + std::to_string(n));
    sum += next;
  }
}

}  // namespace

std::pair<long, long> fence_area(int n) {
  if (n <= 0) throw std::invalid_argument("fence_area: n must be >= 1");
  if (n > 60) throw std::invalid_argument("fence_area: n too large for 64-bit areas");
  static std::once_flag once;
  std::call_once(once, validate_area_identities);
  const long s = area_closed(n);
  return {s, s - (1L << n)};
}

ContentResult polynomial_content(const CoeffCache& cache, int m) {
  if (m < 2) throw std::invalid_argument("polynomial_content: z_1 = 0 by convention, need m >= 2");
  const CoeffTable t = coeff_table(cache, m);
  ContentResult res;
  bool first = true;
  mpz_class g(0);
  for (const auto& e : t.entries) {
    if (e.p.is_zero()) continue;
    const int v = val2(e.p);
    if (first || v < res.z) res.z = v;
    first = false;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.p.num().get_mpz_t());
  }
  if (first) throw std::runtime_error("polynomial_content: c_" + std::to_string(m) + " vanished");
  // The conjecture shape: with every coefficient reduced, gcd of numerators
  // must be exactly 2^z with z >= 1 (odd primes in that gcd would give the
  // content a positive valuation elsewhere).
  mpz_class pow2(0);
  if (res.z >= 1) {
    pow2 = 1;
    mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<unsigned long>(res.z));
  }
  res.power_of_two = res.z >= 1 && g == pow2;
  return res;
}

int content_val2(const CoeffCache& cache, int m) { return polynomial_content(cache, m).z; }

FenceReport verify_fence_range(const CoeffCache& cache, long from, long to) {
  if (from < 2) throw std::invalid_argument("verify_fence_range: range starts below 2");
  if (to > cache.max_m()) throw std::invalid_argument("verify_fence_range: cache does not cover range");
  const double t0 = wall_seconds();
  FenceReport rep;
  rep.from = from;
  rep.to = to;
  rep.entries.resize(static_cast<std::size_t>(to - from + 1));
#pragma omp parallel for schedule(dynamic, 4)
  for (long m = from; m <= to; ++m) {
    const ContentResult c = polynomial_content(cache, static_cast<int>(m));
    const FencePrediction p = predict(m);
    FenceEntry& e = rep.entries[static_cast<std::size_t>(m - from)];
    e.m = m;
    e.computed = c.z;
    e.predicted = p.z;
    e.rule = p.rule;
    e.match = c.power_of_two && c.z == p.z;
  }
  for (const auto& e : rep.entries)
    if (!e.match) ++rep.mismatches;
  rep.elapsed_seconds = wall_seconds() - t0;
  return rep;
}

std::string fence_report_json(const FenceReport& report) {
  nlohmann::ordered_json j;
  j["range"] = {{"from", report.from}, {"to", report.to}};
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    j["entries"].push_back({{"m", e.m},
                            {"computed", e.computed},
                            {"predicted", e.predicted},
                            {"rule", e.rule},
                            {"match", e.match}});
  }
  j["mismatches"] = report.mismatches;
  j["elapsed_seconds"] = report.elapsed_seconds;
  return j.dump(2);
}

}  // namespace dp3
