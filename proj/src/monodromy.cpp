#include "dp3/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace dp3 {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx phase_quarter(int kappa) { return std::exp(kI * (kPi / 4.0) * static_cast<double>(kappa)); }

}  // namespace

cplx MonodromyPoint::X() const {
  if (!c1t) throw std::logic_error("MonodromyPoint::X: point does not carry the family parameter");
  return std::sqrt(kPi) * (*c1t) / (std::pow(2.0, 1.5) * std::sqrt(eps_b));
}

MonodromyPoint monodromy_point(cplx c1t, double eps_b, int kappa) {
  if (eps_b <= 0.0) throw std::invalid_argument("monodromy_point: eps_b must be positive");
  if (kappa != 1 && kappa != -1) throw std::invalid_argument("monodromy_point: kappa must be +-1");
  MonodromyPoint pt;
  pt.kappa = kappa;
  pt.eps_b = eps_b;
  pt.c1t = c1t;
  const cplx w = pt.X() * phase_quarter(kappa);
  const cplx gt3 = 0.5 * (1.0 + w);
  const cplx gt4 = -0.5 * (1.0 - w);
  if (kappa == +1) {
    // gauge g12 = 1; g22 = -g12, s00 = s1inf = 0, s0inf g12^2 = X e^{i pi/4}
    pt.g12 = cplx(1.0, 0.0);
    pt.g22 = cplx(-1.0, 0.0);
    pt.g11 = -gt3;
    pt.g21 = gt4;
    pt.s0inf = w;
  } else {
    // gauge g21 = 1; g11 = -g21, s00 = s0inf = 0, s1inf g21^2 = X e^{-i pi/4}
    pt.g21 = cplx(1.0, 0.0);
    pt.g11 = cplx(-1.0, 0.0);
    pt.g12 = gt4;
    pt.g22 = -gt3;
    pt.s1inf = w;
  }
  return pt;
}

std::array<double, 7> manifold_residuals(const MonodromyPoint& pt) {
  const double k = pt.kappa;
  const cplx e_minus_pia = -k * kI;  // e^{-pi a}, a = kappa i/2
  const cplx e_plus_pia = k * kI;
  const cplx e_minus_2pia(-1.0, 0.0);
  const auto& p = pt;
  std::array<cplx, 7> r{};
  r[0] = p.s0inf * p.s1inf - (-1.0 - e_minus_2pia - kI * p.s00 * e_minus_pia);
  r[1] = p.g21 * p.g22 - p.g11 * p.g12 + p.s00 * p.g11 * p.g22 - kI * e_minus_pia;
  r[2] = p.g11 * p.g11 - p.g21 * p.g21 - p.s00 * p.g11 * p.g21 - kI * p.s0inf * e_minus_pia;
  r[3] = p.g22 * p.g22 - p.g12 * p.g12 + p.s00 * p.g12 * p.g22 - kI * p.s1inf * e_plus_pia;
  r[4] = p.g11 * p.g22 - p.g12 * p.g21 - 1.0;
  const cplx g1 = p.gt1(), g3 = p.gt3(), st = p.stilde();
  r[5] = g3 * g3 + g1 * g1 + (1.0 - st) * g1 * g3 - (g3 + g1 * e_minus_pia);
  r[6] = p.ft1() * p.ft2() - (g3 - 1.0) * (g3 - 1.0);
  std::array<double, 7> out{};
  for (std::size_t i = 0; i < 7; ++i) out[i] = std::abs(r[i]);
  return out;
}

MonodromyPoint backlund_map(const MonodromyPoint& pt) {
  if (pt.kappa != +1)
    throw std::invalid_argument("backlund_map: stated for a = i/2 input only");
  MonodromyPoint out;
  out.kappa = -1;
  out.eps_b = pt.eps_b;
  out.c1t = std::nullopt;
  out.s00 = -pt.s00;
  out.s0inf = pt.s0inf;
  out.s1inf = pt.s1inf;
  out.g11 = kI * pt.g11;
  out.g12 = kI * pt.g12;
  out.g21 = -kI * pt.g21;
  out.g22 = -kI * pt.g22;
  return out;
}

cplx nu_plus_one_raw(const MonodromyPoint& pt) {
  const cplx g = pt.gt3();
  if (g == cplx(0.0, 0.0))
    throw std::domain_error("nu_plus_one: g11 g22 = 0 (truncated-solution boundary)");
  return kI / (2.0 * kPi) * std::log(g);
}

cplx nu_plus_one(const MonodromyPoint& pt) {
  cplx v = nu_plus_one_raw(pt);
  double re = std::fmod(v.real(), 1.0);
  if (re < 0.0) re += 1.0;
  return {re, v.imag()};
}

namespace {

// t / sin(pi t) with the removable point t = 0 patched by its Taylor series.
cplx sin_ratio(cplx t) {
  if (std::abs(t) < 1e-4) {
    const cplx pt2 = (kPi * t) * (kPi * t);
    return (1.0 + pt2 / 6.0 + 7.0 * pt2 * pt2 / 360.0) / kPi;
  }
  return t / std::sin(kPi * t);
}

cplx sin_ratio_deriv(cplx t) {
  if (std::abs(t) < 1e-4) {
    const cplx pi2 = kPi * kPi;
    return (pi2 * t / 3.0 + 7.0 * pi2 * pi2 * t * t * t / 90.0) / kPi;
  }
  const cplx s = std::sin(kPi * t);
  return (s - kPi * t * std::cos(kPi * t)) / (s * s);
}

// sin(2 pi rho) / (2 rho), patched at rho = 0.
cplx sinc2(cplx rho) {
  if (std::abs(rho) < 1e-4) {
    const cplx u = 2.0 * kPi * rho;
    return kPi * (1.0 - u * u / 6.0 + u * u * u * u / 120.0);
  }
  return std::sin(2.0 * kPi * rho) / (2.0 * rho);
}

cplx sinc2_deriv(cplx rho) {
  if (std::abs(rho) < 1e-4) {
    const cplx w = 2.0 * kPi;
    return kPi * (-w * w * rho / 3.0 + w * w * w * w * rho * rho * rho / 30.0);
  }
  return (2.0 * kPi * rho * std::cos(2.0 * kPi * rho) - std::sin(2.0 * kPi * rho)) / (2.0 * rho * rho);
}

}  // namespace

cplx rho_equation(int which, cplx rho) {
  if (which == 1) {
    // sin(2 pi rho)/(2 rho) * (rho-1/4)/sin(pi(rho-1/4)) + 4 rho e^{-i pi (rho+1/4)}
    return sinc2(rho) * sin_ratio(rho - 0.25) + 4.0 * rho * std::exp(-kI * kPi * (rho + 0.25));
  }
  if (which == 2) {
    // sin(2 pi rho)/(2 rho) * (rho+1/4)/sin(pi(rho+1/4)) - 4 rho e^{+i pi (rho-1/4)}
    return sinc2(rho) * sin_ratio(rho + 0.25) - 4.0 * rho * std::exp(kI * kPi * (rho - 0.25));
  }
  throw std::invalid_argument("rho_equation: which must be 1 or 2");
}

cplx rho_equation_derivative(int which, cplx rho) {
  if (which == 1) {
    const cplx e = std::exp(-kI * kPi * (rho + 0.25));
    return sinc2_deriv(rho) * sin_ratio(rho - 0.25) + sinc2(rho) * sin_ratio_deriv(rho - 0.25) +
           4.0 * e + 4.0 * rho * (-kI * kPi) * e;
  }
  if (which == 2) {
    const cplx e = std::exp(kI * kPi * (rho - 0.25));
    return sinc2_deriv(rho) * sin_ratio(rho + 0.25) + sinc2(rho) * sin_ratio_deriv(rho + 0.25) -
           4.0 * e - 4.0 * rho * (kI * kPi) * e;
  }
  throw std::invalid_argument("rho_equation_derivative: which must be 1 or 2");
}

std::vector<RhoRoot> find_rho_roots(int which, const RootSearchBox& box, int grid_n) {
  if (grid_n < 20) throw std::invalid_argument("find_rho_roots: grid must be at least 20x20");
  std::vector<cplx> converged;
  const long total = static_cast<long>(grid_n) * grid_n;
#pragma omp parallel
  {
    std::vector<cplx> local;
#pragma omp for schedule(static) nowait
    for (long idx = 0; idx < total; ++idx) {
      const int i = static_cast<int>(idx % grid_n);
      const int j = static_cast<int>(idx / grid_n);
      cplx rho(box.re_min + (box.re_max - box.re_min) * (i + 0.5) / grid_n,
               box.im_min + (box.im_max - box.im_min) * (j + 0.5) / grid_n);
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const cplx f = rho_equation(which, rho);
        if (std::abs(f) < 1e-13 * (1.0 + 4.0 * std::abs(rho))) {
          ok = true;
          break;
        }
        const cplx df = rho_equation_derivative(which, rho);
        if (std::abs(df) < 1e-300) break;
        const cplx step = f / df;
        rho -= step;
        if (std::abs(rho) > 1e3) break;  // ran away
      }
      if (ok && rho.real() > box.re_min && rho.real() < box.re_max && rho.imag() > box.im_min &&
          rho.imag() < box.im_max)
        local.push_back(rho);
    }
#pragma omp critical
    converged.insert(converged.end(), local.begin(), local.end());
  }
  std::sort(converged.begin(), converged.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<RhoRoot> roots;
  for (const cplx& r : converged) {
    bool dup = false;
    for (const auto& kept : roots)
      if (std::abs(kept.value - r) < 1e-9) {
        dup = true;
        break;
      }
    if (!dup) roots.push_back({which, r, std::abs(rho_equation(which, r))});
  }
  return roots;
}

std::string monodromy_point_json(const MonodromyPoint& pt) {
  using json = nlohmann::ordered_json;
  auto c = [](cplx v) { return json::array({v.real(), v.imag()}); };
  json j;
  j["kappa"] = pt.kappa;
  j["eps_b"] = pt.eps_b;
  if (pt.c1t) j["c1t"] = c(*pt.c1t);
  j["stokes"] = {{"s00", c(pt.s00)}, {"s0inf", c(pt.s0inf)}, {"s1inf", c(pt.s1inf)}};
  j["G"] = {{"g11", c(pt.g11)}, {"g12", c(pt.g12)}, {"g21", c(pt.g21)}, {"g22", c(pt.g22)}};
  j["derived"] = {{"gt1", c(pt.gt1())}, {"gt2", c(pt.gt2())}, {"gt3", c(pt.gt3())},
                  {"gt4", c(pt.gt4())}, {"stilde", c(pt.stilde())}, {"ft1", c(pt.ft1())},
                  {"ft2", c(pt.ft2())}};
  if (pt.c1t) j["derived"]["X"] = c(pt.X());
  const auto res = manifold_residuals(pt);
  j["residuals"] = res;
  try {
    j["nu_plus_one"] = c(nu_plus_one(pt));
    j["nu_plus_one_raw"] = c(nu_plus_one_raw(pt));
  } catch (const std::domain_error&) {
    j["nu_plus_one"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace dp3
