#include "dp3/dp3num.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dp3 {

namespace {

using C = std::complex<double>;
const C kI(0.0, 1.0);

}  // namespace

void SolutionParams::validate() const {
  if (kappa != 1 && kappa != -1) throw std::invalid_argument("SolutionParams: kappa must be +-1");
  if (eps != 1 && eps != -1) throw std::invalid_argument("SolutionParams: eps must be +-1");
  if (!(eps * b > 0.0)) throw std::invalid_argument("SolutionParams: eps*b must be positive");
}

C SolutionParams::alpha() const { return std::sqrt(C(0.0, -2.0 * kappa * eps * b)); }

C SolutionParams::cubic_weight() const { return C(0.0, -8.0 * kappa * eps * b); }

std::vector<C> tilde_coeffs(const SolutionParams& p, int order, const CoeffCache* cache) {
  p.validate();
  if (order < 2) throw std::invalid_argument("tilde_coeffs: order must be >= 2");
  // Route one: the recurrence in the original variables.
  std::vector<C> direct = numeric_recurrence(p.c1t, order, p.cubic_weight());
  // Route two: scale the exact normalized polynomials, ct_m = alpha^m c_m(c1t/alpha).
  CoeffCache local;
  const CoeffCache* cc = cache;
  if (cc == nullptr || cc->max_m() < order) {
    extend_cache(local, order);
    cc = &local;
  }
  const C alpha = p.alpha();
  const C c1 = p.c1t / alpha;
  C apow(1.0, 0.0);
  for (int m = 0; m <= order; ++m) {
    const C scaled = apow * cc->zpoly(m).to_poly().eval(c1);
    const double tol = 1e-12 * std::max({1.0, std::abs(direct[static_cast<std::size_t>(m)]), std::abs(scaled)});
    if (std::abs(direct[static_cast<std::size_t>(m)] - scaled) > tol)
      throw std::runtime_error("tilde_coeffs: coefficient routes disagree at m=" + std::to_string(m));
    apow *= alpha;
  }
  return direct;
}

ComplexSeries series_u(const SolutionParams& p, int order, const CoeffCache* cache) {
  const std::vector<C> ct = tilde_coeffs(p, order, cache);
  const C pref = -p.b / (2.0 * p.a());
  std::vector<C> coeffs(ct.size());
  for (std::size_t m = 0; m < ct.size(); ++m) coeffs[m] = pref * ct[m];
  return ComplexSeries::from_coeffs(std::move(coeffs), 1);
}

ComplexSeries ode_residual_series(const ComplexSeries& u, int kappa, int eps, double b) {
  const C two_ab = C(0.0, kappa * b);  // 2ab with a = kappa i/2
  const ComplexSeries du = u.derivative();
  const ComplexSeries ddu = du.derivative();
  const ComplexSeries uu = u * u;
  return (u * ddu).shifted(1) - (du * du).shifted(1) + u * du -
         (uu * u).scaled(C(-8.0 * eps, 0.0)) - u.scaled(two_ab) -
         ComplexSeries::monomial(C(b * b, 0.0), 1, u.order() + 1);
}

namespace {

struct OdeSystem {
  double eps;
  double b;
  double kappa;

  std::array<C, 2> rhs(double tau, const std::array<C, 2>& y) const {
    const C u = y[0], v = y[1];
    const C two_ab(0.0, kappa * b);
    return {v, v * v / u - v / tau + (-8.0 * eps * u * u + two_ab) / tau + b * b / u};
  }
};

bool finite(const C& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Dormand-Prince 5(4) pair.
struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

struct StepResult {
  std::array<C, 2> y;
  double err;  // scaled error norm; accept when <= 1
  bool finite;
};

StepResult dopri5_step(const OdeSystem& sys, double tau, const std::array<C, 2>& y,
                       const std::array<C, 2>& k1, double h, double tol,
                       std::array<C, 2>& k_last) {
  using D = Dopri5;
  auto axpy = [&](std::initializer_list<std::pair<double, const std::array<C, 2>*>> terms) {
    std::array<C, 2> r = y;
    for (const auto& [w, k] : terms) {
      r[0] += h * w * (*k)[0];
      r[1] += h * w * (*k)[1];
    }
    return r;
  };
  const auto k2 = sys.rhs(tau + D::c2 * h, axpy({{D::a21, &k1}}));
  const auto k3 = sys.rhs(tau + D::c3 * h, axpy({{D::a31, &k1}, {D::a32, &k2}}));
  const auto k4 = sys.rhs(tau + D::c4 * h, axpy({{D::a41, &k1}, {D::a42, &k2}, {D::a43, &k3}}));
  const auto k5 =
      sys.rhs(tau + D::c5 * h, axpy({{D::a51, &k1}, {D::a52, &k2}, {D::a53, &k3}, {D::a54, &k4}}));
  const auto k6 = sys.rhs(
      tau + h, axpy({{D::a61, &k1}, {D::a62, &k2}, {D::a63, &k3}, {D::a64, &k4}, {D::a65, &k5}}));
  std::array<C, 2> ynew = axpy({{D::b1, &k1}, {D::b3, &k3}, {D::b4, &k4}, {D::b5, &k5}, {D::b6, &k6}});
  const auto k7 = sys.rhs(tau + h, ynew);

  std::array<C, 2> errv{};
  errv[0] = h * (D::e1 * k1[0] + D::e3 * k3[0] + D::e4 * k4[0] + D::e5 * k5[0] + D::e6 * k6[0] +
                 D::e7 * k7[0]);
  errv[1] = h * (D::e1 * k1[1] + D::e3 * k3[1] + D::e4 * k4[1] + D::e5 * k5[1] + D::e6 * k6[1] +
                 D::e7 * k7[1]);
  StepResult res;
  res.y = ynew;
  res.finite = finite(ynew[0]) && finite(ynew[1]) && finite(k7[0]) && finite(k7[1]);
  double err2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
    const double e = std::abs(errv[i]);
    err2 += (e / sc) * (e / sc);
  }
  res.err = std::sqrt(err2 / 2.0);
  if (res.finite) k_last = k7;  // FSAL
  return res;
}

Trajectory run_integration(const SolutionParams& p, std::array<C, 2> y, double tau_from,
                           double tau_to, double tol, int n_samples) {
  if (n_samples < 2) n_samples = 2;
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  const OdeSystem sys{static_cast<double>(p.eps), p.b, static_cast<double>(p.kappa)};
  Trajectory traj;
  traj.params = p;
  traj.tau0 = tau_from;
  traj.tau_end = tau_to;
  traj.tol = tol;

  const double dir = tau_to > tau_from ? 1.0 : -1.0;
  const double span = std::abs(tau_to - tau_from);
  double tau = tau_from;
  std::array<C, 2> k1 = sys.rhs(tau, y);
  traj.samples.push_back({tau, y[0], y[1]});
  int next_sample = 1;
  auto sample_tau = [&](int i) { return tau_from + (tau_to - tau_from) * i / (n_samples - 1); };

  double h = dir * std::min(1e-4, span / 100.0);
  const int max_steps = 40000000;
  for (int step = 0; step < max_steps; ++step) {
    if (dir * (tau - tau_to) >= 0.0) break;
    const double hmin = 1e-13 * std::max(1.0, std::abs(tau));
    // Land exactly on the next sample point and the endpoint.
    double target = sample_tau(next_sample);
    if (dir * (target - tau_to) > 0.0) target = tau_to;
    if (dir * (tau + h - target) > 0.0) h = target - tau;

    std::array<C, 2> k_last{};
    const StepResult r = dopri5_step(sys, tau, y, k1, h, tol, k_last);
    if (r.finite && r.err <= 1.0) {
      tau += h;
      y = r.y;
      k1 = k_last;
      while (next_sample < n_samples && dir * (tau - sample_tau(next_sample)) >= -1e-15 * std::max(1.0, std::abs(tau))) {
        traj.samples.push_back({sample_tau(next_sample), y[0], y[1]});
        ++next_sample;
      }
      const double grow = r.err > 0.0 ? 0.9 * std::pow(r.err, -0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      const double shrink = r.finite ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) : 0.25;
      h *= shrink;
      if (std::abs(h) < hmin) {
        const double au = std::abs(y[0]);
        const double width = std::max(10.0 * std::abs(h), 1e-12);
        double edge = tau + dir * width;
        if (dir * (edge - tau_to) > 0.0) edge = tau_to;
        const double lo = std::min(tau, edge), hi = std::max(tau, edge);
        if (au > 1e8 || !r.finite) {
          traj.poles.push_back({lo, hi, "u_blowup"});
        } else if (au < 1e-10) {
          traj.poles.push_back({lo, hi, "u_zero"});
        } else {
          throw std::runtime_error("integration failure: step size collapse at tau=" +
                                   std::to_string(tau) + " without pole signature");
        }
        return traj;
      }
    }
  }
  // Only the endpoint can remain unrecorded (floating-point fuzz); the state
  // there is the final state.
  while (next_sample < n_samples) {
    traj.samples.push_back({sample_tau(next_sample), y[0], y[1]});
    ++next_sample;
  }
  return traj;
}

}  // namespace

Trajectory integrate(const SolutionParams& p, double tau0, double tau_end, double tol,
                     int seed_order, int n_samples, const CoeffCache* cache) {
  p.validate();
  if (!(0.0 < tau0 && tau0 < tau_end))
    throw std::invalid_argument("integrate: need 0 < tau0 < tau_end");
  const ComplexSeries u = series_u(p, seed_order, cache);
  const ComplexSeries du = u.derivative();
  Trajectory traj = run_integration(p, {series_eval(u, tau0), series_eval(du, tau0)}, tau0,
                                    tau_end, tol, n_samples);
  traj.seed_order = seed_order;
  return traj;
}

Trajectory integrate_raw(const SolutionParams& p, OdeState y0, double tau_from, double tau_to,
                         double tol, int n_samples) {
  p.validate();
  if (tau_from <= 0.0 || tau_to <= 0.0)
    throw std::invalid_argument("integrate_raw: the equation is singular at tau = 0");
  return run_integration(p, {y0.u, y0.du}, tau_from, tau_to, tol, n_samples);
}

BacklundSeriesCheck backlund_series_check(const SolutionParams& p, int order,
                                          const CoeffCache* cache) {
  p.validate();
  if (p.kappa != +1)
    throw std::invalid_argument("backlund_series_check: transformation stated for a = i/2");
  if (order < 3) throw std::invalid_argument("backlund_series_check: order must be >= 3");
  const std::vector<C> ct = tilde_coeffs(p, order, cache);
  const ComplexSeries u = series_u(p, order, cache);
  const ComplexSeries du = u.derivative();
  const ComplexSeries num =
      (du.scaled(kI) + ComplexSeries::constant(C(p.b, 0.0), du.order())).shifted(1).scaled(
          C(p.eps * p.b / 8.0, 0.0));
  ComplexSeries uhat = ComplexSeries::div(num, u * u, 1e-12);
  uhat.normalize(1e-13);

  const C c1 = ct[1], c2 = ct[2], c3 = ct[3];
  const double e = p.eps;
  const std::array<C, 3> printed = {e * c1 / 4.0, e * (3.0 * c2 / 8.0 - c1 * c1 / 2.0),
                                    e * (c3 / 2.0 + 3.0 * c1 * c1 * c1 / 4.0 - 5.0 * c1 * c2 / 4.0)};
  BacklundSeriesCheck out{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    const double d = std::abs(uhat.coeff(k) - printed[static_cast<std::size_t>(k)]) /
                     std::max(1.0, std::abs(printed[static_cast<std::size_t>(k)]));
    out.printed_coeff_residual = std::max(out.printed_coeff_residual, d);
  }
  const ComplexSeries res = ode_residual_series(uhat, -1, p.eps, p.b);
  const double scale = std::pow(1.0 + uhat.max_mag(), 3);
  out.ode_residual = res.max_mag() / scale;
  return out;
}

std::vector<std::pair<double, C>> garnier_transform(const Trajectory& traj, double a_hat) {
  if (a_hat == 0.0) throw std::invalid_argument("garnier_transform: a_hat must be nonzero");
  if (traj.params.eps != +1)
    throw std::invalid_argument("garnier_transform: stated for eps = +1 trajectories");
  const double a3 = a_hat * a_hat * a_hat;
  std::vector<std::pair<double, C>> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) out.emplace_back(s.tau * s.tau, 8.0 * s.tau * s.u / a3);
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string csv_body(const Trajectory& traj) {
  std::ostringstream os;
  os << "tau,re_u,im_u,re_du,im_du\n";
  for (const auto& s : traj.samples)
    os << fmt17(s.tau) << "," << fmt17(s.u.real()) << "," << fmt17(s.u.imag()) << ","
       << fmt17(s.du.real()) << "," << fmt17(s.du.imag()) << "\n";
  for (const auto& pm : traj.poles)
    os << "# pole near tau in [" << fmt17(pm.tau_lo) << ", " << fmt17(pm.tau_hi) << "] (" << pm.kind
       << ")\n";
  return os.str();
}

}  // namespace

void emit_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream os(path, std::ios::trunc | std::ios::binary);
  if (!os) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  os << csv_body(traj);
  if (!os.flush()) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

std::string trajectory_manifest_json(const Trajectory& traj, const std::string& csv_path) {
  using json = nlohmann::ordered_json;
  json j;
  j["params"] = {{"kappa", traj.params.kappa},
                 {"eps", traj.params.eps},
                 {"b", traj.params.b},
                 {"c1t", {traj.params.c1t.real(), traj.params.c1t.imag()}}};
  j["tau0"] = traj.tau0;
  j["tau_end"] = traj.tau_end;
  j["tol"] = traj.tol;
  j["seed_order"] = traj.seed_order;
  j["samples"] = traj.samples.size();
  j["pole_markers"] = json::array();
  for (const auto& pm : traj.poles)
    j["pole_markers"].push_back({{"tau_lo", pm.tau_lo}, {"tau_hi", pm.tau_hi}, {"kind", pm.kind}});
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a(csv_body(traj))));
  j["csv"] = csv_path;
  j["csv_fnv1a"] = hex;
  return j.dump(2);
}

}  // namespace dp3
