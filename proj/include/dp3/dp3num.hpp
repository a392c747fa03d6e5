#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dp3/coeff_engine.hpp"
#include "dp3/series.hpp"

namespace dp3 {

/// Parameters of the vanishing solution family of
///   u'' = (u')^2/u - u'/tau + (-8 eps u^2 + 2ab)/tau + b^2/u,
/// with a = kappa*i/2, eps = +-1, eps*b > 0, and the free series parameter
/// c1t sitting in the tau^2 term.
struct SolutionParams {
  int kappa = +1;
  int eps = +1;
  double b = 0.5;
  std::complex<double> c1t{0.0, 0.0};

  void validate() const;
  std::complex<double> a() const { return {0.0, kappa / 2.0}; }
  /// alpha = sqrt(-2 kappa eps b i), the variable-change scale between the
  /// normalized and original coefficients.
  std::complex<double> alpha() const;
  /// C = -8 kappa eps b i = 4 alpha^2, the cubic-sum weight of the
  /// original-variable recurrence.
  std::complex<double> cubic_weight() const;
};

/// Coefficients ct_0..ct_order of u/(prefactor*tau), computed two
/// independent ways: the original-variable recurrence, and alpha^m times the
/// exact normalized polynomials evaluated at c1t/alpha. Disagreement beyond
/// 1e-12 relative is a transcription bug and throws. An external coefficient
/// cache covering `order` may be supplied to avoid recomputation.
std::vector<std::complex<double>> tilde_coeffs(const SolutionParams& p, int order,
                                               const CoeffCache* cache = nullptr);

/// u(tau) as a truncated series: -(b/2a) tau (1 + sum ct_m tau^m) through
/// the tau^(order+1) term.
ComplexSeries series_u(const SolutionParams& p, int order, const CoeffCache* cache = nullptr);

/// tau*u*u'' - tau*(u')^2 + u*u' - u*(-8 eps u^2 + 2ab) - tau*b^2 as a
/// series: the equation multiplied through by tau*u, so a solution gives the
/// zero series to its truncation order.
ComplexSeries ode_residual_series(const ComplexSeries& u, int kappa, int eps, double b);

struct PoleMarker {
  double tau_lo;
  double tau_hi;
  std::string kind;  // "u_blowup" | "u_zero"
};

struct TrajectorySample {
  double tau;
  std::complex<double> u;
  std::complex<double> du;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<PoleMarker> poles;
  SolutionParams params;
  double tau0 = 0.0;
  double tau_end = 0.0;
  double tol = 0.0;
  int seed_order = 0;
};

/// Embedded Dormand-Prince 5(4) integration of the complex second-order
/// equation as a first-order system, seeded by the series at tau0. Samples
/// on the uniform n_samples grid over [tau0, tau_end]. On step-size collapse
/// with a pole signature the trajectory terminates at a marker; collapse
/// without a signature throws.
Trajectory integrate(const SolutionParams& p, double tau0, double tau_end, double tol = 1e-10,
                     int seed_order = 40, int n_samples = 501, const CoeffCache* cache = nullptr);

struct OdeState {
  std::complex<double> u;
  std::complex<double> du;
};

/// Same stepper from an explicit initial state; tau_to < tau_from integrates
/// backwards.
Trajectory integrate_raw(const SolutionParams& p, OdeState y0, double tau_from, double tau_to,
                         double tol = 1e-10, int n_samples = 2);

struct BacklundSeriesCheck {
  double printed_coeff_residual;  // vs the printed expansion through tau^2
  double ode_residual;            // transformed series in the a = -i/2 equation
};

/// Applies u -> (eps b tau / 8u^2)(i u' + b) at series level (kappa must be
/// +1) and checks the image against its printed expansion and against the
/// a = -i/2 equation.
BacklundSeriesCheck backlund_series_check(const SolutionParams& p, int order,
                                          const CoeffCache* cache = nullptr);

/// (tau, u) -> (t, xi) = (tau^2, 8 tau u / a_hat^3); requires eps = +1 and
/// a_hat != 0.
std::vector<std::pair<double, std::complex<double>>> garnier_transform(const Trajectory& traj,
                                                                       double a_hat);

/// Header tau,re_u,im_u,re_du,im_du; 17 significant digits; pole markers as
/// trailing `# pole near tau in [lo, hi] (kind)` comment lines.
void emit_csv(const Trajectory& traj, const std::string& path);

/// Batch manifest: parameters, tolerances, pole markers, sample count and an
/// FNV-1a checksum of the emitted CSV bytes.
std::string trajectory_manifest_json(const Trajectory& traj, const std::string& csv_path);

}  // namespace dp3
