#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace dp3 {

using cplx = std::complex<double>;

/// A point on the monodromy manifold for formal monodromy a = kappa*i/2:
/// Stokes multipliers s00, s0inf, s1inf and connection-matrix entries g_ij
/// with det G = 1. For points constructed from the vanishing-solution
/// parameter, c1t records that parameter; images under the Backlund action
/// carry no c1t of their own.
struct MonodromyPoint {
  int kappa = +1;
  double eps_b = 0.5;
  std::optional<cplx> c1t;

  cplx s00{0.0, 0.0}, s0inf{0.0, 0.0}, s1inf{0.0, 0.0};
  cplx g11, g12, g21, g22;

  cplx gt1() const { return cplx(0, 1) * g12 * g11; }
  cplx gt2() const { return cplx(0, 1) * g21 * g22; }
  cplx gt3() const { return g11 * g22; }
  cplx gt4() const { return g12 * g21; }
  cplx stilde() const { return cplx(1, 0) + cplx(0, 1) * s00; }
  cplx ft1() const { return g12 * g12; }
  cplx ft2() const { return g21 * g21; }
  /// X = sqrt(pi) c1t / (2^{3/2} sqrt(eps_b)); only for family points.
  cplx X() const;
};

/// Monodromy data of the vanishing solution with parameter c1t, in the
/// gauge g12 = 1 (kappa = +1) resp. g21 = 1 (kappa = -1); only products of
/// entries are pinned, so any nonzero gauge represents the same point.
MonodromyPoint monodromy_point(cplx c1t, double eps_b, int kappa);

/// Absolute residuals of the five manifold equations followed by the two
/// contracted-manifold equations, with e^{pi a} = kappa*i.
std::array<double, 7> manifold_residuals(const MonodromyPoint& pt);

/// Action on the monodromy data of the map sending a = i/2 solutions to
/// a = -i/2 ones: s00 flips sign, G -> diag-ish twist by i. Input must have
/// kappa = +1.
MonodromyPoint backlund_map(const MonodromyPoint& pt);

/// (i/2pi) log(g11 g22), principal branch with the real part shifted into
/// [0,1). The asymptotic-regime selector. Throws when g11 g22 = 0.
cplx nu_plus_one(const MonodromyPoint& pt);
/// Same without the real-part shift.
cplx nu_plus_one_raw(const MonodromyPoint& pt);

/// Left minus right side of the rho equation (which = 1 or 2); the
/// removable factor (rho -/+ 1/4)/sin(pi(rho -/+ 1/4)) is evaluated by its
/// limit 1/pi near the puncture.
cplx rho_equation(int which, cplx rho);
cplx rho_equation_derivative(int which, cplx rho);

struct RhoRoot {
  int which;
  cplx value;
  double residual;
};

struct RootSearchBox {
  double re_min = -0.05;
  double re_max = 1.3;
  double im_min = -0.5;
  double im_max = 0.5;
};

/// Newton iteration from an n x n grid of seeds over the box; diverging
/// seeds are dropped, results deduplicated to 1e-9 and sorted.
std::vector<RhoRoot> find_rho_roots(int which, const RootSearchBox& box = {}, int grid_n = 28);

std::string monodromy_point_json(const MonodromyPoint& pt);

}  // namespace dp3
