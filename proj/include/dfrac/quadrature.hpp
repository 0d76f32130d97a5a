#pragma once

#include <vector>

#include "dfrac/grid.hpp"

namespace dfrac {

struct QuadratureConfig {
  double target = 1e-9;        ///< successive-refinement stopping threshold
                               ///< (relative to the input sup-norm)
  double alpha_margin = 1e-3;  ///< reject alpha within this margin of {0, 1}
  int max_panel_doublings = 14;
  int max_laguerre_order = 160;
};

/// Gauss rule nodes/weights.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Laguerre rule for integral_0^inf e^-x f(x) dx (Golub-Welsch).
const QuadratureRule& gauss_laguerre(int n);

/// Gauss-Legendre rule on [-1, 1].
const QuadratureRule& gauss_legendre(int n);

/// Order-alpha fractional integral through the Gamma formula
///
///   v(nh) = h^alpha / Gamma(alpha) * integral_0^inf T_s u(nh) s^(alpha-1) ds
///
/// with T_s the unit-lattice Poisson semigroup. The axis is split at s = 1:
/// the substitution s = e^-x removes the endpoint singularity on (0, 1], and
/// [1, inf) is integrated against the e^-s carried by the Poisson weights
/// with Gauss-Laguerre rules of increasing order. Independent of the kernel
/// series path. Requires compact support (or a Constant extension whose
/// reading-side edge is zero) and alpha in (margin, 1 - margin).
GridFunction frac_integral_quadrature(const GridFunction& u, double alpha,
                                      Side side,
                                      const QuadratureConfig& cfg = {});

/// Order-alpha fractional derivative through
///
///   v(nh) = h^-alpha / Gamma(-alpha) * integral_0^inf (T_s - 1) u(nh)
///           s^(-1-alpha) ds,
///
/// same splitting. A Constant extension is reduced exactly by subtracting
/// the reading-side edge value.
GridFunction frac_derivative_quadrature(const GridFunction& u, double alpha,
                                        Side side,
                                        const QuadratureConfig& cfg = {});

} // namespace dfrac
