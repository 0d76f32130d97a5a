#pragma once

#include <cstddef>
#include <vector>

#include "dfrac/grid.hpp"

namespace dfrac {

/// Truncated Poisson weight sequence G_t(j) = e^-t t^j / j!, j = 0..J, with
/// J the smallest index whose cumulative mass reaches 1 - tol.
struct PoissonWeights {
  double t = 0.0;
  std::vector<double> weights;
  double discarded_mass = 0.0;

  std::size_t cutoff() const { return weights.size() - 1; }
};

/// Stable construction by the recurrence w[j+1] = w[j] * t / (j+1) seeded at
/// e^-t, switching to per-index log-domain evaluation for t > 700.
PoissonWeights poisson_weights(double t, double tol = 1e-12);

/// Poisson-weighted translation semigroup on the mesh of step h: the applied
/// operator is the unit-lattice semigroup at rescaled time t/h,
///
///   v(nh) = sum_j G_{t/h}(j) u((n +- j) h).
///
/// The output keeps the input window. Out-of-window reads resolve through the
/// extension; with a Decay or Undefined extension, output indices whose
/// unresolved mass (times the decay bound, where available) exceeds `tol` are
/// flagged invalid. Throws ExtensionRequired if no index survives.
GridFunction apply_semigroup(const GridFunction& u, double t, Side side,
                             double tol = 1e-12);

/// (T_t u - u)(nh) computed without cancellation at small t (expm1 form).
GridFunction semigroup_minus_identity(const GridFunction& u, double t, Side side,
                                      double tol = 1e-12);

/// Max-norm of T_t(T_s u) - T_{t+s} u over indices valid in both evaluations.
double semigroup_law_residual(const GridFunction& u, double t, double s,
                              Side side, double tol = 1e-12);

/// Max-norm of [T_{t+dt}u - T_{t-dt}u] / (2 dt) + delta(T_t u), the centered
/// check of d/dt T_t u = -delta T_t u; O(dt^2) as dt -> 0.
double cauchy_residual(const GridFunction& u0, double t, double dt, Side side,
                       double tol = 1e-12);

} // namespace dfrac
