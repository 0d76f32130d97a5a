#pragma once

#include <memory>

#include "dfrac/grid.hpp"
#include "dfrac/kernel.hpp"

namespace dfrac {

/// One-sided fractional operator on a mesh of step h.
/// order < 0 requests the integral of order |order| (kernel L_|order|,
/// scale h^|order|); order > 0 the derivative (kernel L_-order, scale
/// h^-order); order == 0 the identity.
struct OperatorSpec {
  Side side = Side::Right;
  double order = 0.0;
  double h = 1.0;
};

/// First difference quotients (u(nh) - u((n+-1)h)) / h. With an Undefined
/// extension the window shrinks by one on the side whose neighbour is
/// missing; otherwise the extension supplies it and the window is kept.
GridFunction delta_right(const GridFunction& u);
GridFunction delta_left(const GridFunction& u);

/// l right-differences composed with s left-differences (they commute).
GridFunction mixed_difference(const GridFunction& u, unsigned l, unsigned s);

/// Kernel-series application
///
///   v(nh) = h^(-order) * sum_j L_(-order)(j) u((n +- j) h),
///
/// summed over the window on the reading side. ZeroOutside inputs are exact.
/// A Constant extension is admitted for derivative orders (the reading-side
/// edge constant is annihilated exactly) and rejected for integrals
/// (NotInDomain). Decay inputs get certified per-index tail bounds; indices
/// whose bound exceeds `tol` are flagged invalid, and WindowTooSmall is
/// thrown when no index survives. Undefined extensions throw
/// ExtensionRequired.
GridFunction frac_apply_series(const GridFunction& u, const OperatorSpec& spec,
                               double tol = 1e-10);

/// Orders beyond 1 in magnitude, evaluated both directly (the series formula
/// stays valid for every order) and through integer-part composition
/// delta^(+-1)...delta^(fractional part). The two routes must agree within
/// `crosscheck_tol` relative; Error otherwise. Returns the direct result.
GridFunction frac_apply_general(const GridFunction& u, const OperatorSpec& spec,
                                double tol = 1e-10,
                                double crosscheck_tol = 1e-9);

/// Max-norm of delta^alpha(delta^beta u) - delta^(alpha+beta) u over indices
/// valid in both routes. alpha and beta are signed orders.
double composition_residual(const GridFunction& u, double alpha, double beta,
                            Side side);

enum class MembershipBasis { CompactSupport, DecayExponent };

/// Admissibility of u for the order-alpha integral: the weighted tail sums
/// sum_m |u((n +- m)h)| (1+m)^(alpha-1) must converge for every n.
struct MembershipReport {
  double alpha = 0.0;
  double weighted_sum = 0.0; // max over window offsets (+ tail bound if Decay)
  bool is_member = false;
  MembershipBasis basis = MembershipBasis::CompactSupport;
};

/// ZeroOutside => member (finite sums); Decay(p, c) => member iff p > alpha;
/// Constant with a nonzero edge (and Undefined) => not certified.
MembershipReport membership_ell(const GridFunction& u, double alpha);

/// Shared per-(order, length) kernel cache; tables are immutable once built
/// and safe to read concurrently.
std::shared_ptr<const KernelTable> cached_kernel(double alpha,
                                                 std::size_t max_index);

} // namespace dfrac
