#include "dfrac/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dfrac/errors.hpp"
#include "dfrac/fracops.hpp"

namespace dfrac {

PoissonWeights poisson_weights(double t, double tol) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("poisson_weights: t >= 0 required");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("poisson_weights: 0 < tol < 1 required");

  PoissonWeights pw;
  pw.t = t;
  if (t == 0.0) {
    pw.weights = {1.0};
    pw.discarded_mass = 0.0;
    return pw;
  }

  const bool log_domain = t > 700.0; // e^-t underflows past ~745
  const double log_t = std::log(t);
  const std::size_t hard_cap =
      static_cast<std::size_t>(t + 60.0 * std::sqrt(t + 1.0) + 200.0);

  double w = log_domain ? 0.0 : std::exp(-t);
  double cum = 0.0;
  for (std::size_t j = 0; j <= hard_cap; ++j) {
    if (log_domain)
      w = std::exp(-t + static_cast<double>(j) * log_t -
                   std::lgamma(static_cast<double>(j) + 1.0));
    pw.weights.push_back(w);
    cum += w;
    if (cum >= 1.0 - tol) {
      pw.discarded_mass = std::max(0.0, 1.0 - cum);
      return pw;
    }
    if (!log_domain) w *= t / (static_cast<double>(j) + 1.0);
  }
  throw std::logic_error("poisson_weights: mass target not reached");
}

namespace {

// Shared core of the semigroup application. `subtract_center` switches to the
// cancellation-free evaluation of (T_t - 1)u via expm1.
GridFunction apply_poisson(const GridFunction& u, double t, Side side,
                           double tol, bool subtract_center) {
  const Grid& g = u.grid();
  if (!(t >= 0.0)) throw std::invalid_argument("apply_semigroup: t >= 0 required");
  const PoissonWeights pw = poisson_weights(t / g.h, std::min(tol, 1e-12));
  const std::vector<double>& w = pw.weights;
  const long J = static_cast<long>(w.size()) - 1;
  const long step = side == Side::Right ? 1 : -1;
  const Extension ext = u.extension();

  std::vector<double> out(static_cast<size_t>(g.size()), 0.0);
  std::vector<std::uint8_t> flags;
  const bool may_flag = ext == Extension::Decay || ext == Extension::Undefined ||
                        !u.all_valid();
  if (may_flag) flags.assign(out.size(), 1);

  // In subtract_center mode the j = 0 coefficient becomes
  // G(0) - 1 = expm1(-t/h), which keeps (T_t - 1)u free of cancellation.
  const double w0 = subtract_center ? std::expm1(-pw.t) : w[0];

  for (long n = g.n_min; n <= g.n_max; ++n) {
    double acc = 0.0;
    double unresolved = 0.0; // certified bound on what the extension hides
    for (long j = 0; j <= J; ++j) {
      const long idx = n + step * j;
      const double wj = j == 0 ? w0 : w[static_cast<size_t>(j)];
      if (g.contains(idx)) {
        if (!u.is_valid(idx)) unresolved += wj; // no usable bound there
        acc += wj * u.at_index(idx);
      } else {
        switch (ext) {
          case Extension::ZeroOutside:
            break; // exact
          case Extension::Constant:
            acc += wj * (idx < g.n_min ? u.samples().front() : u.samples().back());
            break;
          case Extension::Decay: {
            const long d = idx < g.n_min ? g.n_min - idx : idx - g.n_max;
            unresolved += wj * u.decay().c *
                          std::pow(static_cast<double>(d), -u.decay().p);
            break;
          }
          case Extension::Undefined:
            unresolved += wj;
            break;
        }
      }
    }
    out[static_cast<size_t>(n - g.n_min)] = acc;
    if (may_flag && unresolved > tol)
      flags[static_cast<size_t>(n - g.n_min)] = 0;
  }

  // The zero tail of a ZeroOutside input is exact on the reading side (the
  // one-sided sum never looks the other way), so the stamp is preserved;
  // anything else becomes Undefined.
  const Extension out_ext = ext == Extension::ZeroOutside ? Extension::ZeroOutside
                                                          : Extension::Undefined;
  GridFunction v(g, std::move(out), out_ext);
  if (may_flag) {
    bool any = false;
    for (long n = g.n_min; n <= g.n_max; ++n) {
      if (flags[static_cast<size_t>(n - g.n_min)] == 0)
        v.mark_invalid(n);
      else
        any = true;
    }
    if (!any)
      throw ExtensionRequired(
          "apply_semigroup: every output index depends on undeclared tails");
  }
  return v;
}

} // namespace

GridFunction apply_semigroup(const GridFunction& u, double t, Side side,
                             double tol) {
  return apply_poisson(u, t, side, tol, false);
}

GridFunction semigroup_minus_identity(const GridFunction& u, double t, Side side,
                                      double tol) {
  return apply_poisson(u, t, side, tol, true);
}

double semigroup_law_residual(const GridFunction& u, double t, double s,
                              Side side, double tol) {
  const GridFunction two = apply_semigroup(apply_semigroup(u, s, side, tol), t,
                                           side, tol);
  const GridFunction one = apply_semigroup(u, t + s, side, tol);
  double r = 0.0;
  for (long n = u.grid().n_min; n <= u.grid().n_max; ++n) {
    if (!two.is_valid(n) || !one.is_valid(n)) continue;
    r = std::max(r, std::fabs(two.at_index(n) - one.at_index(n)));
  }
  return r;
}

double cauchy_residual(const GridFunction& u0, double t, double dt, Side side,
                       double tol) {
  if (!(t > 0.0) || !(dt > 0.0 && dt < t))
    throw std::invalid_argument("cauchy_residual: need t > 0 and 0 < dt < t");
  const GridFunction up = apply_semigroup(u0, t + dt, side, tol);
  const GridFunction um = apply_semigroup(u0, t - dt, side, tol);
  const GridFunction uc = apply_semigroup(u0, t, side, tol);
  const GridFunction d = side == Side::Right ? delta_right(uc) : delta_left(uc);

  double r = 0.0;
  const Grid& dg = d.grid();
  for (long n = dg.n_min; n <= dg.n_max; ++n) {
    if (!d.is_valid(n) || !up.is_valid(n) || !um.is_valid(n)) continue;
    const double w =
        (up.at_index(n) - um.at_index(n)) / (2.0 * dt) + d.at_index(n);
    r = std::max(r, std::fabs(w));
  }
  return r;
}

} // namespace dfrac
