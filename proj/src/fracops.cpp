#include "dfrac/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dfrac/errors.hpp"

namespace dfrac {

namespace {

std::uint64_t key_bits(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

std::size_t round_up_length(std::size_t m) {
  std::size_t p = 64;
  while (p < m) p *= 2;
  return p;
}

void check_spec(const GridFunction& u, const OperatorSpec& spec) {
  if (!std::isfinite(spec.order) || std::fabs(spec.order) >= 10.0)
    throw std::invalid_argument("OperatorSpec: |order| must be finite and < 10");
  if (std::fabs(spec.h - u.grid().h) > 1e-12 * std::max(spec.h, u.grid().h))
    throw std::invalid_argument("OperatorSpec: mesh step differs from the grid's");
}

// Numeric-plus-integral certified bound on sum_{k>=1} (k + J)^(a-1) k^(-p),
// the reading-side tail under the Decay model. Needs p > a.
double decay_tail_series(double a, double p, long J) {
  const long cap = std::max<long>(64, std::min<long>(4000, 10 * (J + 1)));
  double s = 0.0;
  for (long k = 1; k <= cap; ++k)
    s += std::pow(static_cast<double>(k + J), a - 1.0) *
         std::pow(static_cast<double>(k), -p);
  // remainder: (k+J)^(a-1) <= k^(a-1) for a <= 1, and <= (1+J)^(a-1) k^(a-1)
  // for a > 1 (k + J <= k (1 + J) for k >= 1)
  const double factor =
      a > 1.0 ? std::pow(1.0 + static_cast<double>(J), a - 1.0) : 1.0;
  s += factor * power_tail_sum_bound(a - 1.0 - p, static_cast<double>(cap));
  return s;
}

} // namespace

std::shared_ptr<const KernelTable> cached_kernel(double alpha,
                                                 std::size_t max_index) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::size_t>,
                  std::shared_ptr<const KernelTable>>
      cache;
  const std::size_t len = round_up_length(max_index);
  const auto key = std::make_pair(key_bits(alpha), len);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table =
      std::make_shared<const KernelTable>(kernel_recurrence(alpha, len));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, table);
  return it->second; // identical values either way on a lost race
}

namespace {

GridFunction delta_one_sided(const GridFunction& u, Side side) {
  const Grid& g = u.grid();
  const double h = g.h;
  const bool shrink = u.extension() == Extension::Undefined;
  long lo = g.n_min, hi = g.n_max;
  if (shrink) {
    if (side == Side::Right) --hi; else ++lo;
    if (lo > hi)
      throw std::invalid_argument("delta: window too small without an extension");
  }
  Grid og(h, lo, hi);
  std::vector<double> out(static_cast<size_t>(og.size()));
  const long nb = side == Side::Right ? 1 : -1;
  for (long n = lo; n <= hi; ++n)
    out[static_cast<size_t>(n - lo)] = (u(n) - u(n + nb)) / h;

  // delta of a constant tail vanishes, so Constant drops to ZeroOutside; a
  // Decay tail keeps its exponent with amplitude 2c/h.
  Extension ext = u.extension();
  DecayModel dm = u.decay();
  if (ext == Extension::Constant) ext = Extension::ZeroOutside;
  if (ext == Extension::Decay) dm.c = 2.0 * dm.c / h;
  GridFunction v(og, std::move(out), ext, dm);
  if (!u.all_valid()) {
    for (long n = lo; n <= hi; ++n) {
      const long m = n + nb;
      if (!u.is_valid(n) || (g.contains(m) && !u.is_valid(m))) v.mark_invalid(n);
    }
  }
  return v;
}

} // namespace

GridFunction delta_right(const GridFunction& u) {
  return delta_one_sided(u, Side::Right);
}

GridFunction delta_left(const GridFunction& u) {
  return delta_one_sided(u, Side::Left);
}

GridFunction mixed_difference(const GridFunction& u, unsigned l, unsigned s) {
  GridFunction v = u;
  for (unsigned i = 0; i < s; ++i) v = delta_left(v);
  for (unsigned i = 0; i < l; ++i) v = delta_right(v);
  return v;
}

GridFunction frac_apply_series(const GridFunction& u, const OperatorSpec& spec,
                               double tol) {
  check_spec(u, spec);
  if (spec.order == 0.0) return u;

  const Grid& g = u.grid();
  const double h = g.h;
  const double order = spec.order;
  const double a = -order; // kernel order parameter: weights are L_(-order)
  const bool integral = order < 0.0;
  const Extension ext = u.extension();
  const long N = g.size();

  if (ext == Extension::Undefined)
    throw ExtensionRequired("frac_apply_series: tails undeclared (Undefined)");
  if (integral) {
    if (ext == Extension::Constant) {
      const double edge = spec.side == Side::Right ? u.samples().back()
                                                   : u.samples().front();
      if (edge != 0.0)
        throw NotInDomain("frac_apply_series: constant tail is not summable "
                          "against an integral kernel");
    }
    if (ext == Extension::Decay && !(u.decay().p > -order))
      throw NotInDomain("frac_apply_series: decay exponent too small for the "
                        "requested integral order");
  }

  // A constant reading-side tail is annihilated by derivative kernels;
  // subtracting the edge value makes that exact on the window.
  std::vector<double> work(u.samples());
  if (!integral && ext == Extension::Constant) {
    const double edge = spec.side == Side::Right ? work.back() : work.front();
    if (edge != 0.0)
      for (double& x : work) x -= edge;
  }

  const auto kern = cached_kernel(a, static_cast<std::size_t>(N - 1));
  const std::vector<double>& K = kern->values;
  const double scale = std::pow(h, -order);

  std::vector<double> out(static_cast<size_t>(N), 0.0);
  std::vector<double> tail_bound; // per-index, Decay only
  const bool decay = ext == Extension::Decay;
  double bound_K = 0.0;
  if (decay && !is_gamma_pole(a)) bound_K = kernel_bound_constant(a);
  if (decay) tail_bound.assign(static_cast<size_t>(N), 0.0);

  for (long i = 0; i < N; ++i) {
    const long reach = spec.side == Side::Right ? N - 1 - i : i;
    double acc = 0.0;
    if (spec.side == Side::Right) {
      const double* s = work.data() + i;
      for (long j = 0; j <= reach; ++j) acc += K[static_cast<size_t>(j)] * s[j];
    } else {
      const double* s = work.data() + i;
      for (long j = 0; j <= reach; ++j) acc += K[static_cast<size_t>(j)] * s[-j];
    }
    out[static_cast<size_t>(i)] = scale * acc;
    if (decay) {
      // |L_a(reach + k)| <= bound_K (reach + k)^(a-1) for the pole-free case;
      // at poles the kernel is finitely supported and the tail is zero when
      // the window already covers it.
      double tb = 0.0;
      if (!is_gamma_pole(a)) {
        tb = scale * u.decay().c * bound_K *
             decay_tail_series(a, u.decay().p, reach);
      } else if (static_cast<double>(reach) < -a) {
        // finitely supported kernel reaching past the window: sum the few
        // missing weights against the decay model directly
        double s = 0.0;
        for (long k = 1; static_cast<double>(reach + k) <= -a &&
                         reach + k <= static_cast<long>(kern->max_index());
             ++k)
          s += std::fabs(K[static_cast<size_t>(reach + k)]) *
               std::pow(static_cast<double>(k), -u.decay().p);
        tb = scale * u.decay().c * s;
      }
      tail_bound[static_cast<size_t>(i)] = tb;
    }
  }

  const Extension out_ext =
      (ext == Extension::ZeroOutside || ext == Extension::Constant)
          ? Extension::ZeroOutside
          : Extension::Undefined;
  GridFunction v(g, std::move(out), out_ext);

  bool any_valid = true;
  if (decay) {
    any_valid = false;
    for (long i = 0; i < N; ++i) {
      if (tail_bound[static_cast<size_t>(i)] > tol)
        v.mark_invalid(g.n_min + i);
      else
        any_valid = true;
    }
  }
  if (!u.all_valid()) {
    any_valid = false;
    for (long n = g.n_min; n <= g.n_max; ++n) {
      bool ok = true;
      if (spec.side == Side::Right) {
        for (long m = n; m <= g.n_max && ok; ++m) ok = u.is_valid(m);
      } else {
        for (long m = g.n_min; m <= n && ok; ++m) ok = u.is_valid(m);
      }
      if (!ok) v.mark_invalid(n);
      else if (v.is_valid(n)) any_valid = true;
    }
  }
  if (!any_valid)
    throw WindowTooSmall("frac_apply_series: certified tail bounds exceed the "
                         "tolerance at every output index");
  return v;
}

GridFunction frac_apply_general(const GridFunction& u, const OperatorSpec& spec,
                                double tol, double crosscheck_tol) {
  GridFunction direct = frac_apply_series(u, spec, tol);
  const double mag = std::fabs(spec.order);
  if (mag <= 1.0) return direct;

  const double sgn = spec.order > 0.0 ? 1.0 : -1.0;
  const long m = static_cast<long>(std::floor(mag));
  const double frac = mag - static_cast<double>(m);

  GridFunction composed = u;
  if (frac > 0.0)
    composed = frac_apply_series(composed, {spec.side, sgn * frac, spec.h}, tol);
  for (long i = 0; i < m; ++i)
    composed = frac_apply_series(composed, {spec.side, sgn, spec.h}, tol);

  double dev = 0.0, scale = 1.0;
  for (long n = u.grid().n_min; n <= u.grid().n_max; ++n) {
    if (!direct.is_valid(n) || !composed.is_valid(n)) continue;
    dev = std::max(dev, std::fabs(direct.at_index(n) - composed.at_index(n)));
    scale = std::max(scale, std::fabs(direct.at_index(n)));
  }
  if (dev > crosscheck_tol * scale)
    throw Error("frac_apply_general: direct series and integer-part "
                "composition disagree beyond tolerance");
  return direct;
}

double composition_residual(const GridFunction& u, double alpha, double beta,
                            Side side) {
  const double h = u.grid().h;
  const GridFunction one = frac_apply_general(u, {side, alpha + beta, h});
  const GridFunction inner = frac_apply_general(u, {side, beta, h});
  const GridFunction two = frac_apply_general(inner, {side, alpha, h});
  double r = 0.0;
  for (long n = u.grid().n_min; n <= u.grid().n_max; ++n) {
    if (!one.is_valid(n) || !two.is_valid(n)) continue;
    r = std::max(r, std::fabs(one.at_index(n) - two.at_index(n)));
  }
  return r;
}

MembershipReport membership_ell(const GridFunction& u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("membership_ell: alpha in (0,1) required");
  MembershipReport rep;
  rep.alpha = alpha;

  const Grid& g = u.grid();
  const long N = g.size();
  auto window_weighted_max = [&]() {
    // max over anchors n in the window, both directions, of
    // sum_m |u((n +- m)h)| (1+m)^(alpha-1) restricted to the window
    double best = 0.0;
    for (long n = g.n_min; n <= g.n_max; ++n) {
      double sp = 0.0, sm = 0.0;
      for (long m = 0; m < N; ++m) {
        const double w = std::pow(1.0 + static_cast<double>(m), alpha - 1.0);
        if (g.contains(n + m)) sp += std::fabs(u.at_index(n + m)) * w;
        if (g.contains(n - m)) sm += std::fabs(u.at_index(n - m)) * w;
      }
      best = std::max(best, std::max(sp, sm));
    }
    return best;
  };

  switch (u.extension()) {
    case Extension::ZeroOutside:
      rep.basis = MembershipBasis::CompactSupport;
      rep.is_member = true;
      rep.weighted_sum = window_weighted_max();
      break;
    case Extension::Constant: {
      const bool zero_tails =
          u.samples().front() == 0.0 && u.samples().back() == 0.0;
      if (zero_tails) {
        rep.basis = MembershipBasis::CompactSupport;
        rep.is_member = true;
        rep.weighted_sum = window_weighted_max();
      } else {
        // constant tails diverge like sum m^(alpha-1)
        rep.basis = MembershipBasis::DecayExponent;
        rep.is_member = false;
        rep.weighted_sum = std::numeric_limits<double>::infinity();
      }
      break;
    }
    case Extension::Decay: {
      rep.basis = MembershipBasis::DecayExponent;
      rep.is_member = u.decay().p > alpha;
      if (rep.is_member) {
        const double tail =
            u.decay().c * decay_tail_series(alpha, u.decay().p, 0);
        rep.weighted_sum = window_weighted_max() + tail;
      } else {
        rep.weighted_sum = std::numeric_limits<double>::infinity();
      }
      break;
    }
    case Extension::Undefined:
      rep.basis = MembershipBasis::DecayExponent;
      rep.is_member = false; // nothing declared, nothing certified
      rep.weighted_sum = window_weighted_max();
      break;
  }
  return rep;
}

} // namespace dfrac
