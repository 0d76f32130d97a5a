#include "dfrac/schauder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "dfrac/errors.hpp"
#include "dfrac/fracops.hpp"
#include "dfrac/holder.hpp"

namespace dfrac {

namespace {

constexpr double kBoundaryBand = 1e-6;

void check_unit_interval(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
}

// Integral of order alpha, restamped Undefined so that downstream Hoelder
// layers use honest shrink-at-the-edge difference semantics rather than the
// reading-side zero tail.
GridFunction integral_for_norms(const GridFunction& u, double alpha, double h,
                                Side side) {
  GridFunction v = frac_apply_series(u, {side, -alpha, h});
  v.set_extension(Extension::Undefined);
  return v;
}

void check_mesh(const GridFunction& u, double h) {
  if (std::fabs(u.grid().h - h) > 1e-12 * std::max(h, u.grid().h))
    throw std::invalid_argument("schauder: h differs from the grid step");
}

double nonzero_norm(double d) {
  if (!(d > 0.0))
    throw std::invalid_argument("schauder: zero input function");
  return d;
}

double relative_max_diff(const GridFunction& a, const GridFunction& b) {
  double dev = 0.0, scale = 0.0;
  const long lo = std::max(a.grid().n_min, b.grid().n_min);
  const long hi = std::min(a.grid().n_max, b.grid().n_max);
  for (long n = lo; n <= hi; ++n) {
    dev = std::max(dev, std::fabs(a.at_index(n) - b.at_index(n)));
    scale = std::max(scale, std::fabs(b.at_index(n)));
  }
  return dev / std::max(scale, 1e-300);
}

} // namespace

TestFamily make_family(FamilyKind kind, unsigned seed, double cusp_exponent) {
  TestFamily f;
  f.kind = kind;
  f.seed = seed;
  f.cusp_exponent = cusp_exponent;
  switch (kind) {
    case FamilyKind::Bump: f.name = "bump"; break;
    case FamilyKind::Cusp: f.name = "cusp"; break;
    case FamilyKind::RandomCompact: f.name = "random"; break;
    case FamilyKind::Impulse: f.name = "impulse"; break;
  }
  return f;
}

GridFunction make_family_function(const TestFamily& fam, double h,
                                  double half_width) {
  if (!(half_width > fam.radius))
    throw std::invalid_argument("make_family_function: window must contain the support");
  const long M = std::lround(half_width / h);
  Grid g(h, -M, M);
  std::vector<double> s(static_cast<size_t>(g.size()), 0.0);

  const double R = fam.radius;
  switch (fam.kind) {
    case FamilyKind::Bump:
      for (long n = -M; n <= M; ++n) {
        const double x = g.point(n) / R;
        if (std::fabs(x) < 1.0)
          s[static_cast<size_t>(n + M)] = std::exp(1.0 - 1.0 / (1.0 - x * x));
      }
      break;
    case FamilyKind::Cusp:
      for (long n = -M; n <= M; ++n) {
        const double x = std::fabs(g.point(n)) / R;
        if (x < 1.0)
          s[static_cast<size_t>(n + M)] = 1.0 - std::pow(x, fam.cusp_exponent);
      }
      break;
    case FamilyKind::RandomCompact: {
      // Master profile at integer physical coordinates, piecewise-linear in
      // between, so every mesh samples the same compact zigzag.
      const long Ri = std::lround(R);
      std::mt19937 rng(fam.seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      std::vector<double> master(static_cast<size_t>(2 * Ri + 1), 0.0);
      for (long i = 1; i < 2 * Ri; ++i) master[static_cast<size_t>(i)] = dist(rng);
      for (long n = -M; n <= M; ++n) {
        const double x = g.point(n);
        if (std::fabs(x) >= static_cast<double>(Ri)) continue;
        const double pos = x + static_cast<double>(Ri);
        const double fl = std::floor(pos);
        const long i = static_cast<long>(fl);
        const double frac = pos - fl;
        s[static_cast<size_t>(n + M)] =
            (1.0 - frac) * master[static_cast<size_t>(i)] +
            frac * master[static_cast<size_t>(i + 1)];
      }
      break;
    }
    case FamilyKind::Impulse:
      s[static_cast<size_t>(M)] = 1.0;
      break;
  }
  return GridFunction(g, std::move(s), Extension::ZeroOutside);
}

double schauder_ratio_case_i(const GridFunction& u, double alpha, double beta,
                             double h, Side side) {
  check_unit_interval(alpha, "alpha");
  check_unit_interval(beta, "beta");
  check_mesh(u, h);
  if (!(alpha + beta < 1.0 - kBoundaryBand))
    throw CaseConstraintViolated("case I requires alpha + beta < 1");
  const GridFunction v = integral_for_norms(u, alpha, h, side);
  const double num = holder_norm(v, {0, beta + alpha}).norm;
  const double den = nonzero_norm(holder_norm(u, {0, beta}).norm);
  return num / den;
}

double schauder_ratio_case_ii(const GridFunction& u, double alpha, double beta,
                              double h, Side side) {
  check_unit_interval(alpha, "alpha");
  check_unit_interval(beta, "beta");
  check_mesh(u, h);
  if (!(alpha + beta > 1.0 + kBoundaryBand))
    throw CaseConstraintViolated("case II requires alpha + beta > 1");
  const GridFunction v = integral_for_norms(u, alpha, h, side);
  const double num = holder_norm(v, {1, beta + alpha - 1.0}).norm;
  const double den = nonzero_norm(holder_norm(u, {0, beta}).norm);
  return num / den;
}

double schauder_ratio_case_iii(const GridFunction& u, unsigned k, double alpha,
                               double beta, double h, Side side) {
  check_unit_interval(alpha, "alpha");
  check_unit_interval(beta, "beta");
  check_mesh(u, h);
  const double gamma = static_cast<double>(k) + beta + alpha;
  if (std::fabs(gamma - std::round(gamma)) < kBoundaryBand)
    throw CaseConstraintViolated(
        "case III requires k + beta + alpha away from the integers");
  const unsigned l = static_cast<unsigned>(std::floor(gamma));
  const double s = gamma - std::floor(gamma);
  const GridFunction v = integral_for_norms(u, alpha, h, side);
  const double num = holder_norm(v, {l, s}).norm;
  const double den = nonzero_norm(holder_norm(u, {k, beta}).norm);
  return num / den;
}

double schauder_ratio_case_iv(const GridFunction& u, double alpha, double h,
                              Side side) {
  check_unit_interval(alpha, "alpha");
  check_mesh(u, h);
  const GridFunction v = integral_for_norms(u, alpha, h, side);
  const double num = holder_norm(v, {0, alpha}).norm;
  const double den = nonzero_norm(u.max_abs());
  return num / den;
}

double case_ii_identity_residual(const GridFunction& u, double alpha) {
  check_unit_interval(alpha, "alpha");
  const double h = u.grid().h;
  const GridFunction lhs =
      delta_right(frac_apply_series(u, {Side::Right, -alpha, h}));
  const GridFunction rhs = frac_apply_series(u, {Side::Right, 1.0 - alpha, h});
  return relative_max_diff(lhs, rhs);
}

double case_iii_identity_residual(const GridFunction& u, double alpha) {
  check_unit_interval(alpha, "alpha");
  const double h = u.grid().h;
  const GridFunction lhs =
      frac_apply_series(delta_right(u), {Side::Right, -alpha, h});
  const GridFunction rhs =
      delta_right(frac_apply_series(u, {Side::Right, -alpha, h}));
  return relative_max_diff(rhs, lhs);
}

SchauderSweepReport run_sweep(SchauderCase c,
                              const std::vector<TestFamily>& families,
                              const std::vector<double>& alphas,
                              const std::vector<double>& betas,
                              const std::vector<double>& h_list,
                              double half_width, Side side) {
  SchauderSweepReport rep;
  rep.case_id = c;

  const std::vector<double> beta_axis =
      c == SchauderCase::IV ? std::vector<double>{0.0} : betas;

  // reject invalid case parameters before any evaluation
  for (double a : alphas) {
    check_unit_interval(a, "alpha");
    for (double b : beta_axis) {
      switch (c) {
        case SchauderCase::I:
          if (!(a + b < 1.0 - kBoundaryBand))
            throw CaseConstraintViolated("case I grid contains alpha + beta >= 1");
          break;
        case SchauderCase::II:
          if (!(a + b > 1.0 + kBoundaryBand))
            throw CaseConstraintViolated("case II grid contains alpha + beta <= 1");
          break;
        case SchauderCase::III: {
          const double gamma = 1.0 + a + b;
          if (std::fabs(gamma - std::round(gamma)) < kBoundaryBand)
            throw CaseConstraintViolated("case III grid hits an integer k+beta+alpha");
          break;
        }
        case SchauderCase::IV: break;
      }
    }
  }

  auto eval = [&](const TestFamily& fam, double a, double b, double h,
                  double width) {
    TestFamily f = fam;
    if (f.kind == FamilyKind::Cusp && c != SchauderCase::IV) f.cusp_exponent = b;
    const GridFunction u = make_family_function(f, h, width);
    switch (c) {
      case SchauderCase::I: return schauder_ratio_case_i(u, a, b, h, side);
      case SchauderCase::II: return schauder_ratio_case_ii(u, a, b, h, side);
      case SchauderCase::III:
        return schauder_ratio_case_iii(u, 1, a, b, h, side);
      case SchauderCase::IV: return schauder_ratio_case_iv(u, a, h, side);
    }
    return 0.0;
  };

  double gmax = -std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  SweepEntry argmax;
  for (const TestFamily& fam : families) {
    for (double a : alphas) {
      for (double b : beta_axis) {
        SweepGroupStat gs{fam.name, a, b,
                          -std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
        for (double h : h_list) {
          const double r = eval(fam, a, b, h, half_width);
          rep.entries.push_back({fam.name, a, b, h, r});
          if (!std::isfinite(r) || !(r > 0.0)) {
            rep.all_finite = false;
            continue;
          }
          gs.max_over_h = std::max(gs.max_over_h, r);
          gs.min_over_h = std::min(gs.min_over_h, r);
          if (r > gmax) {
            gmax = r;
            argmax = rep.entries.back();
          }
          gmin = std::min(gmin, r);
        }
        if (!h_list.empty()) {
          rep.groups.push_back(gs);
          if (gs.min_over_h > 0.0 && std::isfinite(gs.max_over_h))
            rep.worst_group_spread =
                std::max(rep.worst_group_spread, gs.max_over_h / gs.min_over_h);
        }
      }
    }
  }

  rep.has_entries = !rep.entries.empty();
  if (!rep.has_entries) return rep;
  rep.max_ratio = gmax;
  rep.min_ratio = gmin;

  if (rep.all_finite && std::isfinite(gmax)) {
    const TestFamily* fam = nullptr;
    for (const TestFamily& f : families)
      if (f.name == argmax.family) fam = &f;
    if (fam != nullptr) {
      const double wide = eval(*fam, argmax.alpha, argmax.beta, argmax.h,
                               2.0 * half_width);
      rep.doubling_relative_change = std::fabs(wide - gmax) / gmax;
    }
  }
  return rep;
}

} // namespace dfrac
