#include "dfrac/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "dfrac/errors.hpp"
#include "dfrac/fft.hpp"
#include "dfrac/fracops.hpp"
#include "dfrac/holder.hpp"
#include "dfrac/kernel.hpp"
#include "dfrac/quadrature.hpp"
#include "dfrac/schauder.hpp"
#include "dfrac/semigroup.hpp"

namespace dfrac {

// Computed once from this implementation and frozen; any drift in the kernel,
// series or norm layers shows up as a baseline mismatch.
const double kBaselineCaseI = 1.0;
const double kBaselineCaseIV = 2.0;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

GridFunction random_compact(Grid g, long sup_lo, long sup_hi, std::mt19937& rng,
                            bool nonnegative = false) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> s(static_cast<size_t>(g.size()), 0.0);
  for (long n = sup_lo; n <= sup_hi; ++n) {
    double v = dist(rng);
    if (nonnegative) v = std::fabs(v);
    s[static_cast<size_t>(n - g.n_min)] = v;
  }
  return GridFunction(g, std::move(s), Extension::ZeroOutside);
}

// ---- criteria -------------------------------------------------------------

CriterionResult criterion_kernel_cross_method(std::mt19937& rng) {
  CriterionResult r;
  r.id = 1;
  r.name = "kernel-cross-method";
  r.module = "kernel";
  r.limit = 1e-9;
  const auto t0 = Clock::now();
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t M = 10000;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    double a = 0.0;
    do { a = dist(rng); } while (std::fabs(a) < 1e-3);
    const KernelTable rec = kernel_recurrence(a, M);
    const KernelTable lg = kernel_loggamma(a, M);
    for (std::size_t n = 0; n <= M; ++n) {
      const double scale =
          std::max({std::fabs(rec.values[n]), std::fabs(lg.values[n]), 1e-300});
      worst = std::max(worst, std::fabs(rec.values[n] - lg.values[n]) / scale);
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit && r.seconds < 1.0;
  std::ostringstream os;
  os << "50 random orders in (-1,1), M=10^4; runtime " << r.seconds << " s";
  r.detail = os.str();
  return r;
}

CriterionResult criterion_convolution(std::mt19937& rng, bool inject_fault) {
  CriterionResult r;
  r.id = 2;
  r.name = "convolution-identity";
  r.module = "kernel";
  r.limit = 1e-11;
  const auto t0 = Clock::now();
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  const std::size_t N = 256;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    // force mixed signs onto the first trials
    double a = dist(rng), b = dist(rng);
    if (trial % 4 == 1) { a = -std::fabs(a); b = std::fabs(b); }
    if (trial % 4 == 2) { a = std::fabs(a); b = -std::fabs(b); }
    const std::vector<double> conv = convolve_kernels(a, b, N);
    KernelTable direct = kernel_recurrence(a + b, N);
    if (inject_fault) direct.values[N / 2] += 1e-6;
    for (std::size_t n = 0; n <= N; ++n) {
      const double scale = std::max(1.0, std::fabs(direct.values[n]));
      worst = std::max(worst, std::fabs(conv[n] - direct.values[n]) / scale);
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit && r.seconds < 1.0;
  r.detail = inject_fault ? "FAULT INJECTED into the direct kernel table"
                          : "20 random order pairs incl. mixed signs, N=256";
  return r;
}

CriterionResult criterion_difference_identity(std::mt19937& rng) {
  CriterionResult r;
  r.id = 3;
  r.name = "difference-identity";
  r.module = "kernel";
  r.limit = 1e-12;
  const auto t0 = Clock::now();
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t M = 10000;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    double a = 0.0;
    do { a = dist(rng); } while (std::fabs(a) < 1e-3 || std::fabs(a - 1.0) < 1e-3);
    const KernelTable t = kernel_recurrence(a, M);
    const KernelTable shifted = kernel_recurrence(a - 1.0, M);
    for (std::size_t j = 0; j + 1 <= M; ++j) {
      const double d = t.values[j + 1] - t.values[j];
      worst = std::max(worst, std::fabs(d - shifted.values[j + 1]));
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit;
  r.detail = "10 random orders, index-wise over M=10^4";
  return r;
}

CriterionResult criterion_telescoping() {
  CriterionResult r;
  r.id = 4;
  r.name = "telescoping-tail";
  r.module = "kernel";
  r.limit = 1.0; // pass iff every residual is within its certified bound
  const auto t0 = Clock::now();
  const std::size_t M = 1000000;
  double worst_excess = 0.0; // residual / (bound + roundoff allowance)
  const double allowance = 1e-9;
  const double any_cert = std::numeric_limits<double>::infinity();
  for (int ai = 1; ai <= 9; ++ai) {
    const double a = 0.1 * ai;
    for (long d = 1; d <= 64; ++d) {
      const TelescopingResult res = lemma_telescoping_check(a, d, 0, M, any_cert);
      worst_excess = std::max(
          worst_excess, std::fabs(res.residual) / (res.tail_bound + allowance));
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst_excess;
  r.passed = worst_excess <= r.limit;
  r.detail = "alpha in {0.1..0.9} x (n-l) in {1..64}, M=10^6";
  return r;
}

CriterionResult criterion_asymptotics() {
  CriterionResult r;
  r.id = 5;
  r.name = "asymptotic-envelope";
  r.module = "kernel";
  r.limit = 1.0; // n e(n) / (2 C_emp) <= 1 on the validation range
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double a : {0.1, 0.5, 0.9}) {
    const double c_emp = fit_asymptotic_envelope(a, 10, 100);
    for (std::uint64_t n = 1000; n <= 100000; ++n) {
      const double e = asymptotic_deviation(a, n);
      worst = std::max(worst, static_cast<double>(n) * e / (2.0 * c_emp));
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit;
  r.detail = "C_emp fitted on [10,100], validated with 2x factor on [10^3,10^5]";
  return r;
}

CriterionResult criterion_semigroup_law(std::mt19937& rng) {
  CriterionResult r;
  r.id = 6;
  r.name = "semigroup-law";
  r.module = "semigroup";
  r.limit = 1e-10;
  const auto t0 = Clock::now();
  Grid g(1.0, -450, 450);
  const GridFunction u = random_compact(g, -5, 5, rng);
  double worst = 0.0;
  bool side_ok = true;
  const std::pair<double, double> ts[] = {{0.5, 0.5}, {1.0, 1.0}, {2.0, 3.0},
                                          {7.0, 5.0}, {10.0, 10.0}, {0.7, 1.3}};
  for (Side side : {Side::Right, Side::Left}) {
    for (auto [t, s] : ts)
      worst = std::max(worst, semigroup_law_residual(u, t, s, side));
    // mass conservation and contraction at t = 12
    const GridFunction v = apply_semigroup(u, 12.0, side);
    if (std::fabs(v.sum() - u.sum()) > 1e-10 * std::max(1.0, std::fabs(u.sum())))
      side_ok = false;
    if (v.max_abs() > u.max_abs() * (1.0 + 1e-13)) side_ok = false;
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit && side_ok;
  r.detail = "(t,s) grid up to 20, both sides; mass + contraction at t=12";
  return r;
}

CriterionResult criterion_cauchy(std::mt19937&) {
  CriterionResult r;
  r.id = 7;
  r.name = "cauchy-richardson";
  r.module = "semigroup";
  r.limit = 4.5; // ratio window [3.5, 4.5]
  const auto t0 = Clock::now();
  Grid g(1.0, -100, 100);
  const GridFunction u = GridFunction::impulse(g, 0);
  const double r1 = cauchy_residual(u, 1.0, 0.02, Side::Right);
  const double r2 = cauchy_residual(u, 1.0, 0.01, Side::Right);
  const double ratio = r1 / r2;
  const double small = cauchy_residual(u, 1.0, 1e-3, Side::Right);
  r.seconds = elapsed(t0);
  r.measured = ratio;
  r.passed = ratio >= 3.5 && ratio <= 4.5 && small <= 1e-5;
  std::ostringstream os;
  os << "impulse, t=1; residual(1e-3)=" << small << " (<=1e-5 required)";
  r.detail = os.str();
  return r;
}

CriterionResult criterion_inverse_law(std::mt19937& rng) {
  CriterionResult r;
  r.id = 8;
  r.name = "inverse-law";
  r.module = "fracops";
  r.limit = 1e-8;
  const auto t0 = Clock::now();
  Grid g(1.0, -64, 64);
  const GridFunction u = random_compact(g, -6, 6, rng);
  double worst = 0.0;
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (Side side : {Side::Right, Side::Left}) {
      const GridFunction der = frac_apply_series(u, {side, a, 1.0});
      const GridFunction rec = frac_apply_series(der, {side, -a, 1.0});
      for (long n = g.n_min; n <= g.n_max; ++n)
        worst = std::max(worst, std::fabs(rec.at_index(n) - u.at_index(n)));
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit;
  r.detail = "integral of derivative recovers u, alpha in {0.1..0.9}";
  return r;
}

CriterionResult criterion_composition(std::mt19937& rng) {
  CriterionResult r;
  r.id = 9;
  r.name = "composition-law";
  r.module = "fracops";
  r.limit = 1e-8;
  const auto t0 = Clock::now();
  Grid g(1.0, -64, 64);
  const GridFunction u = random_compact(g, -6, 6, rng);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = dist(rng), b = dist(rng);
    worst = std::max(worst, composition_residual(u, a, b, Side::Right));
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit;
  r.detail = "20 random signed order pairs, |a|,|b| <= 1.5, general path";
  return r;
}

CriterionResult criterion_quadrature(std::mt19937& rng) {
  CriterionResult r;
  r.id = 10;
  r.name = "quadrature-oracles";
  r.module = "fracops";
  r.limit = 1e-7;
  const auto t0 = Clock::now();
  Grid g(1.0, -40, 16);
  const GridFunction imp = GridFunction::impulse(g, 0);
  const GridFunction rnd = random_compact(g, -6, 6, rng);
  double worst = 0.0;
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (const GridFunction* u : {&imp, &rnd}) {
      const GridFunction qi = frac_integral_quadrature(*u, a, Side::Right);
      const GridFunction si = frac_apply_series(*u, {Side::Right, -a, 1.0});
      const GridFunction qd = frac_derivative_quadrature(*u, a, Side::Right);
      const GridFunction sd = frac_apply_series(*u, {Side::Right, a, 1.0});
      double scale_i = si.max_abs(), scale_d = sd.max_abs();
      for (long n = g.n_min; n <= g.n_max; ++n) {
        worst = std::max(worst, std::fabs(qi.at_index(n) - si.at_index(n)) /
                                    std::max(scale_i, 1e-300));
        worst = std::max(worst, std::fabs(qd.at_index(n) - sd.at_index(n)) /
                                    std::max(scale_d, 1e-300));
      }
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit;
  r.detail = "Gamma-formula quadrature vs series, alpha in [0.1, 0.9]";
  return r;
}

CriterionResult criterion_fft(std::mt19937& rng) {
  CriterionResult r;
  r.id = 11;
  r.name = "fft-fast-path";
  r.module = "fracops";
  r.limit = 1e-10;
  const auto t0 = Clock::now();
  Grid g(1.0, 0, 4095);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> s(4096);
  for (double& v : s) v = dist(rng);
  const GridFunction u(g, std::move(s), Extension::ZeroOutside);
  double worst = 0.0;
  for (double order : {-0.5, 0.7}) {
    for (Side side : {Side::Right, Side::Left}) {
      const GridFunction fast = fft_apply(u, {side, order, 1.0});
      const GridFunction direct = frac_apply_series(u, {side, order, 1.0});
      for (long n = g.n_min; n <= g.n_max; ++n)
        worst = std::max(worst,
                         std::fabs(fast.at_index(n) - direct.at_index(n)));
    }
  }
  r.seconds = elapsed(t0);
  r.measured = worst;
  r.passed = worst <= r.limit;
  r.detail = "N=4096 random input, orders -0.5 and +0.7, both sides";
  return r;
}

CriterionResult criterion_holder(std::mt19937& rng) {
  CriterionResult r;
  r.id = 12;
  r.name = "holder-basics";
  r.module = "holder";
  r.limit = 1e-12; // homogeneity + linear-slope errors
  const auto t0 = Clock::now();
  Grid g(1.0, -32, 32);

  // scaling homogeneity
  const GridFunction u = random_compact(g, -20, 20, rng);
  GridFunction cu = u;
  const double c = 37.5;
  for (double& v : cu.samples()) v *= c;
  const double s1 = holder_seminorm(u, 0, 0, 0.6).value;
  const double s2 = holder_seminorm(cu, 0, 0, 0.6).value;
  const double hom_err = std::fabs(s2 - c * s1) / std::max(s2, 1e-300);

  // linear function, beta = 1: seminorm equals |slope|
  Grid gl(0.5, -50, 50);
  std::vector<double> lin(static_cast<size_t>(gl.size()));
  for (long n = -50; n <= 50; ++n)
    lin[static_cast<size_t>(n + 50)] = 1.75 * gl.point(n);
  GridFunction ul(gl, std::move(lin), Extension::Undefined);
  const double slope_err =
      std::fabs(holder_seminorm(ul, 0, 0, 1.0).value - 1.75) / 1.75;

  // double-window stability for an interior bump
  const GridFunction bump =
      make_family_function(make_family(FamilyKind::Bump), 1.0, 32.0);
  const double stab0 = double_window_stability(bump, {0, 0.5});
  const double stab1 = double_window_stability(bump, {1, 0.5});

  r.seconds = elapsed(t0);
  r.measured = std::max(hom_err, slope_err);
  r.passed = r.measured <= r.limit && stab0 <= 1e-3 && stab1 <= 1e-3;
  std::ostringstream os;
  os << "homogeneity " << hom_err << ", slope " << slope_err << ", stability "
     << std::max(stab0, stab1) << " (<=1e-3)";
  r.detail = os.str();
  return r;
}

CriterionResult criterion_schauder(std::mt19937&) {
  CriterionResult r;
  r.id = 13;
  r.name = "schauder-sweeps";
  r.module = "schauder";
  r.limit = 2.0; // worst max/min spread across the dyadic h-sweep
  const auto t0 = Clock::now();
  const std::vector<TestFamily> fams = {
      make_family(FamilyKind::Bump), make_family(FamilyKind::Cusp),
      make_family(FamilyKind::RandomCompact, 1234),
      make_family(FamilyKind::Impulse)};
  const std::vector<double> hs = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};

  double spread = 0.0;
  bool ok = true;
  std::ostringstream os;

  const SchauderSweepReport rep_i =
      run_sweep(SchauderCase::I, fams, {0.25, 0.3}, {0.5, 0.4}, hs);
  const SchauderSweepReport rep_ii =
      run_sweep(SchauderCase::II, fams, {0.7, 0.75}, {0.5, 0.6}, hs);
  const SchauderSweepReport rep_iii =
      run_sweep(SchauderCase::III, fams, {0.3, 0.7}, {0.4}, hs);
  const SchauderSweepReport rep_iv =
      run_sweep(SchauderCase::IV, fams, {0.25, 0.5}, {}, hs);
  for (const SchauderSweepReport* rep : {&rep_i, &rep_ii, &rep_iii, &rep_iv}) {
    ok = ok && rep->all_finite && rep->has_entries;
    ok = ok && rep->doubling_relative_change <= 0.1;
    spread = std::max(spread, rep->worst_group_spread);
  }

  // internal identities of the proofs of cases II and III
  double ident = 0.0;
  for (const TestFamily& f : fams) {
    for (double h : {1.0, 0.25}) {
      const GridFunction u = make_family_function(f, h, 30.0);
      for (double a : {0.3, 0.7}) {
        ident = std::max(ident, case_ii_identity_residual(u, a));
        ident = std::max(ident, case_iii_identity_residual(u, a));
      }
    }
  }
  ok = ok && ident <= 1e-9;

  r.seconds = elapsed(t0);
  r.measured = spread;
  r.passed = ok && spread <= r.limit && r.seconds < 120.0;
  os << "cases I-IV, 4 families, 6 dyadic h-levels; identities " << ident
     << " (<=1e-9); doubling change "
     << std::max({rep_i.doubling_relative_change, rep_ii.doubling_relative_change,
                  rep_iii.doubling_relative_change,
                  rep_iv.doubling_relative_change})
     << "; runtime " << r.seconds << " s";
  r.detail = os.str();
  return r;
}

CriterionResult criterion_baselines(std::mt19937&) {
  CriterionResult r;
  r.id = 14;
  r.name = "regression-baselines";
  r.module = "schauder";
  r.limit = 1e-10;
  const auto t0 = Clock::now();
  Grid g(1.0, -256, 256);
  const GridFunction u = GridFunction::impulse(g, 0);
  const double r1 = schauder_ratio_case_i(u, 0.25, 0.5, 1.0);
  const double r4 = schauder_ratio_case_iv(u, 0.5, 1.0);
  r.seconds = elapsed(t0);
  r.measured =
      std::max(std::fabs(r1 - kBaselineCaseI), std::fabs(r4 - kBaselineCaseIV));
  r.passed = r.measured <= r.limit;
  std::ostringstream os;
  os << "r1=" << r1 << " (frozen " << kBaselineCaseI << "), r4=" << r4
     << " (frozen " << kBaselineCaseIV << ")";
  r.detail = os.str();
  return r;
}

} // namespace

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

std::vector<CriterionResult> run_selftest(const SelftestOptions& opt,
                                          std::ostream& log) {
  std::mt19937 rng(opt.seed == 0 ? 0xd15cf8acu : opt.seed);
  std::vector<CriterionResult> out;

  struct Entry {
    const char* name;
    const char* module;
    std::function<CriterionResult()> fn;
  };
  const Entry entries[] = {
      {"kernel-cross-method", "kernel",
       [&] { return criterion_kernel_cross_method(rng); }},
      {"convolution-identity", "kernel",
       [&] { return criterion_convolution(rng, opt.inject_kernel_fault); }},
      {"difference-identity", "kernel",
       [&] { return criterion_difference_identity(rng); }},
      {"telescoping-tail", "kernel", [&] { return criterion_telescoping(); }},
      {"asymptotic-envelope", "kernel", [&] { return criterion_asymptotics(); }},
      {"semigroup-law", "semigroup",
       [&] { return criterion_semigroup_law(rng); }},
      {"cauchy-richardson", "semigroup", [&] { return criterion_cauchy(rng); }},
      {"inverse-law", "fracops", [&] { return criterion_inverse_law(rng); }},
      {"composition-law", "fracops", [&] { return criterion_composition(rng); }},
      {"quadrature-oracles", "fracops", [&] { return criterion_quadrature(rng); }},
      {"fft-fast-path", "fracops", [&] { return criterion_fft(rng); }},
      {"holder-basics", "holder", [&] { return criterion_holder(rng); }},
      {"schauder-sweeps", "schauder", [&] { return criterion_schauder(rng); }},
      {"regression-baselines", "schauder",
       [&] { return criterion_baselines(rng); }},
  };

  for (const Entry& e : entries) {
    if (!opt.filter.empty() &&
        std::string(e.module).find(opt.filter) == std::string::npos &&
        std::string(e.name).find(opt.filter) == std::string::npos)
      continue;
    CriterionResult c = e.fn();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "[%2d] %-4s %-22s measured=%-12.4g limit=%-10.4g ", c.id,
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                  c.limit);
    log << buf << c.detail << "\n";
    out.push_back(std::move(c));
  }
  return out;
}

} // namespace dfrac
