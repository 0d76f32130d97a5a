#include "dfrac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

#include "dfrac/errors.hpp"

namespace dfrac {

namespace {

QuadratureRule golub_welsch(const std::vector<double>& diag,
                            const std::vector<double>& offdiag, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag[static_cast<size_t>(i)];
    if (i > 0) {
      J(i, i - 1) = offdiag[static_cast<size_t>(i - 1)];
      J(i - 1, i) = offdiag[static_cast<size_t>(i - 1)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

// w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2), evaluated through the
// e^{-x/2}-scaled three-term recurrence. Eigenvector-based weights lose all
// relative accuracy once they drop below ~1e-32 (the squared noise floor of
// the eigensolver), which matters here because the integrands carry
// polynomial factors as large as t^N; the scaled recurrence stays accurate
// and underflows to an honest zero instead.
double laguerre_weight(int n, double x) {
  const double half = std::exp(-0.5 * x);
  double lm = half;              // scaled L_0
  double l = (1.0 - x) * half;   // scaled L_1
  for (int k = 1; k <= n; ++k) {
    const double next =
        ((2.0 * k + 1.0 - x) * l - static_cast<double>(k) * lm) /
        (static_cast<double>(k) + 1.0);
    lm = l;
    l = next;
  }
  const double np1 = static_cast<double>(n) + 1.0;
  return x * std::exp(-x) / (np1 * np1 * l * l);
}

const QuadratureRule& cached_rule(int n, bool laguerre) {
  static std::mutex mu;
  static std::map<std::pair<int, bool>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, laguerre}];
  if (!slot) {
    std::vector<double> diag(static_cast<size_t>(n), 0.0);
    std::vector<double> off(static_cast<size_t>(n > 0 ? n - 1 : 0), 0.0);
    double mu0;
    if (laguerre) {
      for (int i = 0; i < n; ++i)
        diag[static_cast<size_t>(i)] = 2.0 * i + 1.0;
      for (int i = 1; i < n; ++i) off[static_cast<size_t>(i - 1)] = i;
      mu0 = 1.0;
    } else {
      for (int i = 1; i < n; ++i)
        off[static_cast<size_t>(i - 1)] =
            static_cast<double>(i) / std::sqrt(4.0 * i * i - 1.0);
      mu0 = 2.0;
    }
    auto rule = std::make_unique<QuadratureRule>(golub_welsch(diag, off, mu0));
    if (laguerre) {
      for (std::size_t i = 0; i < rule->nodes.size(); ++i)
        rule->weights[i] = laguerre_weight(n, rule->nodes[i]);
    }
    slot = std::move(rule);
  }
  return *slot;
}

using VectorFn = std::function<void(double, std::vector<double>&)>;

// integral_a^b f(x) dx of a vector-valued integrand, composite 16-point
// Gauss-Legendre with `panels` panels.
std::vector<double> composite_legendre(const VectorFn& f, double a, double b,
                                       int panels, std::size_t dim) {
  const QuadratureRule& rule = gauss_legendre(16);
  std::vector<double> acc(dim, 0.0), tmp(dim, 0.0);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      f(mid + half * rule.nodes[q], tmp);
      const double w = half * rule.weights[q];
      for (std::size_t i = 0; i < dim; ++i) acc[i] += w * tmp[i];
    }
  }
  return acc;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

// Shared state of both Gamma-formula evaluations on a normalized compact
// sample vector. `step` is +1 for Right (reads to larger indices).
struct QuadCore {
  const std::vector<double>* work;
  long step;
  double alpha;
  bool derivative;

  long reach(long i) const {
    const long N = static_cast<long>(work->size());
    return step > 0 ? N - 1 - i : i;
  }

  // T_t applied with ZeroOutside semantics, t <= 1; `minus_one` evaluates
  // (T_t - 1) with the expm1-stable j = 0 coefficient.
  void poisson_apply(double t, bool minus_one, std::vector<double>& out) const {
    const std::vector<double>& u = *work;
    const long N = static_cast<long>(u.size());
    std::vector<double> w;
    double g = std::exp(-t);
    double cum = 0.0;
    for (int j = 0; j < 400; ++j) {
      w.push_back(g);
      cum += g;
      if (1.0 - cum < 1e-18) break;
      g *= t / (j + 1.0);
    }
    const long J = static_cast<long>(w.size()) - 1;
    const double w0 = minus_one ? std::expm1(-t) : w[0];
    for (long i = 0; i < N; ++i) {
      const long r = std::min(J, reach(i));
      double acc = w0 * u[static_cast<size_t>(i)];
      for (long j = 1; j <= r; ++j)
        acc += w[static_cast<size_t>(j)] * u[static_cast<size_t>(i + step * j)];
      out[static_cast<size_t>(i)] = acc;
    }
  }

  // Segment (0,1] after t = e^-x: integrand at x.
  //   integral:   e^(-alpha x) T_t u
  //   derivative: e^(+alpha x) (T_t - 1) u, evaluated with grouped exponents
  //               so that nothing overflows as x grows
  void segment_a(double x, std::vector<double>& out) const {
    const std::vector<double>& u = *work;
    const long N = static_cast<long>(u.size());
    const double t = std::exp(-x);
    if (!derivative) {
      poisson_apply(t, false, out);
      const double c = std::exp(-alpha * x);
      for (double& v : out) v *= c;
      return;
    }
    const double c0 = alpha * x < 700.0 ? std::expm1(-t) * std::exp(alpha * x)
                                        : -std::exp((alpha - 1.0) * x);
    for (long i = 0; i < N; ++i) out[static_cast<size_t>(i)] = c0 * u[static_cast<size_t>(i)];
    double lg_fact = 0.0; // lgamma(j + 1)
    for (long j = 1; j <= 400; ++j) {
      lg_fact += std::log(static_cast<double>(j));
      const double c = std::exp((alpha - static_cast<double>(j)) * x - t - lg_fact);
      if (c < 1e-22) break;
      for (long i = 0; i < N; ++i) {
        if (j > reach(i)) continue;
        out[static_cast<size_t>(i)] += c * u[static_cast<size_t>(i + step * j)];
      }
    }
  }

  // Segment [1, inf): Gauss-Laguerre against the e^-t supplied by the
  // Poisson weights. With t = 1 + s,
  //   integral_1^inf e^-t P(t) t^expo dt = e^-1 sum_i w_i P(1+s_i)(1+s_i)^expo
  // where P(t) = sum_j t^j/j! u(n + step j).
  std::vector<double> segment_b(int order) const {
    const std::vector<double>& u = *work;
    const long N = static_cast<long>(u.size());
    const double expo = derivative ? -1.0 - alpha : alpha - 1.0;
    const QuadratureRule& rule = gauss_laguerre(order);
    std::vector<double> acc(static_cast<size_t>(N), 0.0);
    long max_reach = 0;
    for (long i = 0; i < N; ++i) max_reach = std::max(max_reach, reach(i));
    std::vector<double> m(static_cast<size_t>(max_reach) + 1);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = rule.nodes[q];
      const double t = 1.0 + s;
      m[0] = 1.0;
      for (long j = 1; j <= max_reach; ++j)
        m[static_cast<size_t>(j)] =
            m[static_cast<size_t>(j - 1)] * t / static_cast<double>(j);
      const double c =
          rule.weights[q] * std::exp(-1.0) * std::pow(t, expo);
      for (long i = 0; i < N; ++i) {
        const long r = reach(i);
        double p = 0.0;
        for (long j = 0; j <= r; ++j)
          p += m[static_cast<size_t>(j)] * u[static_cast<size_t>(i + step * j)];
        acc[static_cast<size_t>(i)] += c * p;
      }
    }
    return acc;
  }
};

GridFunction gamma_formula_apply(const GridFunction& u, double alpha, Side side,
                                 const QuadratureConfig& cfg, bool derivative) {
  if (!(alpha >= cfg.alpha_margin && alpha <= 1.0 - cfg.alpha_margin))
    throw std::invalid_argument(
        "quadrature: alpha must stay away from {0, 1} by the configured margin");

  const Grid& g = u.grid();
  std::vector<double> work(u.samples());

  // Reduce to exact zero tails on the reading side.
  switch (u.extension()) {
    case Extension::ZeroOutside:
      break;
    case Extension::Constant: {
      const double edge = side == Side::Right ? work.back() : work.front();
      if (edge != 0.0) {
        if (!derivative)
          throw NotInDomain("quadrature: constant tail is not summable "
                            "against an integral kernel");
        for (double& x : work) x -= edge;
      }
      break;
    }
    default:
      throw std::invalid_argument(
          "quadrature: compactly supported input required");
  }

  const double scale_u = [&] {
    double m = 0.0;
    for (double v : work) m = std::max(m, std::fabs(v));
    return m;
  }();
  if (scale_u == 0.0) {
    return GridFunction(g, std::vector<double>(work.size(), 0.0),
                        Extension::ZeroOutside);
  }
  for (double& v : work) v /= scale_u;

  QuadCore core{&work, side == Side::Right ? 1L : -1L, alpha, derivative};
  const std::size_t dim = work.size();

  // ---- (0, 1] via t = e^-x on [0, X], certified truncation ---------------
  const double eps_a = 0.02 * cfg.target;
  const double X = derivative
                       ? std::log(2.0 / (eps_a * (1.0 - alpha))) / (1.0 - alpha)
                       : std::log(1.0 / (eps_a * alpha)) / alpha;
  VectorFn fa = [&core](double x, std::vector<double>& out) {
    core.segment_a(x, out);
  };
  int panels = std::max(4, static_cast<int>(std::ceil(X / 16.0)));
  std::vector<double> seg_a = composite_legendre(fa, 0.0, X, panels, dim);
  bool converged_a = false;
  for (int lvl = 0; lvl < cfg.max_panel_doublings; ++lvl) {
    panels *= 2;
    std::vector<double> refined = composite_legendre(fa, 0.0, X, panels, dim);
    const double d = max_abs_diff(refined, seg_a);
    seg_a = std::move(refined);
    if (d <= 0.5 * cfg.target) {
      converged_a = true;
      break;
    }
  }
  if (!converged_a)
    throw QuadratureNotConverged("quadrature: panel refinement on (0,1] "
                                 "did not reach the target");

  // ---- [1, inf) via Gauss-Laguerre orders ---------------------------------
  static const int orders[] = {8, 12, 16, 24, 32, 48, 64, 96, 128, 160, 192};
  std::vector<double> seg_b;
  bool converged_b = false;
  for (int order : orders) {
    if (order > cfg.max_laguerre_order) break;
    std::vector<double> refined = core.segment_b(order);
    if (!seg_b.empty() && max_abs_diff(refined, seg_b) <= 0.5 * cfg.target) {
      seg_b = std::move(refined);
      converged_b = true;
      break;
    }
    seg_b = std::move(refined);
  }
  if (!converged_b)
    throw QuadratureNotConverged("quadrature: Gauss-Laguerre refinement on "
                                 "[1,inf) did not reach the target");

  // ---- assemble ------------------------------------------------------------
  const double pref =
      derivative ? std::pow(g.h, -alpha) / std::tgamma(-alpha)
                 : std::pow(g.h, alpha) / std::tgamma(alpha);
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double v = seg_a[i] + seg_b[i];
    if (derivative) v -= work[i] / alpha; // exact integral of -u t^(-1-alpha)
    out[i] = pref * scale_u * v;
  }
  return GridFunction(g, std::move(out), Extension::ZeroOutside);
}

} // namespace

const QuadratureRule& gauss_laguerre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: order >= 1");
  return cached_rule(n, true);
}

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order >= 1");
  return cached_rule(n, false);
}

GridFunction frac_integral_quadrature(const GridFunction& u, double alpha,
                                      Side side, const QuadratureConfig& cfg) {
  return gamma_formula_apply(u, alpha, side, cfg, false);
}

GridFunction frac_derivative_quadrature(const GridFunction& u, double alpha,
                                        Side side, const QuadratureConfig& cfg) {
  return gamma_formula_apply(u, alpha, side, cfg, true);
}

} // namespace dfrac
