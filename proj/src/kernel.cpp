#include "dfrac/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dfrac/errors.hpp"

namespace dfrac {

namespace {

struct SignedLog {
  double log_abs;
  int sign;
};

// log|Gamma(x)| with explicit sign. Gamma alternates sign between the poles:
// positive on (0, inf), negative on (-1, 0), positive on (-2, -1), ...
SignedLog signed_lgamma(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("signed_lgamma: non-finite argument");
  if (x > 0.0) return {std::lgamma(x), 1};
  if (x == std::floor(x))
    throw PoleError("Gamma evaluated at a nonpositive integer");
  const long k = static_cast<long>(std::floor(-x)); // x in (-k-1, -k)
  return {std::lgamma(x), (k % 2 == 0) ? -1 : 1};
}

void require_finite(double alpha) {
  if (!std::isfinite(alpha))
    throw std::invalid_argument("kernel order must be finite");
}

} // namespace

bool is_gamma_pole(double alpha) {
  return alpha <= 0.0 && alpha == std::floor(alpha);
}

KernelTable kernel_recurrence(double alpha, std::size_t max_index) {
  require_finite(alpha);
  KernelTable t;
  t.alpha = alpha;
  t.method = KernelMethod::Recurrence;
  t.tail_exponent = alpha - 1.0;
  t.values.resize(max_index + 1);
  t.values[0] = 1.0;
  double v = 1.0;
  for (std::size_t m = 0; m < max_index; ++m) {
    v *= (alpha + static_cast<double>(m)) / (static_cast<double>(m) + 1.0);
    t.values[m + 1] = v;
  }
  return t;
}

double kernel_value_loggamma(double alpha, std::uint64_t n) {
  require_finite(alpha);
  if (is_gamma_pole(alpha))
    throw PoleError("kernel_value_loggamma: alpha is a nonpositive integer");
  if (n == 0) return 1.0;
  const double nd = static_cast<double>(n);
  const SignedLog num = signed_lgamma(nd + alpha);
  const SignedLog den = signed_lgamma(alpha);
  const double lg = num.log_abs - den.log_abs - std::lgamma(nd + 1.0);
  return static_cast<double>(num.sign * den.sign) * std::exp(lg);
}

KernelTable kernel_loggamma(double alpha, std::size_t max_index) {
  require_finite(alpha);
  if (is_gamma_pole(alpha))
    throw PoleError("kernel_loggamma: alpha is a nonpositive integer");
  KernelTable t;
  t.alpha = alpha;
  t.method = KernelMethod::LogGamma;
  t.tail_exponent = alpha - 1.0;
  t.values.resize(max_index + 1);
  t.values[0] = 1.0;
  const SignedLog den = signed_lgamma(alpha);
  for (std::size_t m = 1; m <= max_index; ++m) {
    const double md = static_cast<double>(m);
    const SignedLog num = signed_lgamma(md + alpha);
    const double lg = num.log_abs - den.log_abs - std::lgamma(md + 1.0);
    t.values[m] = static_cast<double>(num.sign * den.sign) * std::exp(lg);
  }
  return t;
}

std::vector<double> forward_difference_sequence(const KernelTable& table) {
  if (table.values.size() < 2)
    throw std::invalid_argument("forward_difference_sequence: table length < 2");
  std::vector<double> d(table.values.size() - 1);
  for (std::size_t j = 0; j + 1 < table.values.size(); ++j)
    d[j] = table.values[j + 1] - table.values[j];
  return d;
}

KernelTable forward_difference_kernel(const KernelTable& table) {
  const std::vector<double> d = forward_difference_sequence(table);
  KernelTable out;
  out.alpha = table.alpha - 1.0;
  out.method = table.method;
  out.tail_exponent = out.alpha - 1.0;
  out.values.resize(d.size() + 1);
  out.values[0] = 1.0;
  std::copy(d.begin(), d.end(), out.values.begin() + 1);
  return out;
}

std::vector<double> convolve_kernels(double alpha, double beta, std::size_t N) {
  const KernelTable a = kernel_recurrence(alpha, N);
  const KernelTable b = kernel_recurrence(beta, N);
  std::vector<double> out(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) acc += a.values[n - j] * b.values[j];
    out[n] = acc;
  }
  return out;
}

double asymptotic_deviation(double alpha, std::uint64_t n) {
  require_finite(alpha);
  if (is_gamma_pole(alpha))
    throw PoleError("asymptotic_deviation: alpha is a nonpositive integer");
  if (n == 0) throw std::invalid_argument("asymptotic_deviation: n >= 1 required");
  // L_a(n) n^(1-a) Gamma(a) = Gamma(n+a) n^(1-a) / Gamma(n+1); the Gamma(a)
  // factor cancels, which keeps the exponent small and well conditioned.
  const double nd = static_cast<double>(n);
  const SignedLog num = signed_lgamma(nd + alpha);
  const double lg = num.log_abs - std::lgamma(nd + 1.0) + (1.0 - alpha) * std::log(nd);
  return std::fabs(static_cast<double>(num.sign) * std::exp(lg) - 1.0);
}

std::vector<double> asymptotic_check(double alpha,
                                     const std::vector<std::uint64_t>& n_values) {
  std::vector<double> out;
  out.reserve(n_values.size());
  for (std::uint64_t n : n_values) out.push_back(asymptotic_deviation(alpha, n));
  return out;
}

double fit_asymptotic_envelope(double alpha, std::uint64_t n_lo, std::uint64_t n_hi) {
  if (n_lo == 0 || n_lo > n_hi)
    throw std::invalid_argument("fit_asymptotic_envelope: bad fit range");
  double c = 0.0;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n)
    c = std::max(c, static_cast<double>(n) * asymptotic_deviation(alpha, n));
  return c;
}

double kernel_bound_constant(double alpha) {
  // Fit from m = 1 so the envelope covers every index the bound is used on.
  const double c_emp = fit_asymptotic_envelope(alpha, 1, 100);
  const SignedLog g = signed_lgamma(alpha);
  return (1.0 + c_emp) * std::exp(-g.log_abs);
}

double power_tail_sum_bound(double exponent, double M) {
  if (!(exponent < -1.0))
    throw std::invalid_argument("power_tail_sum_bound: exponent must be < -1");
  if (!(M >= 1.0))
    throw std::invalid_argument("power_tail_sum_bound: M >= 1 required");
  return std::pow(M, exponent + 1.0) / (-exponent - 1.0);
}

TelescopingResult lemma_telescoping_check(double alpha, long n, long l,
                                          std::size_t m_tail, double tol) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("lemma_telescoping_check: need 0 < alpha < 1");
  if (n <= l)
    throw std::invalid_argument("lemma_telescoping_check: need n > l");
  const long d = n - l;
  if (m_tail < static_cast<std::size_t>(d) + 16)
    throw std::invalid_argument("lemma_telescoping_check: m_tail too small");

  // Certified tail: |L_a(m-n) - L_a(m-l)| <= d * K * (m-n+1)^(a-2) from the
  // difference identity, then integral comparison past m = m_tail.
  const double K = kernel_bound_constant(alpha - 1.0);
  const double first = static_cast<double>(m_tail) - static_cast<double>(n) + 1.0;
  const double bound =
      static_cast<double>(d) * K * power_tail_sum_bound(alpha - 2.0, first);
  if (bound > tol)
    throw WindowTooSmall("lemma_telescoping_check: certified tail bound " +
                         std::to_string(bound) + " exceeds tolerance");

  const std::size_t len = m_tail + static_cast<std::size_t>(d);
  const KernelTable t = kernel_recurrence(alpha, len);

  double head = 0.0; // sum_{m=l}^{n-1} L_a(m-l)
  for (long k = 0; k < d; ++k) head += t.values[static_cast<std::size_t>(k)];

  double series = 0.0; // sum_{m=n}^{m_tail + n ...} pairwise differences
  std::size_t terms = 0;
  for (std::size_t j = 0; n + static_cast<long>(j) <= static_cast<long>(m_tail); ++j) {
    series += t.values[j] - t.values[j + static_cast<std::size_t>(d)];
    ++terms;
  }
  return {series - head, bound, terms};
}

double generating_function_deviation(double alpha, double z, double term_cutoff) {
  require_finite(alpha);
  if (!(std::fabs(z) < 1.0))
    throw std::invalid_argument("generating_function_deviation: |z| < 1 required");
  std::size_t N = 4;
  if (z != 0.0) {
    const double n_est = std::log(term_cutoff) / std::log(std::fabs(z));
    N = static_cast<std::size_t>(std::max(4.0, std::ceil(n_est)));
  }
  double acc = 0.0, v = 1.0, zn = 1.0;
  for (std::size_t m = 0; m <= N; ++m) {
    acc += v * zn;
    v *= (alpha + static_cast<double>(m)) / (static_cast<double>(m) + 1.0);
    zn *= z;
  }
  const double ref = std::exp(-alpha * std::log1p(-z));
  return std::fabs(acc - ref);
}

double kernel_partial_sum(const KernelTable& table, std::size_t N) {
  if (N >= table.values.size())
    throw std::invalid_argument("kernel_partial_sum: N beyond table");
  double s = 0.0;
  for (std::size_t m = 0; m <= N; ++m) s += table.values[m];
  return s;
}

} // namespace dfrac
