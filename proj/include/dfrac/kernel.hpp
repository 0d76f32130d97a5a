#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dfrac {

enum class KernelMethod { Recurrence, LogGamma };

/// Precomputed binomial-type kernel
///
///   L_a(0) = 1,   L_a(m) = a(a+1)...(a+m-1) / m!        (m >= 1)
///
/// for a real order parameter a. Off the poles a in {0,-1,-2,...} this equals
/// the binomial coefficient C(m+a-1, m) = Gamma(m+a) / (Gamma(a) m!), and for
/// n -> infinity it behaves like n^(a-1)/Gamma(a). At the poles the kernel is
/// a finite sequence: L_a(n) = 0 for n > -a.
///
/// These sequences are the convolution weights of the one-sided fractional
/// operators: order-a integrals use L_a, order-a derivatives use L_(-a).
struct KernelTable {
  double alpha = 0.0;           ///< order parameter a
  std::vector<double> values;   ///< L_a(0..M), values[0] == 1 exactly
  KernelMethod method = KernelMethod::Recurrence;
  double tail_exponent = -1.0;  ///< a - 1, the power-law decay exponent

  std::size_t max_index() const { return values.size() - 1; }
  double operator[](std::size_t n) const { return values[n]; }
};

/// True when alpha is exactly a nonpositive integer (a Gamma pole).
bool is_gamma_pole(double alpha);

/// Kernel table by the multiplicative recurrence
/// values[m+1] = values[m] * (alpha + m) / (m + 1). Valid for every real
/// alpha, including the poles, where it terminates in exact zeros.
KernelTable kernel_recurrence(double alpha, std::size_t max_index);

/// Kernel table through sign-tracked log-Gamma evaluation of
/// Gamma(m+alpha) / (Gamma(alpha) m!). Serves as an independent cross-check
/// of kernel_recurrence. Throws PoleError at nonpositive integer alpha.
KernelTable kernel_loggamma(double alpha, std::size_t max_index);

/// Single entry L_alpha(n) via log-Gamma (no table). Throws PoleError.
double kernel_value_loggamma(double alpha, std::uint64_t n);

/// First forward difference of a kernel table. By the difference identity
/// values[j+1] - values[j] == L_(alpha-1)(j+1), so the result is returned as
/// the order-(alpha-1) table it reproduces: entry 0 is the conventional 1 and
/// entry j+1 holds the difference d[j]. Requires table length >= 2.
KernelTable forward_difference_kernel(const KernelTable& table);

/// The bare difference sequence d[j] = values[j+1] - values[j].
std::vector<double> forward_difference_sequence(const KernelTable& table);

/// Cauchy product sum_{j<=n} L_alpha(n-j) L_beta(j) for n = 0..N.
/// Identity: equals L_(alpha+beta)(0..N).
std::vector<double> convolve_kernels(double alpha, double beta, std::size_t N);

/// Deviations e(n) = |L_alpha(n) * n^(1-alpha) * Gamma(alpha) - 1| evaluated
/// in the log domain (the Gamma(alpha) factor cancels analytically).
/// Requires alpha off the poles and every n >= 1.
std::vector<double> asymptotic_check(double alpha,
                                     const std::vector<std::uint64_t>& n_values);

/// Single deviation e(n); see asymptotic_check.
double asymptotic_deviation(double alpha, std::uint64_t n);

/// Empirical envelope constant: max of n * e(n) over n in [n_lo, n_hi].
/// e(n) <= C_emp / n is then an empirical (not proven) first-order envelope.
double fit_asymptotic_envelope(double alpha, std::uint64_t n_lo = 10,
                               std::uint64_t n_hi = 100);

/// K with |L_alpha(m)| <= K * m^(alpha-1) for all m >= 1, built as
/// (1 + C_emp) / |Gamma(alpha)| with the envelope fitted on m in [1, 100].
double kernel_bound_constant(double alpha);

/// Integral-comparison bound: sum_{m > M} m^exponent <= M^(exponent+1) /
/// (-exponent-1), valid for exponent < -1 and M >= 1.
double power_tail_sum_bound(double exponent, double M);

struct TelescopingResult {
  double residual;    ///< truncated left-hand side of the telescoping identity
  double tail_bound;  ///< certified bound on the discarded tail
  std::size_t terms;  ///< number of summed terms
};

/// Truncated evaluation of the identity
///   sum_{m>=n} (L_a(m-n) - L_a(m-l)) - sum_{m=l}^{n-1} L_a(m-l) = 0
/// for n > l and 0 < alpha < 1, summing up to m = m_tail and certifying the
/// discarded tail with the power-law envelope. Throws WindowTooSmall when the
/// certified tail bound exceeds `tol`.
TelescopingResult lemma_telescoping_check(double alpha, long n, long l,
                                          std::size_t m_tail, double tol);

/// |sum_{n<=N} L_alpha(n) z^n - (1-z)^{-alpha}| with N chosen so that
/// |z|^N < term_cutoff. Requires |z| < 1.
double generating_function_deviation(double alpha, double z,
                                     double term_cutoff = 1e-14);

/// Partial sum sum_{n=0}^{N} L_alpha(n). Identity: equals L_(alpha+1)(N).
double kernel_partial_sum(const KernelTable& table, std::size_t N);

} // namespace dfrac
