#include "dfrac/fft.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace dfrac {

namespace {

// FFTW plan creation is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex mu;
  return mu;
}

struct FftwBuffers {
  std::size_t len = 0;
  double* real = nullptr;
  fftw_complex* spec_u = nullptr;
  fftw_complex* spec_k = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit FftwBuffers(std::size_t L) : len(L) {
    real = fftw_alloc_real(L);
    spec_u = fftw_alloc_complex(L / 2 + 1);
    spec_k = fftw_alloc_complex(L / 2 + 1);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(L), real, spec_u, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(L), spec_u, real, FFTW_ESTIMATE);
  }
  ~FftwBuffers() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(spec_u);
    fftw_free(spec_k);
  }
  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p *= 2;
  return p;
}

} // namespace

GridFunction fft_apply(const GridFunction& u, const OperatorSpec& spec) {
  if (u.extension() != Extension::ZeroOutside)
    throw std::invalid_argument("fft_apply: ZeroOutside extension required");
  if (!std::isfinite(spec.order) || std::fabs(spec.order) >= 10.0)
    throw std::invalid_argument("fft_apply: |order| must be finite and < 10");
  if (std::fabs(spec.h - u.grid().h) > 1e-12 * std::max(spec.h, u.grid().h))
    throw std::invalid_argument("fft_apply: mesh step differs from the grid's");
  if (spec.order == 0.0) return u;

  const Grid& g = u.grid();
  const std::size_t N = static_cast<std::size_t>(g.size());
  const auto kern = cached_kernel(-spec.order, N - 1);
  const double scale = std::pow(g.h, -spec.order);
  const std::size_t L = next_pow2(2 * N);

  FftwBuffers buf(L);

  // forward transform of the padded samples
  for (std::size_t i = 0; i < L; ++i)
    buf.real[i] = i < N ? u.samples()[i] : 0.0;
  fftw_execute_dft_r2c(buf.fwd, buf.real, buf.spec_u);

  // forward transform of the padded kernel
  for (std::size_t i = 0; i < L; ++i)
    buf.real[i] = i < N ? kern->values[i] : 0.0;
  fftw_execute_dft_r2c(buf.fwd, buf.real, buf.spec_k);

  // Right side reads increasing indices: v[i] = sum_j K[j] u[i+j], a
  // correlation, i.e. conj(K^) * u^; Left side is the plain convolution.
  const std::size_t H = L / 2 + 1;
  for (std::size_t i = 0; i < H; ++i) {
    const double ur = buf.spec_u[i][0], ui = buf.spec_u[i][1];
    const double kr = buf.spec_k[i][0];
    double ki = buf.spec_k[i][1];
    if (spec.side == Side::Right) ki = -ki;
    buf.spec_u[i][0] = ur * kr - ui * ki;
    buf.spec_u[i][1] = ur * ki + ui * kr;
  }
  fftw_execute_dft_c2r(buf.inv, buf.spec_u, buf.real);

  std::vector<double> out(N);
  const double norm = scale / static_cast<double>(L);
  for (std::size_t i = 0; i < N; ++i) out[i] = buf.real[i] * norm;
  return GridFunction(g, std::move(out), Extension::ZeroOutside);
}

} // namespace dfrac
