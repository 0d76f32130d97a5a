#include "dfrac/holder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dfrac/fracops.hpp"

namespace dfrac {

namespace {

void check_index(double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::invalid_argument("holder: 0 < beta <= 1 required");
}

// Widen a ZeroOutside function that is strictly inside its window by the
// support diameter plus the differencing depth, zero-filled. Differences of
// the widened copy then agree with the infinite-lattice values everywhere
// the quotient can still attain its sup.
GridFunction inflate_for_scan(const GridFunction& u, unsigned depth) {
  const auto [lo, hi] = u.support();
  const long diameter = hi - lo + 1;
  const long margin = diameter + static_cast<long>(depth) + 2;
  const Grid& g = u.grid();
  Grid wide(g.h, g.n_min - margin, g.n_max + margin);
  std::vector<double> s(static_cast<size_t>(wide.size()), 0.0);
  std::copy(u.samples().begin(), u.samples().end(),
            s.begin() + static_cast<std::ptrdiff_t>(margin));
  return GridFunction(wide, std::move(s), Extension::ZeroOutside);
}

GridFunction differenced_layer(const GridFunction& u, unsigned l, unsigned s) {
  if (!u.all_valid())
    throw std::invalid_argument("holder: input carries invalid indices");
  const unsigned depth = l + s;
  if (u.compactly_inside(1) && u.has_support())
    return mixed_difference(inflate_for_scan(u, depth), l, s);
  return mixed_difference(u, l, s);
}

SeminormResult pair_scan(const GridFunction& w, double beta) {
  const long N = w.size();
  const long base = w.grid().n_min;
  SeminormResult res{0.0, base, base == w.grid().n_max ? base : base + 1};
  if (N < 2) return res;

  std::vector<double> q(static_cast<size_t>(N), 0.0);
  for (long d = 1; d < N; ++d)
    q[static_cast<size_t>(d)] = std::pow(static_cast<double>(d), -beta);

  const std::vector<double>& v = w.samples();
  double best = -1.0;
  long bj = 0, bm = 1;
  for (long j = 0; j + 1 < N; ++j) {
    const double vj = v[static_cast<size_t>(j)];
    for (long m = j + 1; m < N; ++m) {
      const double cand = std::fabs(v[static_cast<size_t>(m)] - vj) *
                          q[static_cast<size_t>(m - j)];
      if (cand > best) { // strict: first max kept => smallest (j, m)
        best = cand;
        bj = j;
        bm = m;
      }
    }
  }
  res.value = best * std::pow(w.h(), -beta);
  res.j = base + bj;
  res.m = base + bm;
  return res;
}

} // namespace

SeminormResult holder_seminorm(const GridFunction& u, unsigned l, unsigned s,
                               double beta) {
  check_index(beta);
  const GridFunction w = differenced_layer(u, l, s);
  return pair_scan(w, beta);
}

HolderReport holder_norm(const GridFunction& u, HolderIndex idx) {
  check_index(idx.beta);
  HolderReport rep;
  rep.index = idx;

  double max_sup = 0.0, max_semi = 0.0;
  for (unsigned l = 0; l <= idx.k; ++l) {
    for (unsigned s = 0; l + s <= idx.k; ++s) {
      const GridFunction w = differenced_layer(u, l, s);
      if (l == 0 && s == 0) rep.window = w.grid();
      rep.sup_terms[{l, s}] = w.max_abs();
      max_sup = std::max(max_sup, w.max_abs());
      if (l + s == idx.k) {
        const SeminormResult sr = pair_scan(w, idx.beta);
        rep.seminorms[{l, s}] = sr.value;
        rep.argmax_pairs[{l, s}] = {sr.j, sr.m};
        max_semi = std::max(max_semi, sr.value);
      }
    }
  }
  rep.norm = max_sup + max_semi;
  return rep;
}

double double_window_stability(const GridFunction& u, HolderIndex idx) {
  if (u.extension() != Extension::ZeroOutside)
    throw std::invalid_argument(
        "double_window_stability: compactly supported input required");
  const double n1 = holder_norm(u, idx).norm;

  const Grid& g = u.grid();
  const long half = std::max<long>(1, g.size() / 2);
  Grid wide(g.h, g.n_min - half, g.n_max + half);
  std::vector<double> s(static_cast<size_t>(wide.size()), 0.0);
  std::copy(u.samples().begin(), u.samples().end(),
            s.begin() + static_cast<std::ptrdiff_t>(half));
  const double n2 =
      holder_norm(GridFunction(wide, std::move(s), Extension::ZeroOutside), idx)
          .norm;

  if (n1 == 0.0 && n2 == 0.0) return 0.0;
  return std::fabs(n2 - n1) / std::max(std::fabs(n1), 1e-300);
}

} // namespace dfrac
