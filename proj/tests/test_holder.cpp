#include <doctest.h>

#include <cmath>
#include <random>

#include "dfrac/fracops.hpp"
#include "dfrac/holder.hpp"

using namespace dfrac;

namespace {

GridFunction random_compact(Grid g, long lo, long hi, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> s(static_cast<size_t>(g.size()), 0.0);
  for (long n = lo; n <= hi; ++n)
    s[static_cast<size_t>(n - g.n_min)] = dist(rng);
  return GridFunction(g, std::move(s), Extension::ZeroOutside);
}

// independent oracle: exhaustive pair scan over the inflated window
double brute_force_seminorm(const GridFunction& u, double beta, long extra) {
  const Grid& g = u.grid();
  double best = 0.0;
  for (long j = g.n_min - extra; j <= g.n_max + extra; ++j)
    for (long m = j + 1; m <= g.n_max + extra; ++m) {
      const double q = std::fabs(u(j) - u(m)) /
                       (std::pow(g.h, beta) *
                        std::pow(static_cast<double>(m - j), beta));
      best = std::max(best, q);
    }
  return best;
}

} // namespace

TEST_CASE("constants have zero seminorm") {
  Grid g(1.0, -10, 10);
  std::vector<double> s(21, 7.5);
  const GridFunction u(g, std::move(s), Extension::Constant);
  for (double beta : {0.3, 1.0}) {
    CHECK(holder_seminorm(u, 0, 0, beta).value == 0.0);
    CHECK(holder_seminorm(u, 1, 0, beta).value == 0.0);
  }
}

TEST_CASE("linear function at beta = 1 has seminorm |slope|") {
  Grid g(0.25, -40, 40);
  std::vector<double> s(static_cast<size_t>(g.size()));
  for (long n = -40; n <= 40; ++n)
    s[static_cast<size_t>(n + 40)] = -2.5 * g.point(n);
  const GridFunction u(g, std::move(s), Extension::Undefined);
  CHECK(holder_seminorm(u, 0, 0, 1.0).value ==
        doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("impulse seminorm equals the exhaustive pair scan") {
  Grid g(1.0, -8, 8);
  const GridFunction u = GridFunction::impulse(g, 0);
  const SeminormResult r = holder_seminorm(u, 0, 0, 0.5);
  CHECK(r.value == doctest::Approx(brute_force_seminorm(u, 0.5, 4)).epsilon(1e-14));
  // adjacent pairs attain the max: |1 - 0| / 1^0.5 = 1 at (-1, 0)
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.j == -1);
  CHECK(r.m == 0);
}

TEST_CASE("random compact data match the brute-force oracle") {
  Grid g(1.0, -12, 12);
  const GridFunction u = random_compact(g, -9, 9, 3);
  for (double beta : {0.2, 0.5, 0.9, 1.0})
    CHECK(holder_seminorm(u, 0, 0, beta).value ==
          doctest::Approx(brute_force_seminorm(u, beta, 30)).epsilon(1e-13));
}

TEST_CASE("scaling homogeneity") {
  Grid g(0.5, -16, 16);
  const GridFunction u = random_compact(g, -10, 10, 5);
  GridFunction cu = u;
  for (double& v : cu.samples()) v *= -11.0;
  const double a = holder_seminorm(u, 1, 0, 0.4).value;
  const double b = holder_seminorm(cu, 1, 0, 0.4).value;
  CHECK(b == doctest::Approx(11.0 * a).epsilon(1e-12));
}

TEST_CASE("window monotonicity") {
  Grid g(1.0, -6, 6);
  const GridFunction u = random_compact(g, -6, 6, 7); // support touches edges
  Grid gw(1.0, -12, 12);
  std::vector<double> s(25, 0.0);
  for (long n = -6; n <= 6; ++n)
    s[static_cast<size_t>(n + 12)] = u.at_index(n);
  const GridFunction w(gw, std::move(s), Extension::ZeroOutside);
  CHECK(holder_seminorm(w, 0, 0, 0.5).value >=
        holder_seminorm(u, 0, 0, 0.5).value - 1e-15);
}

TEST_CASE("mixed difference order can be exchanged") {
  Grid g(1.0, -14, 14);
  const GridFunction u = random_compact(g, -8, 8, 11);
  const GridFunction a = mixed_difference(mixed_difference(u, 1, 0), 0, 1);
  const GridFunction b = mixed_difference(mixed_difference(u, 0, 1), 1, 0);
  const double sa = holder_seminorm(a, 0, 0, 0.6).value;
  const double sb = holder_seminorm(b, 0, 0, 0.6).value;
  CHECK(sa == doctest::Approx(sb).epsilon(1e-14));
}

TEST_CASE("adjacent-pair quotients are a lower bound") {
  Grid g(0.5, -16, 16);
  const GridFunction u = random_compact(g, -10, 10, 13);
  const double semi = holder_seminorm(u, 0, 0, 0.7).value;
  double adjacent = 0.0;
  for (long n = -16; n < 16; ++n)
    adjacent = std::max(adjacent, std::fabs(u(n + 1) - u(n)) /
                                      std::pow(0.5, 0.7));
  CHECK(semi >= adjacent - 1e-15);
}

TEST_CASE("argmax tie-break is lexicographic") {
  Grid g(1.0, 0, 2);
  const GridFunction u(g, {1.0, 0.0, 1.0}, Extension::Undefined);
  const SeminormResult r = holder_seminorm(u, 0, 0, 0.5);
  // pairs (0,1) and (1,2) both attain 1; the smaller pair wins
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.j == 0);
  CHECK(r.m == 1);
}

TEST_CASE("norm assembly") {
  SUBCASE("constant at k = 0") {
    Grid g(1.0, -5, 5);
    std::vector<double> s(11, -3.0);
    const GridFunction u(g, std::move(s), Extension::Constant);
    const HolderReport rep = holder_norm(u, {0, 0.5});
    CHECK(rep.norm == doctest::Approx(3.0));
  }
  SUBCASE("linear on a symmetric window, k = 1, beta = 1") {
    Grid g(1.0, -10, 10);
    std::vector<double> s(21);
    for (long n = -10; n <= 10; ++n) s[static_cast<size_t>(n + 10)] = g.point(n);
    const GridFunction u(g, std::move(s), Extension::Undefined);
    const HolderReport rep = holder_norm(u, {1, 1.0});
    // first differences are the constants -1 and +1, their seminorms vanish
    CHECK(rep.seminorms.at({1, 0}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rep.seminorms.at({0, 1}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rep.norm == doctest::Approx(10.0)); // max(sup|u|, 1) + 0
  }
  SUBCASE("impulse at k = 0: sup plus adjacent-pair seminorm") {
    Grid g(1.0, -8, 8);
    const GridFunction u = GridFunction::impulse(g, 0);
    const HolderReport rep = holder_norm(u, {0, 0.5});
    CHECK(rep.norm == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("double-window stability") {
  SUBCASE("interior support is already converged") {
    Grid g(1.0, -32, 32);
    const GridFunction u = random_compact(g, -8, 8, 17);
    CHECK(double_window_stability(u, {0, 0.5}) <= 1e-12);
    CHECK(double_window_stability(u, {1, 0.4}) <= 1e-12);
  }
  SUBCASE("zero function is stable") {
    Grid g(1.0, -8, 8);
    GridFunction u(g, std::vector<double>(17, 0.0), Extension::ZeroOutside);
    CHECK(double_window_stability(u, {0, 0.5}) == 0.0);
  }
  SUBCASE("edge-supported data are flagged by a visible change") {
    Grid g(1.0, 0, 16);
    std::vector<double> s(17, 0.0);
    for (long n = 0; n <= 16; ++n) s[static_cast<size_t>(n)] = 1.0;
    const GridFunction u(g, std::move(s), Extension::ZeroOutside);
    // widening exposes the cliff at the former edge to more distant pairs
    CHECK(double_window_stability(u, {0, 0.2}) >= 0.5);
  }
}
