#include <doctest.h>

#include <cmath>

#include "dfrac/errors.hpp"
#include "dfrac/fracops.hpp"
#include "dfrac/schauder.hpp"

using namespace dfrac;

TEST_CASE("families are compact, deterministic and admissible") {
  for (FamilyKind kind : {FamilyKind::Bump, FamilyKind::Cusp,
                          FamilyKind::RandomCompact, FamilyKind::Impulse}) {
    const TestFamily fam = make_family(kind, 42);
    for (double h : {1.0, 0.25}) {
      const GridFunction u = make_family_function(fam, h, 16.0);
      CHECK(u.compactly_inside(1));
      CHECK(u.max_abs() > 0.0);
      for (double a : {0.1, 0.5, 0.9})
        CHECK(membership_ell(u, a).is_member);
      // same recipe, same samples
      const GridFunction v = make_family_function(fam, h, 16.0);
      for (long n = u.grid().n_min; n <= u.grid().n_max; ++n)
        CHECK(u.at_index(n) == v.at_index(n));
    }
  }
}

TEST_CASE("random family is mesh-coherent") {
  // finer meshes sample the same piecewise-linear profile
  const TestFamily fam = make_family(FamilyKind::RandomCompact, 7);
  const GridFunction coarse = make_family_function(fam, 1.0, 16.0);
  const GridFunction fine = make_family_function(fam, 0.25, 16.0);
  for (long n = coarse.grid().n_min; n <= coarse.grid().n_max; ++n)
    CHECK(fine.at_index(4 * n) == doctest::Approx(coarse.at_index(n)).epsilon(1e-14));
}

TEST_CASE("ratios are invariant under scaling of u") {
  const GridFunction u =
      make_family_function(make_family(FamilyKind::Bump), 0.5, 16.0);
  GridFunction cu = u;
  for (double& v : cu.samples()) v *= 10.0;
  CHECK(schauder_ratio_case_i(cu, 0.25, 0.5, 0.5) ==
        doctest::Approx(schauder_ratio_case_i(u, 0.25, 0.5, 0.5))
            .epsilon(1e-12));
  CHECK(schauder_ratio_case_ii(cu, 0.7, 0.5, 0.5) ==
        doctest::Approx(schauder_ratio_case_ii(u, 0.7, 0.5, 0.5))
            .epsilon(1e-12));
  CHECK(schauder_ratio_case_iii(cu, 1, 0.3, 0.4, 0.5) ==
        doctest::Approx(schauder_ratio_case_iii(u, 1, 0.3, 0.4, 0.5))
            .epsilon(1e-12));

  const double r4a = schauder_ratio_case_iv(u, 0.5, 0.5);
  GridFunction neg = u;
  for (double& v : neg.samples()) v = -v;
  const double r4b = schauder_ratio_case_iv(neg, 0.5, 0.5);
  CHECK(r4a == doctest::Approx(r4b).epsilon(1e-14));
}

TEST_CASE("left-operator ratios mirror the right ones on symmetric data") {
  // bump, cusp and impulse are even; reflection maps one side onto the other
  for (FamilyKind kind : {FamilyKind::Bump, FamilyKind::Impulse}) {
    const GridFunction u = make_family_function(make_family(kind), 0.5, 16.0);
    CHECK(schauder_ratio_case_i(u, 0.25, 0.5, 0.5, Side::Left) ==
          doctest::Approx(schauder_ratio_case_i(u, 0.25, 0.5, 0.5, Side::Right))
              .epsilon(1e-13));
    CHECK(schauder_ratio_case_iv(u, 0.5, 0.5, Side::Left) ==
          doctest::Approx(schauder_ratio_case_iv(u, 0.5, 0.5, Side::Right))
              .epsilon(1e-13));
  }
}

TEST_CASE("case constraints are enforced") {
  const GridFunction u =
      make_family_function(make_family(FamilyKind::Impulse), 1.0, 16.0);
  CHECK_THROWS_AS(schauder_ratio_case_i(u, 0.7, 0.5, 1.0),
                  CaseConstraintViolated);
  CHECK_THROWS_AS(schauder_ratio_case_i(u, 0.5, 0.5, 1.0),
                  CaseConstraintViolated); // the excluded boundary
  CHECK_THROWS_AS(schauder_ratio_case_ii(u, 0.25, 0.5, 1.0),
                  CaseConstraintViolated);
  CHECK_THROWS_AS(schauder_ratio_case_iii(u, 1, 0.5, 0.5, 1.0),
                  CaseConstraintViolated); // k + a + b integer
  CHECK_THROWS_AS(schauder_ratio_case_i(u, 1.2, 0.3, 1.0),
                  std::invalid_argument);
}

TEST_CASE("case III at k = 0 reduces to cases I/II") {
  const GridFunction u =
      make_family_function(make_family(FamilyKind::Cusp), 0.5, 16.0);
  const double a = 0.3, b = 0.4;
  CHECK(schauder_ratio_case_iii(u, 0, a, b, 0.5) ==
        doctest::Approx(schauder_ratio_case_i(u, a, b, 0.5)).epsilon(1e-14));
  const double a2 = 0.75, b2 = 0.6;
  CHECK(schauder_ratio_case_iii(u, 0, a2, b2, 0.5) ==
        doctest::Approx(schauder_ratio_case_ii(u, a2, b2, 0.5)).epsilon(1e-14));
}

TEST_CASE("internal identities of the regularity proofs") {
  for (FamilyKind kind : {FamilyKind::Bump, FamilyKind::Impulse}) {
    const GridFunction u =
        make_family_function(make_family(kind), 0.5, 16.0);
    for (double a : {0.3, 0.7}) {
      CHECK(case_ii_identity_residual(u, a) <= 1e-9);
      CHECK(case_iii_identity_residual(u, a) <= 1e-9);
    }
  }
}

TEST_CASE("mini sweep produces a coherent report") {
  const std::vector<TestFamily> fams = {make_family(FamilyKind::Bump),
                                        make_family(FamilyKind::Impulse)};
  const std::vector<double> hs = {1.0, 0.5, 0.25};
  const SchauderSweepReport rep =
      run_sweep(SchauderCase::I, fams, {0.25}, {0.5}, hs, 16.0);
  CHECK(rep.has_entries);
  CHECK(rep.all_finite);
  CHECK(rep.entries.size() == 2 * 3);
  CHECK(rep.max_ratio >= rep.min_ratio);
  CHECK(rep.min_ratio > 0.0);
  CHECK(rep.worst_group_spread >= 1.0);
  CHECK(rep.worst_group_spread <= 2.0);
  for (const SweepGroupStat& g : rep.groups)
    CHECK(g.max_over_h >= g.min_over_h);
}

TEST_CASE("empty sweep carries the undefined-max flag") {
  const SchauderSweepReport rep =
      run_sweep(SchauderCase::IV, {}, {0.5}, {}, {1.0}, 16.0);
  CHECK(!rep.has_entries);
}

TEST_CASE("sweep rejects bad grids up front") {
  const std::vector<TestFamily> fams = {make_family(FamilyKind::Bump)};
  CHECK_THROWS_AS(
      run_sweep(SchauderCase::I, fams, {0.7}, {0.5}, {1.0}, 16.0),
      CaseConstraintViolated);
}
