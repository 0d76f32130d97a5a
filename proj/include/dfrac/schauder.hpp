#pragma once

#include <string>
#include <vector>

#include "dfrac/grid.hpp"

namespace dfrac {

/// The four regularity-gain cases of the right-sided fractional integral:
///   I:   C^{0,beta} -> C^{0,beta+alpha}          (alpha + beta < 1)
///   II:  C^{0,beta} -> C^{1,beta+alpha-1}        (alpha + beta > 1)
///   III: C^{k,beta} -> C^{l,s}, l = floor(k+beta+alpha), s the remainder
///   IV:  bounded    -> C^{0,alpha}
/// Each is checked empirically as boundedness of the norm ratio, uniformly
/// over the mesh step and over input families.
enum class SchauderCase { I, II, III, IV };

enum class FamilyKind { Bump, Cusp, RandomCompact, Impulse };

/// Recipe for generating test inputs on any mesh: all families live on the
/// fixed physical interval [-radius, radius], are compactly supported and
/// admissible for every integral order under test.
struct TestFamily {
  FamilyKind kind = FamilyKind::Bump;
  std::string name = "bump";
  unsigned seed = 0;       ///< RandomCompact master profile seed
  double radius = 8.0;     ///< physical support radius
  double cusp_exponent = 0.5;
};

TestFamily make_family(FamilyKind kind, unsigned seed = 0,
                       double cusp_exponent = 0.5);

/// Sample the family on the window [-round(half_width/h), round(half_width/h)]
/// of the step-h mesh, ZeroOutside.
GridFunction make_family_function(const TestFamily& fam, double h,
                                  double half_width);

// Case ratios. All validate their constraint (with a 1e-6 exclusion band
// around the boundary) and throw CaseConstraintViolated otherwise. The left
// operator mirrors the right one under reflection through the origin; it is
// exposed for completeness.
double schauder_ratio_case_i(const GridFunction& u, double alpha, double beta,
                             double h, Side side = Side::Right);
double schauder_ratio_case_ii(const GridFunction& u, double alpha, double beta,
                              double h, Side side = Side::Right);
double schauder_ratio_case_iii(const GridFunction& u, unsigned k, double alpha,
                               double beta, double h, Side side = Side::Right);
double schauder_ratio_case_iv(const GridFunction& u, double alpha, double h,
                              Side side = Side::Right);

/// Relative residual of delta(delta^-alpha u) == delta^(1-alpha) u.
double case_ii_identity_residual(const GridFunction& u, double alpha);
/// Relative residual of delta^-alpha(delta u) == delta(delta^-alpha u).
double case_iii_identity_residual(const GridFunction& u, double alpha);

struct SweepEntry {
  std::string family;
  double alpha = 0.0;
  double beta = 0.0;
  double h = 0.0;
  double ratio = 0.0;
};

struct SweepGroupStat {
  std::string family;
  double alpha = 0.0;
  double beta = 0.0;
  double max_over_h = 0.0;
  double min_over_h = 0.0;
};

struct SchauderSweepReport {
  SchauderCase case_id = SchauderCase::I;
  std::vector<SweepEntry> entries;
  std::vector<SweepGroupStat> groups;
  bool has_entries = false;
  bool all_finite = true;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double worst_group_spread = 0.0;  ///< max over groups of max/min across h
  double doubling_relative_change = 0.0; ///< global max recomputed at 2x width
};

/// Evaluate the case ratio over families x alphas x betas x h_list on windows
/// [-half_width, half_width]. Case IV ignores betas. All case constraints are
/// validated up front.
SchauderSweepReport run_sweep(SchauderCase c,
                              const std::vector<TestFamily>& families,
                              const std::vector<double>& alphas,
                              const std::vector<double>& betas,
                              const std::vector<double>& h_list,
                              double half_width = 30.0,
                              Side side = Side::Right);

} // namespace dfrac
