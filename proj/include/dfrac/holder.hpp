#pragma once

#include <map>
#include <utility>

#include "dfrac/grid.hpp"

namespace dfrac {

/// Index (k, beta) of a discrete Hoelder space, 0 < beta <= 1.
struct HolderIndex {
  unsigned k = 0;
  double beta = 1.0;
};

/// Seminorm value plus the pair attaining it (absolute mesh indices,
/// j < m, ties broken to the lexicographically smallest pair).
struct SeminormResult {
  double value = 0.0;
  long j = 0;
  long m = 0;
};

/// sup over index pairs j != m of |w(jh) - w(mh)| / (h^beta |j-m|^beta) with
/// w the (l, s) mixed difference of u.
///
/// For a ZeroOutside u supported strictly inside its window the scan window
/// is first inflated by the support diameter (plus the difference depth), so
/// the reported value equals the sup over the whole lattice; otherwise the
/// scan runs over the given window (shrunk by differencing when the extension
/// is Undefined) and is a lower bound of the lattice sup.
SeminormResult holder_seminorm(const GridFunction& u, unsigned l, unsigned s,
                               double beta);

struct HolderReport {
  HolderIndex index;
  std::map<std::pair<unsigned, unsigned>, double> seminorms;  // l + s == k
  std::map<std::pair<unsigned, unsigned>, double> sup_terms;  // l + s <= k
  std::map<std::pair<unsigned, unsigned>, std::pair<long, long>> argmax_pairs;
  double norm = 0.0;
  Grid window; ///< scan window used for the undifferenced layer
};

/// Norm = max_{l+s<=k} sup |delta^{l,s} u| + max_{l+s=k} seminorm.
HolderReport holder_norm(const GridFunction& u, HolderIndex idx);

/// Relative change of holder_norm when the window is doubled (zero-extended).
/// Certifies that the reported finite-window value approximates the lattice
/// sup; compactly supported u well inside its window yields ~0.
double double_window_stability(const GridFunction& u, HolderIndex idx);

} // namespace dfrac
