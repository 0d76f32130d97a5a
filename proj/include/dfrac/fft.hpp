#pragma once

#include "dfrac/fracops.hpp"
#include "dfrac/grid.hpp"

namespace dfrac {

/// O(N log N) evaluation of frac_apply_series for ZeroOutside inputs: the
/// one-sided kernel series over the window is a finite correlation
/// (Right side) or convolution (Left side) and is carried out with real FFTs
/// zero-padded past 2N - 1. Output matches the direct summation to roundoff.
GridFunction fft_apply(const GridFunction& u, const OperatorSpec& spec);

} // namespace dfrac
