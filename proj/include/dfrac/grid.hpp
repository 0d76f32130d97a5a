#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace dfrac {

/// Direction of the one-sided operators. Right-sided operators read samples
/// at indices >= n, left-sided ones at indices <= n.
enum class Side { Right, Left };

/// Finite index window [n_min, n_max] of the uniform mesh {n*h : n integer}.
struct Grid {
  double h = 1.0;
  long n_min = 0;
  long n_max = 0;

  Grid() = default;
  Grid(double step, long lo, long hi);

  long size() const { return n_max - n_min + 1; }
  double point(long n) const { return h * static_cast<double>(n); }
  bool contains(long n) const { return n >= n_min && n <= n_max; }
  bool operator==(const Grid& o) const {
    return h == o.h && n_min == o.n_min && n_max == o.n_max;
  }
};

/// Declared behaviour of a grid function outside its window.
///
///  - ZeroOutside: the function is exactly zero outside the window.
///  - Constant:    it continues with the respective edge sample.
///  - Decay:       only the bound |u(nh)| <= c * d^-p is claimed, where d is
///                 the index distance to the nearest window edge. Values are
///                 never fabricated from the model; it feeds tail bounds only.
///  - Undefined:   nothing is known. Operators either shrink the window or
///                 flag outputs whose out-of-window mass exceeds tolerance.
enum class Extension { ZeroOutside, Constant, Decay, Undefined };

struct DecayModel {
  double p = 0.0; // exponent, must be > 0 when used
  double c = 0.0; // amplitude, must be >= 0
};

/// Samples of u on a Grid plus the extension policy. `valid` (when nonempty)
/// flags indices whose value depends on unavailable out-of-window data beyond
/// the declared tolerance; an empty vector means every index is valid.
class GridFunction {
public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<double> samples,
               Extension extension = Extension::ZeroOutside,
               DecayModel decay = {});

  const Grid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& samples() { return samples_; }
  Extension extension() const { return extension_; }
  void set_extension(Extension e, DecayModel d = {});
  const DecayModel& decay() const { return decay_; }

  long size() const { return grid_.size(); }
  double h() const { return grid_.h; }

  /// Sample by mesh index; out-of-window indices resolve through the
  /// extension (Decay and Undefined read as zero).
  double operator()(long n) const;

  double& at_index(long n);
  double at_index(long n) const;

  // validity flags ----------------------------------------------------------
  bool all_valid() const;
  bool is_valid(long n) const;
  void mark_invalid(long n);
  const std::vector<std::uint8_t>& valid_flags() const { return valid_; }

  // helpers -----------------------------------------------------------------
  static GridFunction impulse(Grid grid, long at, double height = 1.0);

  /// Index range of nonzero samples; {1, 0}-style empty pair when u == 0.
  std::pair<long, long> support() const;
  bool has_support() const;

  /// True when extension is ZeroOutside and every nonzero sample sits at
  /// least `margin` indices away from both window edges.
  bool compactly_inside(long margin = 1) const;

  double max_abs() const;
  double sum() const;

private:
  Grid grid_;
  std::vector<double> samples_;
  Extension extension_ = Extension::ZeroOutside;
  DecayModel decay_;
  std::vector<std::uint8_t> valid_; // empty == all valid
};

} // namespace dfrac
