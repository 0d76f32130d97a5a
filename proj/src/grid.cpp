#include "dfrac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfrac {

Grid::Grid(double step, long lo, long hi) : h(step), n_min(lo), n_max(hi) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("Grid: mesh step must be positive and finite");
  if (lo > hi) throw std::invalid_argument("Grid: empty index window");
}

GridFunction::GridFunction(Grid grid, std::vector<double> samples,
                           Extension extension, DecayModel decay)
    : grid_(grid), samples_(std::move(samples)), extension_(extension),
      decay_(decay) {
  if (static_cast<long>(samples_.size()) != grid_.size())
    throw std::invalid_argument("GridFunction: sample count != window size");
  if (extension_ == Extension::Decay) {
    if (!(decay_.p > 0.0) || !(decay_.c >= 0.0))
      throw std::invalid_argument("GridFunction: Decay needs p > 0, c >= 0");
  }
}

void GridFunction::set_extension(Extension e, DecayModel d) {
  if (e == Extension::Decay && (!(d.p > 0.0) || !(d.c >= 0.0)))
    throw std::invalid_argument("GridFunction: Decay needs p > 0, c >= 0");
  extension_ = e;
  decay_ = d;
}

double GridFunction::operator()(long n) const {
  if (grid_.contains(n)) return samples_[static_cast<size_t>(n - grid_.n_min)];
  switch (extension_) {
    case Extension::ZeroOutside: return 0.0;
    case Extension::Constant:
      return n < grid_.n_min ? samples_.front() : samples_.back();
    case Extension::Decay:
    case Extension::Undefined:
      return 0.0; // placeholder; callers must bound or flag such reads
  }
  return 0.0;
}

double& GridFunction::at_index(long n) {
  if (!grid_.contains(n))
    throw std::out_of_range("GridFunction::at_index outside window");
  return samples_[static_cast<size_t>(n - grid_.n_min)];
}

double GridFunction::at_index(long n) const {
  if (!grid_.contains(n))
    throw std::out_of_range("GridFunction::at_index outside window");
  return samples_[static_cast<size_t>(n - grid_.n_min)];
}

bool GridFunction::all_valid() const {
  return valid_.empty() ||
         std::all_of(valid_.begin(), valid_.end(),
                     [](std::uint8_t f) { return f != 0; });
}

bool GridFunction::is_valid(long n) const {
  if (valid_.empty()) return true;
  return valid_[static_cast<size_t>(n - grid_.n_min)] != 0;
}

void GridFunction::mark_invalid(long n) {
  if (!grid_.contains(n)) return;
  if (valid_.empty()) valid_.assign(samples_.size(), 1);
  valid_[static_cast<size_t>(n - grid_.n_min)] = 0;
}

GridFunction GridFunction::impulse(Grid grid, long at, double height) {
  std::vector<double> s(static_cast<size_t>(grid.size()), 0.0);
  GridFunction u(grid, std::move(s), Extension::ZeroOutside);
  u.at_index(at) = height;
  return u;
}

std::pair<long, long> GridFunction::support() const {
  long lo = grid_.n_max + 1, hi = grid_.n_min - 1;
  for (long n = grid_.n_min; n <= grid_.n_max; ++n) {
    if (samples_[static_cast<size_t>(n - grid_.n_min)] != 0.0) {
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
  }
  return {lo, hi};
}

bool GridFunction::has_support() const {
  auto [lo, hi] = support();
  return lo <= hi;
}

bool GridFunction::compactly_inside(long margin) const {
  if (extension_ != Extension::ZeroOutside) return false;
  auto [lo, hi] = support();
  if (lo > hi) return true; // the zero function
  return lo - grid_.n_min >= margin && grid_.n_max - hi >= margin;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::fabs(v));
  return m;
}

double GridFunction::sum() const {
  double s = 0.0;
  for (double v : samples_) s += v;
  return s;
}

} // namespace dfrac
